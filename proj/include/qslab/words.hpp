#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qslab::group {

// One letter of a free-group word: generator index plus exponent sign.
struct Letter {
  int gen = 0;
  int sign = +1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  Letter inverse() const { return {gen, -sign}; }
};

// Reduced word over a free group on `alphabet` generators (default 26,
// serialized as a..z with capitals for inverses). The empty word is the
// identity.
class Word {
 public:
  static constexpr int kDefaultAlphabet = 26;

  Word() = default;

  // Reduces an arbitrary letter sequence. Throws std::out_of_range if a
  // generator index falls outside [0, alphabet).
  static Word from_letters(std::span<const Letter> raw, int alphabet = kDefaultAlphabet);

  // Parses e.g. "abA" as a * b * a^-1.
  static Word parse(std::string_view ascii);

  std::string str() const;

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  int size() const { return static_cast<int>(letters_.size()); }

  Word operator*(const Word& rhs) const;
  Word inverse() const;
  Word pow(int n) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  friend Word reduce_word(std::span<const Letter>, int);

  std::vector<Letter> letters_;  // invariant: freely reduced
};

// The reduction operation by itself, exposed for callers holding raw
// letter sequences.
Word reduce_word(std::span<const Letter> raw, int alphabet = Word::kDefaultAlphabet);

// Counts occurrences of `pattern` as a contiguous (possibly overlapping)
// subword of the reduced word `g`.
int count_occurrences(const Word& g, const Word& pattern);

// Seeded generator of random reduced words of length <= max_len over
// the first `alphabet` generators.
class WordSampler {
 public:
  WordSampler(std::uint64_t seed, int max_len, int alphabet = 2);
  Word next();

 private:
  std::uint64_t state_;
  int max_len_;
  int alphabet_;
  std::uint64_t next_u64();
};

}  // namespace qslab::group
