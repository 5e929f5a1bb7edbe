#include "qslab/words.hpp"

#include <cctype>
#include <stdexcept>

namespace qslab::group {

Word Word::from_letters(std::span<const Letter> raw, int alphabet) {
  return reduce_word(raw, alphabet);
}

Word reduce_word(std::span<const Letter> raw, int alphabet) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.gen < 0 || l.gen >= alphabet)
      throw std::out_of_range("generator index " + std::to_string(l.gen) +
                              " outside alphabet of size " + std::to_string(alphabet));
    if (l.sign != 1 && l.sign != -1) throw std::out_of_range("letter sign must be +1 or -1");
    if (!stack.empty() && stack.back().gen == l.gen && stack.back().sign == -l.sign)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word Word::parse(std::string_view ascii) {
  std::vector<Letter> raw;
  raw.reserve(ascii.size());
  for (char c : ascii) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c >= 'a' && c <= 'z')
      raw.push_back({c - 'a', +1});
    else if (c >= 'A' && c <= 'Z')
      raw.push_back({c - 'A', -1});
    else
      throw std::out_of_range(std::string("bad word character '") + c + "'");
  }
  return reduce_word(raw);
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_)
    s.push_back(static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen));
  return s;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> raw = letters_;
  raw.insert(raw.end(), rhs.letters_.begin(), rhs.letters_.end());
  return reduce_word(raw);
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;
}

Word Word::pow(int n) const {
  Word base = n >= 0 ? *this : inverse();
  int k = n >= 0 ? n : -n;
  Word acc;
  for (int i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

int count_occurrences(const Word& g, const Word& pattern) {
  const auto& gs = g.letters();
  const auto& ps = pattern.letters();
  if (ps.empty() || gs.size() < ps.size()) return 0;
  int count = 0;
  for (size_t i = 0; i + ps.size() <= gs.size(); ++i) {
    bool match = true;
    for (size_t j = 0; j < ps.size(); ++j)
      if (!(gs[i + j] == ps[j])) {
        match = false;
        break;
      }
    if (match) ++count;
  }
  return count;
}

WordSampler::WordSampler(std::uint64_t seed, int max_len, int alphabet)
    : state_(seed ^ 0x9e3779b97f4a7c15ULL), max_len_(max_len), alphabet_(alphabet) {
  if (max_len < 0) throw std::out_of_range("max_len must be >= 0");
  if (alphabet < 1 || alphabet > Word::kDefaultAlphabet)
    throw std::out_of_range("alphabet out of range");
}

std::uint64_t WordSampler::next_u64() {
  // splitmix64: tiny, seed-stable across platforms.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Word WordSampler::next() {
  int len = static_cast<int>(next_u64() % static_cast<std::uint64_t>(max_len_ + 1));
  std::vector<Letter> raw;
  raw.reserve(len);
  for (int i = 0; i < len; ++i) {
    // Reject letters that would cancel so the word stays reduced at length `len`.
    for (;;) {
      int pick = static_cast<int>(next_u64() % static_cast<std::uint64_t>(2 * alphabet_));
      Letter l{pick / 2, pick % 2 == 0 ? +1 : -1};
      if (!raw.empty() && raw.back().gen == l.gen && raw.back().sign == -l.sign) continue;
      raw.push_back(l);
      break;
    }
  }
  return Word::from_letters(raw);
}

}  // namespace qslab::group
