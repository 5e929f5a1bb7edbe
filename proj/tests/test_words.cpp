#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qslab/words.hpp"

using namespace qslab::group;

TEST_CASE("reduction cancels adjacent inverse pairs") {
  std::vector<Letter> raw = {{0, +1}, {0, -1}};
  CHECK(reduce_word(raw).is_identity());
}

TEST_CASE("inner cancellation collapses to a power") {
  // a b b^-1 a -> a a
  std::vector<Letter> raw = {{0, +1}, {1, +1}, {1, -1}, {0, +1}};
  Word w = reduce_word(raw);
  CHECK(w == Word::parse("aa"));
  CHECK(w.str() == "aa");
}

TEST_CASE("already reduced words pass through") {
  Word w = Word::parse("abA");
  CHECK(w.size() == 3);
  CHECK(w.str() == "abA");
}

TEST_CASE("generator outside the alphabet is rejected") {
  std::vector<Letter> raw = {{26, +1}};
  CHECK_THROWS_AS(reduce_word(raw), std::out_of_range);
  CHECK_THROWS_AS(Word::parse("a!"), std::out_of_range);
}

TEST_CASE("cascade cancellation") {
  // a b b^-1 a^-1 -> e
  CHECK(Word::parse("abBA").is_identity());
  CHECK((Word::parse("ab") * Word::parse("BA")).is_identity());
}

TEST_CASE("group operations") {
  Word a = Word::parse("a"), b = Word::parse("b");
  CHECK((a * b).str() == "ab");
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.pow(3).str() == "aaa");
  CHECK(a.pow(-2).str() == "AA");
  CHECK(a.pow(0).is_identity());
  CHECK(Word::parse("abc").inverse().str() == "CBA");
}

TEST_CASE("parse/str round trip on random words") {
  WordSampler sampler(7, 30, 3);
  for (int i = 0; i < 200; ++i) {
    Word w = sampler.next();
    CHECK(Word::parse(w.str() == "e" ? "" : w.str()) == w);
    // sampled words must come out reduced
    const auto& ls = w.letters();
    for (size_t j = 0; j + 1 < ls.size(); ++j)
      CHECK_FALSE((ls[j].gen == ls[j + 1].gen && ls[j].sign == -ls[j + 1].sign));
  }
}

TEST_CASE("identity serializes as e") { CHECK(Word().str() == "e"); }

TEST_CASE("occurrence counting is contiguous and overlapping") {
  CHECK(count_occurrences(Word::parse("abab"), Word::parse("ab")) == 2);
  CHECK(count_occurrences(Word::parse("aaa"), Word::parse("aa")) == 2);
  CHECK(count_occurrences(Word::parse("ab"), Word::parse("ba")) == 0);
  CHECK(count_occurrences(Word::parse("BA"), Word::parse("BA")) == 1);
}

TEST_CASE("sampler is deterministic for the seed") {
  WordSampler s1(99, 20, 2), s2(99, 20, 2);
  for (int i = 0; i < 50; ++i) CHECK(s1.next() == s2.next());
}
