#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qslab/quasimorphism.hpp"

using namespace qslab::group;

namespace {

// All reduced words over {a, b} of length exactly n, appended to `out`.
void enumerate_reduced(int n, std::vector<Word>& out) {
  std::vector<std::vector<Letter>> frontier = {{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (int gen = 0; gen < 2; ++gen)
        for (int sign : {+1, -1}) {
          if (!w.empty() && w.back().gen == gen && w.back().sign == -sign) continue;
          auto ext = w;
          ext.push_back({gen, sign});
          next.push_back(std::move(ext));
        }
    frontier = std::move(next);
  }
  for (const auto& w : frontier) out.push_back(Word::from_letters(w));
}

}  // namespace

TEST_CASE("brooks counting values") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  CHECK(mu(Word::parse("abab")) == doctest::Approx(2.0));
  CHECK(mu(Word::parse("BA")) == doctest::Approx(-1.0));
  for (int n = 1; n <= 6; ++n) CHECK(mu(Word::parse("a").pow(n)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(brooks_qm(Word()), std::invalid_argument);
}

TEST_CASE("defect lower bound of a homomorphism is zero") {
  QuasiMorphism mu = exponent_sum_qm(0);
  WordSampler sampler(3, 18, 2);
  CHECK(defect_lower_bound(mu, sampler, 500) == doctest::Approx(0.0));
}

TEST_CASE("defect lower bound on the identity pair is zero") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  WordSampler sampler(5, 0, 2);  // samples only the empty word
  CHECK(defect_lower_bound(mu, sampler, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(defect_lower_bound(mu, sampler, 0), std::invalid_argument);
}

TEST_CASE("brooks defect: sampled bound is positive and below the certified bound") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  // Reference from exhaustive short words: the defect is genuinely nonzero.
  std::vector<Word> words;
  for (int n = 0; n <= 4; ++n) enumerate_reduced(n, words);
  double exhaustive = 0.0;
  for (const Word& g1 : words)
    for (const Word& g2 : words)
      exhaustive = std::max(exhaustive, std::abs(mu(g1 * g2) - mu(g1) - mu(g2)));
  CHECK(exhaustive > 0.0);
  CHECK(exhaustive <= *mu.defect_bound);

  WordSampler sampler(11, 20, 2);
  double sampled = defect_lower_bound(mu, sampler, 10000);
  CHECK(sampled > 0.0);
  CHECK(sampled <= *mu.defect_bound);
}

TEST_CASE("homogenize brooks(ab) at ab") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  auto h = homogenize(mu, Word::parse("ab"), 50);
  CHECK(h.error_radius == doctest::Approx(*mu.defect_bound / 50));
  CHECK(std::abs(h.value - 1.0) <= h.error_radius);
  // brute force: mu((ab)^n)/n is exactly 1 for every n
  for (int n = 1; n <= 50; ++n)
    CHECK(mu(Word::parse("ab").pow(n)) == doctest::Approx(static_cast<double>(n)));
}

TEST_CASE("homogenize brooks(ab) at a stays zero") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  for (int n : {1, 7, 40}) CHECK(homogenize(mu, Word::parse("a"), n).value == doctest::Approx(0.0));
}

TEST_CASE("homogenize a homomorphism is exact with zero radius") {
  QuasiMorphism mu = exponent_sum_qm(-1);
  Word g = Word::parse("abba");
  for (int n : {1, 3, 10}) {
    auto h = homogenize(mu, g, n);
    CHECK(h.value == doctest::Approx(mu(g)));
    CHECK(h.error_radius == doctest::Approx(0.0));
  }
  QuasiMorphism no_bound{[](const Word&) { return 0.0; }, std::nullopt, false};
  CHECK_THROWS_AS(homogenize(no_bound, g, 5), std::invalid_argument);
}

TEST_CASE("homogenization Cauchy bound over random words") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  double d = *mu.defect_bound;
  WordSampler sampler(17, 10, 2);
  for (int i = 0; i < 60; ++i) {
    Word g = sampler.next();
    for (int n : {1, 2, 5}) {
      double a = mu(g.pow(n)) / n;
      double b = mu(g.pow(2 * n)) / (2 * n);
      CHECK(std::abs(a - b) <= d / n + 1e-12);
    }
  }
}

TEST_CASE("pullback along the identity is mu with doubled defect bound") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  QuasiMorphism pb = pullback(identity_map(), mu, 0.0);
  CHECK(*pb.defect_bound == doctest::Approx(2.0 * *mu.defect_bound));
  WordSampler sampler(23, 15, 2);
  for (int i = 0; i < 200; ++i) {
    Word g = sampler.next();
    CHECK(pb(g) == doctest::Approx(mu(g)));
  }
}

TEST_CASE("conjugation pullback of homogenized brooks matches at matched powers") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  double d = *mu.defect_bound;
  Word c = Word::parse("ba");
  GroupMap conj = conjugation_by(c);
  WordSampler sampler(29, 8, 2);
  const int N = 64;
  for (int i = 0; i < 100; ++i) {
    Word g = sampler.next();
    double direct = mu(g.pow(N)) / N;
    double conjugated = mu(conj(g).pow(N)) / N;
    CHECK(std::abs(direct - conjugated) <= 2.0 * d / N + 1e-12);
  }
  // Fixture where the conjugator cannot touch pattern occurrences: exact match.
  Word g = Word::parse("ab");
  for (int n : {1, 5, 20})
    CHECK(mu(conjugation_by(Word::parse("a"))(g).pow(n)) == doctest::Approx(mu(g.pow(n))));
}

TEST_CASE("collapsing b maps exponent-sum-of-a to itself with zero defect") {
  GroupMap collapse = collapse_generator(1);
  QuasiMorphism mu = exponent_sum_qm(0);
  QuasiMorphism pb = pullback(collapse, mu, 0.0);
  CHECK(*pb.defect_bound == doctest::Approx(0.0));
  WordSampler sampler(31, 20, 2);
  for (int i = 0; i < 200; ++i) {
    Word g = sampler.next();
    CHECK(pb(g) == doctest::Approx(mu(g)));
  }
}

TEST_CASE("sampled pullback defect stays below the recorded bound") {
  QuasiMorphism mu = brooks_qm(Word::parse("ab"));
  WordSampler sampler(37, 12, 2);
  for (GroupMap phi : {identity_map(), conjugation_by(Word::parse("bab")), collapse_generator(1)}) {
    // D(phi, mu) sampled over the same family that the defect check uses.
    std::vector<std::pair<Word, Word>> pairs;
    double d_phi_mu = 0.0;
    for (int i = 0; i < 400; ++i) {
      Word h1 = sampler.next(), h2 = sampler.next();
      pairs.emplace_back(h1, h2);
      d_phi_mu = std::max(d_phi_mu,
                          std::abs(mu(phi(h1 * h2).inverse() * phi(h1) * phi(h2))));
    }
    QuasiMorphism pb = pullback(phi, mu, d_phi_mu);
    for (const auto& [h1, h2] : pairs)
      CHECK(std::abs(pb(h1 * h2) - pb(h1) - pb(h2)) <= *pb.defect_bound + 1e-12);
  }
}

TEST_CASE("pushforward accepts the homomorphism fixture") {
  GroupMap phi = exponent_sum_map();
  QuasiMorphism mu = exponent_sum_qm(-1);
  auto section = [](const Word& h) { return h; };  // h is already a power of a
  std::vector<Word> kernel = {Word::parse("abAB"), Word::parse("aB"), Word::parse("bbAA")};
  std::vector<Word> tests;
  for (int n = -3; n <= 3; ++n) tests.push_back(Word::parse("a").pow(n));
  QuasiMorphism push = pushforward(phi, section, mu, kernel, 1e-9, tests);
  for (int n = -5; n <= 5; ++n)
    CHECK(push(Word::parse("a").pow(n)) == doctest::Approx(static_cast<double>(n)));
}

TEST_CASE("pushforward rejects brooks along exponent sum") {
  GroupMap phi = exponent_sum_map();
  QuasiMorphism raw = brooks_qm(Word::parse("ab"));
  QuasiMorphism mu{raw.evaluate, raw.defect_bound, /*is_homogeneous=*/true};
  auto section = [](const Word& h) { return h; };
  std::vector<Word> kernel = {Word::parse("abAB")};
  std::vector<Word> tests = {Word::parse("aa")};
  CHECK_THROWS_AS(pushforward(phi, section, mu, kernel, 100.0, tests), PushforwardError);
  // With a generous kernel bound the section disagreement is the witness.
  try {
    pushforward(phi, section, mu, kernel, 100.0, tests);
  } catch (const PushforwardError& e) {
    CHECK(std::abs(mu(e.witness_a) - mu(e.witness_b)) > 1e-9);
  }
  // With a tight kernel bound the unboundedness check fires first.
  CHECK_THROWS_AS(pushforward(phi, section, mu, kernel, 0.5, tests), PushforwardError);
}

TEST_CASE("pushforward along the identity returns mu") {
  GroupMap phi = identity_map();
  QuasiMorphism mu = exponent_sum_qm(-1);
  auto section = [](const Word& h) { return h; };
  std::vector<Word> kernel = {Word()};
  std::vector<Word> tests = {Word::parse("ab"), Word::parse("BBa")};
  QuasiMorphism push = pushforward(phi, section, mu, kernel, 1e-9, tests);
  WordSampler sampler(41, 14, 2);
  for (int i = 0; i < 100; ++i) {
    Word g = sampler.next();
    CHECK(push(g) == doctest::Approx(mu(g)));
  }
}

TEST_CASE("pushforward of a descending mu agrees with every section tried") {
  GroupMap phi = exponent_sum_map();
  QuasiMorphism mu = exponent_sum_qm(-1);
  std::vector<Word> kernel = {Word::parse("abAB"), Word::parse("aB")};
  std::vector<Word> tests;
  for (int n = -2; n <= 2; ++n) tests.push_back(Word::parse("a").pow(n));
  auto s1 = [](const Word& h) { return h; };
  auto s2 = [](const Word& h) {  // map a^n to b^n instead
    int n = 0;
    for (const Letter& l : h.letters()) n += l.sign;
    return Word::parse("b").pow(n);
  };
  QuasiMorphism p1 = pushforward(phi, s1, mu, kernel, 1e-9, tests);
  QuasiMorphism p2 = pushforward(phi, s2, mu, kernel, 1e-9, tests);
  for (int n = -4; n <= 4; ++n) {
    Word h = Word::parse("a").pow(n);
    CHECK(p1(h) == doctest::Approx(p2(h)));
  }
}
