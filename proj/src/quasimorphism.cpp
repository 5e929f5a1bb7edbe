#include "qslab/quasimorphism.hpp"

#include <cmath>
#include <vector>

namespace qslab::group {

QuasiMorphism brooks_qm(const Word& pattern) {
  if (pattern.is_identity()) throw std::invalid_argument("brooks_qm: empty pattern");
  Word inv = pattern.inverse();
  double bound = 6.0 * (pattern.size() - 1);
  return QuasiMorphism{
      [pattern, inv](const Word& g) {
        return static_cast<double>(count_occurrences(g, pattern) - count_occurrences(g, inv));
      },
      bound, /*is_homogeneous=*/pattern.size() == 1};
}

QuasiMorphism exponent_sum_qm(int gen) {
  return QuasiMorphism{[gen](const Word& g) {
                         int s = 0;
                         for (const Letter& l : g.letters())
                           if (gen < 0 || l.gen == gen) s += l.sign;
                         return static_cast<double>(s);
                       },
                       0.0, /*is_homogeneous=*/true};
}

double defect_lower_bound(const QuasiMorphism& mu, WordSampler& sampler, int trials) {
  if (trials < 1) throw std::invalid_argument("defect_lower_bound: trials must be >= 1");
  double best = 0.0;
  for (int i = 0; i < trials; ++i) {
    Word g1 = sampler.next();
    Word g2 = sampler.next();
    double d = std::abs(mu(g1 * g2) - mu(g1) - mu(g2));
    if (d > best) best = d;
  }
  return best;
}

Homogenized homogenize(const QuasiMorphism& mu, const Word& g, int N) {
  if (N < 1) throw std::invalid_argument("homogenize: N must be >= 1");
  if (!mu.defect_bound) throw std::invalid_argument("homogenize: handle has no defect bound");
  return Homogenized{mu(g.pow(N)) / N, *mu.defect_bound / N};
}

GroupMap identity_map() {
  return GroupMap{[](const Word& w) { return w; }, true};
}

GroupMap conjugation_by(const Word& c) {
  Word ci = c.inverse();
  return GroupMap{[c, ci](const Word& w) { return c * w * ci; }, true};
}

GroupMap collapse_generator(int gen) {
  return GroupMap{[gen](const Word& w) {
                    std::vector<Letter> kept;
                    for (const Letter& l : w.letters())
                      if (l.gen != gen) kept.push_back(l);
                    return Word::from_letters(kept);
                  },
                  true};
}

GroupMap exponent_sum_map() {
  return GroupMap{[](const Word& w) {
                    int s = 0;
                    for (const Letter& l : w.letters()) s += l.sign;
                    return Word::parse("a").pow(s);
                  },
                  true};
}

QuasiMorphism pullback(const GroupMap& phi, const QuasiMorphism& mu, double d_phi_mu) {
  if (!mu.defect_bound) throw std::invalid_argument("pullback: mu has no defect bound");
  double bound = d_phi_mu + 2.0 * *mu.defect_bound;
  auto apply = phi.apply;
  auto eval = mu.evaluate;
  return QuasiMorphism{[apply, eval](const Word& h) { return eval(apply(h)); }, bound,
                       mu.is_homogeneous && phi.is_homomorphism};
}

QuasiMorphism pushforward(const GroupMap& phi, const std::function<Word(const Word&)>& section,
                          const QuasiMorphism& mu, std::span<const Word> kernel_samples,
                          double kernel_bound, std::span<const Word> test_points) {
  if (!mu.is_homogeneous)
    throw std::invalid_argument("pushforward: mu must carry the homogeneous flag");

  for (const Word& h : test_points) {
    Word back = phi(section(h));
    if (!(back == h))
      throw PushforwardError("pushforward: section is not a section at " + h.str(), h, back);
  }

  for (const Word& k : kernel_samples) {
    if (!phi(k).is_identity())
      throw PushforwardError("pushforward: kernel sample " + k.str() + " not in kernel", k, phi(k));
    for (int p : {1, 2, 4, 8}) {
      double v = mu(k.pow(p));
      if (std::abs(v) > kernel_bound)
        throw PushforwardError("pushforward: mu unbounded on kernel samples, |mu(" + k.str() +
                                   "^" + std::to_string(p) + ")| = " + std::to_string(v) +
                                   " > " + std::to_string(kernel_bound),
                               k, k.pow(p));
    }
  }

  // Second section: shift the first one by kernel samples. For a genuinely
  // descending mu the two evaluations must agree.
  constexpr double kTol = 1e-9;
  for (const Word& h : test_points) {
    Word s1 = section(h);
    for (const Word& k : kernel_samples) {
      Word s2 = s1 * k;
      double d = std::abs(mu(s1) - mu(s2));
      if (d > kTol)
        throw PushforwardError("pushforward: sections disagree at " + h.str() + ": mu(" +
                                   s1.str() + ") = " + std::to_string(mu(s1)) + " vs mu(" +
                                   s2.str() + ") = " + std::to_string(mu(s2)),
                               s1, s2);
    }
  }

  auto eval = mu.evaluate;
  return QuasiMorphism{[section, eval](const Word& h) { return eval(section(h)); },
                       mu.defect_bound, true};
}

}  // namespace qslab::group
