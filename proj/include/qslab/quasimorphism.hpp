#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "qslab/words.hpp"

namespace qslab::group {

// Evaluation oracle for a quasi-morphism on a free group, together with an
// optional certified upper bound for its defect. Handles are immutable and
// evaluation is pure.
struct QuasiMorphism {
  std::function<double(const Word&)> evaluate;
  std::optional<double> defect_bound;
  bool is_homogeneous = false;

  double operator()(const Word& w) const { return evaluate(w); }
};

// Map between free groups, applied word-wise.
struct GroupMap {
  std::function<Word(const Word&)> apply;
  bool is_homomorphism = false;

  Word operator()(const Word& w) const { return apply(w); }
};

// Counting quasi-morphism h_w(g) = #(w in g) - #(w^-1 in g), overlapping
// occurrences in the reduced word. The recorded defect bound is the coarse
// junction estimate 6*(|w|-1), never claimed sharp.
QuasiMorphism brooks_qm(const Word& pattern);

// Exponent-sum homomorphism. gen < 0 sums over all generators.
QuasiMorphism exponent_sum_qm(int gen = -1);

// Max over `trials` sampled pairs of |mu(g1 g2) - mu(g1) - mu(g2)|.
// A certified lower bound for the defect.
double defect_lower_bound(const QuasiMorphism& mu, WordSampler& sampler, int trials);

struct Homogenized {
  double value;
  double error_radius;
};

// mu(g^N)/N with the exact error radius defect_bound/N around the
// homogenization. Throws if the handle carries no defect bound.
Homogenized homogenize(const QuasiMorphism& mu, const Word& g, int N);

GroupMap identity_map();
GroupMap conjugation_by(const Word& c);
// Kills one generator and reduces; a homomorphism.
GroupMap collapse_generator(int gen);
// Word over many generators -> power of generator 0 by total exponent sum;
// a model for the abelianization-to-Z quotient.
GroupMap exponent_sum_map();

// h -> mu(phi(h)); records defect bound d_phi_mu + 2*D(mu).
QuasiMorphism pullback(const GroupMap& phi, const QuasiMorphism& mu, double d_phi_mu);

class PushforwardError : public std::runtime_error {
 public:
  PushforwardError(std::string what, Word a, Word b)
      : std::runtime_error(std::move(what)), witness_a(std::move(a)), witness_b(std::move(b)) {}
  Word witness_a, witness_b;
};

// Pushes mu forward along a surjective homomorphism phi with the given
// section (phi o section == id on the tested points). Before returning the
// handle h -> mu(section(h)) it checks that
//   * |mu| stays below kernel_bound on kernel_samples and small powers of
//     them, and
//   * a second section built from the kernel samples agrees with the first
//     one within 1e-9 on test_points.
// A failed check raises PushforwardError carrying the witnessing pair.
QuasiMorphism pushforward(const GroupMap& phi, const std::function<Word(const Word&)>& section,
                          const QuasiMorphism& mu, std::span<const Word> kernel_samples,
                          double kernel_bound, std::span<const Word> test_points);

}  // namespace qslab::group
