#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace qslab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;

// Seed-stable RNG (splitmix64 core). std:: distributions are
// implementation-defined, so reports stay reproducible only with our own
// uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

// Gauss-Legendre nodes/weights on [-1, 1], cached per n.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// C^2 step: 0 at x<=0, 1 at x>=1, zero first and second derivative at both ends.
double smootherstep(double x);
double smootherstep_deriv(double x);

// Central finite differences of callable f at x, order 4 or 6.
double fd_derivative(const std::function<double(double)>& f, double x, double h, int order = 4);

// Disjoint-set forest with union by size.
class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int x);
  // Returns the new root.
  int unite(int a, int b);
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_;
};

}  // namespace qslab
