#pragma once

#include <array>
#include <string>

namespace qslab::hirzebruch {

// Integer intersection data for the degree-k rational ruled surface in the
// basis (F, D): fiber class and the section class with D.D = -k.
struct SurfaceClasses {
  int k;
  std::array<std::array<long long, 2>, 2> intersection;  // [[0,1],[1,-k]]
  std::array<long long, 2> area;                         // (1, k)

  long long pair(std::array<long long, 2> x, std::array<long long, 2> y) const;
  long long omega(std::array<long long, 2> x) const;
};

SurfaceClasses surface_classes(int k);  // throws std::invalid_argument for k < 1

struct Classification {
  int k;
  int l;
  bool even;                // true: S2 x S2 type, false: one-point blow-up type
  std::string type;         // "S2xS2" or "CP2#CP2bar"
  // even case: areas of [CP1 x pt] and [pt x CP1]
  long long area_fiber = 0;
  long long area_section = 0;
  // odd case: areas of the line class L and the exceptional class E
  long long omega_L = 0;
  long long omega_E = 0;
};

Classification classify(int k);

struct IdentityReport {
  int k;
  bool ok;
  std::string detail;  // first failing identity, empty when ok
};

// Checks the class identities through the intersection matrix:
// even k: [CP1xpt]^2 = 0, [ptxCP1]^2 = 0, product 1;
// odd k:  L^2 = 1, E^2 = -1, L.E = 0. Also det = -1.
IdentityReport verify_class_identities(int k);

}  // namespace qslab::hirzebruch
