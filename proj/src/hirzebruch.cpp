#include "qslab/hirzebruch.hpp"

#include <stdexcept>

namespace qslab::hirzebruch {

long long SurfaceClasses::pair(std::array<long long, 2> x, std::array<long long, 2> y) const {
  long long s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += x[i] * intersection[i][j] * y[j];
  return s;
}

long long SurfaceClasses::omega(std::array<long long, 2> x) const {
  return x[0] * area[0] + x[1] * area[1];
}

SurfaceClasses surface_classes(int k) {
  if (k < 1) throw std::invalid_argument("surface_classes: k must be >= 1");
  SurfaceClasses s;
  s.k = k;
  s.intersection = {{{0, 1}, {1, -k}}};
  s.area = {1, k};
  return s;
}

Classification classify(int k) {
  SurfaceClasses s = surface_classes(k);
  Classification c;
  c.k = k;
  c.even = (k % 2 == 0);
  c.l = c.even ? k / 2 : (k - 1) / 2;
  if (c.even) {
    c.type = "S2xS2";
    std::array<long long, 2> fiber = {1, 0};           // [CP1 x pt] = F
    std::array<long long, 2> section = {c.l, 1};       // [pt x CP1] = l F + D
    c.area_fiber = s.omega(fiber);
    c.area_section = s.omega(section);
  } else {
    c.type = "CP2#CP2bar";
    std::array<long long, 2> line = {c.l + 1, 1};      // L = (l+1) F + D
    std::array<long long, 2> exceptional = {c.l, 1};   // E = l F + D
    c.omega_L = s.omega(line);
    c.omega_E = s.omega(exceptional);
  }
  return c;
}

IdentityReport verify_class_identities(int k) {
  SurfaceClasses s = surface_classes(k);
  IdentityReport r{k, true, ""};
  auto fail = [&](const std::string& what) {
    r.ok = false;
    if (r.detail.empty()) r.detail = what;
  };

  long long det = s.intersection[0][0] * s.intersection[1][1] -
                  s.intersection[0][1] * s.intersection[1][0];
  if (det != -1) fail("det != -1");

  if (k % 2 == 0) {
    long long l = k / 2;
    std::array<long long, 2> fiber = {1, 0};
    std::array<long long, 2> section = {l, 1};
    if (s.pair(fiber, fiber) != 0) fail("[CP1xpt]^2 != 0");
    if (s.pair(section, section) != 0) fail("[ptxCP1]^2 != 0");
    if (s.pair(fiber, section) != 1) fail("[CP1xpt].[ptxCP1] != 1");
  } else {
    long long l = (k - 1) / 2;
    std::array<long long, 2> line = {l + 1, 1};
    std::array<long long, 2> exceptional = {l, 1};
    if (s.pair(line, line) != 1) fail("L^2 != 1");
    if (s.pair(exceptional, exceptional) != -1) fail("E^2 != -1");
    if (s.pair(line, exceptional) != 0) fail("L.E != 0");
  }
  return r;
}

}  // namespace qslab::hirzebruch
