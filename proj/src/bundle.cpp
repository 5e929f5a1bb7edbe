#include "qslab/bundle.hpp"

#include <cmath>
#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::bundle {

double ChartPoint::r() const { return std::sqrt(r2()); }
double ChartPoint::phi() const { return std::atan2(b, a); }

ChartPoint ChartPoint::from_polar(int chart, double u, double v, double r, double phi) {
  return ChartPoint{chart, u, v, r * std::cos(phi), r * std::sin(phi)};
}

namespace atlas {

Vec3 embed(int chart, double u, double v) {
  double rho2 = u * u + v * v;
  double f = 1.0 / (1.0 + rho2);
  if (chart == 0) return Vec3(2.0 * u * f, 2.0 * v * f, (1.0 - rho2) * f);
  return Vec3(2.0 * u * f, -2.0 * v * f, (rho2 - 1.0) * f);
}

bool base_coords(int chart, const Vec3& p, double& u, double& v) {
  Vec3 q = p.normalized();
  if (chart == 0) {
    double d = 1.0 + q.z();
    if (d < 1e-12) return false;
    u = q.x() / d;
    v = q.y() / d;
  } else {
    double d = 1.0 - q.z();
    if (d < 1e-12) return false;
    u = q.x() / d;
    v = -q.y() / d;
  }
  return true;
}

double sigma_density(double u, double v) {
  double t = 1.0 + u * u + v * v;
  return 1.0 / (kPi * t * t);
}

Vec2 connection(double u, double v) {
  double t = 2.0 * kPi * (1.0 + u * u + v * v);
  return Vec2(v / t, -u / t);
}

ChartPoint to_other_chart(const ChartPoint& p) {
  double rho2 = p.u * p.u + p.v * p.v;
  if (rho2 < 1e-300) throw std::domain_error("chart transition at the excluded pole");
  ChartPoint q;
  q.chart = 1 - p.chart;
  q.u = p.u / rho2;
  q.v = -p.v / rho2;
  // phi' = phi - arg(w): rotate the fiber by -lambda.
  double lambda = std::atan2(p.v, p.u);
  double c = std::cos(lambda), s = std::sin(lambda);
  q.a = c * p.a + s * p.b;
  q.b = -s * p.a + c * p.b;
  return q;
}

ChartPoint normalize_chart(const ChartPoint& p, double switch_rho2) {
  double rho2 = p.u * p.u + p.v * p.v;
  if (rho2 > switch_rho2) return to_other_chart(p);
  return p;
}

Vec3 base_point(const ChartPoint& p) { return embed(p.chart, p.u, p.v); }

Mat4 omega(const ChartPoint& p) {
  double S = (1.0 - p.r2()) * sigma_density(p.u, p.v);
  double c = 1.0 / kPi;
  Vec2 A = connection(p.u, p.v);
  Mat4 m = Mat4::Zero();
  m(0, 1) = S;
  m(1, 0) = -S;
  m(2, 3) = c;
  m(3, 2) = -c;
  m(2, 0) = 2.0 * p.a * A[0];
  m(2, 1) = 2.0 * p.a * A[1];
  m(3, 0) = 2.0 * p.b * A[0];
  m(3, 1) = 2.0 * p.b * A[1];
  m(0, 2) = -m(2, 0);
  m(1, 2) = -m(2, 1);
  m(0, 3) = -m(3, 0);
  m(1, 3) = -m(3, 1);
  return m;
}

namespace {

// Components of the primitive -(1 - r^2) alpha in (u, v, a, b).
Vec4 primitive(const ChartPoint& p) {
  double r2 = p.r2();
  if (r2 < 1e-12) throw std::domain_error("omega_from_potential: primitive singular at r = 0");
  double pref = -(1.0 - r2);
  Vec2 A = connection(p.u, p.v);
  Vec4 beta;
  beta[0] = pref * A[0];
  beta[1] = pref * A[1];
  beta[2] = pref * (-p.b / (2.0 * kPi * r2));
  beta[3] = pref * (p.a / (2.0 * kPi * r2));
  return beta;
}

ChartPoint shifted(const ChartPoint& p, int axis, double d) {
  ChartPoint q = p;
  switch (axis) {
    case 0: q.u += d; break;
    case 1: q.v += d; break;
    case 2: q.a += d; break;
    default: q.b += d; break;
  }
  return q;
}

}  // namespace

Mat4 omega_from_potential(const ChartPoint& p, double h) {
  // d beta with sixth-order central differences per direction.
  static const double w[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
  Mat4 dbeta = Mat4::Zero();  // dbeta(i, j) = d_i beta_j
  for (int i = 0; i < 4; ++i) {
    Vec4 acc = Vec4::Zero();
    for (int k = 1; k <= 3; ++k) {
      Vec4 plus = primitive(shifted(p, i, k * h));
      Vec4 minus = primitive(shifted(p, i, -k * h));
      acc += w[k - 1] * (plus - minus);
    }
    for (int j = 0; j < 4; ++j) dbeta(i, j) = acc[j] / h;
  }
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = dbeta(i, j) - dbeta(j, i);
  return m;
}

Mat4 omega_polar(const ChartPoint& p) {
  double r = p.r();
  if (!(r > 0.0) || r >= 1.0)
    throw std::domain_error("omega_polar: polar coordinates require 0 < r < 1");
  double phi = p.phi();
  // Columns: d(u,v,a,b)/d(u,v,r,phi).
  Mat4 jac = Mat4::Zero();
  jac(0, 0) = 1.0;
  jac(1, 1) = 1.0;
  jac(2, 2) = std::cos(phi);
  jac(3, 2) = std::sin(phi);
  jac(2, 3) = -r * std::sin(phi);
  jac(3, 3) = r * std::cos(phi);
  Mat4 m = omega(p);
  return jac.transpose() * m * jac;
}

double pfaffian(const Mat4& m) {
  return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
}

Vec4 hamiltonian_vector(const Mat4& omega, const Vec4& grad) {
  return omega.partialPivLu().solve(grad);
}

double curvature_residual(int chart, const std::vector<Vec2>& base_points, double h) {
  (void)chart;  // both charts share the connection formula
  double worst = 0.0;
  for (const Vec2& q : base_points) {
    auto Au = [&](double uu, double vv) { return connection(uu, vv)[0]; };
    auto Av = [&](double uu, double vv) { return connection(uu, vv)[1]; };
    auto d6 = [&](const std::function<double(double)>& f) {
      return (f(3 * h) - f(-3 * h) + 9.0 * (f(-2 * h) - f(2 * h)) + 45.0 * (f(h) - f(-h))) /
             (60.0 * h);
    };
    double dAv_du = d6([&](double d) { return Av(q[0] + d, q[1]); });
    double dAu_dv = d6([&](double d) { return Au(q[0], q[1] + d); });
    worst = std::max(worst, std::abs(dAv_du - dAu_dv + sigma_density(q[0], q[1])));
  }
  return worst;
}

namespace {

// alpha components in (u, v, a, b): dphi/2pi + A.
Vec4 alpha_components(const ChartPoint& p) {
  double r2 = p.r2();
  if (r2 < 1e-12) throw std::domain_error("alpha singular at r = 0");
  Vec2 A = connection(p.u, p.v);
  return Vec4(A[0], A[1], -p.b / (2.0 * kPi * r2), p.a / (2.0 * kPi * r2));
}

Mat4 transition_jacobian(const ChartPoint& p, double h) {
  Mat4 jac;
  for (int i = 0; i < 4; ++i) {
    ChartPoint plus2 = to_other_chart(shifted(p, i, 2 * h));
    ChartPoint minus2 = to_other_chart(shifted(p, i, -2 * h));
    ChartPoint plus = to_other_chart(shifted(p, i, h));
    ChartPoint minus = to_other_chart(shifted(p, i, -h));
    auto col = [](const ChartPoint& q) { return Vec4(q.u, q.v, q.a, q.b); };
    Vec4 d = (col(minus2) - col(plus2) + 8.0 * (col(plus) - col(minus))) / (12.0 * h);
    for (int j = 0; j < 4; ++j) jac(j, i) = d[j];
  }
  return jac;
}

}  // namespace

double transition_alpha_residual(const std::vector<ChartPoint>& points, double h) {
  double worst = 0.0;
  for (const ChartPoint& p : points) {
    Mat4 jac = transition_jacobian(p, h);
    Vec4 pulled = jac.transpose() * alpha_components(to_other_chart(p));
    worst = std::max(worst, (pulled - alpha_components(p)).cwiseAbs().maxCoeff());
  }
  return worst;
}

double transition_omega_residual(const std::vector<ChartPoint>& points, double h) {
  double worst = 0.0;
  for (const ChartPoint& p : points) {
    Mat4 jac = transition_jacobian(p, h);
    Mat4 pulled = jac.transpose() * omega(to_other_chart(p)) * jac;
    worst = std::max(worst, (pulled - omega(p)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace atlas

std::vector<ChartPoint> BundleGrid::sample_points(double rmax) const {
  std::vector<ChartPoint> pts;
  pts.reserve(2 * nu * nv * nr);
  const double golden = 2.399963229728653;
  for (int chart = 0; chart < 2; ++chart) {
    long index = 0;
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nr; ++k, ++index) {
          double u = -base_extent + (i + 0.5) * (2.0 * base_extent / nu);
          double v = -base_extent + (j + 0.5) * (2.0 * base_extent / nv);
          double r = (k + 0.5) * rmax / nr;
          double phi = std::fmod(golden * static_cast<double>(index + 1), 2.0 * kPi);
          pts.push_back(ChartPoint::from_polar(chart, u, v, r, phi));
        }
  }
  return pts;
}

double bundle_integral(const std::function<double(const ChartPoint&)>& f,
                       const BundleGrid& grid) {
  // Partition of unity in the base height: chart 0 handles z >= -0.6 with a
  // smooth rolloff, chart 1 the mirror image.
  auto chi0 = [](double z) { return smootherstep((z + 0.6) / 0.6); };

  const Quadrature& qu = gauss_legendre(grid.nu);
  const Quadrature& qv = gauss_legendre(grid.nv);
  const Quadrature& qr = gauss_legendre(grid.nr);

  double total = 0.0;
  for (int chart = 0; chart < 2; ++chart) {
    double L = grid.base_extent;
    for (int i = 0; i < grid.nu; ++i) {
      double u = L * qu.nodes[i];
      double wu = L * qu.weights[i];
      for (int j = 0; j < grid.nv; ++j) {
        double v = L * qv.nodes[j];
        double wv = L * qv.weights[j];
        Vec3 base = atlas::embed(chart, u, v);
        double cut = chart == 0 ? chi0(base.z()) : 1.0 - chi0(base.z());
        if (cut < 1e-15) continue;
        double s = atlas::sigma_density(u, v);
        double fiber = 0.0;
        for (int k = 0; k < grid.nr; ++k) {
          double r = 0.5 * grid.r_max * (qr.nodes[k] + 1.0);
          double wr = 0.5 * grid.r_max * qr.weights[k];
          double ring = 0.0;
          for (int l = 0; l < grid.nphi; ++l) {
            double phi = 2.0 * kPi * (l + 0.5) / grid.nphi;
            ring += f(ChartPoint::from_polar(chart, u, v, r, phi));
          }
          ring *= 2.0 * kPi / grid.nphi;
          fiber += wr * ring * 2.0 * (1.0 - r * r) * r / kPi;
        }
        total += wu * wv * cut * s * fiber;
      }
    }
  }
  return total;
}

double fiber_area_quadrature(int nr, int nphi) {
  // integral over the unit disk of d(r^2 alpha) = d(r^2) ^ dphi / 2pi.
  const Quadrature& qr = gauss_legendre(nr);
  double total = 0.0;
  for (int k = 0; k < nr; ++k) {
    double r = 0.5 * (qr.nodes[k] + 1.0);
    double wr = 0.5 * qr.weights[k];
    double ring = 0.0;
    for (int l = 0; l < nphi; ++l) ring += 1.0 / (2.0 * kPi);
    ring *= 2.0 * kPi / nphi;
    total += wr * ring * 2.0 * r;
  }
  return total;
}

}  // namespace qslab::bundle
