#include "qslab/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::geom {

namespace {

constexpr double kMinStep = 1e-12;

int slice_index(int steps, double t) {
  int i = static_cast<int>(std::floor(t * steps));
  return std::clamp(i, 0, steps - 1);
}

Vec3 closure_tangent_grad(const std::function<double(const Vec3&)>& f, const Vec3& p) {
  Vec3 n = p.normalized();
  const double h = 1e-4;
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = 1.0;
    auto fs = [&](double s) { return f((n + s * e).normalized()); };
    g[i] = (fs(-2 * h) - fs(2 * h) + 8.0 * (fs(h) - fs(-h))) / (12.0 * h);
  }
  return g - n.dot(g) * n;
}

}  // namespace

double HamiltonianPath::value(const Vec3& p, double t) const {
  if (smooth) return smooth(p, t);
  if (slices.empty()) throw std::logic_error("path has neither slices nor closure");
  if (steps == 0) return slices[0].eval(p);
  int i = slice_index(steps, t);
  double local = t * steps - i;
  return (1.0 - local) * slices[i].eval(p) + local * slices[i + 1].eval(p);
}

void HamiltonianPath::ensure_slice_grads() const {
  if (!slice_grads_.empty() || slices.empty()) return;
  slice_grads_.reserve(slices.size());
  for (const ScalarField& s : slices) slice_grads_.push_back(vertex_gradients(s));
}

Vec3 HamiltonianPath::sgrad(const Vec3& p, double t) const {
  Vec3 n = p.normalized();
  if (smooth) {
    auto f = [&](const Vec3& q) { return smooth(q, t); };
    return kFourPi * n.cross(closure_tangent_grad(f, n));
  }
  ensure_slice_grads();
  std::array<int, 3> corners;
  Vec3 bary;
  mesh->locate(n, corners, bary);
  auto blend = [&](const std::vector<Vec3>& g) {
    return Vec3(bary[0] * g[corners[0]] + bary[1] * g[corners[1]] + bary[2] * g[corners[2]]);
  };
  Vec3 g;
  if (steps == 0) {
    g = blend(slice_grads_[0]);
  } else {
    int i = slice_index(steps, t);
    double local = t * steps - i;
    g = (1.0 - local) * blend(slice_grads_[i]) + local * blend(slice_grads_[i + 1]);
  }
  g -= n.dot(g) * n;
  return kFourPi * n.cross(g);
}

ScalarField HamiltonianPath::slice(double t) const {
  if (smooth) {
    auto f = smooth;
    return ScalarField::sample(*mesh, [f, t](const Vec3& p) { return f(p, t); });
  }
  if (slices.empty()) throw std::logic_error("path has neither slices nor closure");
  if (steps == 0) return slices[0];
  int i = slice_index(steps, t);
  double local = t * steps - i;
  ScalarField out = slices[i] * (1.0 - local) + slices[i + 1] * local;
  return out;
}

double HamiltonianPath::slice_mean(int i) const {
  return integrate(slice(steps == 0 ? 0.0 : static_cast<double>(i) / steps));
}

HamiltonianPath HamiltonianPath::constant(const ScalarField& H, int steps) {
  HamiltonianPath p;
  p.mesh = H.mesh;
  p.steps = steps;
  p.slices.assign(steps + 1, H);
  if (H.smooth) {
    auto f = H.smooth;
    p.smooth = [f](const Vec3& q, double) { return f(q); };
  }
  return p;
}

HamiltonianPath HamiltonianPath::time_scaled(const ScalarField& H,
                                             const std::function<double(double)>& lambda,
                                             int steps) {
  HamiltonianPath p;
  p.mesh = H.mesh;
  p.steps = steps;
  p.slices.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i)
    p.slices.push_back(H * lambda(static_cast<double>(i) / steps));
  if (H.smooth) {
    auto f = H.smooth;
    p.smooth = [f, lambda](const Vec3& q, double t) { return lambda(t) * f(q); };
  }
  return p;
}

HamiltonianPath HamiltonianPath::from_closure(const SphereMesh& mesh,
                                              std::function<double(const Vec3&, double)> f,
                                              int steps) {
  HamiltonianPath p;
  p.mesh = &mesh;
  p.steps = steps;
  p.smooth = std::move(f);
  return p;
}

HamiltonianPath HamiltonianPath::normalized() const {
  HamiltonianPath out;
  out.mesh = mesh;
  out.steps = steps;
  std::vector<double> means(steps + 1);
  out.slices.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    ScalarField s = slice(steps == 0 ? 0.0 : static_cast<double>(i) / steps);
    means[i] = integrate(s);
    out.slices.push_back(s.shifted(-means[i]));
  }
  if (smooth) {
    auto f = smooth;
    int m = steps;
    out.smooth = [f, means, m](const Vec3& p, double t) {
      double mean;
      if (m == 0) {
        mean = means[0];
      } else {
        int i = slice_index(m, t);
        double local = t * m - i;
        mean = (1.0 - local) * means[i] + local * means[i + 1];
      }
      return f(p, t) - mean;
    };
  }
  return out;
}

Vec3 flow_point(const HamiltonianPath& F, Vec3 p, double t0, double t1, double dt) {
  if (!(dt > kMinStep)) throw std::invalid_argument("flow step underflow");
  double span = t1 - t0;
  if (std::abs(span) < kMinStep) return p.normalized();
  int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt)));
  double h = span / n;
  Vec3 q = p.normalized();
  for (int i = 0; i < n; ++i) {
    double t = t0 + i * h;
    Vec3 k1 = F.sgrad(q, t);
    Vec3 k2 = F.sgrad((q + 0.5 * h * k1).normalized(), t + 0.5 * h);
    Vec3 k3 = F.sgrad((q + 0.5 * h * k2).normalized(), t + 0.5 * h);
    Vec3 k4 = F.sgrad((q + h * k3).normalized(), t + h);
    q = (q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
  }
  return q;
}

Vec3 inverse_flow_point(const HamiltonianPath& F, Vec3 x, double t, double dt) {
  if (!(dt > kMinStep)) throw std::invalid_argument("flow step underflow");
  if (t < kMinStep) return x.normalized();
  // y(s) with y(0) = x and dy/ds = -sgrad F_{t-s}(y) reaches f_t^{-1}(x).
  int n = std::max(1, static_cast<int>(std::ceil(t / dt)));
  double h = t / n;
  Vec3 q = x.normalized();
  for (int i = 0; i < n; ++i) {
    double s = i * h;
    auto field = [&](const Vec3& y, double sl) { return Vec3(-F.sgrad(y, t - sl)); };
    Vec3 k1 = field(q, s);
    Vec3 k2 = field((q + 0.5 * h * k1).normalized(), s + 0.5 * h);
    Vec3 k3 = field((q + 0.5 * h * k2).normalized(), s + 0.5 * h);
    Vec3 k4 = field((q + h * k3).normalized(), s + h);
    q = (q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
  }
  return q;
}

FlowMap hamiltonian_flow(const HamiltonianPath& F, std::span<const Vec3> seeds, double dt) {
  if (!(dt > kMinStep)) throw std::invalid_argument("flow step underflow");
  FlowMap out;
  out.dt = dt;
  int n = std::max(1, static_cast<int>(std::round(1.0 / dt)));
  out.times.resize(n + 1);
  for (int i = 0; i <= n; ++i) out.times[i] = static_cast<double>(i) / n;
  out.trajectories.assign(seeds.size(), {});
  for (size_t s = 0; s < seeds.size(); ++s) {
    auto& traj = out.trajectories[s];
    traj.reserve(n + 1);
    Vec3 p = seeds[s].normalized();
    traj.push_back(p);
    for (int i = 0; i < n; ++i) {
      p = flow_point(F, p, out.times[i], out.times[i + 1], dt);
      traj.push_back(p);
    }
  }
  return out;
}

HamiltonianPath sharp(const HamiltonianPath& F, const HamiltonianPath& G, double dt) {
  HamiltonianPath out;
  out.mesh = F.mesh;
  out.steps = std::max(F.steps, G.steps);
  HamiltonianPath f = F, g = G;
  out.smooth = [f, g, dt](const Vec3& p, double t) {
    return f.value(p, t) + g.value(inverse_flow_point(f, p, t, dt), t);
  };
  return out;
}

HamiltonianPath bar(const HamiltonianPath& F, double dt) {
  HamiltonianPath out;
  out.mesh = F.mesh;
  out.steps = F.steps;
  HamiltonianPath f = F;
  out.smooth = [f, dt](const Vec3& p, double t) {
    return -f.value(flow_point(f, p, 0.0, t, dt), t);
  };
  return out;
}

double calabi(const HamiltonianPath& F, const std::vector<int>& mask) {
  const SphereMesh& mesh = *F.mesh;
  std::vector<char> in_mask(mesh.vertex_count(), 0);
  for (int v : mask) in_mask[v] = 1;
  int m = std::max(F.steps, 1);
  double integral = 0.0;
  for (int i = 0; i <= m; ++i) {
    double t = static_cast<double>(i) / m;
    ScalarField s = F.slice(t);
    double inside = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      if (in_mask[v])
        inside += s.values[v] * mesh.vertex_weights[v];
      else if (std::abs(s.values[v]) > 1e-12)
        throw std::invalid_argument("calabi: slice " + std::to_string(i) +
                                    " violates the support mask at vertex " + std::to_string(v));
    }
    double w = (i == 0 || i == m) ? 0.5 : 1.0;
    integral += w * inside / m;
  }
  return integral;
}

HamiltonianPath displacing_rotation(const SphereMesh& mesh, const Vec3& cap_center,
                                    double cap_area, int steps) {
  if (!(cap_area > 0.0) || cap_area >= 0.5)
    throw std::invalid_argument(
        "displacing_rotation: caps of area >= 1/2 cannot be displaced on the sphere");
  Vec3 c = cap_center.normalized();
  Vec3 ref = std::abs(c.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  Vec3 u = c.cross(ref).normalized();
  auto f = [u](const Vec3& p) { return -0.25 * u.dot(p); };
  return HamiltonianPath::constant(ScalarField::sample(mesh, f), steps);
}

DisplacementCertificate verify_cap_displacement(const HamiltonianPath& F, const Vec3& cap_center,
                                                double cap_area, int samples, double dt) {
  Vec3 c = cap_center.normalized();
  double radius = cap_angular_radius(cap_area);
  Vec3 ref = std::abs(c.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  Vec3 e1 = (ref - ref.dot(c) * c).normalized();
  Vec3 e2 = c.cross(e1);

  DisplacementCertificate cert;
  cert.disjoint = true;
  cert.min_separation = 1e300;
  for (int ring = 1; ring <= 4; ++ring) {
    double rho = radius * ring / 4.0;  // ring 4 is the boundary circle
    for (int j = 0; j < samples; ++j) {
      double phi = 2.0 * kPi * j / samples;
      Vec3 p = std::cos(rho) * c + std::sin(rho) * (std::cos(phi) * e1 + std::sin(phi) * e2);
      Vec3 image = flow_point(F, p, 0.0, 1.0, dt);
      double angle = std::acos(std::clamp(c.dot(image), -1.0, 1.0));
      double sep = angle - radius;
      if (sep < cert.min_separation) {
        cert.min_separation = sep;
        cert.closest_image = image;
      }
    }
  }
  cert.disjoint = cert.min_separation > 0.0;
  return cert;
}

Vec3 ZonalFlow::flow(const Vec3& p, double t) const {
  double omega = -kFourPi * derivative(p.z());
  double a = omega * t;
  double ca = std::cos(a), sa = std::sin(a);
  return Vec3(ca * p.x() - sa * p.y(), sa * p.x() + ca * p.y(), p.z());
}

Vec3 ZonalFlow::inverse(const Vec3& p, double t) const { return flow(p, -t); }

HamiltonianPath ZonalFlow::path(const SphereMesh& mesh, int steps) const {
  auto a = profile;
  return HamiltonianPath::constant(
      ScalarField::sample(mesh, [a](const Vec3& p) { return a(p.z()); }), steps);
}

}  // namespace qslab::geom
