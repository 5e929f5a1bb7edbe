#include "qslab/scalar_field.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qslab/numerics.hpp"

namespace qslab::geom {

ScalarField ScalarField::sample(const SphereMesh& mesh, const SmoothFn& f) {
  ScalarField out;
  out.mesh = &mesh;
  out.values.reserve(mesh.vertex_count());
  for (const Vec3& v : mesh.vertices) out.values.push_back(f(v));
  out.smooth = f;
  for (double x : out.values)
    if (!std::isfinite(x)) throw std::invalid_argument("field sample is not finite");
  return out;
}

ScalarField ScalarField::from_values(const SphereMesh& mesh, std::vector<double> v) {
  if (static_cast<int>(v.size()) != mesh.vertex_count())
    throw std::invalid_argument("field length does not match vertex count");
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("field value is not finite");
  ScalarField out;
  out.mesh = &mesh;
  out.values = std::move(v);
  return out;
}

ScalarField ScalarField::constant(const SphereMesh& mesh, double c) {
  return sample(mesh, [c](const Vec3&) { return c; });
}

double ScalarField::eval(const Vec3& p) const {
  if (smooth) return smooth(p);
  std::array<int, 3> corners;
  Vec3 bary;
  mesh->locate(p, corners, bary);
  return bary[0] * values[corners[0]] + bary[1] * values[corners[1]] + bary[2] * values[corners[2]];
}

Vec3 ScalarField::grad(const Vec3& p) const {
  Vec3 n = p.normalized();
  if (smooth) {
    const double h = 1e-4;
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Vec3 e = Vec3::Zero();
      e[i] = 1.0;
      auto f = [&](double s) { return smooth((n + s * e).normalized()); };
      g[i] = (f(-2 * h) - f(2 * h) + 8.0 * (f(h) - f(-h))) / (12.0 * h);
    }
    return g - n.dot(g) * n;
  }
  // Sampled route: blend vertex gradients barycentrically.
  std::array<int, 3> corners;
  Vec3 bary;
  mesh->locate(p, corners, bary);
  std::vector<Vec3> grads = vertex_gradients(*this);
  Vec3 g = bary[0] * grads[corners[0]] + bary[1] * grads[corners[1]] + bary[2] * grads[corners[2]];
  return g - n.dot(g) * n;
}

ScalarField ScalarField::operator+(const ScalarField& rhs) const {
  if (mesh != rhs.mesh) throw std::invalid_argument("field arithmetic requires a shared mesh");
  std::vector<double> v(values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = values[i] + rhs.values[i];
  ScalarField out = from_values(*mesh, std::move(v));
  if (smooth && rhs.smooth) {
    auto f = smooth, g = rhs.smooth;
    out.smooth = [f, g](const Vec3& p) { return f(p) + g(p); };
  }
  return out;
}

ScalarField ScalarField::operator-(const ScalarField& rhs) const {
  return *this + rhs * -1.0;
}

ScalarField ScalarField::operator*(double c) const {
  std::vector<double> v(values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = values[i] * c;
  ScalarField out = from_values(*mesh, std::move(v));
  if (smooth) {
    auto f = smooth;
    out.smooth = [f, c](const Vec3& p) { return c * f(p); };
  }
  return out;
}

ScalarField ScalarField::shifted(double c) const {
  std::vector<double> v(values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = values[i] + c;
  ScalarField out = from_values(*mesh, std::move(v));
  if (smooth) {
    auto f = smooth;
    out.smooth = [f, c](const Vec3& p) { return f(p) + c; };
  }
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const { return integrate(*this); }

double integrate(const ScalarField& H) {
  double s = 0.0;
  for (int v = 0; v < H.mesh->vertex_count(); ++v) s += H.values[v] * H.mesh->vertex_weights[v];
  return s;
}

std::vector<Vec3> vertex_gradients(const ScalarField& H) {
  const SphereMesh& mesh = *H.mesh;
  int n = mesh.vertex_count();
  std::vector<Vec3> grads(n);
  for (int v = 0; v < n; ++v) {
    const auto& nb = mesh.neighbors[v];
    if (nb.size() < 3) throw std::runtime_error("degenerate vertex star at vertex " +
                                                std::to_string(v));
    const Vec3& p = mesh.vertices[v];
    // Tangent frame.
    Vec3 ref = std::abs(p.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    Vec3 e1 = (ref - ref.dot(p) * p).normalized();
    Vec3 e2 = p.cross(e1);
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (int w : nb) {
      Vec3 d = mesh.vertices[w] - p;
      double x = d.dot(e1), y = d.dot(e2);
      double df = H.values[w] - H.values[v];
      a11 += x * x;
      a12 += x * y;
      a22 += y * y;
      b1 += x * df;
      b2 += y * df;
    }
    double det = a11 * a22 - a12 * a12;
    if (std::abs(det) < 1e-300) throw std::runtime_error("singular vertex star fit");
    double gx = (a22 * b1 - a12 * b2) / det;
    double gy = (a11 * b2 - a12 * b1) / det;
    grads[v] = gx * e1 + gy * e2;
  }
  return grads;
}

ScalarField poisson_bracket(const ScalarField& H, const ScalarField& K) {
  if (H.mesh != K.mesh) throw std::invalid_argument("poisson_bracket requires a shared mesh");
  std::vector<Vec3> gh = vertex_gradients(H);
  std::vector<Vec3> gk = vertex_gradients(K);
  int n = H.mesh->vertex_count();
  std::vector<double> out(n);
  for (int v = 0; v < n; ++v)
    out[v] = kFourPi * H.mesh->vertices[v].dot(gk[v].cross(gh[v]));
  return ScalarField::from_values(*H.mesh, std::move(out));
}

Vec3 sgrad_at(const ScalarField& H, const Vec3& p) {
  Vec3 n = p.normalized();
  return kFourPi * n.cross(H.grad(n));
}

void save_field_csv(const ScalarField& H, std::ostream& os) {
  os.precision(17);
  for (size_t i = 0; i < H.values.size(); ++i) os << i << ',' << H.values[i] << '\n';
}

ScalarField load_field_csv(const SphereMesh& mesh, std::istream& is) {
  std::vector<double> values(mesh.vertex_count(), 0.0);
  std::vector<bool> seen(mesh.vertex_count(), false);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int idx = 0;
    char comma = 0;
    double value = 0;
    if (!(ls >> idx >> comma >> value) || comma != ',')
      throw std::runtime_error("bad field csv line: " + line);
    if (idx < 0 || idx >= mesh.vertex_count())
      throw std::runtime_error("field csv vertex index out of range");
    values[idx] = value;
    seen[idx] = true;
  }
  for (bool s : seen)
    if (!s) throw std::runtime_error("field csv misses a vertex");
  return ScalarField::from_values(mesh, std::move(values));
}

}  // namespace qslab::geom
