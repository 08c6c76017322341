#include "rescurve/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rescurve/kernels.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

class Assembler {
 public:
  explicit Assembler(Mesh& mesh) : mesh_(mesh) {
    const std::size_t n = mesh.size();
    mesh.unknown_of.assign(n, -1);
    mesh.interior.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!mesh.boundary[i]) {
        mesh.unknown_of[i] = static_cast<int>(mesh.interior.size());
        mesh.interior.push_back(static_cast<int>(i));
      }
    }
  }

  // Face between nodes p and q with conductance c; Dirichlet neighbours only
  // contribute to the diagonal.
  void face(int p, int q, double c) {
    const int up = mesh_.unknown_of[p];
    const int uq = mesh_.unknown_of[q];
    if (up >= 0) triplets_.emplace_back(up, up, c);
    if (uq >= 0) triplets_.emplace_back(uq, uq, c);
    if (up >= 0 && uq >= 0) {
      triplets_.emplace_back(up, uq, -c);
      triplets_.emplace_back(uq, up, -c);
    }
  }

  void finish() {
    const auto m = static_cast<Eigen::Index>(mesh_.interior.size());
    mesh_.stiffness.resize(m, m);
    mesh_.stiffness.setFromTriplets(triplets_.begin(), triplets_.end());
    mesh_.stiffness.makeCompressed();
  }

 private:
  Mesh& mesh_;
  std::vector<Eigen::Triplet<double>> triplets_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw MeshError(what);
}

}  // namespace

double Mesh::spacing() const {
  switch (kind) {
    case MeshKind::Radial: return 1.0 / (resolution[0] - 1);
    case MeshKind::Polar: return 1.0 / (resolution[0] - 1);
    case MeshKind::Rect: return std::max(domain.lengths[0] / (resolution[0] - 1),
                                         domain.lengths[1] / (resolution[1] - 1));
  }
  return 0.0;
}

std::string Mesh::describe() const {
  std::string s = domain.describe() + " [";
  for (std::size_t i = 0; i < resolution.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(resolution[i]);
  }
  return s + "]";
}

MeshPtr make_radial_mesh(int n, int nodes) {
  require(n >= 2, "radial mesh needs dimension >= 2");
  require(nodes >= 3, "radial mesh needs at least 3 nodes");
  auto mesh = std::make_shared<Mesh>();
  mesh->domain = DomainSpec::ball(n);
  mesh->kind = MeshKind::Radial;
  mesh->resolution = {nodes};
  mesh->coord_dim = 1;

  const int last = nodes - 1;
  const double h = 1.0 / last;
  const double omega = omega_n(n);
  auto ball = [&](double r) { return omega * std::pow(r, n) / n; };

  mesh->coords.resize(nodes);
  mesh->radius.resize(nodes);
  mesh->weights.resize(nodes);
  mesh->boundary.assign(nodes, 0);
  for (int i = 0; i <= last; ++i) {
    const double r = (i == last) ? 1.0 : i * h;
    mesh->coords[i] = r;
    mesh->radius[i] = r;
    if (i == 0) mesh->weights[i] = ball(0.5 * h);
    else if (i == last) mesh->weights[i] = ball(1.0) - ball(1.0 - 0.5 * h);
    else mesh->weights[i] = ball(r + 0.5 * h) - ball(r - 0.5 * h);
  }
  mesh->boundary[last] = 1;

  Assembler assembler(*mesh);
  for (int i = 0; i < last; ++i) {
    const double mid = (i + 0.5) * h;
    assembler.face(i, i + 1, omega * std::pow(mid, n - 1) / h);
  }
  assembler.finish();
  return mesh;
}

MeshPtr make_rect_mesh(double a, double b, int nx, int ny) {
  require(a > 0.0 && b > 0.0, "rectangle lengths must be positive");
  require(nx >= 3 && ny >= 3, "rectangle mesh needs at least 3 nodes per axis");
  auto mesh = std::make_shared<Mesh>();
  mesh->domain = DomainSpec::rect(a, b);
  mesh->kind = MeshKind::Rect;
  mesh->resolution = {nx, ny};
  mesh->coord_dim = 2;

  const double hx = a / (nx - 1);
  const double hy = b / (ny - 1);
  const std::size_t total = static_cast<std::size_t>(nx) * ny;
  mesh->coords.resize(2 * total);
  mesh->radius.resize(total);
  mesh->weights.resize(static_cast<Eigen::Index>(total));
  mesh->boundary.assign(total, 0);
  auto index = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = index(i, j);
      const double x = (i == nx - 1) ? a : i * hx;
      const double y = (j == ny - 1) ? b : j * hy;
      mesh->coords[2 * k] = x;
      mesh->coords[2 * k + 1] = y;
      mesh->radius[k] = std::hypot(x, y);
      const bool edge_x = (i == 0 || i == nx - 1);
      const bool edge_y = (j == 0 || j == ny - 1);
      mesh->weights[k] = hx * hy * (edge_x ? 0.5 : 1.0) * (edge_y ? 0.5 : 1.0);
      mesh->boundary[k] = (edge_x || edge_y) ? 1 : 0;
    }
  }

  Assembler assembler(*mesh);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) assembler.face(index(i, j), index(i + 1, j), hy / hx);
      if (j + 1 < ny) assembler.face(index(i, j), index(i, j + 1), hx / hy);
    }
  }
  assembler.finish();
  return mesh;
}

MeshPtr make_polar_mesh(int radial_nodes, int angles) {
  require(radial_nodes >= 3, "polar mesh needs at least 3 radial nodes");
  require(angles >= 4, "polar mesh needs at least 4 angles");
  auto mesh = std::make_shared<Mesh>();
  mesh->domain = DomainSpec::disk();
  mesh->kind = MeshKind::Polar;
  mesh->resolution = {radial_nodes, angles};
  mesh->coord_dim = 2;

  const int rings = radial_nodes - 1;
  const double h = 1.0 / rings;
  const double dtheta = 2.0 * kPi / angles;
  const std::size_t total = 1 + static_cast<std::size_t>(rings) * angles;
  auto index = [angles](int ring, int j) { return 1 + (ring - 1) * angles + j; };

  mesh->coords.assign(2 * total, 0.0);
  mesh->radius.assign(total, 0.0);
  mesh->weights.resize(static_cast<Eigen::Index>(total));
  mesh->boundary.assign(total, 0);
  mesh->weights[0] = kPi * h * h / 4.0;
  for (int ring = 1; ring <= rings; ++ring) {
    const double r = (ring == rings) ? 1.0 : ring * h;
    const double w = (ring == rings) ? 0.5 * (1.0 - (1.0 - 0.5 * h) * (1.0 - 0.5 * h)) * dtheta
                                     : r * h * dtheta;
    for (int j = 0; j < angles; ++j) {
      const int k = index(ring, j);
      const double theta = j * dtheta;
      mesh->coords[2 * k] = r * std::cos(theta);
      mesh->coords[2 * k + 1] = r * std::sin(theta);
      mesh->radius[k] = r;
      mesh->weights[k] = w;
      mesh->boundary[k] = (ring == rings) ? 1 : 0;
    }
  }

  Assembler assembler(*mesh);
  for (int j = 0; j < angles; ++j) assembler.face(0, index(1, j), 0.5 * dtheta);
  for (int ring = 1; ring < rings; ++ring) {
    const double r = ring * h;
    const double outer = (ring + 0.5) * h * dtheta / h;
    const double around = h / (r * dtheta);
    for (int j = 0; j < angles; ++j) {
      assembler.face(index(ring, j), index(ring + 1, j), outer);
      assembler.face(index(ring, j), index(ring, (j + 1) % angles), around);
    }
  }
  assembler.finish();
  return mesh;
}

MeshPtr make_mesh(const DomainSpec& domain, const std::vector<int>& resolution) {
  const auto res = resolution.empty() ? default_resolution(domain) : resolution;
  switch (domain.kind) {
    case DomainKind::Disk2D:
      require(res.size() == 2, "disk mesh resolution is (radial nodes, angles)");
      return make_polar_mesh(res[0], res[1]);
    case DomainKind::BallRadial:
      require(res.size() == 1, "radial mesh resolution is a single node count");
      return make_radial_mesh(domain.dimension, res[0]);
    case DomainKind::Rect2D:
    case DomainKind::RectND:
      require(domain.lengths.size() == 2, "only two-dimensional rectangles can be meshed");
      require(res.size() == 2, "rectangle mesh resolution is (nx, ny)");
      return make_rect_mesh(domain.lengths[0], domain.lengths[1], res[0], res[1]);
  }
  throw MeshError("unknown domain kind");
}

std::vector<int> default_resolution(const DomainSpec& domain) {
  switch (domain.kind) {
    case DomainKind::Disk2D: return {129, 128};
    case DomainKind::BallRadial: return {2049};
    case DomainKind::Rect2D:
    case DomainKind::RectND: {
      std::vector<int> res;
      for (double len : domain.lengths) res.push_back(static_cast<int>(std::lround(64.0 * len)) + 1);
      return res;
    }
  }
  return {};
}

Field::Field(MeshPtr m, Eigen::VectorXd v) : mesh(std::move(m)), values(std::move(v)) {
  if (!mesh) throw MeshError("field needs a mesh");
  if (static_cast<std::size_t>(values.size()) != mesh->size())
    throw MeshError("field length " + std::to_string(values.size()) + " does not match mesh size " +
                    std::to_string(mesh->size()));
}

Field Field::zeros(MeshPtr m) {
  const auto n = static_cast<Eigen::Index>(m->size());
  return Field(std::move(m), Eigen::VectorXd::Zero(n));
}

Field Field::constant(MeshPtr m, double c) {
  const auto n = static_cast<Eigen::Index>(m->size());
  return Field(std::move(m), Eigen::VectorXd::Constant(n, c));
}

Field Field::sample(MeshPtr m, const std::function<double(std::span<const double>)>& fn) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(m->size()));
  for (std::size_t i = 0; i < m->size(); ++i) v[static_cast<Eigen::Index>(i)] = fn(m->point(i));
  return Field(std::move(m), std::move(v));
}

bool Field::is_dirichlet() const {
  for (std::size_t i = 0; i < mesh->size(); ++i)
    if (mesh->boundary[i] && values[static_cast<Eigen::Index>(i)] != 0.0) return false;
  return true;
}

void require_same_mesh(const Field& u, const Field& v) {
  if (!u.mesh || u.mesh != v.mesh) throw MeshError("fields live on different meshes");
}

double inner(const Field& u, const Field& v) {
  require_same_mesh(u, v);
  return kernels::parallel::weighted_dot(u.values.size(), u.mesh->weights.data(), u.values.data(),
                                         v.values.data());
}

double norm(const Field& u) { return std::sqrt(inner(u, u)); }

Eigen::VectorXd restrict_to_interior(const Mesh& mesh, const Eigen::VectorXd& values) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(mesh.unknowns()));
  for (std::size_t k = 0; k < mesh.unknowns(); ++k) out[static_cast<Eigen::Index>(k)] = values[mesh.interior[k]];
  return out;
}

Eigen::VectorXd extend_from_interior(const Mesh& mesh, const Eigen::VectorXd& unknowns) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.size()));
  for (std::size_t k = 0; k < mesh.unknowns(); ++k) out[mesh.interior[k]] = unknowns[static_cast<Eigen::Index>(k)];
  return out;
}

Field laplacian(const Field& u) {
  const Mesh& mesh = *u.mesh;
  const Eigen::VectorXd x = restrict_to_interior(mesh, u.values);
  Eigen::VectorXd sx(x.size());
  const kernels::CsrView view{mesh.stiffness.rows(), mesh.stiffness.outerIndexPtr(),
                              mesh.stiffness.innerIndexPtr(), mesh.stiffness.valuePtr()};
  kernels::parallel::csr_apply(view, x.data(), sx.data());
  for (std::size_t k = 0; k < mesh.unknowns(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    sx[kk] = -sx[kk] / mesh.weights[mesh.interior[k]];
  }
  return Field(u.mesh, extend_from_interior(mesh, sx));
}

}  // namespace rescurve
