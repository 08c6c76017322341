#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "rescurve/domain.hpp"

namespace rescurve {

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MeshKind { Radial, Rect, Polar };

/// Finite-volume mesh of one of the supported domains.
///
/// Every node owns a control volume whose measure is its quadrature weight,
/// so the weights sum to the measure of the domain exactly. The discrete
/// Laplacian on interior nodes is -M^{-1} S with M = diag(weights) and S the
/// symmetric stiffness (face conductances), which makes it self-adjoint in
/// the weighted inner product. Boundary nodes carry Dirichlet data and are
/// not unknowns.
///
/// Radial: nodes r_i = i/N on [0, 1] of R^n (radial functions only), node N
/// on the boundary. Rect: nx x ny tensor grid, row-major in x. Polar: node 0
/// is the centre, ring i = 1..Nr at angle j has index 1 + (i-1) Ntheta + j,
/// ring Nr is the boundary circle.
struct Mesh {
  DomainSpec domain;
  MeshKind kind = MeshKind::Radial;
  std::vector<int> resolution;
  int coord_dim = 1;
  std::vector<double> coords;  // node-major, coord_dim per node
  std::vector<double> radius;  // |x| at each node (radial and polar)
  Eigen::VectorXd weights;
  std::vector<char> boundary;
  std::vector<int> interior;    // unknown index -> node index
  std::vector<int> unknown_of;  // node index -> unknown index or -1
  Eigen::SparseMatrix<double> stiffness;  // unknowns x unknowns, symmetric

  std::size_t size() const { return boundary.size(); }
  std::size_t unknowns() const { return interior.size(); }
  std::span<const double> point(std::size_t node) const {
    return {coords.data() + node * coord_dim, static_cast<std::size_t>(coord_dim)};
  }
  /// Radial meshes: mesh spacing. Polar: radial spacing.
  double spacing() const;
  std::string describe() const;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Radial mesh of the unit ball in R^n with `nodes` points on [0, 1].
MeshPtr make_radial_mesh(int n, int nodes);
/// Rectangle (0, a) x (0, b) with nx x ny nodes including the boundary.
MeshPtr make_rect_mesh(double a, double b, int nx, int ny);
/// Unit disk, `radial_nodes` points along a ray (centre through boundary)
/// and `angles` rays.
MeshPtr make_polar_mesh(int radial_nodes, int angles);
/// Dispatch by domain: Disk2D -> polar, BallRadial -> radial, Rect2D (or
/// two-dimensional RectND) -> rect. Resolution follows the factories above.
MeshPtr make_mesh(const DomainSpec& domain, const std::vector<int>& resolution);
/// Resolution used when the caller gives none.
std::vector<int> default_resolution(const DomainSpec& domain);

/// Nodal values on a mesh.
struct Field {
  MeshPtr mesh;
  Eigen::VectorXd values;

  Field() = default;
  Field(MeshPtr m, Eigen::VectorXd v);
  static Field zeros(MeshPtr m);
  static Field constant(MeshPtr m, double c);
  /// Samples fn at every node (Cartesian coordinates; radial meshes pass r).
  static Field sample(MeshPtr m, const std::function<double(std::span<const double>)>& fn);

  /// True when all boundary values are exactly zero.
  bool is_dirichlet() const;
};

/// Weighted inner product sum_i w_i u_i v_i. Throws MeshError when the fields
/// live on different meshes.
double inner(const Field& u, const Field& v);
/// sqrt(inner(u, u)).
double norm(const Field& u);

/// Discrete Laplacian at interior nodes; boundary entries are zero. The field
/// is treated as vanishing on the boundary.
Field laplacian(const Field& u);

/// Gathers interior values into an unknowns vector and scatters back.
Eigen::VectorXd restrict_to_interior(const Mesh& mesh, const Eigen::VectorXd& values);
Eigen::VectorXd extend_from_interior(const Mesh& mesh, const Eigen::VectorXd& unknowns);

void require_same_mesh(const Field& u, const Field& v);

}  // namespace rescurve
