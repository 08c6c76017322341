#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rescurve/linsolve.hpp"
#include "rescurve/problems.hpp"

namespace rescurve {

enum class EigenpairMode { Discrete, Continuous };
enum class PredictorMode { None, SlopeReuse, Secant };

std::string_view predictor_name(PredictorMode mode);
PredictorMode parse_predictor(std::string_view name);
std::string_view eigenpair_mode_name(EigenpairMode mode);
EigenpairMode parse_eigenpair_mode(std::string_view name);

struct ContinuationConfig {
  double xi_start = 0.0;
  double xi_end = 10.0;
  double dxi = 0.1;
  double newton_rel_tol = 1e-8;
  double mu_floor = 1e-12;
  /// Absolute round-off guard: |dmu| <= mu_abs_tol * max(1, |xi|) also stops.
  double mu_abs_tol = 1e-11;
  int max_newton_iters = 25;
  /// Accepted discrete residual is residual_tol * (1 + ||u||).
  double residual_tol = 1e-6;
  int max_halvings = 4;
  std::vector<int> resolution;  // empty: default_resolution(domain)
  EigenpairMode eigenpair_mode = EigenpairMode::Discrete;
  PredictorMode predictor = PredictorMode::None;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct CurvePoint {
  double xi = 0.0;
  double mu = 0.0;
  Field u;
  int newton_iters = 0;
  double pde_residual = 0.0;
  double projection_error = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
};

/// Tangent of the last linearization: z1 solves the linearized system for a
/// unit change of xi with zero right-hand side, s1 is its mu component. The
/// classical w1 (solution with right-hand side phi1) is z1 / s1.
struct Tangent {
  Field z1;
  double s1 = 0.0;
};

struct SolutionCurve {
  std::string problem_id;
  ContinuationConfig config;
  MeshPtr mesh;
  double lambda1 = 0.0;
  Field phi1;
  /// inner(e, phi1) before projection; removed in discrete mode.
  double forcing_defect = 0.0;
  std::vector<CurvePoint> points;
};

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, CurvePoint last) : std::runtime_error(what), last_(std::move(last)) {}
  const CurvePoint& last() const { return last_; }

 private:
  CurvePoint last_;
};

class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string& what, SolutionCurve partial, double failing_xi)
      : std::runtime_error(what), partial_(std::move(partial)), failing_xi_(failing_xi) {}
  const SolutionCurve& partial() const { return partial_; }
  double failing_xi() const { return failing_xi_; }

 private:
  SolutionCurve partial_;
  double failing_xi_;
};

/// Discretized resonant problem Lap_h u + lambda1 u + h(u) = mu phi1 + e on a
/// mesh, with the eigenpair chosen by mode. Holds the bordered factorization,
/// so one instance serves one trace at a time.
class ResonantSystem {
 public:
  ResonantSystem(ProblemSpec problem, MeshPtr mesh, EigenpairMode mode);

  const ProblemSpec& problem() const { return problem_; }
  const MeshPtr& mesh() const { return mesh_; }
  double lambda1() const { return lambda1_; }
  const Field& phi1() const { return phi1_; }
  const Field& forcing() const { return forcing_; }
  double forcing_defect() const { return forcing_defect_; }

  /// Discrete residual, zero on the boundary.
  Field residual(const Field& u, double mu) const;
  /// Mesh norm of the residual over interior nodes.
  double residual_norm(const Field& u, double mu) const;

  BorderedSolver& solver() { return *solver_; }

 private:
  ProblemSpec problem_;
  MeshPtr mesh_;
  double lambda1_ = 0.0;
  Field phi1_;
  Field forcing_;
  double forcing_defect_ = 0.0;
  std::optional<BorderedSolver> solver_;
};

/// Newton iteration at fixed xi from (u0, mu0). Each iteration factorizes the
/// bordered linearization once and solves for the xi-direction and the
/// right-hand-side part; mu and u follow by superposition.
CurvePoint newton_solve(ResonantSystem& system, double xi, const Field& u0, double mu0,
                        const ContinuationConfig& cfg, Tangent* tangent = nullptr);

/// Initial guess for the next grid point.
///   none: prev.u
///   slope_reuse: prev.u + dxi z1
///   secant: prev.u + (mu_n - mu_{n-1}) w1 with w1 = z1 / s1; falls back to
///     slope_reuse when that step is not finite or exceeds 4 dxi along the
///     tangent, and to none without a second point.
Field predict(const CurvePoint& prev, const CurvePoint* prev2, const Tangent* tangent, double dxi,
              PredictorMode mode);

/// One CurvePoint per grid value xi_start + k dxi up to xi_end. A failed step
/// is retried with up to max_halvings halvings of the step; persistent
/// failure throws ContinuationError with the partial curve.
SolutionCurve trace_curve(const ProblemSpec& problem, const ContinuationConfig& cfg);

}  // namespace rescurve
