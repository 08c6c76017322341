#include "rescurve/continuation.hpp"

#include <cmath>
#include <string>

#include "rescurve/kernels.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve {

namespace {

Field map_values(const Field& u, const ScalarFn& f) {
  Field out = Field::zeros(u.mesh);
  kernels::parallel::transform(u.values.size(), u.values.data(), out.values.data(), f);
  return out;
}

void zero_boundary(Field& f) {
  for (std::size_t i = 0; i < f.mesh->size(); ++i)
    if (f.mesh->boundary[i]) f.values[static_cast<Eigen::Index>(i)] = 0.0;
}

void fill_diagnostics(CurvePoint& p, const ResonantSystem& system) {
  p.pde_residual = system.residual_norm(p.u, p.mu);
  p.projection_error = std::abs(inner(p.u, system.phi1()) - p.xi);
  p.min_u = p.u.values.minCoeff();
  p.max_u = p.u.values.maxCoeff();
}

std::vector<double> xi_grid(const ContinuationConfig& cfg) {
  const double span = cfg.xi_end - cfg.xi_start;
  const auto steps = static_cast<long>(std::floor(span / cfg.dxi + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) grid.push_back(cfg.xi_start + static_cast<double>(k) * cfg.dxi);
  return grid;
}

}  // namespace

std::string_view predictor_name(PredictorMode mode) {
  switch (mode) {
    case PredictorMode::None: return "none";
    case PredictorMode::SlopeReuse: return "slope_reuse";
    case PredictorMode::Secant: return "secant";
  }
  return "none";
}

PredictorMode parse_predictor(std::string_view name) {
  if (name == "none") return PredictorMode::None;
  if (name == "slope_reuse") return PredictorMode::SlopeReuse;
  if (name == "secant") return PredictorMode::Secant;
  throw std::invalid_argument("unknown predictor '" + std::string(name) + "'");
}

std::string_view eigenpair_mode_name(EigenpairMode mode) {
  return mode == EigenpairMode::Discrete ? "discrete" : "continuous";
}

EigenpairMode parse_eigenpair_mode(std::string_view name) {
  if (name == "discrete") return EigenpairMode::Discrete;
  if (name == "continuous") return EigenpairMode::Continuous;
  throw std::invalid_argument("unknown eigenpair mode '" + std::string(name) + "'");
}

void ContinuationConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("continuation config: " + what); };
  if (!std::isfinite(xi_start) || !std::isfinite(xi_end)) fail("xi range must be finite");
  if (!(xi_end >= xi_start)) fail("xi_end must be >= xi_start");
  if (!(dxi > 0.0)) fail("dxi must be > 0");
  if (!(newton_rel_tol > 0.0) || !(mu_floor > 0.0) || !(mu_abs_tol > 0.0) || !(residual_tol > 0.0))
    fail("tolerances must be > 0");
  if (max_newton_iters < 1) fail("max_newton_iters must be >= 1");
  if (max_halvings < 0) fail("max_halvings must be >= 0");
  if ((xi_end - xi_start) / dxi > 1e6) fail("xi grid has more than a million points");
}

ResonantSystem::ResonantSystem(ProblemSpec problem, MeshPtr mesh, EigenpairMode mode)
    : problem_(std::move(problem)), mesh_(std::move(mesh)) {
  if (mode == EigenpairMode::Discrete) {
    auto pair = discrete_eigenpair(mesh_);
    lambda1_ = pair.lambda1;
    phi1_ = std::move(pair.phi1);
  } else {
    const Eigenpair pair = eigenpair_for(mesh_->domain);
    lambda1_ = pair.lambda1;
    phi1_ = Field::sample(mesh_, pair.phi1);
    zero_boundary(phi1_);
  }
  forcing_ = sample_forcing(problem_.forcing, mesh_);
  forcing_defect_ = inner(forcing_, phi1_);
  if (mode == EigenpairMode::Discrete) {
    // Orthogonality must hold exactly at the discrete level.
    forcing_.values -= (forcing_defect_ / inner(phi1_, phi1_)) * phi1_.values;
  }
  solver_.emplace(mesh_, phi1_);
}

Field ResonantSystem::residual(const Field& u, double mu) const {
  Field r = laplacian(u);
  const Field hu = map_values(u, problem_.nonlinearity.h);
  r.values += lambda1_ * u.values + hu.values - mu * phi1_.values - forcing_.values;
  zero_boundary(r);
  return r;
}

double ResonantSystem::residual_norm(const Field& u, double mu) const { return norm(residual(u, mu)); }

CurvePoint newton_solve(ResonantSystem& system, double xi, const Field& u0, double mu0,
                        const ContinuationConfig& cfg, Tangent* tangent) {
  const Nonlinearity& h = system.problem().nonlinearity;
  const MeshPtr& mesh = system.mesh();
  require_same_mesh(u0, system.phi1());

  CurvePoint point;
  point.xi = xi;
  point.u = u0;
  point.mu = mu0;
  const Field zero = Field::zeros(mesh);

  for (int it = 1; it <= cfg.max_newton_iters; ++it) {
    const Field dh = map_values(point.u, h.dh);
    const Field hu = map_values(point.u, h.h);
    Field a = dh;
    a.values.array() += system.lambda1();
    Field rhs = Field::zeros(mesh);
    rhs.values = dh.values.cwiseProduct(point.u.values) - hu.values + system.forcing().values;

    system.solver().refactorize(a);
    const auto dir = system.solver().solve(zero, 1.0);
    const auto part = system.solver().solve(rhs, 0.0);

    const double mu_next = xi * dir.s + part.s;
    Field u_next(mesh, xi * dir.w.values + part.w.values);
    if (!std::isfinite(mu_next) || !u_next.values.allFinite()) {
      point.newton_iters = it;
      throw NewtonError("newton: non-finite iterate at xi = " + std::to_string(xi), point);
    }
    if (tangent) *tangent = Tangent{dir.w, dir.s};

    const double change = std::abs(mu_next - point.mu);
    const double scale = std::max(std::abs(point.mu), cfg.mu_floor);
    point.mu = mu_next;
    point.u = std::move(u_next);
    point.newton_iters = it;

    const bool mu_settled = change < cfg.newton_rel_tol * scale || change <= cfg.mu_abs_tol * std::max(1.0, std::abs(xi));
    if (mu_settled) {
      const double res = system.residual_norm(point.u, point.mu);
      if (res <= cfg.residual_tol * (1.0 + norm(point.u))) {
        fill_diagnostics(point, system);
        return point;
      }
    }
  }
  fill_diagnostics(point, system);
  throw NewtonError("newton: no convergence in " + std::to_string(cfg.max_newton_iters) + " iterations at xi = " +
                        std::to_string(xi),
                    point);
}

Field predict(const CurvePoint& prev, const CurvePoint* prev2, const Tangent* tangent, double dxi,
              PredictorMode mode) {
  if (mode == PredictorMode::None || !tangent) return prev.u;
  const Field& z1 = tangent->z1;
  require_same_mesh(prev.u, z1);
  if (mode == PredictorMode::Secant) {
    if (!prev2) return prev.u;
    // Step along z1 equivalent to (mu_n - mu_{n-1}) w1.
    const double t = (prev.mu - prev2->mu) / tangent->s1;
    if (std::isfinite(t) && std::abs(t) <= 4.0 * std::abs(dxi)) return Field(prev.u.mesh, prev.u.values + t * z1.values);
  }
  return Field(prev.u.mesh, prev.u.values + dxi * z1.values);
}

SolutionCurve trace_curve(const ProblemSpec& problem, const ContinuationConfig& cfg) {
  cfg.validate();
  ResonantSystem system(problem, make_mesh(problem.domain, cfg.resolution), cfg.eigenpair_mode);

  SolutionCurve curve;
  curve.problem_id = problem.id;
  curve.config = cfg;
  curve.mesh = system.mesh();
  curve.lambda1 = system.lambda1();
  curve.phi1 = system.phi1();
  curve.forcing_defect = system.forcing_defect();

  const auto grid = xi_grid(cfg);
  Tangent tangent;
  bool have_tangent = false;

  auto fail = [&](double xi, const std::exception& err) {
    throw ContinuationError("continuation failed at xi = " + std::to_string(xi) + ": " + err.what(), curve, xi);
  };

  try {
    const Field u0(system.mesh(), grid.front() * system.phi1().values);
    curve.points.push_back(newton_solve(system, grid.front(), u0, 0.0, cfg, &tangent));
    have_tangent = true;
  } catch (const NewtonError& e) {
    fail(grid.front(), e);
  } catch (const SolveError& e) {
    fail(grid.front(), e);
  }

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double target = grid[k];
    const CurvePoint& prev = curve.points.back();
    const CurvePoint* prev2 = curve.points.size() >= 2 ? &curve.points[curve.points.size() - 2] : nullptr;
    const double step = target - prev.xi;

    const Tangent accepted = tangent;
    std::optional<CurvePoint> next;
    std::string last_error;
    for (int halvings = 0; halvings <= cfg.max_halvings && !next; ++halvings) {
      try {
        if (halvings == 0) {
          const Field guess = predict(prev, prev2, have_tangent ? &tangent : nullptr, step, cfg.predictor);
          next = newton_solve(system, target, guess, prev.mu, cfg, &tangent);
        } else {
          // Substeps along the tangent from the last accepted point.
          const int pieces = 1 << halvings;
          CurvePoint cur = prev;
          Tangent local = accepted;
          for (int s = 1; s <= pieces; ++s) {
            const double xi = prev.xi + step * s / pieces;
            const Field guess = Field(cur.u.mesh, cur.u.values + (xi - cur.xi) * local.z1.values);
            cur = newton_solve(system, xi, guess, cur.mu, cfg, &local);
          }
          tangent = local;
          next = std::move(cur);
        }
      } catch (const NewtonError& e) {
        last_error = e.what();
      } catch (const SolveError& e) {
        last_error = e.what();
      }
    }
    if (!next) fail(target, std::runtime_error(last_error));
    have_tangent = true;
    curve.points.push_back(std::move(*next));
  }
  return curve;
}

}  // namespace rescurve
