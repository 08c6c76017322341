#include "rescurve/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rescurve/acceptance.hpp"
#include "rescurve/asym.hpp"
#include "rescurve/kernels.hpp"
#include "rescurve/output.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kCommands[] = {"eigen", "curve", "asymptotic", "check"};

std::string ten_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T>
T get(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config field '" + key + "' has the wrong type");
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path.string());
  file << text;
  if (!file) throw UsageError("write failed for " + path.string());
}

std::string file_stem(std::string id) {
  for (char& c : id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
  return id;
}

// Wraps numerical and catalog errors raised while resolving inputs as usage errors.
template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  as_usage([&] {
    ContinuationConfig grid = continuation;
    // A log-spaced asymptotic grid does not use dxi.
    if (command == "asymptotic" && log_points > 0) grid.dxi = std::max(grid.dxi, grid.xi_end - grid.xi_start);
    grid.validate();
    return 0;
  });
  if (domain && *domain != "disk" && *domain != "ball" && *domain != "rect")
    throw UsageError("domain must be disk, ball or rect");
  if (dimension < 1) throw UsageError("dimension must be positive");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l)) throw UsageError("lengths must be positive");
  for (double d : dims)
    if (!(d > 0.0) || !std::isfinite(d)) throw UsageError("dims must be positive");
  if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("p must be positive");
  if (log_points < 0 || log_points == 1) throw UsageError("log_points must be 0 or at least 2");
  if (filter_small && !(*filter_small >= 0.0)) throw UsageError("filter_small must be non-negative");
  if (command == "eigen" || command == "curve" || command == "asymptotic") {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path probe = fs::path(out_dir) / ".rescurve-write-probe";
    std::ofstream file(probe);
    if (!file) throw UsageError("output directory is not writable: " + out_dir);
    file.close();
    fs::remove(probe, ec);
  }
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  RunConfig c;
  ContinuationConfig& k = c.continuation;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") c.command = get<std::string>(value, key);
    else if (key == "problem") c.problem = get<std::string>(value, key);
    else if (key == "domain") c.domain = get<std::string>(value, key);
    else if (key == "dimension") c.dimension = get<int>(value, key);
    else if (key == "lengths") c.lengths = get<std::vector<double>>(value, key);
    else if (key == "nonlinearity") c.nonlinearity = get<std::string>(value, key);
    else if (key == "forcing") c.forcing = get<std::string>(value, key);
    else if (key == "forcing_table") {
      if (!value.is_object() || !value.contains("axes") || !value.contains("values"))
        throw UsageError("forcing_table needs 'axes' and 'values'");
      c.forcing_table = TabulatedForcingConfig{get<std::vector<std::vector<double>>>(value["axes"], "forcing_table.axes"),
                                               get<std::vector<double>>(value["values"], "forcing_table.values")};
    }
    else if (key == "xi_start") k.xi_start = get<double>(value, key);
    else if (key == "xi_end") k.xi_end = get<double>(value, key);
    else if (key == "dxi") k.dxi = get<double>(value, key);
    else if (key == "newton_rel_tol") k.newton_rel_tol = get<double>(value, key);
    else if (key == "mu_floor") k.mu_floor = get<double>(value, key);
    else if (key == "mu_abs_tol") k.mu_abs_tol = get<double>(value, key);
    else if (key == "max_newton_iters") k.max_newton_iters = get<int>(value, key);
    else if (key == "residual_tol") k.residual_tol = get<double>(value, key);
    else if (key == "max_halvings") k.max_halvings = get<int>(value, key);
    else if (key == "resolution") k.resolution = get<std::vector<int>>(value, key);
    else if (key == "eigenpair_mode") k.eigenpair_mode = as_usage([&] { return parse_eigenpair_mode(get<std::string>(value, key)); });
    else if (key == "predictor") k.predictor = as_usage([&] { return parse_predictor(get<std::string>(value, key)); });
    else if (key == "formula") c.formula = get<std::string>(value, key);
    else if (key == "p") c.p = get<double>(value, key);
    else if (key == "dims") c.dims = get<std::vector<double>>(value, key);
    else if (key == "formula_nonlinearity") c.formula_nonlinearity = get<std::string>(value, key);
    else if (key == "log_points") c.log_points = get<int>(value, key);
    else if (key == "suite") c.suite = get<std::string>(value, key);
    else if (key == "out_dir") c.out_dir = get<std::string>(value, key);
    else if (key == "plot") c.plot = get<bool>(value, key);
    else if (key == "signed_log") c.signed_log = get<bool>(value, key);
    else if (key == "filter_small") {
      if (!value.is_null()) c.filter_small = get<double>(value, key);
    }
    else throw UsageError("unknown config field '" + key + "'");
  }
  return c;
}

DomainSpec resolve_domain(const RunConfig& config) {
  return as_usage([&] {
    if (!config.domain) return builtin(config.problem).domain;
    if (*config.domain == "disk") return DomainSpec::disk();
    if (*config.domain == "ball") return DomainSpec::ball(config.dimension);
    if (*config.domain == "rect") return DomainSpec::rect(config.lengths.empty() ? std::vector<double>{1.0, 1.0} : config.lengths);
    throw UsageError("unknown domain: " + *config.domain);
  });
}

ProblemSpec resolve_problem(const RunConfig& config) {
  return as_usage([&] {
    ProblemSpec spec = builtin(config.problem);
    const bool custom = config.domain || config.nonlinearity || config.forcing || config.forcing_table;
    if (config.domain) spec.domain = resolve_domain(config);
    if (config.nonlinearity) spec.nonlinearity = nonlinearity(*config.nonlinearity);
    if (config.forcing) spec.forcing = forcing(*config.forcing);
    if (config.forcing_table) spec.forcing = tabulated_forcing(config.forcing_table->axes, config.forcing_table->values);
    if (custom) {
      spec.id = config.problem + "-custom";
      if (config.nonlinearity) spec.asymptotic_p.reset();
    }
    return spec;
  });
}

int cmd_eigen(const RunConfig& config, std::ostream& out, std::ostream&) {
  const DomainSpec domain = resolve_domain(config);
  const Eigenpair pair = as_usage([&] { return eigenpair_for(domain); });

  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("lambda1", pair.lambda1);
  if (pair.lambda2) rows.emplace_back("lambda2", *pair.lambda2);
  if (pair.nu1) rows.emplace_back("nu1", *pair.nu1);
  if (pair.c0) rows.emplace_back("c0", *pair.c0);
  if (domain.is_ball()) {
    rows.emplace_back("omega_n", omega_n(domain.dimension));
    rows.emplace_back("phi1_0", pair.radial(0.0));
  } else {
    std::vector<double> centre;
    for (double l : domain.lengths) centre.push_back(0.5 * l);
    rows.emplace_back("phi1_max", pair.phi1(centre));
  }

  std::ostringstream csv;
  csv << "quantity,value\n";
  out << "domain " << domain.describe() << '\n';
  for (const auto& [name, value] : rows) {
    out << name << " = " << ten_digits(value) << '\n';
    csv << name << ',' << format_number(value) << '\n';
  }
  const fs::path path = fs::path(config.out_dir) / "eigen.csv";
  write_file(path, csv.str());
  out << "wrote " << path.string() << '\n';
  return kSuccess;
}

namespace {

void emit_curve(const RunConfig& config, const SolutionCurve& curve, const std::optional<AsymptoticCurve>& asymptotic,
                std::ostream& out) {
  std::ostringstream csv;
  write_curve_csv(csv, curve, asymptotic ? &*asymptotic : nullptr);
  const fs::path base = fs::path(config.out_dir) / file_stem(curve.problem_id);
  write_file(base.string() + ".csv", csv.str());
  out << "wrote " << base.string() << ".csv (" << curve.points.size() << " points)\n";
  if (!config.plot) return;

  std::vector<PlotSeries> series(1);
  series[0].label = "computed";
  for (const CurvePoint& p : curve.points) {
    series[0].x.push_back(p.xi);
    series[0].y.push_back(p.mu);
  }
  if (asymptotic) {
    PlotSeries predicted{"asymptotic", {}, {}, true};
    for (const CurvePoint& p : curve.points) {
      if (p.xi <= 0.0) continue;
      predicted.x.push_back(p.xi);
      predicted.y.push_back((*asymptotic)(p.xi));
    }
    series.push_back(std::move(predicted));
  }
  write_file(base.string() + ".svg", render_svg(series, curve.problem_id, "xi1", "mu1"));
  out << "wrote " << base.string() << ".svg\n";
}

}  // namespace

int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ProblemSpec problem = resolve_problem(config);
  const std::optional<AsymptoticCurve> asymptotic = asymptotic_for(problem);
  try {
    const SolutionCurve curve = trace_curve(problem, config.continuation);
    emit_curve(config, curve, asymptotic, out);
    double worst = 0.0;
    for (const CurvePoint& p : curve.points) worst = std::max(worst, p.pde_residual);
    out << "max pde_residual " << format_number(worst) << ", forcing defect " << format_number(curve.forcing_defect)
        << '\n';
    return kSuccess;
  } catch (const ContinuationError& e) {
    emit_curve(config, e.partial(), asymptotic, out);
    err << "error: continuation failed at xi = " << format_number(e.failing_xi()) << ": " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int cmd_asymptotic(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const AsymptoticCurve curve = as_usage([&] {
    FormulaParams params;
    params.p = config.p;
    params.dims = config.dims;
    params.nonlinearity = config.formula_nonlinearity;
    return make_curve(parse_formula(config.formula), params);
  });

  const ContinuationConfig& k = config.continuation;
  AsymptoticTable table;
  if (config.log_points > 0) {
    table.xi = as_usage([&] { return log_grid(k.xi_start, k.xi_end, static_cast<std::size_t>(config.log_points)); });
  } else {
    const auto steps = static_cast<long>(std::floor((k.xi_end - k.xi_start) / k.dxi + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      const double xi = k.xi_start + static_cast<double>(i) * k.dxi;
      if (xi > 0.0) table.xi.push_back(xi);
    }
  }
  if (table.xi.empty()) throw UsageError("asymptotic grid has no points with xi > 0");

  table.mu.assign(table.xi.size(), 0.0);
  std::string failure;
  const auto n = static_cast<std::ptrdiff_t>(table.xi.size());
#ifdef RESCURVE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(kernels::thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      table.mu[static_cast<std::size_t>(i)] = curve(table.xi[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
#ifdef RESCURVE_HAVE_OPENMP
#pragma omp critical
#endif
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) {
    err << "error: " << failure << '\n';
    return kNumericalFailure;
  }

  std::ostringstream csv;
  write_asymptotic_csv(csv, table, config.signed_log, config.filter_small);
  const fs::path base = fs::path(config.out_dir) / file_stem(config.formula);
  write_file(base.string() + ".csv", csv.str());
  out << "wrote " << base.string() << ".csv (" << table.xi.size() << " points)\n";
  if (config.plot) {
    PlotSeries series{config.formula, {}, {}, true};
    for (std::size_t i = 0; i < table.xi.size(); ++i) {
      const double mu = table.mu[i];
      if (config.filter_small && std::abs(mu) < *config.filter_small) {
        series.x.push_back(std::nan(""));
        series.y.push_back(std::nan(""));
        continue;
      }
      const double s = (mu > 0.0) - (mu < 0.0);
      series.x.push_back(config.signed_log ? std::log(table.xi[i]) : table.xi[i]);
      series.y.push_back(config.signed_log ? s * std::log1p(std::abs(mu)) : mu);
    }
    const std::vector<PlotSeries> all{series};
    write_file(base.string() + ".svg", render_svg(all, config.formula, config.signed_log ? "log xi1" : "xi1",
                                                  config.signed_log ? "sign(mu1) log(1 + |mu1|)" : "mu1"));
    out << "wrote " << base.string() << ".svg\n";
  }
  return kSuccess;
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream&) {
  const std::vector<int> ids = as_usage([&] { return suite_criteria(config.suite); });
  int failed = 0;
  for (int id : ids) {
    const CriterionResult result = run_criterion(id);
    out << format_result(result) << std::endl;
    failed += result.passed ? 0 : 1;
  }
  out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? kSuccess : kNumericalFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solution curves of resonant semilinear Dirichlet problems"};
  app.name("rescurve");

  std::string command, target, config_path;
  app.add_option("command", command, "eigen | curve | asymptotic | check")->required()->check(CLI::IsMember(
      std::vector<std::string>(std::begin(kCommands), std::end(kCommands))));
  app.add_option("target", target, "problem id (curve), formula id (asymptotic), or suite id (check)");
  app.add_option("--config", config_path, "JSON config file");

  RunConfig cli;
  std::string predictor, eigenpair_mode;
  std::optional<double> filter_small;
  auto* o_out = app.add_option("--out", cli.out_dir, "output directory");
  auto* o_plot = app.add_flag("--plot", cli.plot, "also write an SVG plot");
  auto* o_signed = app.add_flag("--signed-log", cli.signed_log, "add log_xi,signed_log_mu columns");
  auto* o_filter = app.add_option("--filter-small", filter_small, "drop rows with |mu| below this value");
  auto* o_problem = app.add_option("--problem", cli.problem, "catalog problem id");
  auto* o_domain = app.add_option("--domain", cli.domain, "disk | ball | rect");
  auto* o_dim = app.add_option("--dimension", cli.dimension, "ball dimension");
  auto* o_lengths = app.add_option("--lengths", cli.lengths, "rectangle side lengths");
  auto* o_h = app.add_option("--nonlinearity", cli.nonlinearity, "catalog nonlinearity id");
  auto* o_e = app.add_option("--forcing", cli.forcing, "catalog forcing id");
  ContinuationConfig& k = cli.continuation;
  auto* o_xs = app.add_option("--xi-start", k.xi_start, "first grid value of xi1");
  auto* o_xe = app.add_option("--xi-end", k.xi_end, "last grid value of xi1");
  auto* o_dxi = app.add_option("--dxi", k.dxi, "grid step");
  auto* o_tol = app.add_option("--newton-rel-tol", k.newton_rel_tol, "relative Newton tolerance on mu");
  auto* o_iters = app.add_option("--max-newton-iters", k.max_newton_iters, "Newton iteration cap");
  auto* o_halv = app.add_option("--max-halvings", k.max_halvings, "step halvings before giving up");
  auto* o_res = app.add_option("--resolution", k.resolution, "mesh nodes per axis");
  auto* o_pred = app.add_option("--predictor", predictor, "none | slope_reuse | secant");
  auto* o_mode = app.add_option("--eigenpair-mode", eigenpair_mode, "discrete | continuous");
  auto* o_formula = app.add_option("--formula", cli.formula, "asymptotic formula id");
  auto* o_p = app.add_option("--p", cli.p, "growth exponent for disk-power-sin");
  auto* o_dims = app.add_option("--dims", cli.dims, "rectangle dimensions for rect formulas");
  auto* o_fh = app.add_option("--formula-nonlinearity", cli.formula_nonlinearity, "nonlinearity for projection");
  auto* o_logp = app.add_option("--log-points", cli.log_points, "log-spaced grid with this many points");
  auto* o_suite = app.add_option("--suite", cli.suite, "acceptance suite id or 'all'");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot read config file " + config_path);
      std::stringstream text;
      text << file.rdbuf();
      config = parse_run_config(text.str());
    }
    config.command = command;
    auto given = [](const CLI::Option* o) { return o->count() > 0; };
    if (given(o_out)) config.out_dir = cli.out_dir;
    if (given(o_plot)) config.plot = cli.plot;
    if (given(o_signed)) config.signed_log = cli.signed_log;
    if (given(o_filter)) config.filter_small = filter_small;
    if (given(o_problem)) config.problem = cli.problem;
    if (given(o_domain)) config.domain = cli.domain;
    if (given(o_dim)) config.dimension = cli.dimension;
    if (given(o_lengths)) config.lengths = cli.lengths;
    if (given(o_h)) config.nonlinearity = cli.nonlinearity;
    if (given(o_e)) config.forcing = cli.forcing;
    ContinuationConfig& ck = config.continuation;
    if (given(o_xs)) ck.xi_start = k.xi_start;
    if (given(o_xe)) ck.xi_end = k.xi_end;
    if (given(o_dxi)) ck.dxi = k.dxi;
    if (given(o_tol)) ck.newton_rel_tol = k.newton_rel_tol;
    if (given(o_iters)) ck.max_newton_iters = k.max_newton_iters;
    if (given(o_halv)) ck.max_halvings = k.max_halvings;
    if (given(o_res)) ck.resolution = k.resolution;
    if (given(o_pred)) ck.predictor = as_usage([&] { return parse_predictor(predictor); });
    if (given(o_mode)) ck.eigenpair_mode = as_usage([&] { return parse_eigenpair_mode(eigenpair_mode); });
    if (given(o_formula)) config.formula = cli.formula;
    if (given(o_p)) config.p = cli.p;
    if (given(o_dims)) config.dims = cli.dims;
    if (given(o_fh)) config.formula_nonlinearity = cli.formula_nonlinearity;
    if (given(o_logp)) config.log_points = cli.log_points;
    if (given(o_suite)) config.suite = cli.suite;
    if (!target.empty()) {
      if (command == "curve") config.problem = target;
      else if (command == "asymptotic") config.formula = target;
      else if (command == "check") config.suite = target;
      else throw UsageError("eigen takes no positional target; use --domain or --problem");
    }

    config.validate();
    if (command == "eigen") return cmd_eigen(config, out, err);
    if (command == "curve") return cmd_curve(config, out, err);
    if (command == "asymptotic") return cmd_asymptotic(config, out, err);
    return cmd_check(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace rescurve::cli
