#include <clocale>
#include <cmath>
#include <locale>
#include <sstream>

#include "doctest.h"
#include "rescurve/output.hpp"

using namespace rescurve;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

SolutionCurve tiny_curve() {
  SolutionCurve c;
  c.problem_id = "tiny";
  const MeshPtr m = make_radial_mesh(2, 5);
  for (int i = 0; i < 3; ++i) {
    CurvePoint p;
    p.xi = 0.5 * i;
    p.mu = i == 1 ? -1234.5 : 0.1;
    p.u = Field::zeros(m);
    p.newton_iters = 3 + i;
    p.pde_residual = 1e-9;
    p.projection_error = 0.0;
    p.min_u = -0.25;
    p.max_u = 1.5;
    c.points.push_back(p);
  }
  return c;
}

}  // namespace

TEST_SUITE("output") {
  TEST_CASE("numbers are shortest round-trip and locale independent") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-1234.5) == "-1234.5");
    CHECK(format_number(1e-9) == "1e-09");
    CHECK(format_number(std::nan("")) == "");
    CHECK(format_number(INFINITY) == "");
    CHECK(std::stod(format_number(2.0 / 3.0)) == 2.0 / 3.0);
    const char* previous = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    CHECK(format_number(1.5) == "1.5");
    if (previous) std::setlocale(LC_NUMERIC, "C");
  }

  TEST_CASE("curve CSV has the fixed header and one row per point") {
    std::ostringstream out;
    const SolutionCurve c = tiny_curve();
    const AsymptoticCurve zero = make_curve(FormulaId::Zero);
    write_curve_csv(out, c, &zero);
    const auto rows = lines(out.str());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "xi,mu_computed,mu_asymptotic,newton_iters,pde_residual,projection_error,min_u,max_u");
    CHECK(rows[1] == "0,0.1,,3,1e-09,0,-0.25,1.5");  // no prediction at xi = 0
    CHECK(rows[2] == "0.5,-1234.5,0,4,1e-09,0,-0.25,1.5");
    CHECK(out.str().find('\r') == std::string::npos);

    std::ostringstream bare;
    write_curve_csv(bare, c, nullptr);
    CHECK(lines(bare.str())[2] == "0.5,-1234.5,,4,1e-09,0,-0.25,1.5");
  }

  TEST_CASE("asymptotic CSV with signed log and small-value filter") {
    AsymptoticTable t{{1.0, std::exp(1.0), 10.0}, {0.5, -(std::exp(2.0) - 1.0), 3.0}};
    std::ostringstream plain;
    write_asymptotic_csv(plain, t, false, std::nullopt);
    CHECK(lines(plain.str()).size() == 4);
    CHECK(lines(plain.str())[0] == "xi,mu");

    std::ostringstream logged;
    write_asymptotic_csv(logged, t, true, 1.0);
    const auto rows = lines(logged.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "xi,mu,log_xi,signed_log_mu");
    std::istringstream row(rows[1]);
    std::string xi, mu, lx, lm;
    std::getline(row, xi, ',');
    std::getline(row, mu, ',');
    std::getline(row, lx, ',');
    std::getline(row, lm, ',');
    CHECK(std::stod(lx) == doctest::Approx(1.0));
    CHECK(std::stod(lm) == doctest::Approx(-2.0));
  }

  TEST_CASE("SVG is self-contained with solid and dashed series") {
    const std::vector<PlotSeries> series{{"computed", {0, 1, 2}, {0, 1, 0}, false},
                                         {"asymptotic", {0, 1, 2}, {0.1, 0.9, std::nan("")}, true}};
    const std::string svg = render_svg(series, "a < b & c", "xi1", "mu1");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(svg.find("http://www.w3.org/2000/svg") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(render_svg({}, "empty", "x", "y").find("</svg>") != std::string::npos);
  }
}
