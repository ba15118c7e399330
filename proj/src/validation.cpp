#include "georate/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "georate/errors.hpp"

namespace georate {
namespace {

struct Check {
  std::string quantity;
  std::string label;
  std::function<double()> analytic;
  std::function<Estimate(const McConfig&)> oracle;
};

std::string describe(const BeaconBoundRequest& req, double l) {
  std::ostringstream out;
  out << (req.dimension == Dimension::OneD ? "1d " : "2d ") << req.arrival_tau.to_token()
      << " s2=" << req.sigma2 << " r=" << req.radius << " l=" << l;
  return out.str();
}

std::string describe(double sigma2, const ArrivalProcess& arrival, unsigned k) {
  std::ostringstream out;
  out << arrival.to_token() << " s2=" << sigma2 << " k=" << k;
  return out.str();
}

std::vector<Check> build_grid() {
  std::vector<Check> checks;

  struct PCase {
    Dimension dim;
    ArrivalProcess tau;
    double sigma2;
    double radius;
    double l;
  };
  const PCase p_cases[] = {
      {Dimension::OneD, ArrivalProcess::deterministic(1.0), 1.0, 2.0, 0.0},
      {Dimension::OneD, ArrivalProcess::deterministic(1.0), 1.0, 2.0, 1.5},
      {Dimension::OneD, ArrivalProcess::uniform(2.0), 1.0, 2.0, 0.5},
      {Dimension::OneD, ArrivalProcess::uniform(3.0), 0.5, 1.0, 1.0},
      {Dimension::OneD, ArrivalProcess::exponential(1.0), 1.0, 2.0, 0.0},
      {Dimension::OneD, ArrivalProcess::exponential(0.5), 2.0, 3.0, 2.5},
      {Dimension::TwoD, ArrivalProcess::deterministic(1.0), 1.0, 2.0, 0.0},
      {Dimension::TwoD, ArrivalProcess::deterministic(1.0), 1.0, 2.0, 2.5},
      {Dimension::TwoD, ArrivalProcess::uniform(2.0), 1.0, 2.0, 1.0},
      {Dimension::TwoD, ArrivalProcess::exponential(1.0), 1.0, 2.0, 0.5},
  };
  for (const auto& c : p_cases) {
    const BeaconBoundRequest req{c.dim, c.sigma2, c.radius, c.tau, 0.0, 1};
    const double l = c.l;
    checks.push_back({"p(l)", describe(req, l), [req, l] { return p_neighbor(req, l); },
                      [req, l](const McConfig& mc) { return estimate_p_l(req, l, mc); }});
  }

  struct DCase {
    double sigma2;
    ArrivalProcess arrival;
    unsigned k;
  };
  const DCase entropy_cases[] = {
      {1.0, ArrivalProcess::deterministic(1.0), 1},
      {2.0, ArrivalProcess::exponential(1.0), 1},
      {1.0, ArrivalProcess::uniform(1.0), 1},
      {0.5, ArrivalProcess::uniform(1.0), 1},
      {0.5, ArrivalProcess::uniform(2.0), 2},
      {1.0, ArrivalProcess::exponential(2.0), 3},
  };
  for (const auto& c : entropy_cases) {
    const DisplacementDensity density(c.sigma2, c.arrival, c.k);
    checks.push_back({"entropy", describe(c.sigma2, c.arrival, c.k),
                      [density] { return density.differential_entropy(); },
                      [density](const McConfig& mc) { return estimate_entropy(density, mc); }});
  }

  const DCase variance_cases[] = {
      {1.0, ArrivalProcess::deterministic(1.0), 1},
      {2.0, ArrivalProcess::exponential(1.0), 1},
      {1.0, ArrivalProcess::uniform(2.0), 1},
      {1.0, ArrivalProcess::deterministic(1.0), 3},
      {1.0, ArrivalProcess::exponential(2.0), 2},
      {3.0, ArrivalProcess::uniform(1.0), 4},
  };
  for (const auto& c : variance_cases) {
    const DisplacementDensity density(c.sigma2, c.arrival, c.k);
    checks.push_back({"variance", describe(c.sigma2, c.arrival, c.k),
                      [density] { return density.second_moment(); },
                      [c](const McConfig& mc) {
                        return estimate_variance(c.sigma2, c.arrival, c.k, mc);
                      }});
  }
  return checks;
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass; });
}

ValidationReport run_validation(const McConfig& mc, double band_sigmas) {
  validate(mc);
  if (!(band_sigmas >= 0.0)) throw InvalidArgument("tolerance band must be nonnegative");
  ValidationReport report;
  report.band_sigmas = band_sigmas;
  const auto checks = build_grid();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& check = checks[i];
    McConfig local = mc;
    local.master_seed = substream_seed(mc.master_seed, 1'000'000 + i);
    ValidationRow row;
    row.quantity = check.quantity;
    row.label = check.label;
    row.analytic = check.analytic();
    const auto estimate = check.oracle(local);
    row.monte_carlo = estimate.value;
    row.std_error = estimate.std_error;
    const double gap = std::abs(row.analytic - row.monte_carlo);
    if (row.std_error > 0.0) {
      row.sigma_distance = gap / row.std_error;
    } else {
      row.sigma_distance = gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    row.pass = gap <= band_sigmas * row.std_error;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %-42s %14s %14s %10s %6s\n", "quantity", "parameters",
                "analytic", "monte_carlo", "sigmas", "result");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-9s %-42s %14.9g %14.9g %10.3f %6s\n",
                  row.quantity.c_str(), row.label.c_str(), row.analytic, row.monte_carlo,
                  row.sigma_distance, row.pass ? "PASS" : "FAIL");
    out << line;
  }
  const auto passed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const ValidationRow& r) { return r.pass; });
  std::snprintf(line, sizeof line, "%zd/%zu checks within %.3g sigma\n",
                static_cast<std::ptrdiff_t>(passed), report.rows.size(), report.band_sigmas);
  out << line;
  return out.str();
}

}  // namespace georate
