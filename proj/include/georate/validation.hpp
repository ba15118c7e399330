#pragma once

#include <string>
#include <vector>

#include "georate/monte_carlo.hpp"

namespace georate {

struct ValidationRow {
  std::string quantity;  ///< "p(l)", "entropy" or "variance".
  std::string label;     ///< Parameter set, human readable.
  double analytic = 0.0; ///< Closed form or quadrature value.
  double monte_carlo = 0.0;
  double std_error = 0.0;
  double sigma_distance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double band_sigmas = 3.0;
  bool all_pass() const;
};

/// Runs the oracle grid: ten neighbor-retention probabilities (both
/// dimensions, all three arrival laws), six displacement entropies and six
/// displacement variances, each against its own Monte Carlo estimate. A row
/// passes when |analytic - MC| <= band_sigmas * standard error. Check i draws
/// from substream i of mc.master_seed.
ValidationReport run_validation(const McConfig& mc, double band_sigmas = 3.0);

/// Fixed-width table, one line per row plus a summary line.
std::string format_report(const ValidationReport& report);

}  // namespace georate
