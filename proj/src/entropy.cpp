#include "georate/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "georate/errors.hpp"

namespace georate {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << "probability must lie in [0, 1], got " << value;
    throw InvalidArgument(msg.str());
  }
}

double neg_p_log2_p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double binary_entropy(Probability x) {
  // Work from the larger mass so H(x) and H(1 - x) see identical operands.
  const double big = std::max(x.value(), 1.0 - x.value());
  return neg_p_log2_p(big) + neg_p_log2_p(1.0 - big);
}

double ternary_entropy(Probability delta) {
  const double d = delta.value();
  return 2.0 * neg_p_log2_p(d / 2.0) + neg_p_log2_p(1.0 - d);
}

double clamp_nonneg(double bits) { return std::max(bits, 0.0); }

}  // namespace georate
