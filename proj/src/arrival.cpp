#include "georate/arrival.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "georate/errors.hpp"

namespace georate {

std::string_view to_string(ArrivalKind kind) {
  switch (kind) {
    case ArrivalKind::Deterministic: return "deterministic";
    case ArrivalKind::Uniform: return "uniform";
    case ArrivalKind::Exponential: return "exponential";
  }
  return "unknown";
}

ArrivalKind parse_arrival_kind(std::string_view name) {
  if (name == "deterministic") return ArrivalKind::Deterministic;
  if (name == "uniform") return ArrivalKind::Uniform;
  if (name == "exponential") return ArrivalKind::Exponential;
  throw InvalidArgument("unknown arrival kind '" + std::string(name) + "'");
}

ArrivalProcess::ArrivalProcess(ArrivalKind kind, double param) : kind_(kind), param_(param) {
  if (!std::isfinite(param) || param <= 0.0) {
    std::ostringstream msg;
    msg << "arrival parameter must be positive and finite, got " << param;
    throw InvalidArgument(msg.str());
  }
}

ArrivalProcess ArrivalProcess::with_mean(ArrivalKind kind, double mean_seconds) {
  if (!std::isfinite(mean_seconds) || mean_seconds <= 0.0) {
    throw InvalidArgument("mean inter-arrival time must be positive and finite");
  }
  switch (kind) {
    case ArrivalKind::Deterministic: return deterministic(mean_seconds);
    case ArrivalKind::Uniform: return uniform(2.0 * mean_seconds);
    case ArrivalKind::Exponential: return exponential(1.0 / mean_seconds);
  }
  throw InvalidArgument("unknown arrival kind");
}

ArrivalProcess ArrivalProcess::parse(std::string_view token) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("arrival must be written kind:param, got '" + std::string(token) + "'");
  }
  const std::string value(token.substr(colon + 1));
  std::size_t used = 0;
  double param = 0.0;
  try {
    param = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw InvalidArgument("arrival parameter '" + value + "' is not a number");
  }
  return {parse_arrival_kind(token.substr(0, colon)), param};
}

double ArrivalProcess::mean() const noexcept {
  switch (kind_) {
    case ArrivalKind::Deterministic: return param_;
    case ArrivalKind::Uniform: return param_ / 2.0;
    case ArrivalKind::Exponential: return 1.0 / param_;
  }
  return param_;
}

double ArrivalProcess::variance() const noexcept {
  switch (kind_) {
    case ArrivalKind::Deterministic: return 0.0;
    case ArrivalKind::Uniform: return param_ * param_ / 12.0;
    case ArrivalKind::Exponential: return 1.0 / (param_ * param_);
  }
  return 0.0;
}

double irwin_hall_pdf(unsigned k, double x) {
  if (k == 0) throw InvalidArgument("Irwin-Hall order must be at least 1");
  const double order = static_cast<double>(k);
  if (x < 0.0 || x > order) return 0.0;
  if (x == order) return k == 1 ? 1.0 : 0.0;
  const auto m = static_cast<unsigned>(std::floor(x));
  // b[j] = B_p(x - j), the order-p cardinal B-spline; only j in [m - p + 1, m]
  // is nonzero. Ascending j reads b[j + 1] before it is overwritten.
  std::vector<double> b(m + 1, 0.0);
  b[m] = 1.0;
  for (unsigned p = 2; p <= k; ++p) {
    const unsigned lo = m + 1 >= p ? m + 1 - p : 0;
    for (unsigned j = lo; j <= m; ++j) {
      const double u = x - j;
      const double next = j < m ? b[j + 1] : 0.0;
      b[j] = (u * b[j] + (p - u) * next) / (p - 1);
    }
  }
  return b[0];
}

double ArrivalProcess::kfold_pdf(unsigned k, double t) const {
  if (k == 0) throw InvalidArgument("k-fold order must be at least 1");
  if (!(t >= 0.0)) throw InvalidArgument("k-fold pdf is defined for t >= 0 only");
  switch (kind_) {
    case ArrivalKind::Deterministic:
      throw InvalidArgument("deterministic arrivals are a point mass; integrate against them instead");
    case ArrivalKind::Uniform:
      return irwin_hall_pdf(k, t / param_) / param_;
    case ArrivalKind::Exponential: {
      const double a = param_;
      if (k == 1) return a * std::exp(-a * t);
      if (t == 0.0) return 0.0;
      return std::exp(k * std::log(a) + (k - 1) * std::log(t) - a * t - std::lgamma(k));
    }
  }
  return 0.0;
}

double ArrivalProcess::sample(Rng& rng) const {
  switch (kind_) {
    case ArrivalKind::Deterministic: return param_;
    case ArrivalKind::Uniform: return std::uniform_real_distribution<double>(0.0, param_)(rng);
    case ArrivalKind::Exponential: return std::exponential_distribution<double>(param_)(rng);
  }
  return param_;
}

double ArrivalProcess::sample_sum(unsigned k, Rng& rng) const {
  double total = 0.0;
  for (unsigned i = 0; i < k; ++i) total += sample(rng);
  return total;
}

std::string ArrivalProcess::to_token() const {
  std::ostringstream out;
  out.precision(17);
  out << to_string(kind_) << ':' << param_;
  return out.str();
}

}  // namespace georate
