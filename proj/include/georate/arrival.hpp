#pragma once

#include <string>
#include <string_view>

#include "georate/random.hpp"

namespace georate {

enum class ArrivalKind { Deterministic, Uniform, Exponential };

std::string_view to_string(ArrivalKind kind);
ArrivalKind parse_arrival_kind(std::string_view name);

/// Law of the i.i.d. packet inter-arrival time.
///
/// `param` is T (seconds) for Deterministic and Uniform on [0, T], and the
/// rate alpha (1/s) for Exponential. Deterministic is a point mass at T and is
/// never evaluated pointwise; integrals against it collapse to g(T).
class ArrivalProcess {
 public:
  ArrivalProcess(ArrivalKind kind, double param);

  static ArrivalProcess deterministic(double period) { return {ArrivalKind::Deterministic, period}; }
  static ArrivalProcess uniform(double upper) { return {ArrivalKind::Uniform, upper}; }
  static ArrivalProcess exponential(double rate) { return {ArrivalKind::Exponential, rate}; }

  /// Same family, reparameterised so that mean() == mean_seconds.
  static ArrivalProcess with_mean(ArrivalKind kind, double mean_seconds);

  /// Parses the `kind:param` token, e.g. "exponential:0.5".
  static ArrivalProcess parse(std::string_view token);

  ArrivalKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }

  double mean() const noexcept;
  double variance() const noexcept;

  /// Density of the sum of k inter-arrival times at t.
  ///
  /// Uniform: Irwin-Hall (scaled cardinal B-spline). Exponential: Erlang(k, alpha).
  /// Throws InvalidArgument for k == 0, t < 0 or the Deterministic kind.
  double kfold_pdf(unsigned k, double t) const;

  double pdf(double t) const { return kfold_pdf(1, t); }

  double sample(Rng& rng) const;

  /// Sum of k independent draws.
  double sample_sum(unsigned k, Rng& rng) const;

  std::string to_token() const;

  friend bool operator==(const ArrivalProcess&, const ArrivalProcess&) = default;

 private:
  ArrivalKind kind_;
  double param_;
};

/// Density of the sum of k i.i.d. Uniform(0, 1) variables (Irwin-Hall) at x.
///
/// Evaluated with the nonnegative B-spline recursion rather than the
/// alternating binomial sum, which loses all precision past k ~ 25.
double irwin_hall_pdf(unsigned k, double x);

}  // namespace georate
