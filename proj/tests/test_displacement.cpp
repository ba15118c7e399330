#include <doctest.h>

#include <cmath>

#include "georate/displacement.hpp"
#include "georate/errors.hpp"

using namespace georate;

namespace {

double gauss(double x, double var) {
  return std::exp(-x * x / (2 * var)) / std::sqrt(2 * M_PI * var);
}

// Composite Simpson on [a, b] with n (even) panels; crude but independent.
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// Mixture over the mixing variable with t = u^2. The Jacobian 2u cancels
// the 1/sqrt(t) of the Gaussian, leaving a bounded integrand.
template <typename Pdf>
double brute_mixture(double x, double sigma2, Pdf pdf_t, double t_max) {
  const double c = 2.0 / std::sqrt(2 * M_PI * sigma2);
  return simpson([&](double u) {
    const double t = u * u;
    const double kernel = t > 0.0 ? std::exp(-x * x / (2 * sigma2 * t)) : (x == 0.0 ? 1.0 : 0.0);
    return c * kernel * pdf_t(t);
  }, 0.0, std::sqrt(t_max), 200000);
}

}  // namespace

TEST_CASE("deterministic displacement is Gaussian") {
  DisplacementDensity d(3.0, ArrivalProcess::deterministic(2.0));
  CHECK(d.form() == DensityForm::Gaussian);
  CHECK(d.variance() == doctest::Approx(6.0));
  for (double x : {0.0, 0.7, 2.5, -4.0}) CHECK(d.eval(x) == doctest::Approx(gauss(x, 6.0)));
  CHECK(d.differential_entropy() == doctest::Approx(0.5 * std::log2(2 * M_PI * M_E * 6.0)));
  CHECK(gaussian_entropy_bits(6.0) == doctest::Approx(0.5 * std::log2(2 * M_PI * M_E * 6.0)));
}

TEST_CASE("k-fold deterministic spreads the variance") {
  DisplacementDensity d(1.5, ArrivalProcess::deterministic(2.0), 4);
  CHECK(d.variance() == doctest::Approx(12.0));
}

TEST_CASE("uniform closed form matches brute-force mixing") {
  const double s2 = 1.7, T = 2.3;
  DisplacementDensity d(s2, ArrivalProcess::uniform(T));
  CHECK(d.form() == DensityForm::UniformMixtureClosedForm);
  for (double x : {0.0, 0.01, 0.4, 1.3, 3.0, 6.0}) {
    const double ref = brute_mixture(x, s2, [&](double) { return 1.0 / T; }, T);
    CHECK(d.eval(x) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("uniform k-fold mixture matches brute force") {
  const double s2 = 0.8, T = 1.5;
  const auto a = ArrivalProcess::uniform(T);
  DisplacementDensity d(s2, a, 3);
  CHECK(d.form() == DensityForm::NumericMixture);
  for (double x : {0.0, 0.5, 2.0, 4.5}) {
    const double ref = brute_mixture(x, s2, [&](double t) { return a.kfold_pdf(3, t); }, 3 * T);
    CHECK(d.eval(x) == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("exponential mixture is a Laplace density") {
  // Mixing N(0, sigma2 t) over t ~ Exp(alpha) gives Laplace with scale
  // b = sqrt(sigma2 / (2 alpha)).
  const double s2 = 2.0, alpha = 1.0, b = std::sqrt(s2 / (2 * alpha));
  DisplacementDensity d(s2, ArrivalProcess::exponential(alpha));
  for (int i = 0; i < 100; ++i) {
    const double x = -8.0 + 16.0 * i / 99.0;
    CHECK(std::abs(d.eval(x) - std::exp(-std::abs(x) / b) / (2 * b)) < 1e-9);
  }
  CHECK(std::abs(d.differential_entropy() - std::log2(2 * M_E * b)) < 1e-6);
}

TEST_CASE("Erlang mixture matches brute force") {
  const double s2 = 1.2, alpha = 0.7;
  const auto a = ArrivalProcess::exponential(alpha);
  DisplacementDensity d(s2, a, 3);
  for (double x : {0.0, 1.0, 3.0, 7.0}) {
    const double ref = brute_mixture(x, s2, [&](double t) { return a.kfold_pdf(3, t); }, 60.0);
    CHECK(d.eval(x) == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("mixtures are normalised with the right second moment") {
  struct Case {
    ArrivalProcess a;
    unsigned k;
  };
  for (const auto& c : {Case{ArrivalProcess::uniform(1.0), 1}, Case{ArrivalProcess::uniform(2.0), 4},
                        Case{ArrivalProcess::exponential(2.0), 1},
                        Case{ArrivalProcess::exponential(0.5), 2}}) {
    DisplacementDensity d(1.3, c.a, c.k);
    CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(d.second_moment() == doctest::Approx(1.3 * c.k * c.a.mean()).epsilon(1e-7));
    CHECK(d.variance() == doctest::Approx(1.3 * c.k * c.a.mean()));
  }
}

TEST_CASE("mixing lowers the entropy below the matched Gaussian") {
  // The Gaussian maximises entropy for a given variance.
  for (const auto& a : {ArrivalProcess::uniform(2.0), ArrivalProcess::exponential(0.5)}) {
    DisplacementDensity d(1.0, a);
    CHECK(d.differential_entropy() < gaussian_entropy_bits(d.variance()));
  }
}

TEST_CASE("dimension helpers") {
  CHECK(coordinate_variance(Dimension::OneD, 4.0) == 4.0);
  CHECK(coordinate_variance(Dimension::TwoD, 4.0) == 2.0);
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(DisplacementDensity(0.0, ArrivalProcess::deterministic(1)), InvalidArgument);
  CHECK_THROWS_AS(DisplacementDensity(-1.0, ArrivalProcess::deterministic(1)), InvalidArgument);
  CHECK_THROWS_AS(DisplacementDensity(1.0, ArrivalProcess::deterministic(1), 0), InvalidArgument);
}
