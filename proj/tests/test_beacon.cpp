#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include "georate/beacon.hpp"
#include "georate/entropy.hpp"
#include "georate/errors.hpp"

using namespace georate;

namespace {

BeaconBoundRequest make(Dimension dim, double sigma2, double r, ArrivalProcess tau,
                        double delta = 0.1, unsigned bits = 64) {
  return {dim, sigma2, r, tau, delta, bits};
}

// Probability the relative position stays within r after a fixed time t.
double stay_1d(double sigma2, double r, double l, double t) {
  const double s = std::sqrt(4 * sigma2 * t);
  return 0.5 * (std::erf((r - l) / s) + std::erf((r + l) / s));
}

// In the plane each coordinate of the relative displacement has variance
// sigma2 t, so |X|^2 / (sigma2 t) is noncentral chi-square with 2 degrees
// of freedom and noncentrality l^2 / (sigma2 t).
double stay_2d(double sigma2, double r, double l, double t) {
  const double v = sigma2 * t;
  boost::math::non_central_chi_squared_distribution<double> d(2.0, l * l / v);
  return boost::math::cdf(d, r * r / v);
}

template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// Mixes a fixed-time probability over an inter-arrival density with t = u^2.
// The density is passed explicitly so the uniform's closed right end counts.
template <typename Pdf, typename Stay>
double mixed(Pdf pdf, double t_max, Stay stay, int panels) {
  return simpson([&](double u) {
    const double t = u * u;
    if (t <= 0.0) return 0.0;
    return stay(t) * pdf(t) * 2 * u;
  }, 0.0, std::sqrt(t_max), panels);
}

// sqrt(T)^2 can round just above T, hence the slack.
double uniform_pdf(double t, double T) { return t <= T * (1 + 1e-12) ? 1.0 / T : 0.0; }

}  // namespace

TEST_CASE("1-D deterministic p(l) is the erf pair") {
  const auto q = make(Dimension::OneD, 1.3, 2.0, ArrivalProcess::deterministic(0.7));
  for (double l = 0.0; l <= 2.0; l += 0.25) {
    CHECK(p_neighbor(q, l) == doctest::Approx(stay_1d(1.3, 2.0, l, 0.7)).epsilon(1e-14));
  }
}

TEST_CASE("1-D closed forms agree with direct quadrature") {
  for (auto tau : {ArrivalProcess::deterministic(1.0), ArrivalProcess::uniform(1.5)}) {
    const auto q = make(Dimension::OneD, 0.9, 2.0, tau);
    for (int i = 0; i < 20; ++i) {
      const double l = 2.0 * i / 19.0;
      CHECK(std::abs(p_neighbor_1d(q, l) - p_neighbor_1d_quadrature(q, l)) < 1e-8);
    }
  }
}

TEST_CASE("1-D mixtures match an independent Simpson mix") {
  const double s2 = 0.8, r = 2.0;
  const auto uni = ArrivalProcess::uniform(2.0);
  const auto exp = ArrivalProcess::exponential(0.8);
  for (double l : {0.0, 0.9, 1.7, 2.0}) {
    const double ref_u = mixed([](double t) { return uniform_pdf(t, 2.0); }, 2.0, [&](double t) { return stay_1d(s2, r, l, t); }, 20000);
    const double ref_e = mixed([&](double t) { return exp.pdf(t); }, 60.0, [&](double t) { return stay_1d(s2, r, l, t); }, 40000);
    CHECK(p_neighbor(make(Dimension::OneD, s2, r, uni), l) == doctest::Approx(ref_u).epsilon(1e-7));
    CHECK(p_neighbor(make(Dimension::OneD, s2, r, exp), l) == doctest::Approx(ref_e).epsilon(1e-7));
  }
}

TEST_CASE("2-D deterministic p(l) matches the noncentral chi-square") {
  const auto q = make(Dimension::TwoD, 1.0, 2.0, ArrivalProcess::deterministic(1.0));
  CHECK(p_neighbor(q, 0.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-9));
  for (double l : {0.3, 1.0, 1.6, 1.95, 2.0}) {
    CHECK(p_neighbor(q, l) == doctest::Approx(stay_2d(1.0, 2.0, l, 1.0)).epsilon(1e-8));
  }
  const auto tight = make(Dimension::TwoD, 0.01, 3.0, ArrivalProcess::deterministic(0.5));
  for (double l : {2.5, 2.9, 2.99}) {
    CHECK(p_neighbor(tight, l) == doctest::Approx(stay_2d(0.01, 3.0, l, 0.5)).epsilon(1e-8));
  }
}

TEST_CASE("2-D mixtures match the mixed noncentral chi-square") {
  const double s2 = 1.0, r = 2.0;
  const auto uni = ArrivalProcess::uniform(1.0);
  const auto exp = ArrivalProcess::exponential(1.0);
  for (double l : {0.5, 1.5, 1.9}) {
    const double ref_u = mixed([](double t) { return uniform_pdf(t, 1.0); }, 1.0, [&](double t) { return stay_2d(s2, r, l, t); }, 4000);
    const double ref_e = mixed([&](double t) { return exp.pdf(t); }, 45.0, [&](double t) { return stay_2d(s2, r, l, t); }, 8000);
    CHECK(p_neighbor(make(Dimension::TwoD, s2, r, uni), l) == doctest::Approx(ref_u).epsilon(1e-6));
    CHECK(p_neighbor(make(Dimension::TwoD, s2, r, exp), l) == doctest::Approx(ref_e).epsilon(1e-6));
  }
}

TEST_CASE("p(l) decreases with the initial offset") {
  for (auto dim : {Dimension::OneD, Dimension::TwoD}) {
    const auto q = make(dim, 1.0, 2.0, ArrivalProcess::exponential(1.0));
    double prev = p_neighbor(q, 0.0);
    for (double l = 0.2; l <= 2.0; l += 0.2) {
      const double p = p_neighbor(q, l);
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("interior l* has p = 1/2") {
  const auto q = make(Dimension::OneD, 1.0, 2.0, ArrivalProcess::deterministic(1.0));
  const auto ls = find_lstar(q);
  CHECK(ls.branch == LStarCase::Interior);
  CHECK(ls.p_at_l_star == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(ls.entropy - 1.0) < 1e-6);
  CHECK(ls.l_star > 0.0);
  CHECK(ls.l_star < 2.0);
}

TEST_CASE("l* sits at the origin when neighbors rarely survive") {
  for (auto dim : {Dimension::OneD, Dimension::TwoD}) {
    const auto q = make(dim, 100.0, 2.0, ArrivalProcess::deterministic(1.0));
    const auto ls = find_lstar(q);
    CHECK(ls.branch == LStarCase::AtOrigin);
    CHECK(ls.l_star == 0.0);
    CHECK(ls.entropy == doctest::Approx(binary_entropy(Probability(p_neighbor(q, 0.0)))));
  }
}

TEST_CASE("reference beacon example") {
  const auto q = make(Dimension::OneD, 1.0, 2.0, ArrivalProcess::deterministic(1.0), 0.1, 64);
  const auto rep = beacon_bound(q);
  CHECK(rep.beacons_per_message == doctest::Approx(0.4310).epsilon(1e-4));
  CHECK(rep.bits_per_second == doctest::Approx(27.58).epsilon(1e-3));
  CHECK(rep.equation_tag == "Eq95");
  CHECK_FALSE(rep.loose);
}

TEST_CASE("zero delta leaves the full neighbor entropy") {
  const auto q = make(Dimension::OneD, 10.0, 2.0, ArrivalProcess::deterministic(1.0), 0.0);
  CHECK(beacon_rate(q) == doctest::Approx(find_lstar(q).entropy));
}

TEST_CASE("rate clamps at zero for large delta") {
  const auto q = make(Dimension::OneD, 100.0, 2.0, ArrivalProcess::deterministic(1.0), 0.6);
  CHECK(beacon_rate(q) == 0.0);
}

TEST_CASE("looseness flag") {
  CHECK(beacon_bound(make(Dimension::OneD, 10.0, 2.0, ArrivalProcess::deterministic(1.0))).loose);
  CHECK_FALSE(beacon_bound(make(Dimension::OneD, 3.9, 2.0, ArrivalProcess::deterministic(1.0))).loose);
}

TEST_CASE("overhead tags by family and dimension") {
  CHECK(beacon_bound(make(Dimension::OneD, 1, 2, ArrivalProcess::uniform(1))).equation_tag == "Eq102");
  CHECK(beacon_bound(make(Dimension::OneD, 1, 2, ArrivalProcess::exponential(1))).equation_tag ==
        "Eq106");
  CHECK(beacon_bound(make(Dimension::TwoD, 1, 2, ArrivalProcess::exponential(1))).equation_tag ==
        "Eq111");
}

TEST_CASE("overhead is bits times rate over mean") {
  const auto q = make(Dimension::TwoD, 2.0, 3.0, ArrivalProcess::exponential(2.0), 0.05, 100);
  const auto rep = beacon_bound(q);
  CHECK(rep.bits_per_second == doctest::Approx(100 * rep.beacons_per_message * 2.0));
  CHECK(beacon_overhead(q) == doctest::Approx(rep.bits_per_second));
}

TEST_CASE("unit-step form equals the case analysis") {
  for (double s2 : {0.01, 0.3, 1.0, 4.0, 30.0, 500.0}) {
    for (double delta : {0.0, 0.05, 0.3}) {
      const auto q = make(Dimension::OneD, s2, 2.0, ArrivalProcess::deterministic(1.0), delta);
      CHECK(beacon_rate_unit_step_deterministic_1d(q) ==
            doctest::Approx(beacon_rate_cases_deterministic_1d(q)).epsilon(1e-12));
      CHECK(beacon_rate_cases_deterministic_1d(q) == doctest::Approx(beacon_rate(q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("deterministic forwarding needs the fewest beacons at matched mean") {
  for (int i = 0; i < 8; ++i) {
    const double mean = 0.05 * std::pow(2000.0, i / 7.0);
    auto at = [&](ArrivalKind k) {
      return beacon_bound(make(Dimension::OneD, 1.0, 2.0, ArrivalProcess::with_mean(k, mean)))
          .bits_per_second;
    };
    const double det = at(ArrivalKind::Deterministic);
    CHECK(det <= at(ArrivalKind::Uniform) * (1 + 1e-9));
    CHECK(det <= at(ArrivalKind::Exponential) * (1 + 1e-9));
  }
}

TEST_CASE("non-neighbors never need more beacons than the best neighbor offset") {
  for (double s2 : {0.1, 1.0, 10.0}) {
    const auto q = make(Dimension::OneD, s2, 2.0, ArrivalProcess::uniform(2.0), 0.05);
    CHECK(non_neighbor_rate(q) >= 0.0);
    CHECK(non_neighbor_rate(q) <= beacon_rate(q) + 1e-12);
  }
}

TEST_CASE("invalid beacon requests") {
  CHECK_THROWS_AS(beacon_bound(make(Dimension::OneD, 1, 0, ArrivalProcess::deterministic(1))),
                  InvalidArgument);
  CHECK_THROWS_AS(beacon_bound(make(Dimension::OneD, 1, 2, ArrivalProcess::deterministic(1), 1.5)),
                  InvalidArgument);
  CHECK_THROWS_AS(beacon_bound(make(Dimension::OneD, 1, 2, ArrivalProcess::deterministic(1), 0.1, 0)),
                  InvalidArgument);
  CHECK_THROWS_AS(p_neighbor(make(Dimension::OneD, 1, 2, ArrivalProcess::deterministic(1)), NAN),
                  InvalidArgument);
}
