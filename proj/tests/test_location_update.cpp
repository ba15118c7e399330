#include <doctest.h>

#include <cmath>
#include <random>

#include "georate/displacement.hpp"
#include "georate/errors.hpp"
#include "georate/location_update.hpp"

using namespace georate;

namespace {

LocationBoundRequest req(Dimension dim, double sigma2, ArrivalProcess a, double eps2,
                         bool relaxed = false) {
  return {dim, sigma2, a, eps2, relaxed};
}

}  // namespace

TEST_CASE("deterministic closed forms") {
  const auto d1 = update_bound(req(Dimension::OneD, 4, ArrivalProcess::deterministic(1), 1));
  CHECK(std::abs(d1.bits_per_packet - 1.0) < 1e-12);
  CHECK(std::abs(d1.bits_per_second - 1.0) < 1e-12);
  CHECK(d1.equation_tag == "Eq30");
  CHECK_FALSE(d1.k_star.has_value());

  const auto d2 = update_bound(req(Dimension::TwoD, 4, ArrivalProcess::deterministic(1), 1));
  CHECK(std::abs(d2.bits_per_packet - 2.0) < 1e-12);
  CHECK(d2.equation_tag == "Eq49");
}

TEST_CASE("rate per second divides by the mean inter-arrival time") {
  const auto r = update_bound(req(Dimension::OneD, 3, ArrivalProcess::deterministic(4), 1.5));
  CHECK(r.bits_per_packet == doctest::Approx(0.5 * std::log2(12 / 1.5)));
  CHECK(r.bits_per_second == doctest::Approx(r.bits_per_packet / 4));
}

TEST_CASE("bound clamps to zero when the threshold exceeds the entropy") {
  CHECK(update_bound(req(Dimension::OneD, 2, ArrivalProcess::deterministic(1), 2)).bits_per_packet ==
        0.0);
  CHECK(update_bound(req(Dimension::TwoD, 1, ArrivalProcess::deterministic(1), 9)).bits_per_packet ==
        0.0);
  CHECK(update_bound(req(Dimension::OneD, 1, ArrivalProcess::exponential(1), 50)).bits_per_second ==
        0.0);
}

TEST_CASE("family tags") {
  CHECK(update_bound(req(Dimension::OneD, 1, ArrivalProcess::uniform(2), 0.1)).equation_tag == "Eq34");
  CHECK(update_bound(req(Dimension::OneD, 1, ArrivalProcess::exponential(1), 0.1)).equation_tag ==
        "Eq37");
  CHECK(update_bound(req(Dimension::TwoD, 1, ArrivalProcess::uniform(2), 0.1)).equation_tag == "Eq52");
  CHECK(update_bound(req(Dimension::TwoD, 1, ArrivalProcess::exponential(1), 0.1)).equation_tag ==
        "Eq55");
}

TEST_CASE("bound equals entropy minus threshold for the mixture families") {
  const double s2 = 2.0, eps2 = 0.05;
  const auto a = ArrivalProcess::exponential(1.0);
  const auto r = update_bound(req(Dimension::OneD, s2, a, eps2));
  const double h = DisplacementDensity(s2, a).differential_entropy();
  CHECK(r.entropy_term == doctest::Approx(h));
  CHECK(r.bits_per_packet == doctest::Approx(h - 0.5 * std::log2(2 * M_PI * M_E * eps2)));

  // The plane uses sigma2/2 per coordinate and twice the 1-D excess.
  const auto p = update_bound(req(Dimension::TwoD, s2, a, eps2));
  const double hc = DisplacementDensity(s2 / 2, a).differential_entropy();
  CHECK(p.bits_per_packet == doctest::Approx(2 * hc - std::log2(M_PI * M_E * eps2)));
}

TEST_CASE("deterministic arrivals need the most bits at matched mean") {
  for (double mean : {0.5, 1.0, 3.0}) {
    const auto det =
        update_bound(req(Dimension::OneD, 1, ArrivalProcess::with_mean(ArrivalKind::Deterministic, mean), 0.01));
    const auto uni =
        update_bound(req(Dimension::OneD, 1, ArrivalProcess::with_mean(ArrivalKind::Uniform, mean), 0.01));
    const auto exp =
        update_bound(req(Dimension::OneD, 1, ArrivalProcess::with_mean(ArrivalKind::Exponential, mean), 0.01));
    CHECK(det.bits_per_second >= uni.bits_per_second);
    CHECK(det.bits_per_second >= exp.bits_per_second);
  }
}

TEST_CASE("k* for the deterministic family") {
  CHECK(k_star(req(Dimension::OneD, 1, ArrivalProcess::deterministic(1), 3.5)) == 4);
  // Exact equality k sigma2 T = eps2 does not satisfy the strict inequality.
  CHECK(k_star(req(Dimension::OneD, 1, ArrivalProcess::deterministic(1), 3.0)) == 4);
  CHECK(k_star(req(Dimension::OneD, 1, ArrivalProcess::deterministic(1), 0.5)) == 1);
  CHECK(k_star(req(Dimension::TwoD, 2, ArrivalProcess::deterministic(1), 3.5)) == 2);
}

TEST_CASE("relaxed deterministic example") {
  const auto r = update_bound(req(Dimension::OneD, 1, ArrivalProcess::deterministic(1), 3.5, true));
  REQUIRE(r.k_star.has_value());
  CHECK(*r.k_star == 4);
  CHECK(std::abs(r.bits_per_packet - 0.25 * 0.5 * std::log2(4 / 3.5)) < 1e-12);
  CHECK(r.equation_tag == "Eq120");
}

TEST_CASE("k* = 1 reproduces the unrelaxed bound") {
  for (auto a : {ArrivalProcess::deterministic(1), ArrivalProcess::uniform(2),
                 ArrivalProcess::exponential(1)}) {
    for (auto dim : {Dimension::OneD, Dimension::TwoD}) {
      const auto plain = update_bound(req(dim, 2, a, 0.05));
      const auto relaxed = update_bound(req(dim, 2, a, 0.05, true));
      REQUIRE(relaxed.k_star.has_value());
      CHECK(*relaxed.k_star == 1);
      CHECK(relaxed.bits_per_packet == plain.bits_per_packet);
      CHECK(relaxed.bits_per_second == plain.bits_per_second);
    }
  }
}

TEST_CASE("relaxed bound is positive and k* is minimal") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logu(-1.0, 1.0);
  const ArrivalKind kinds[] = {ArrivalKind::Deterministic, ArrivalKind::Uniform,
                               ArrivalKind::Exponential};
  for (int i = 0; i < 12; ++i) {
    const auto a = ArrivalProcess::with_mean(kinds[i % 3], std::pow(10.0, logu(rng)));
    const auto r = req(i % 2 ? Dimension::TwoD : Dimension::OneD, std::pow(10.0, logu(rng)), a,
                       std::pow(10.0, 1.5 * logu(rng)), true);
    const auto rep = update_bound(r);
    CHECK(rep.bits_per_packet > 0.0);
    const unsigned k = *rep.k_star;
    if (k > 1) {
      // One fewer epoch must fail to exceed the threshold.
      const double dim = r.dimension == Dimension::OneD ? 1.0 : 2.0;
      const double h = a.kind() == ArrivalKind::Deterministic
                           ? dim * gaussian_entropy_bits(coordinate_variance(r.dimension, r.sigma2) *
                                                         (k - 1) * a.param())
                           : dim * DisplacementDensity(coordinate_variance(r.dimension, r.sigma2),
                                                       a, k - 1)
                                       .differential_entropy();
      const double threshold = dim == 1.0 ? 0.5 * std::log2(2 * M_PI * M_E * r.epsilon2)
                                          : std::log2(M_PI * M_E * r.epsilon2);
      CHECK(h <= threshold + 1e-9);
    }
  }
}

TEST_CASE("per-session bound adds both components") {
  const auto session = ArrivalProcess::deterministic(10);
  const auto intra = ArrivalProcess::deterministic(0.5);
  const auto s = per_session_bound(1.0, session, intra, 0.1);
  CHECK(s.session_bits_per_second == doctest::Approx(0.5 * std::log2(10 / 0.1) / 10));
  CHECK(s.piggyback_bits_per_second == doctest::Approx(2 * 0.5 * std::log2(0.5 / 0.1) / 0.5));
  CHECK(s.report.bits_per_second ==
        doctest::Approx(s.session_bits_per_second + s.piggyback_bits_per_second));
  CHECK(s.report.equation_tag == "Eq129");
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(update_bound(req(Dimension::OneD, 0, ArrivalProcess::deterministic(1), 1)),
                  InvalidArgument);
  CHECK_THROWS_AS(update_bound(req(Dimension::OneD, 1, ArrivalProcess::deterministic(1), -1)),
                  InvalidArgument);
  CHECK_THROWS_AS(update_bound(req(Dimension::OneD, NAN, ArrivalProcess::deterministic(1), 1)),
                  InvalidArgument);
}
