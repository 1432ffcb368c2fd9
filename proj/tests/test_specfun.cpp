#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acs/errors.hpp"
#include "acs/specfun.hpp"
#include "test_support.hpp"

using namespace acs;
using acs::testing::rel_diff;

TEST_CASE("kummer_m: closed-form values") {
  CHECK(kummer_m(0.7, 1.3, 0.0) == cplx(1.0));
  CHECK(rel_diff(kummer_m(1.0, 1.0, 1.0), std::exp(1.0)) < 1e-14);
  CHECK(rel_diff(kummer_m(-1.0, 2.0, 1.0), 0.5) < 1e-15);
  CHECK(rel_diff(kummer_m(2.5, 2.5, cplx(-3.0, 1.0)), std::exp(cplx(-3.0, 1.0))) < 1e-13);
}

TEST_CASE("kummer_m: erf identity against the extended-precision oracle") {
  const double via_erf = std::sqrt(std::numbers::pi) * std::erf(1.0) / 2.0;
  const cplx via_series = acs::testing::kummer_oracle(0.5, 1.5, -1.0);
  REQUIRE(rel_diff(via_series, via_erf) < 1e-15);
  // 0.746824132812427...
  CHECK(std::abs(via_erf - 0.7468241328124270) < 1e-15);
  CHECK(rel_diff(kummer_m(0.5, 1.5, -1.0), via_erf) < 1e-13);
}

TEST_CASE("kummer_m: agrees with the oracle on random complex arguments") {
  auto g = acs::testing::rng(11);
  for (int i = 0; i < 200; ++i) {
    const cplx a = acs::testing::disc(g, 4.0);
    const cplx b(acs::testing::uniform(g, 0.5, 4.0), acs::testing::uniform(g, -1.0, 1.0));
    const cplx x = acs::testing::disc(g, 8.0);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    const cplx ref = acs::testing::kummer_oracle(a, b, x);
    CHECK(std::abs(kummer_m(a, b, x) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("kummer_m: Kummer transformation") {
  auto g = acs::testing::rng(12);
  for (int i = 0; i < 300; ++i) {
    const cplx a = acs::testing::disc(g, 3.0);
    const cplx b(acs::testing::uniform(g, 0.5, 5.0), 0.0);
    const cplx x = acs::testing::disc(g, 10.0);
    const cplx rhs = std::exp(x) * kummer_m(b - a, b, -x);
    CHECK(std::abs(kummer_m(a, b, x) - rhs) <= 1e-9 * std::abs(rhs));
  }
}

TEST_CASE("kummer_m: contiguous relation (b-a)M(a-1) + (2a-b+x)M(a) - aM(a+1) = 0") {
  auto g = acs::testing::rng(13);
  for (int i = 0; i < 300; ++i) {
    const cplx a = acs::testing::disc(g, 3.0);
    const cplx b(acs::testing::uniform(g, 0.5, 5.0), 0.0);
    const cplx x = acs::testing::disc(g, 6.0);
    const cplx m0 = kummer_m(a - 1.0, b, x), m1 = kummer_m(a, b, x), m2 = kummer_m(a + 1.0, b, x);
    const cplx lhs = (b - a) * m0 + (2.0 * a - b + x) * m1 - a * m2;
    const double scale =
        std::abs((b - a) * m0) + std::abs((2.0 * a - b + x) * m1) + std::abs(a * m2);
    CHECK(std::abs(lhs) <= 1e-9 * scale);
  }
}

TEST_CASE("kummer_m: terminating series is the exact polynomial") {
  // M(-n, b, x) has n+1 terms; the (n+1)-th coefficient vanishes identically.
  for (int n = 0; n <= 12; ++n) {
    const cplx b = 1.7, x(2.5, -1.1);
    cplx poly = 0.0, term = 1.0;
    for (int j = 0; j <= n; ++j) {
      poly += term;
      term *= (static_cast<double>(j) - n) / ((b + static_cast<double>(j)) * (j + 1.0)) * x;
    }
    CHECK(term == cplx(0.0));
    CHECK(rel_diff(kummer_m(-static_cast<double>(n), b, x), poly) < 1e-14);
  }
  // polynomials are exact for arguments outside the series range too
  CHECK(rel_diff(kummer_m(-2.0, 1.0, 100.0), 4801.0) < 1e-14);
}

TEST_CASE("kummer_m: domain and convergence errors") {
  CHECK_THROWS_AS(kummer_m(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(kummer_m(1.0, -3.0, 1.0), DomainError);
  CHECK_THROWS_AS(kummer_m(0.5, 1.5, 45.0), DomainError);
  try {
    kummer_m(0.5, 1.5, 25.0, SeriesControl{5, 1e-12});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.terms() == 5);
    CHECK(std::abs(e.partial_value()) > 1.0);
  }
  CHECK_THROWS_AS(SeriesControl({0, 1e-12}).validate(), DomainError);
  CHECK_THROWS_AS(SeriesControl({10, 1.5}).validate(), DomainError);
}

TEST_CASE("hyp0f1: confluent limit of kummer_m") {
  const cplx b = 1.5, x(0.8, -0.4);
  const double a = 1e7;
  CHECK(rel_diff(kummer_m(a, b, x / a), hyp0f1(b, x)) < 1e-6);
  // 0F1(;1/2; x^2/4) = cosh x
  CHECK(rel_diff(hyp0f1(0.5, 0.25 * 1.3 * 1.3), std::cosh(1.3)) < 1e-14);
}

TEST_CASE("hermite_h: low orders and parity") {
  CHECK(hermite_h(0, cplx(3.3, 1.0)) == cplx(1.0));
  CHECK(hermite_h(2, 1.0) == cplx(2.0));
  CHECK(hermite_h(3, 2.0) == cplx(40.0));
  auto g = acs::testing::rng(14);
  for (int n = 0; n <= 30; ++n) {
    const cplx x = acs::testing::disc(g, 2.0);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(rel_diff(hermite_h(n, -x), sign * hermite_h(n, x)) < 1e-12);
  }
  CHECK_THROWS_AS(hermite_h(-1, 1.0), DomainError);
}

TEST_CASE("hermite_h: Kummer polynomial representation") {
  // M(-n, 1/2, x^2) = (-1)^n n!/(2n)! H_2n(x);  M(-n, 3/2, x^2) = (-1)^n n!/(2n+1)! H_2n+1(x)/(2x)
  const cplx x(0.7, 0.3);
  for (int n = 0; n <= 8; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double even = sign * std::tgamma(n + 1.0) / std::tgamma(2.0 * n + 1.0);
    const double odd = sign * std::tgamma(n + 1.0) / std::tgamma(2.0 * n + 2.0);
    CHECK(rel_diff(kummer_m(-n, 0.5, x * x), even * hermite_h(2 * n, x)) < 1e-12);
    CHECK(rel_diff(kummer_m(-n, 1.5, x * x), odd * hermite_h(2 * n + 1, x) / (2.0 * x)) < 1e-12);
  }
}

TEST_CASE("log_gamma_pos") {
  CHECK(std::abs(log_gamma_pos(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma_pos(2.0)) < 1e-15);
  CHECK(std::abs(log_gamma_pos(0.5) - 0.5723649429247001) < 1e-14);
  CHECK(std::abs(log_gamma_pos(50.0) - std::log(std::tgamma(50.0))) < 1e-11 * 144.0);
  CHECK_THROWS_AS(log_gamma_pos(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma_pos(-1.0), DomainError);
}
