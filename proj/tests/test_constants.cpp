#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "longsteps/constants.hpp"
#include "test_util.hpp"

using namespace longsteps;
using test_util::close;
using test_util::rel_err;

namespace {

// Independent root finder for alpha_k: bisection on the defining quadratic
// q(x) = r_k (x - 1 - rho^k) + 2 (x - 1)^2 over (beta_k, beta_{k+1}).
double alpha_by_bisection(int k, double r_k) {
  const auto q = [&](double x) {
    return r_k * (x - 1 - silver_ratio_pow(k)) + 2 * (x - 1) * (x - 1);
  };
  double lo = beta(k), hi = beta(k + 1);
  REQUIRE(q(lo) < 0);
  REQUIRE(q(hi) > 0);
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (q(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("silver ratio and beta values") {
  CHECK(silver_ratio() == 1.0 + std::sqrt(2.0));
  CHECK(beta(1) == 2.0);
  // beta_0 = 1 + 1/(1 + sqrt 2) rationalizes to sqrt 2
  CHECK(close(beta(0), 1.0 + 1.0 / (1.0 + std::sqrt(2.0)), 1e-15));
  CHECK(close(beta(0), std::sqrt(2.0), 1e-15));
  CHECK(close(beta(2), 2.0 + std::sqrt(2.0), 1e-15));
  CHECK_THROWS_AS(beta(-1), std::invalid_argument);
}

TEST_CASE("alpha closed form") {
  CHECK(close(alpha(1, 4.0), 1.0 + std::sqrt(2.0), 1e-15));
  const auto& tab = default_constants();
  // against an independent bisection of the defining quadratic
  for (int k : {1, 2, 3, 5, 8}) {
    const double a = alpha_by_bisection(k, tab.r_at(k));
    CHECK(rel_err(tab.alpha_at(k), a) < 1e-12);
  }
  CHECK(close(tab.alpha_at(2), 4.602166064044969, 1e-12));
  CHECK_THROWS_AS(alpha(0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha(1, -1.0), std::invalid_argument);
}

TEST_CASE("alpha root residual vanishes") {
  const auto& tab = default_constants();
  for (int k = 1; k <= 15; ++k) {
    const double a = tab.alpha_at(k);
    const double resid = tab.r_at(k) * (a - 1 - silver_ratio_pow(k)) + 2 * (a - 1) * (a - 1);
    // scale: the residual terms grow like r_k rho^k
    CHECK(std::abs(resid) <= 1e-9 * tab.r_at(k) * silver_ratio_pow(k));
  }
}

TEST_CASE("r recurrence") {
  CHECK(close(r_next(1, 4.0), 6.0 + 4.0 * std::sqrt(2.0), 1e-15));
  const auto& tab = default_constants();
  CHECK(close(tab.r_at(2), 11.65685424949238, 1e-14));
  CHECK(close(tab.r_at(3), 30.518040627074697, 1e-14));
  // published comparison values pin the leading digits of 1/(2 r_k)
  CHECK(std::abs(1.0 / (2.0 * tab.r_at(2)) - 0.0429) < 5e-5);
  CHECK(std::abs(1.0 / (2.0 * tab.r_at(3)) - 0.0164) < 5e-5);
  // r_{k+1} = r_k + 2 (rho^k - 1) + 2 alpha_k
  for (int k = 1; k <= 15; ++k) {
    const double rhs = tab.r_at(k) + 2 * (silver_ratio_pow(k) - 1) + 2 * tab.alpha_at(k);
    CHECK(rel_err(tab.r_at(k + 1), rhs) < 1e-12);
  }
}

TEST_CASE("asymptotic constant") {
  const double gs = asymptotic_constant();
  CHECK(std::abs(gs - 2.32439) < 1e-5);
  // fixed point of f(x) = (4 + x + sqrt(x (x + 8))) / (2 rho)
  const double fx = (4 + gs + std::sqrt(gs * (gs + 8))) / (2 * silver_ratio());
  CHECK(rel_err(fx, gs) < 1e-14);
  const auto& tab = default_constants();
  CHECK(close(tab.gamma_at(5), 2.289127174074621, 1e-12));
  CHECK(tab.gamma_at(5) < gs);
}

TEST_CASE("table orderings and growth") {
  const auto& tab = default_constants();
  for (int k = 1; k <= 15; ++k) {
    CHECK(tab.beta_at(k) < tab.alpha_at(k));
    CHECK(tab.alpha_at(k) < tab.beta_at(k + 1));
    CHECK(tab.r_at(k) >= 4 * silver_ratio_pow(k - 1) * (1 - 1e-14));
  }
  const double gs = asymptotic_constant();
  for (int k = 1; k < tab.k_max; ++k) {
    CHECK(tab.gamma_at(k) < tab.gamma_at(k + 1));
    CHECK(tab.gamma_at(k + 1) < gs);
  }
  CHECK(tab.gamma_at(20) / gs > 0.999);
}

TEST_CASE("r formulas through alpha and beta") {
  const auto& tab = default_constants();
  for (int k = 1; k <= 15; ++k) {
    const double a = tab.alpha_at(k);
    const double b1 = tab.beta_at(k + 1);
    CHECK(rel_err(tab.r_at(k), 2 * (a - 1) * (a - 1) / (b1 - a)) < 1e-9);
    CHECK(rel_err(tab.r_at(k + 1), 2 * (b1 - 1) * (b1 - 1) / (b1 - a)) < 1e-9);
    CHECK(rel_err(std::sqrt(tab.r_at(k)) / (a - 1), std::sqrt(tab.r_at(k + 1)) / (b1 - 1)) < 1e-9);
  }
}

TEST_CASE("accessor range checks") {
  const auto& tab = default_constants();
  CHECK_THROWS_AS(tab.alpha_at(0), std::out_of_range);
  CHECK_THROWS_AS(tab.r_at(21), std::out_of_range);
  CHECK_THROWS_AS(tab.beta_at(-1), std::out_of_range);
  CHECK_THROWS_AS(ConstantsTable<double>::build(0), std::invalid_argument);
}

TEST_CASE("wider scalar raises the usable depth") {
  const auto tab = ConstantsTable<long double>::build(25);
  for (int k = 1; k <= 25; ++k) {
    const long double a = tab.alpha_at(k);
    const long double resid =
        tab.r_at(k) * (a - 1 - silver_ratio_pow<long double>(k)) + 2 * (a - 1) * (a - 1);
    CHECK(std::abs((double)(resid / (tab.r_at(k) * silver_ratio_pow<long double>(k)))) < 1e-15);
  }
  for (int k = 1; k <= 24; ++k) {
    CHECK(tab.beta_at(k) < tab.alpha_at(k));
    CHECK(tab.alpha_at(k) < tab.beta_at(k + 1));
  }
  CHECK(tab.gamma_at(25) < asymptotic_constant<long double>());
}
