#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sbs/counterexample.hpp"
#include "sbs/payoff.hpp"

using namespace sbs;
using namespace sbs::counterexample;

TEST_CASE("piecewise_payoff branches") {
  CHECK(piecewise_payoff(1.0, 0.5, 0.8) == doctest::Approx(0.15625).epsilon(1e-15));
  CHECK(piecewise_payoff(1.0, 0.9, 0.8) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(piecewise_payoff(1.0, 1.0, 0.8) == 0.0);
  CHECK(fixtures::code_of([] { (void)piecewise_payoff(1.0, 1.2, 0.8); }) == ErrorCode::OutOfRangeBid);
}

TEST_CASE("piecewise_payoff is continuous at b = b_opp and at the cap") {
  for (const double b_opp : {0.3, 0.6, 0.9}) {
    CHECK(std::abs(piecewise_payoff(1.0, b_opp - 1e-12, b_opp) - piecewise_payoff(1.0, b_opp + 1e-12, b_opp)) < 1e-10);
  }
  CHECK(std::abs(piecewise_payoff(2.0, 1.0 - 1e-12, 0.5) - piecewise_payoff(2.0, 1.0 + 1e-12, 0.5)) < 1e-10);
}

TEST_CASE("piecewise_br") {
  CHECK(piecewise_br(1.0, 0.6) == 0.6);
  CHECK(piecewise_br(1.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(piecewise_br(1.0, 0.3) == 0.5);
  for (const double b : {0.51, 0.55, 0.60, 0.65, 0.66}) CHECK(piecewise_br(1.0, b) == b);
  for (const double b : {0.1, 0.3, 0.45, 0.7, 0.9}) CHECK(std::abs(piecewise_br(1.0, b) - b) > 1e-9);
}

TEST_CASE("piecewise_br maximizes piecewise_payoff") {
  for (const double b_opp : {0.2, 0.5, 0.55, 0.62, 0.7, 1.0}) {
    const double br = piecewise_br(1.0, b_opp);
    double best = -1.0;
    double best_b = 0.0;
    for (int j = 0; j <= 100000; ++j) {
      const double b = j / 100000.0;
      const double p = piecewise_payoff(1.0, b, b_opp);
      if (p > best) {
        best = p;
        best_b = b;
      }
    }
    CHECK(std::abs(best_b - br) < 2e-5);
  }
}

TEST_CASE("property: piecewise_payoff matches the numeric payoff") {
  const MarketConfig cfg = fixtures::counterexample_config();
  for (int i = 0; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      const double b = i / 100.0;
      const double b_opp = j / 100.0;
      CHECK(std::abs(piecewise_payoff(1.0, b, b_opp) - payoff(cfg, Bidder::First, b, b_opp)) < 1e-12);
    }
  }
}

TEST_CASE("equilibrium_interval") {
  const auto unit = equilibrium_interval(1.0);
  CHECK_FALSE(unit.low_resolution);
  CHECK(std::abs(unit.lo - 0.5) <= 1e-4);
  CHECK(std::abs(unit.hi - 2.0 / 3.0) <= 1e-4);

  // Rescaled derivative formulas at v = 2, checked point by point.
  const auto doubled = equilibrium_interval(2.0);
  CHECK(std::abs(doubled.lo - 1.0) <= 1e-4);
  CHECK(std::abs(doubled.hi - 4.0 / 3.0) <= 1e-4);
  CHECK(piecewise_br(2.0, doubled.lo) == doctest::Approx(doubled.lo));
  CHECK(piecewise_br(2.0, doubled.hi) == doctest::Approx(doubled.hi));
  CHECK(piecewise_br(2.0, doubled.hi + 1e-3) != doctest::Approx(doubled.hi + 1e-3));

  const auto coarse = equilibrium_interval(1.0, 1.0);
  CHECK(coarse.grid_points == 1);
  CHECK(coarse.low_resolution);
  CHECK(coarse.fixed_points <= 1);
}
