#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qho/thermo.hpp"

using namespace qho;

TEST_CASE("thermal state") {
  const Index dim = 64;

  SUBCASE("T -> 0 limit is the vacuum projector") {
    const auto rho = thermal_state(1.0, 1e-6, dim).matrix();
    Matrix vac = Matrix::Zero(dim, dim);
    vac(0, 0) = 1.0;
    CHECK((rho - vac).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SUBCASE("occupation matches Bose-Einstein at omega=1, T=1") {
    const auto rho = thermal_state(1.0, 1.0, dim);
    const double bose_einstein = 1.0 / std::expm1(1.0);
    CHECK(expectation(rho, make_number(dim)).real() ==
          doctest::Approx(bose_einstein).epsilon(1e-10));
    CHECK(bose_einstein == doctest::Approx(0.581977).epsilon(1e-6));
  }

  SUBCASE("occupation matches the coth form over a parameter grid") {
    for (double w : {0.5, 1.0, 2.0})
      for (double T : {0.3, 1.0, 2.5}) {
        const Index d = 256;
        const auto rho = thermal_state(w, T, d);
        CHECK(std::abs(expectation(rho, make_number(d)).real() -
                       mean_photons_thermal(w, T)) <= 1e-10);
      }
  }

  SUBCASE("trace is exactly one") {
    CHECK(std::abs(thermal_state(1.0, 2.0, 128).matrix().trace().real() - 1.0) <=
          1e-14);
  }

  SUBCASE("tail guard") {
    CHECK_THROWS_AS(thermal_state(1.0, 10.0, 16), truncation_error);
    CHECK_THROWS_AS(thermal_state(-1.0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(thermal_state(1.0, 0.0, 16), std::invalid_argument);
  }
}

TEST_CASE("thermal occupation closed form") {
  CHECK(mean_photons_thermal(100.0, 1.0) <= 1e-10);
  CHECK(mean_photons_thermal(1.0, 1.0) == doctest::Approx(0.581977).epsilon(1e-6));
  CHECK(mean_photons_thermal(1.0, 0.5) ==
        doctest::Approx(1.0 / std::expm1(2.0)).epsilon(1e-12));
  CHECK(mean_photons_thermal(1.0, 0.5) == doctest::Approx(0.156518).epsilon(1e-5));
}

TEST_CASE("closed-form Otto work") {
  SUBCASE("degenerate cycle does nothing") {
    const auto w = otto_work_closed_form({1.0, 1.0, 0.5, 2.0});
    CHECK(w.comp == 0.0);
    CHECK(w.expn == 0.0);
    CHECK(w.total == 0.0);
  }

  SUBCASE("reference cycle parameters") {
    const auto w = otto_work_closed_form({1.0, 2.0, 0.5, 2.0});
    CHECK(w.comp == doctest::Approx(0.5 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(w.comp == doctest::Approx(0.656518).epsilon(1e-6));
    CHECK(w.expn == doctest::Approx(-0.5 / std::tanh(0.5)).epsilon(1e-14));
    CHECK(w.expn == doctest::Approx(-1.081977).epsilon(1e-6));
    CHECK(w.total == doctest::Approx(-0.425459).epsilon(1e-5));
  }

  SUBCASE("no net extraction from a single bath") {
    const auto w = otto_work_closed_form({1.0, 2.0, 1.0, 1.0});
    CHECK(w.total > 0.0);
  }
}

TEST_CASE("simulated Otto cycle") {
  const OttoCycleSpec spec{1.0, 2.0, 0.5, 2.0};
  const Index dim = 128;
  const auto closed = otto_work_closed_form(spec);

  SUBCASE("stroke works match the closed form") {
    const auto ledger = otto_cycle_simulate(spec, RampShape::Quintic, 2.0, dim);
    CHECK(ledger.W_comp == doctest::Approx(closed.comp).epsilon(1e-6));
    CHECK(ledger.W_exp == doctest::Approx(closed.expn).epsilon(1e-6));
    CHECK(ledger.first_law_residual <= 1e-9);
    CHECK(ledger.eta <= 1.0);
    CHECK(ledger.eta == doctest::Approx(otto_efficiency(spec)).epsilon(1e-6));
  }

  SUBCASE("work output is independent of stroke duration and ramp shape") {
    const auto slow = otto_cycle_simulate(spec, RampShape::Quintic, 50.0, dim);
    const auto fast = otto_cycle_simulate(spec, RampShape::Quintic, 0.5, dim);
    const auto linear = otto_cycle_simulate(spec, RampShape::Linear, 2.0, dim);
    CHECK(slow.W_comp == doctest::Approx(fast.W_comp).epsilon(1e-6));
    CHECK(slow.W_exp == doctest::Approx(fast.W_exp).epsilon(1e-6));
    CHECK(linear.W_comp == doctest::Approx(fast.W_comp).epsilon(1e-6));
    CHECK(linear.W_exp == doctest::Approx(fast.W_exp).epsilon(1e-6));
  }

  SUBCASE("degenerate cycle: no work, heats balance") {
    const auto ledger =
        otto_cycle_simulate({1.0, 1.0, 0.5, 2.0}, RampShape::Quintic, 1.0, dim);
    CHECK(std::abs(ledger.W_comp) <= 1e-9);
    CHECK(std::abs(ledger.W_exp) <= 1e-9);
    CHECK(ledger.Q_h == doctest::Approx(-ledger.Q_c).epsilon(1e-12));
  }

  SUBCASE("guards") {
    CHECK_THROWS_AS(otto_cycle_simulate(spec, RampShape::Quintic, -1.0, dim),
                    std::invalid_argument);
    CHECK_THROWS_AS(otto_cycle_simulate({2.0, 1.0, 0.5, 2.0}, RampShape::Quintic,
                                        1.0, dim),
                    std::invalid_argument);
    // basis too small for the hot thermal state
    CHECK_THROWS_AS(otto_cycle_simulate({1.0, 2.0, 0.5, 20.0}, RampShape::Quintic,
                                        1.0, 16),
                    truncation_error);
  }
}

TEST_CASE("efficiency") {
  CHECK(otto_efficiency({1.0, 2.0, 0.5, 2.0}) == 0.5);
  CHECK(otto_efficiency({1.0, 1.0, 0.5, 2.0}) == 0.0);
}
