#include <doctest.h>

#include <cmath>

#include "nlde/integrators.hpp"
#include "oracles.hpp"

using namespace nlde;
using oracle::pi;

namespace {

ModelParams params(double eps, Regime regime = Regime::long_time, double l1 = 0.0, double l2 = 1.0) {
  ModelParams p;
  p.epsilon = eps;
  p.lambda1 = l1;
  p.lambda2 = l2;
  p.regime = regime;
  return p;
}

SpinorField accuracy(int m) { return initial_data("accuracy-1d", catalog_grid("accuracy-1d", {m, 1})); }

}  // namespace

TEST_SUITE("SchemeSpec") {
  TEST_CASE("step count rounds to the nearest integer") {
    const SchemeSpec s = SchemeSpec::make(SchemeKind::strang, 0.03, 1.0);
    CHECK(s.step_count == 33);
    CHECK(std::abs(s.realized_final_time() - 1.0) <= 0.015);
    CHECK(SchemeSpec::make(SchemeKind::lie, 0.01, 0.0).step_count == 0);
    CHECK_THROWS_AS(SchemeSpec::make(SchemeKind::strang, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SchemeSpec::make(SchemeKind::strang, 0.1, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SchemeSpec::make(SchemeKind::strang, NAN, 1.0), std::invalid_argument);
    CHECK(std::string(to_string(SchemeKind::lie)) == "lie");
  }
}

TEST_SUITE("steps") {
  TEST_CASE("degenerate limits") {
    const SpinorField u = accuracy(32);
    for (SchemeKind kind : {SchemeKind::strang, SchemeKind::lie}) {
      auto step = [kind](const SpinorField& f, double tau, const ModelParams& p) {
        return kind == SchemeKind::strang ? strang_step(f, tau, p) : lie_step(f, tau, p);
      };
      CHECK(max_abs_difference(step(u, 0.0, params(1.0)), u) < 1e-15);
      CHECK(max_abs_difference(step(u, 0.05, params(0.0)), free_flow(u, 0.05)) < 1e-14);
    }
  }

  TEST_CASE("Stepper matches the one-shot steps") {
    const SpinorField u = accuracy(64);
    for (SchemeKind kind : {SchemeKind::strang, SchemeKind::lie}) {
      for (Regime r : {Regime::long_time, Regime::oscillatory}) {
        const ModelParams p = params(0.5, r, -0.5, 1.0);
        SpinorField a = u;
        Stepper(u.grid(), kind, 0.02, p).advance(a);
        const SpinorField b = kind == SchemeKind::strang ? strang_step(u, 0.02, p) : lie_step(u, 0.02, p);
        CHECK(max_abs_difference(a, b) < 1e-14);
      }
    }
  }

  TEST_CASE("Strang local error against nested substeps is third order") {
    const SpinorField u = accuracy(64);
    const ModelParams p = params(1.0);
    std::vector<double> errs;
    for (double tau : {0.1, 0.05, 0.025}) {
      const SpinorField oracle_state = oracle::nested_substeps(u, tau, p);
      errs.push_back(discrete_h1_norm(strang_step(u, tau, p) - oracle_state));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double order = std::log2(errs[i - 1] / errs[i]);
      MESSAGE("strang local order " << order);
      CHECK(order >= 2.8);
    }
    // a single constant C in err = C tau^3 across the sweep
    const double c0 = errs[0] / std::pow(0.1, 3), c2 = errs[2] / std::pow(0.025, 3);
    CHECK(c0 / c2 == doctest::Approx(1.0).epsilon(0.2));
  }

  TEST_CASE("Lie global order is one") {
    const SpinorField u = accuracy(64);
    const ModelParams p = params(1.0);
    const SchemeSpec fine = SchemeSpec::make(SchemeKind::strang, 1e-4, 1.0);
    const SpinorField ref = evolve(u, fine, p, {.stride = 100000, .record_observables = false}).final_field;
    std::vector<double> errs;
    for (double tau : {0.01, 0.005, 0.0025}) {
      const SchemeSpec s = SchemeSpec::make(SchemeKind::lie, tau, 1.0);
      errs.push_back(discrete_h1_norm(evolve(u, s, p, {.stride = 1000, .record_observables = false}).final_field - ref));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      CHECK(std::log2(errs[i - 1] / errs[i]) == doctest::Approx(1.0).epsilon(0.15));
    }
  }

  TEST_CASE("Strang symmetry") {
    const SpinorField u = oracle::random_band_limited(Grid::line(0.0, 2 * pi, 64), 20, 5);
    for (double eps : {1.0, 0.3}) {
      for (Regime r : {Regime::long_time, Regime::oscillatory}) {
        const ModelParams p = params(eps, r, 0.4, 1.0);
        CHECK(max_abs_difference(strang_step(strang_step(u, 0.07, p), -0.07, p), u) < 1e-12);
      }
    }
  }

  TEST_CASE("regimes coincide at eps = 1") {
    const SpinorField u = accuracy(64);
    for (SchemeKind kind : {SchemeKind::strang, SchemeKind::lie}) {
      SpinorField a = u;
      SpinorField b = u;
      Stepper(u.grid(), kind, 0.03, params(1.0, Regime::long_time)).advance(a);
      Stepper(u.grid(), kind, 0.03, params(1.0, Regime::oscillatory)).advance(b);
      CHECK(max_abs_difference(a, b) < 1e-13);
    }
  }

  TEST_CASE("kappa = eps^2 tau rescaling equivalence") {
    const SpinorField u = accuracy(64);
    for (double eps : {0.5, 0.25}) {
      const double tau = 0.01;
      const long n = 50;
      const Trajectory lt = evolve(u, SchemeSpec::make(SchemeKind::strang, tau, n * tau),
                                   params(eps, Regime::long_time), {.stride = n});
      const double kappa = eps * eps * tau;
      const Trajectory os = evolve(u, SchemeSpec::make(SchemeKind::strang, kappa, n * kappa),
                                   params(eps, Regime::oscillatory), {.stride = n});
      CHECK(max_abs_difference(lt.final_field, os.final_field) < 1e-12);
    }
  }
}

TEST_SUITE("evolve") {
  TEST_CASE("zero steps keeps only the initial state") {
    const SpinorField u = accuracy(16);
    const Trajectory t = evolve(u, SchemeSpec::make(SchemeKind::strang, 0.1, 0.0), params(1.0));
    REQUIRE(t.checkpoints.size() == 1);
    CHECK(t.checkpoints[0].step == 0);
    CHECK(t.checkpoints[0].time == 0.0);
    CHECK(max_abs_difference(t.final_field, u) == 0.0);
  }

  TEST_CASE("checkpoints every stride and at the end") {
    const SpinorField u = accuracy(16);
    const Trajectory t = evolve(u, SchemeSpec::make(SchemeKind::strang, 0.1, 2.5), params(1.0),
                                {.stride = 10, .keep_fields = true});
    std::vector<long> steps;
    for (const auto& c : t.checkpoints) steps.push_back(c.step);
    CHECK(steps == std::vector<long>{0, 10, 20, 25});
    for (std::size_t i = 1; i < t.checkpoints.size(); ++i) CHECK(t.checkpoints[i].time > t.checkpoints[i - 1].time);
    REQUIRE(t.checkpoints.back().field.has_value());
    CHECK(max_abs_difference(*t.checkpoints.back().field, t.final_field) == 0.0);
  }

  TEST_CASE("linear evolution is the exact free flow") {
    const SpinorField u = accuracy(32);
    const Trajectory t = evolve(u, SchemeSpec::make(SchemeKind::strang, 0.01, 1.0), params(0.0));
    CHECK(max_abs_difference(t.final_field, free_flow(u, 1.0)) < 1e-12);
    CHECK(max_abs_difference(t.final_field, oracle::analytic_free_flow(u, 1.0)) < 1e-12);
  }

  TEST_CASE("mass is conserved over 10^4 steps") {
    const SpinorField u = accuracy(64);
    const Trajectory t = evolve(u, SchemeSpec::make(SchemeKind::strang, 0.01, 100.0), params(0.5),
                                {.stride = 500});
    const double m0 = t.checkpoints.front().observables.mass;
    for (const auto& c : t.checkpoints) CHECK(std::abs(c.observables.mass - m0) / m0 < 1e-10);
  }

  TEST_CASE("non-finite input is reported with its step") {
    SpinorField u = accuracy(16);
    u.set(3, {cplx(NAN, 0.0), 0.0});
    try {
      evolve(u, SchemeSpec::make(SchemeKind::strang, 0.1, 1.0), params(1.0));
      FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
      CHECK(e.step() <= 1);
    }
  }
}

TEST_SUITE("reverse check") {
  TEST_CASE("distances") {
    const SpinorField u = accuracy(64);
    const SchemeSpec s = SchemeSpec::make(SchemeKind::strang, 0.01, 10.0);
    CHECK(reverse_check(u, s, params(0.5), 0) == 0.0);
    CHECK(reverse_check(u, s, params(0.5), 1) < 1e-12);
    CHECK(reverse_check(u, s, params(0.5), 1000) < 1e-9);
    CHECK_THROWS_AS(reverse_check(u, SchemeSpec::make(SchemeKind::lie, 0.01, 1.0), params(0.5), 1),
                    std::invalid_argument);
  }
}
