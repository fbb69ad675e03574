#include "oracles.hpp"

#include "pushpull/errors.hpp"
#include "pushpull/fluid.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace pushpull;

TEST_CASE("Lambert W0 fixed points") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambert_w0(2.0 * std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lambert_w0(-std::exp(-1.0) - 1e-13) == -1.0);
    CHECK_THROWS_AS(lambert_w0(-0.37), std::domain_error);
    CHECK_THROWS_AS(lambert_w0(NAN), std::domain_error);
}

TEST_CASE("property: Lambert W0 inverts w e^w") {
    for (int i = 0; i < 1000; ++i) {
        const double w = -1.0 + 6.0 * i / 999.0;
        CHECK(std::abs(lambert_w0(w * std::exp(w)) - w) < 1e-10);
    }
    oracle::Gen g(1);
    for (int i = 0; i < 2000; ++i) {
        const double z = std::exp(g.real(-30.0, 30.0)) - std::exp(-1.0) * g.real(0.0, 1.0);
        const double w = lambert_w0(z);
        CHECK(w >= -1.0);
        CHECK(std::abs(w * std::exp(w) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("fluid parameters") {
    CHECK_THROWS_AS(FluidParams(0.0, 10.0), std::domain_error);
    CHECK_THROWS_AS(FluidParams(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(FluidParams(0.01, 10.0), std::domain_error);
    const auto fp = fluid_params_for({100, 1000});
    CHECK(fp.alpha == doctest::Approx(0.1));
    CHECK(fp.n == 1000.0);
    CHECK(fp.x0() == doctest::Approx(0.01));
}

TEST_CASE("phase curve endpoints and identity") {
    for (double alpha : {0.1, 1.0, 4.0}) {
        for (double n : {125.0, 250.0, 1000.0}) {
            const FluidParams fp(alpha, n);
            CHECK(fluid_phase_curve(fp, 1.0) == 1.0);
            CHECK(std::abs(fluid_phase_curve(fp, fp.x0()) - fp.y0()) < 1e-9);
            CHECK_THROWS_AS(fluid_phase_curve(fp, fp.x0() / 2.0), std::domain_error);
            CHECK_THROWS_AS(fluid_phase_curve(fp, 1.1), std::domain_error);
        }
    }
    const FluidParams one(1.0, 250.0);
    for (int i = 0; i <= 500; ++i) {
        const double x = one.x0() + (1.0 - one.x0()) * i / 500.0;
        CHECK(std::abs(fluid_phase_curve(one, x) - x) < 1e-9);
    }
    CHECK_THROWS_AS(fluid_phase_curve(FluidParams(1.0, 1.0), 1.0), std::domain_error);
}

TEST_CASE("property: phase curve is increasing") {
    oracle::Gen g(17);
    for (int k = 0; k < 40; ++k) {
        const FluidParams fp(g.real(0.05, 8.0), g.real(50.0, 2000.0));
        double last = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = fp.x0() + (1.0 - fp.x0()) * i / 200.0;
            const double y = fluid_phase_curve(fp, x);
            CHECK(y >= last);
            CHECK(y >= 0.0);
            CHECK(y <= 1.0);
            last = y;
        }
    }
}

TEST_CASE("ODE orbit lies on the closed-form curve") {
    for (double alpha : {0.1, 1.0, 4.0}) {
        for (double n : {125.0, 250.0, 1000.0}) {
            const FluidParams fp(alpha, n);
            const auto curve = fluid_trajectory(fp, default_fluid_t_max(fp), default_fluid_dt(fp));
            REQUIRE(curve.samples.size() == curve.gaps.size());
            CHECK(ode_closed_form_deviation(curve) < 1e-6);
            CHECK(curve.samples.front().x == doctest::Approx(fp.x0()).epsilon(1e-14));
            CHECK(curve.samples.front().y == doctest::Approx(fp.y0()).epsilon(1e-14));
            // halts early only once both gaps are below 1e-9
            const auto& last = curve.gaps.back();
            if (curve.samples.back().t < default_fluid_t_max(fp)) CHECK(std::max(last.u, last.v) < 1e-9);
            CHECK(std::max(last.u, last.v) < 1e-5);
            for (std::size_t i = 1; i < curve.samples.size(); ++i) {
                CHECK(curve.samples[i].x >= curve.samples[i - 1].x);
                CHECK(curve.samples[i].y >= curve.samples[i - 1].y);
            }
        }
    }
}

TEST_CASE("alpha = 1 keeps x and y equal") {
    const FluidParams fp(1.0, 250.0);
    const auto curve = fluid_trajectory(fp, 5000.0, 0.05);
    for (const auto& s : curve.samples) CHECK(std::abs(s.x - s.y) < 1e-9);
}

TEST_CASE("RK4 step halving") {
    const FluidParams fp(4.0, 125.0);
    const auto coarse = fluid_trajectory(fp, 1500.0, 0.02, 20000, 0.0);
    const auto fine = fluid_trajectory(fp, 1500.0, 0.01, 20000, 0.0);
    CHECK(coarse.samples.back().t == 1500.0);
    CHECK(std::abs(coarse.samples.back().x - fine.samples.back().x) < 1e-8);
    CHECK(std::abs(coarse.samples.back().y - fine.samples.back().y) < 1e-8);
    CHECK_THROWS_AS(fluid_trajectory(fp, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(fluid_trajectory(fp, -1.0, 0.1), std::domain_error);
}

TEST_CASE("sup deviation") {
    const FluidParams fp(4.0, 125.0);
    ProportionPath on_curve;
    for (int i = 0; i <= 50; ++i) {
        const double x = fp.x0() + (1.0 - fp.x0()) * i / 50.0;
        on_curve.push_back({0.0, x, fluid_phase_curve(fp, x)});
    }
    CHECK(sup_deviation(on_curve, fp) == 0.0);
    on_curve[10].y += 0.25;
    CHECK(sup_deviation(on_curve, fp) == doctest::Approx(0.25));
    CHECK(sup_deviation({}, fp) == 0.0);
}
