#include <cmath>
#include <complex>
#include <initializer_list>

#include "doctest.h"
#include "subfvm/layered.hpp"

using namespace subfvm;

namespace {

// Classical steady end-to-end flux for widths (0.375, 0.25, 0.375),
// diffusivities (1, 10, 1) and unit end-value jump: the layers act as series
// resistors, J = 1 / (0.375/1 + 0.25/10 + 0.375/1) = 1.29032258064516...
constexpr double kSeriesFlux = 1.2903225806451613;

}  // namespace

TEST_SUITE("layered") {

TEST_CASE("zero jump and uniform start stay flat") {
    LayeredSpec spec;
    spec.q0 = 0.0;
    spec.u0 = 2.5;
    LayeredOracle oracle(spec);
    auto v = oracle.interface_solve({1.7, 0.4});
    for (auto& vi : v) CHECK(std::abs(vi) < 1e-12);
    for (double t : {0.01, 0.5, 3.0})
        for (double x : {0.05, 0.4, 0.5, 0.8, 0.99})
            CHECK(oracle.evaluate(x, t) == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("end-to-end jump equals q0") {
    LayeredSpec spec;
    spec.gamma = {0.7, 0.9, 0.7};
    LayeredOracle oracle(spec);
    for (double t : {0.05, 0.3, 1.0, 5.0}) {
        double jump = oracle.evaluate(1.0, t) - oracle.evaluate(0.0, t);
        CHECK(jump == doctest::Approx(1.0).epsilon(5e-8));
    }
}

TEST_CASE("interfaces are continuous") {
    LayeredSpec spec;
    spec.gamma = {0.5, 1.0, 0.5};
    LayeredOracle oracle(spec);
    for (double t : {0.1, 1.0}) {
        CHECK(oracle.evaluate(0.375 - 1e-12, t) ==
              doctest::Approx(oracle.evaluate(0.375 + 1e-12, t)).epsilon(1e-6));
        CHECK(oracle.evaluate(0.625 - 1e-12, t) ==
              doctest::Approx(oracle.evaluate(0.625 + 1e-12, t)).epsilon(1e-6));
    }
}

TEST_CASE("mean value is conserved") {
    LayeredSpec spec;
    spec.gamma = {0.6, 1.0, 0.6};
    LayeredOracle uniform(spec);
    CHECK(uniform.initial_mean() == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.05, 0.4, 2.0})
        CHECK(uniform.mass_balance(t) == doctest::Approx(1.0).epsilon(1e-9));

    LayeredSpec bumpy = spec;
    bumpy.initial[0] = [](double x) { return 1.0 + x * x; };
    bumpy.initial[1] = [](double x) { return 2.0 - x; };
    bumpy.initial[2] = [](double x) { return std::cos(3.0 * x); };
    LayeredOracle oracle(bumpy);
    const double mean0 = oracle.initial_mean();
    for (double t : {0.05, 0.4, 2.0})
        CHECK(oracle.mass_balance(t) == doctest::Approx(mean0).epsilon(1e-8));
}

TEST_CASE("classical steady state is the series-resistor profile") {
    LayeredSpec spec;  // gamma = 1 everywhere
    LayeredOracle oracle(spec);
    const double t = 60.0;  // far beyond the slowest relaxation time

    // Laplace-domain small-s limit: v_bar(s) -> J / s.
    for (double s : {1e-4, 1e-5}) {
        auto v = oracle.interface_solve({s, 0.0});
        for (auto& vi : v) CHECK(std::real(vi) * s == doctest::Approx(kSeriesFlux).epsilon(1e-2));
    }

    // Piecewise-linear profile with slopes J/D_i around the preserved mean.
    auto steady = [&](double x) {
        // integrate slope from 0, then shift so the length-weighted mean is 1
        double val = 0.0;
        const double d[3] = {0.375, 0.25, 0.375};
        const double D[3] = {1.0, 10.0, 1.0};
        double left = 0.0;
        for (int i = 0; i < 3; ++i) {
            double in_layer = std::min(std::max(x - left, 0.0), d[i]);
            val += kSeriesFlux / D[i] * in_layer;
            left += d[i];
        }
        // mean of the un-shifted profile
        double mean = 0.0, acc = 0.0;
        left = 0.0;
        for (int i = 0; i < 3; ++i) {
            double slope = kSeriesFlux / D[i];
            mean += acc * d[i] + 0.5 * slope * d[i] * d[i];
            acc += slope * d[i];
            left += d[i];
        }
        return val - mean + 1.0;
    };
    for (double x : {0.0, 0.1, 0.375, 0.5, 0.625, 0.9, 1.0})
        CHECK(oracle.evaluate(x, t) == doctest::Approx(steady(x)).epsilon(1e-6));

    // Slope ratio across an interface is the diffusivity ratio (flux match).
    double so = (oracle.evaluate(0.30, t) - oracle.evaluate(0.25, t)) / 0.05;
    double si = (oracle.evaluate(0.55, t) - oracle.evaluate(0.45, t)) / 0.10;
    CHECK(so / si == doctest::Approx(10.0).epsilon(1e-4));
}

TEST_CASE("truncation is converged") {
    LayeredSpec spec;
    spec.gamma = {0.5, 0.8, 0.5};
    LayeredSpec fine = spec;
    fine.m_trunc = 2 * spec.m_trunc;
    LayeredOracle coarse(spec), refined(fine);
    for (double x : {0.1, 0.375, 0.5, 0.99})
        CHECK(coarse.evaluate(x, 0.5) ==
              doctest::Approx(refined.evaluate(x, 0.5)).epsilon(1e-9));
}

TEST_CASE("layer lookup and validation") {
    LayeredSpec spec;
    LayeredOracle oracle(spec);
    CHECK(oracle.layer_of(0.1) == 0);
    CHECK(oracle.layer_of(0.5) == 1);
    CHECK(oracle.layer_of(0.99) == 2);

    LayeredSpec bad;
    bad.breakpoints = {0.0, 0.7, 0.6, 1.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    LayeredSpec bad2;
    bad2.gamma = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(bad2.validate(), DomainError);
}

}  // TEST_SUITE
