#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "subfvm/mittag_leffler.hpp"

using namespace subfvm;

TEST_SUITE("mittag_leffler") {

TEST_CASE("classical special cases") {
    CHECK(mittag_leffler(1.0, 1.0, -2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
    CHECK(mittag_leffler(1.0, 1.0, 0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-13));
    // E_{2,1}(-x^2) = cos(x)
    CHECK(mittag_leffler(2.0, 1.0, -4.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-12));
    // E_{1,2}(z) = (e^z - 1)/z
    CHECK(mittag_leffler(1.0, 2.0, -3.0) ==
          doctest::Approx((std::exp(-3.0) - 1.0) / -3.0).epsilon(1e-12));
    CHECK(mittag_leffler(0.7, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("half order closed form") {
    // E_{1/2,1}(z) = e^{z^2} erfc(-z)
    for (double z : {-0.5, -1.0, -3.0, -8.0, -20.0}) {
        const double exact = std::exp(z * z) * std::erfc(-z);
        CHECK(mittag_leffler(0.5, 1.0, z) == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("reference values") {
    // High-precision series/closed-form evaluations, 17 significant digits.
    CHECK(mittag_leffler(0.8, 1.0, -2.5) ==
          doctest::Approx(0.14341738258439234).epsilon(1e-12));
    CHECK(mittag_leffler(0.5, 0.5, -3.0) ==
          doctest::Approx(0.027186130003586436).epsilon(1e-11));
    CHECK(mittag_leffler(0.9, 0.9, -5.0) ==
          doctest::Approx(0.010212790452992134).epsilon(1e-11));
    CHECK(mittag_leffler(0.1, 1.0, -1.0) ==
          doctest::Approx(0.4855644643110821).epsilon(1e-12));
    CHECK(mittag_leffler(0.8, 1.0, -30.0) ==
          doctest::Approx(0.0075758607992192104).epsilon(1e-10));
    CHECK(mittag_leffler(0.9, 0.9, -30.0) ==
          doctest::Approx(0.00011825044794307209).epsilon(1e-9));
    CHECK(mittag_leffler(0.5, 0.5, -30.0) ==
          doctest::Approx(0.00031291770525374203).epsilon(1e-9));
}

TEST_CASE("recurrence identity E_ab(z) = 1/Gamma(b) + z E_a_a+b(z)") {
    for (double a : {0.4, 0.7, 0.9})
        for (double z : {-0.3, -2.0, -9.0}) {
            const double lhs = mittag_leffler(a, 1.0, z);
            const double rhs = 1.0 + z * mittag_leffler(a, a + 1.0, z);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
}

TEST_CASE("monotone decay on the negative axis") {
    for (double a : {0.3, 0.5, 0.8}) {
        double prev = 1.0;
        for (double z = -0.5; z >= -40.0; z -= 0.5) {
            const double v = mittag_leffler(a, 1.0, z);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS(mittag_leffler(0.0, 1.0, -1.0));
    CHECK_THROWS(mittag_leffler(2.5, 1.0, -1.0));
}

}  // TEST_SUITE
