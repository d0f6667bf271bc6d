#include <cmath>

#include "doctest.h"
#include "subfvm/weights.hpp"

using namespace subfvm;

TEST_SUITE("weights") {

TEST_CASE("grunwald weights recurrence values") {
    auto g = gl_weights(0.5, 4);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(g[3] == doctest::Approx(-0.0625).epsilon(1e-15));
}

TEST_CASE("grunwald weights sum tends to zero") {
    // (1-1)^alpha = 0: partial sums of g_k decay like n^{-alpha}.
    auto g = gl_weights(0.5, 20000);
    double s = 0.0;
    for (double v : g) s += v;
    CHECK(std::abs(s) < 5e-3);
    auto g8 = gl_weights(0.8, 20000);
    s = 0.0;
    for (double v : g8) s += v;
    CHECK(std::abs(s) < 5e-4);
}

TEST_CASE("shifted weighted weights") {
    auto w = wsgl_weights(0.5, 3);
    CHECK(w[0] == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1.25 * -0.5 - 0.25 * 1.0).epsilon(1e-15));
    auto D = cn_wsgl_weights(0.5, 3);
    CHECK(D[0] == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(D[1] == doctest::Approx((w[1] + w[0]) / 2.0).epsilon(1e-15));
}

TEST_CASE("integer order degenerates to trapezoid weights") {
    WeightTable wt(1.0, 10);
    const auto& D = wt.d_avg();
    CHECK(D[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(D[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(D[2] == doctest::Approx(0.0).epsilon(1e-15));
    auto E = wt.correction_fractional(4);
    for (double e : E) CHECK(e == doctest::Approx(0.0).epsilon(1e-14));
    auto P = wt.correction_first_derivative(4);
    for (double p : P) CHECK(p == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("default correction count") {
    CHECK(WeightTable::default_num_corrections(0.5) == 3);
    CHECK(WeightTable::default_num_corrections(0.8) == 2);
    CHECK(WeightTable::default_num_corrections(1.0) == 1);
    CHECK(WeightTable::default_num_corrections(0.1) == 19);
}

// The defining property of the starting weights: the averaged operator with
// corrections is exact on t^{sigma_r} at the half step (tau = 1 units):
//   sum_{k=0}^n D_{n-k} k^s + sum_{k=1}^m E_k^{(n)} k^s
//     = Gamma(s+1)/Gamma(s+1-alpha) (n-1/2)^{s-alpha}.
TEST_CASE("fractional corrections exact on power monomials") {
    for (double gamma : {0.5, 0.8, 0.3}) {
        WeightTable wt(gamma, 64);
        const double alpha = 1.0 - gamma;
        const auto& D = wt.d_avg();
        for (int n : {1, 2, 3, 7, 30}) {
            auto E = wt.correction_fractional(n);
            for (int r = 1; r <= wt.num_corrections(); ++r) {
                const double s = r * gamma;
                double lhs = 0.0;
                for (int k = 1; k <= n; ++k) lhs += D[n - k] * std::pow(double(k), s);
                for (int k = 1; k <= wt.num_corrections(); ++k)
                    lhs += E[k - 1] * std::pow(double(k), s);
                const double rhs = std::tgamma(s + 1.0) / std::tgamma(s + 1.0 - alpha) *
                                   std::pow(n - 0.5, s - alpha);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            }
        }
    }
}

// Same for the first-derivative corrections:
//   n^s - (n-1)^s + sum_k P_k^{(n)} k^s = s (n-1/2)^{s-1}.
TEST_CASE("derivative corrections exact on power monomials") {
    for (double gamma : {0.5, 0.8}) {
        WeightTable wt(gamma, 64);
        for (int n : {1, 2, 5, 20}) {
            auto P = wt.correction_first_derivative(n);
            for (int r = 1; r <= wt.num_corrections(); ++r) {
                const double s = r * gamma;
                double lhs = std::pow(double(n), s) - std::pow(double(n - 1), s);
                for (int k = 1; k <= wt.num_corrections(); ++k)
                    lhs += P[k - 1] * std::pow(double(k), s);
                CHECK(lhs == doctest::Approx(s * std::pow(n - 0.5, s - 1.0)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("plain weighted scheme converges on a smooth power") {
    // Without corrections the operator converges at second order on t^3 (a
    // smooth function): discrete value at t = 1 vs
    // Gamma(4)/Gamma(4-alpha) t^{3-alpha}.
    const double alpha = 0.5;
    auto value_at = [&](int n) {
        auto D = cn_wsgl_weights(alpha, n);
        const double tau = 1.0 / n;
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += D[n - k] * std::pow(k * tau, 3.0);
        return std::pow(tau, -alpha) * acc;
    };
    const double exact = std::tgamma(4.0) / std::tgamma(4.0 - alpha) * std::pow(0.5 + 0.5, 0.0);
    // evaluate at t_{n-1/2}: exact = G(4)/G(3.5) (1 - tau/2)^{2.5}; compare errors
    auto err = [&](int n) {
        const double tau = 1.0 / n;
        const double ex = std::tgamma(4.0) / std::tgamma(4.0 - alpha) *
                          std::pow(1.0 - tau / 2.0, 3.0 - alpha);
        return std::abs(value_at(n) - ex);
    };
    (void)exact;
    const double e1 = err(64), e2 = err(128);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("rejects invalid parameters") {
    CHECK_THROWS_AS(WeightTable(0.0, 10), DomainError);
    CHECK_THROWS_AS(WeightTable(1.5, 10), DomainError);
    CHECK_THROWS_AS(gl_weights(0.5, -1), DomainError);
}

}  // TEST_SUITE
