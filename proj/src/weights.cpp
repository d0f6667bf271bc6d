#include "subfvm/weights.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace subfvm {

namespace {
void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw DomainError("fractional order alpha must lie in (0, 2), got " +
                          std::to_string(alpha));
}
}  // namespace

std::vector<double> gl_weights(double alpha, int n) {
    check_alpha(alpha);
    if (n < 0) throw DomainError("weight count must be non-negative");
    std::vector<double> g(n + 1);
    g[0] = 1.0;
    for (int k = 1; k <= n; ++k) g[k] = g[k - 1] * (1.0 - (alpha + 1.0) / k);
    return g;
}

std::vector<double> wsgl_weights(double alpha, int n) {
    auto g = gl_weights(alpha, n);
    std::vector<double> w(n + 1);
    w[0] = 0.5 * (2.0 + alpha) * g[0];
    for (int k = 1; k <= n; ++k) w[k] = 0.5 * (2.0 + alpha) * g[k] - 0.5 * alpha * g[k - 1];
    return w;
}

std::vector<double> cn_wsgl_weights(double alpha, int n) {
    auto w = wsgl_weights(alpha, n);
    std::vector<double> d(n + 1);
    d[0] = 0.5 * w[0];
    for (int k = 1; k <= n; ++k) d[k] = 0.5 * (w[k] + w[k - 1]);
    return d;
}

namespace {

/// Solves sum_k X_k k^{sigma_r} = rhs_r, the small Vandermonde-type system
/// shared by both correction-weight families.
std::vector<double> solve_moment_system(const std::vector<double>& sigma,
                                        const Eigen::VectorXd& rhs) {
    const int m = static_cast<int>(sigma.size());
    for (int r = 1; r < m; ++r)
        if (!(sigma[r] > sigma[r - 1]))
            throw DomainError("correction exponents must be strictly increasing");
    Eigen::MatrixXd A(m, m);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k < m; ++k) A(r, k) = std::pow(static_cast<double>(k + 1), sigma[r]);
    Eigen::VectorXd x = A.fullPivLu().solve(rhs);
    return {x.data(), x.data() + m};
}

}  // namespace

std::vector<double> correction_weights_fractional(double alpha,
                                                  const std::vector<double>& sigma,
                                                  int n,
                                                  const std::vector<double>& d_avg) {
    check_alpha(alpha);
    const int m = static_cast<int>(sigma.size());
    if (m == 0) return {};
    Eigen::VectorXd rhs(m);
    const double nh = n - 0.5;
    for (int r = 0; r < m; ++r) {
        double s = sigma[r];
        double exact = std::tgamma(s + 1.0) / std::tgamma(s + 1.0 - alpha) *
                       std::pow(nh, s - alpha);
        double discrete = 0.0;
        for (int k = 1; k <= n; ++k) discrete += d_avg[n - k] * std::pow(double(k), s);
        rhs(r) = exact - discrete;
    }
    return solve_moment_system(sigma, rhs);
}

std::vector<double> correction_weights_first_derivative(const std::vector<double>& sigma, int n) {
    const int m = static_cast<int>(sigma.size());
    if (m == 0) return {};
    Eigen::VectorXd rhs(m);
    const double nh = n - 0.5;
    for (int r = 0; r < m; ++r) {
        double s = sigma[r];
        rhs(r) = s * std::pow(nh, s - 1.0) -
                 (std::pow(double(n), s) - std::pow(double(n - 1), s));
    }
    return solve_moment_system(sigma, rhs);
}

int WeightTable::default_num_corrections(double gamma) {
    // smallest m with (m+1) gamma >= 2
    int m = static_cast<int>(std::ceil(2.0 / gamma)) - 1;
    return std::max(m, 1);
}

WeightTable::WeightTable(double gamma, int n_max, int m)
    : gamma_(gamma), alpha_(1.0 - gamma), n_max_(n_max) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw DomainError("gamma must lie in (0, 1], got " + std::to_string(gamma));
    if (m < 0) m = default_num_corrections(gamma);
    for (int r = 1; r <= m; ++r) sigma_.push_back(r * gamma);

    if (alpha_ > 0.0) {
        g_ = gl_weights(alpha_, n_max);
        omega_ = wsgl_weights(alpha_, n_max);
        d_avg_ = cn_wsgl_weights(alpha_, n_max);
    } else {
        // gamma = 1: order-zero operator, Crank-Nicolson averaging of identity.
        g_.assign(n_max + 1, 0.0);
        omega_.assign(n_max + 1, 0.0);
        d_avg_.assign(n_max + 1, 0.0);
        g_[0] = 1.0;
        omega_[0] = 1.0;
        d_avg_[0] = 0.5;
        if (n_max >= 1) d_avg_[1] = 0.5;
    }
}

std::vector<double> WeightTable::correction_fractional(int n) const {
    if (sigma_.empty()) return {};
    if (alpha_ == 0.0) return std::vector<double>(sigma_.size(), 0.0);
    return correction_weights_fractional(alpha_, sigma_, n, d_avg_);
}

std::vector<double> WeightTable::correction_first_derivative(int n) const {
    if (sigma_.empty()) return {};
    return correction_weights_first_derivative(sigma_, n);
}

}  // namespace subfvm
