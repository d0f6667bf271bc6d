#pragma once

#include <stdexcept>
#include <vector>

namespace subfvm {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grunwald-Letnikov weights g_k = (-1)^k binom(alpha, k), k = 0..n, by the
/// stable recurrence g_k = g_{k-1} (1 - (alpha+1)/k).
std::vector<double> gl_weights(double alpha, int n);

/// Second-order shifted-and-weighted convolution weights for the (0,-1) pair:
/// w_0 = (2+alpha)/2, w_k = (2+alpha)/2 g_k - alpha/2 g_{k-1}.
std::vector<double> wsgl_weights(double alpha, int n);

/// Half-step averaged weights D_0 = w_0/2, D_k = (w_k + w_{k-1})/2.
std::vector<double> cn_wsgl_weights(double alpha, int n);

/// Starting weights E_k^(n) making the averaged operator exact on t^{sigma_r};
/// solves the m x m system with RHS
///   Gamma(s+1)/Gamma(s+1-alpha) (n-1/2)^{s-alpha} - sum_{k=0}^n D_{n-k} k^s.
std::vector<double> correction_weights_fractional(double alpha,
                                                  const std::vector<double>& sigma,
                                                  int n,
                                                  const std::vector<double>& d_avg);

/// Starting weights P_k^(n) for the centred first-derivative difference; RHS
///   sigma_r (n-1/2)^{sigma_r-1} - (n^{sigma_r} - (n-1)^{sigma_r}).
std::vector<double> correction_weights_first_derivative(const std::vector<double>& sigma, int n);

/// All temporal weights for one fractional order alpha = 1 - gamma, plus the
/// correction exponents sigma_r = r*gamma with m minimal s.t. (m+1)gamma >= 2.
class WeightTable {
  public:
    WeightTable(double gamma, int n_max, int m = -1);

    double gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    int n_max() const { return n_max_; }
    int num_corrections() const { return static_cast<int>(sigma_.size()); }
    const std::vector<double>& sigma() const { return sigma_; }
    const std::vector<double>& g() const { return g_; }
    const std::vector<double>& omega() const { return omega_; }
    const std::vector<double>& d_avg() const { return d_avg_; }

    /// E_k^(n), k = 1..m (empty when corrections are disabled).
    std::vector<double> correction_fractional(int n) const;
    /// P_k^(n), k = 1..m.
    std::vector<double> correction_first_derivative(int n) const;

    static int default_num_corrections(double gamma);

  private:
    double gamma_;
    double alpha_;
    int n_max_;
    std::vector<double> sigma_;
    std::vector<double> g_, omega_, d_avg_;
};

}  // namespace subfvm
