#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace subfvm {

/// Poles and residues of the best (K,K) rational approximation of e^z on the
/// negative real axis, computed by the Caratheodory-Fejer procedure
/// (Chebyshev expansion + Hankel SVD). Only the poles with positive imaginary
/// part are kept; the conjugates are implied.
struct CfRational {
    int degree = 0;
    std::vector<std::complex<double>> poles;     // K/2 entries, Im > 0
    std::vector<std::complex<double>> residues;  // matching residues
};

/// Computes (and caches per degree) the CF approximant. K must be even.
const CfRational& cf_rational(int K = 14);

/// Numerical inverse Laplace transform at time t > 0:
///   f(t) ~= -(2/t) Re sum_k c_k F(z_k / t).
double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& F,
                      double t, int K = 14);

}  // namespace subfvm
