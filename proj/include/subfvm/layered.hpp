#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "subfvm/weights.hpp"

namespace subfvm {

/// Three-layer 1D problem with quasi-periodic end conditions: an inner slab
/// (layer index 1) sandwiched between two slabs of the outer medium (indices
/// 0 and 2). Per-layer diffusivity and fractional index; the end values
/// differ by the fixed jump q0 and the end fluxes match.
struct LayeredSpec {
    std::array<double, 4> breakpoints{0.0, 0.375, 0.625, 1.0};
    std::array<double, 3> diffusivity{1.0, 10.0, 1.0};
    std::array<double, 3> gamma{1.0, 1.0, 1.0};
    double q0 = 1.0;
    double u0 = 1.0;  // uniform initial value (used when `initial` is empty)
    std::array<std::function<double(double)>, 3> initial;  // optional profiles

    int m_trunc = 200;   // Fourier modes per layer (0..m_trunc)
    int cf_degree = 14;  // rational degree of the inverse Laplace transform

    double width(int layer) const { return breakpoints[layer + 1] - breakpoints[layer]; }
    double length() const { return breakpoints[3] - breakpoints[0]; }
    void validate() const;
};

/// Semi-analytical solution: finite Fourier transform per layer, a 3x3
/// Laplace-domain solve for the interface fluxes, and rational inverse
/// Laplace transform back to the time domain.
class LayeredOracle {
  public:
    explicit LayeredOracle(LayeredSpec spec);

    const LayeredSpec& spec() const { return spec_; }

    /// Interface fluxes (v12, v13, v23) in the Laplace domain.
    std::array<std::complex<double>, 3> interface_solve(std::complex<double> s) const;

    /// Laplace-domain point value X_bar(x, s).
    std::complex<double> laplace_value(double x, std::complex<double> s) const;

    /// Time-domain point value X(x, t), t > 0.
    double evaluate(double x, double t) const;

    /// Length-weighted mean <X>(t) via the zeroth Fourier modes.
    double mass_balance(double t) const;
    double initial_mean() const;

    int layer_of(double x) const;

  private:
    struct LayerSums {
        std::complex<double> left_left, right_right, cross;  // eigenfunction end products / eta
        std::complex<double> init_left, init_right;          // initial-data end sums
    };
    LayerSums layer_sums(int layer, std::complex<double> s) const;
    std::complex<double> eta(int layer, int m, std::complex<double> s) const;

    LayeredSpec spec_;
    std::array<std::vector<double>, 3> init_coef_;  // X~_{i0}(m)
};

}  // namespace subfvm
