#include "subfvm/layered.hpp"

#include <cmath>
#include <sstream>

#include "subfvm/cf_laplace.hpp"

namespace subfvm {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Eigenfunction endpoint values: phi_{m}(left) and phi_{m}(right) for a layer
// of width d.
double phi_left(int m, double d) { return m == 0 ? 1.0 / std::sqrt(d) : std::sqrt(2.0 / d); }
double phi_right(int m, double d) {
    return m == 0 ? 1.0 / std::sqrt(d) : std::sqrt(2.0 / d) * (m % 2 == 0 ? 1.0 : -1.0);
}

/// Closed form of sum_{m>=1} cos(m theta) / (m^2 + z^2) for theta in [0, 2 pi]:
///   pi/(2z) cosh(z (pi - theta)) / sinh(pi z) - 1/(2 z^2),
/// computed via scaled exponentials once the hyperbolics would overflow.
std::complex<double> cos_mode_sum(double theta, std::complex<double> z) {
    using C = std::complex<double>;
    if (z.real() < 0.0) z = -z;
    const C pz = kPi * z;
    C ratio;
    if (std::abs(pz.real()) < 30.0) {
        ratio = std::cosh(z * (kPi - theta)) / std::sinh(pz);
    } else {
        const C e1 = std::exp(-z * theta);
        const C e2 = std::exp(-z * (2.0 * kPi - theta));
        ratio = (e1 + e2) / (1.0 - std::exp(-2.0 * pz));
    }
    return kPi / (2.0 * z) * ratio - 1.0 / (2.0 * z * z);
}

}  // namespace

void LayeredSpec::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (width(i) <= 0.0) throw DomainError("layer widths must be positive");
        if (diffusivity[i] <= 0.0) throw DomainError("diffusivities must be positive");
        if (gamma[i] <= 0.0 || gamma[i] > 1.0) throw DomainError("gamma must lie in (0, 1]");
    }
    if (m_trunc < 1) throw DomainError("need at least one Fourier mode");
}

LayeredOracle::LayeredOracle(LayeredSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    for (int i = 0; i < 3; ++i) {
        const double d = spec_.width(i);
        const double x0 = spec_.breakpoints[i];
        auto& coef = init_coef_[i];
        coef.assign(spec_.m_trunc + 1, 0.0);
        if (!spec_.initial[i]) {
            coef[0] = spec_.u0 * std::sqrt(d);
            continue;
        }
        // Composite Simpson projection of the initial profile on each mode.
        const int n = 4096;
        const double h = d / n;
        for (int m = 0; m <= spec_.m_trunc; ++m) {
            const double lam = m * kPi / d;
            const double norm = m == 0 ? 1.0 / std::sqrt(d) : std::sqrt(2.0 / d);
            double acc = 0.0;
            for (int j = 0; j <= n; ++j) {
                double xi = x0 + j * h;
                double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
                acc += w * spec_.initial[i](xi) * norm * std::cos(lam * (xi - x0));
            }
            coef[m] = acc * h / 3.0;
        }
    }
}

int LayeredOracle::layer_of(double x) const {
    if (x < spec_.breakpoints[0] || x > spec_.breakpoints[3])
        throw DomainError("evaluation point outside the layered domain");
    for (int i = 0; i < 3; ++i)
        if (x <= spec_.breakpoints[i + 1]) return i;
    return 2;
}

std::complex<double> LayeredOracle::eta(int layer, int m, std::complex<double> s) const {
    const double lam = m * kPi / spec_.width(layer);
    return s + spec_.diffusivity[layer] * std::pow(s, 1.0 - spec_.gamma[layer]) * lam * lam;
}

LayeredOracle::LayerSums LayeredOracle::layer_sums(int layer, std::complex<double> s) const {
    const double d = spec_.width(layer);
    LayerSums sums{};

    // eta_m = base (m^2 + z^2): the eigenfunction end-product sums then reduce
    // to the closed-form mode sums, so they carry no truncation error.
    const double c = spec_.diffusivity[layer];
    const std::complex<double> base =
        c * std::pow(s, 1.0 - spec_.gamma[layer]) * kPi * kPi / (d * d);
    const std::complex<double> z = std::sqrt(s / base);
    const std::complex<double> same = (1.0 / s + 2.0 * cos_mode_sum(0.0, z) / base) / d;
    const std::complex<double> alt = (1.0 / s + 2.0 * cos_mode_sum(kPi, z) / base) / d;
    sums.left_left = same;
    sums.right_right = same;
    sums.cross = alt;

    // Initial-data sums keep the (fast-converging) series form.
    for (int m = 0; m <= spec_.m_trunc; ++m) {
        if (init_coef_[layer][m] == 0.0) continue;
        const std::complex<double> inv_eta = 1.0 / eta(layer, m, s);
        sums.init_left += init_coef_[layer][m] * phi_left(m, d) * inv_eta;
        sums.init_right += init_coef_[layer][m] * phi_right(m, d) * inv_eta;
    }
    return sums;
}

std::array<std::complex<double>, 3> LayeredOracle::interface_solve(std::complex<double> s) const {
    const LayerSums s1 = layer_sums(0, s), s2 = layer_sums(1, s), s3 = layer_sums(2, s);
    using C = std::complex<double>;

    // Unknowns v = (v12, v13, v23): fluxes at the inner interfaces and the
    // shared periodic end. Rows: continuity at the first interface, the jump
    // equation across the ends, continuity at the second interface.
    C a[3][3], b[3];
    a[0][0] = s1.right_right + s2.left_left;
    a[0][1] = -s1.cross;
    a[0][2] = -s2.cross;
    b[0] = s2.init_left - s1.init_right;

    a[1][0] = -s2.cross;
    a[1][1] = -s3.cross;
    a[1][2] = s2.right_right + s3.left_left;
    b[1] = s3.init_left - s2.init_right;

    a[2][0] = -s1.cross;
    a[2][1] = s3.right_right + s1.left_left;
    a[2][2] = -s3.cross;
    b[2] = s1.init_left - s3.init_right + spec_.q0 / s;

    auto det3 = [](C m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const C det = det3(a);
    const double scale = std::abs(a[0][0]) + std::abs(a[1][2]) + std::abs(a[2][1]);
    if (std::abs(det) < 1e-300 * scale * scale * scale) {
        std::ostringstream os;
        os << "interface system singular at s = (" << s.real() << ", " << s.imag() << ")";
        throw DomainError(os.str());
    }

    std::array<C, 3> v;
    for (int col = 0; col < 3; ++col) {
        C mod[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mod[r][c] = c == col ? b[r] : a[r][c];
        v[col] = det3(mod) / det;
    }
    return v;
}

std::complex<double> LayeredOracle::laplace_value(double x, std::complex<double> s) const {
    const int layer = layer_of(x);
    const auto v = interface_solve(s);
    // Endpoint flux pair (left, right) for each layer in terms of the
    // interface unknowns.
    const std::complex<double> vl = layer == 0 ? v[1] : (layer == 1 ? v[0] : v[2]);
    const std::complex<double> vr = layer == 0 ? v[0] : (layer == 1 ? v[2] : v[1]);

    const double d = spec_.width(layer);
    const double lam_base = kPi / d;
    const double xi = x - spec_.breakpoints[layer];
    const double theta = kPi * xi / d;  // in [0, pi]

    // End-flux response summed in closed form (phi_m(x) phi_m(end) / eta_m has
    // a slowly decaying 1/m^2 tail; the alternating variant shifts theta by pi).
    const double c = spec_.diffusivity[layer];
    const std::complex<double> base =
        c * std::pow(s, 1.0 - spec_.gamma[layer]) * kPi * kPi / (d * d);
    const std::complex<double> z = std::sqrt(s / base);
    const std::complex<double> right_resp =
        (1.0 / s + 2.0 * cos_mode_sum(theta + kPi, z) / base) / d;
    const std::complex<double> left_resp =
        (1.0 / s + 2.0 * cos_mode_sum(theta, z) / base) / d;
    std::complex<double> acc = vr * right_resp - vl * left_resp;

    for (int m = 0; m <= spec_.m_trunc; ++m) {
        if (init_coef_[layer][m] == 0.0) continue;
        const double norm = m == 0 ? 1.0 / std::sqrt(d) : std::sqrt(2.0 / d);
        acc += init_coef_[layer][m] / eta(layer, m, s) * norm * std::cos(m * lam_base * xi);
    }
    return acc;
}

double LayeredOracle::evaluate(double x, double t) const {
    return invert_laplace([&](std::complex<double> s) { return laplace_value(x, s); }, t,
                          spec_.cf_degree);
}

double LayeredOracle::initial_mean() const {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += std::sqrt(spec_.width(i)) * init_coef_[i][0];
    return acc / spec_.length();
}

double LayeredOracle::mass_balance(double t) const {
    if (t == 0.0) return initial_mean();
    auto mean_bar = [&](std::complex<double> s) {
        const auto v = interface_solve(s);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = spec_.width(i);
            const std::complex<double> vl = i == 0 ? v[1] : (i == 1 ? v[0] : v[2]);
            const std::complex<double> vr = i == 0 ? v[0] : (i == 1 ? v[2] : v[1]);
            const std::complex<double> mode0 =
                (init_coef_[i][0] + (vr - vl) / std::sqrt(d)) / s;
            acc += std::sqrt(d) * mode0;
        }
        return acc / spec_.length();
    };
    return invert_laplace(mean_bar, t, spec_.cf_degree);
}

}  // namespace subfvm
