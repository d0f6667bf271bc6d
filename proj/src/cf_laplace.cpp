#include "subfvm/cf_laplace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "subfvm/weights.hpp"  // DomainError

namespace subfvm {

namespace {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// DFT with the e^{-2 pi i jk / n} sign convention.
cvec dft(const cvec& x) {
    const int n = static_cast<int>(x.size());
    cvec out(n);
    for (int k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double ang = -2.0 * M_PI * double(j) * double(k) / n;
            acc += x[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// Evaluates a polynomial with descending coefficients.
cplx polyval(const cvec& coeff, cplx x) {
    cplx acc = 0.0;
    for (const cplx& c : coeff) acc = acc * x + c;
    return acc;
}

// Monic polynomial with the given roots, descending coefficients.
cvec poly_from_roots(const cvec& roots) {
    cvec c{1.0};
    for (const cplx& r : roots) {
        cvec next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = next;
    }
    return c;
}

// Roots of a polynomial with descending coefficients via the companion matrix.
cvec poly_roots(const cvec& coeff) {
    int n = static_cast<int>(coeff.size()) - 1;
    while (n > 0 && std::abs(coeff[0]) == 0.0) --n;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(0, i) = -coeff[i + 1] / coeff[0];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    cvec roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

CfRational compute_cf(int K) {
    if (K <= 0 || K % 2 != 0) throw DomainError("CF degree K must be a positive even number");
    const int ncheb = 95;   // Chebyshev coefficients retained
    const int nf = 1024;    // FFT length
    const double scl = 9.0; // conformal scale factor

    cvec w(nf), F(nf);
    for (int j = 0; j < nf; ++j) {
        double ang = 2.0 * M_PI * j / nf;
        w[j] = cplx(std::cos(ang), std::sin(ang));
        double t = w[j].real();
        F[j] = std::exp(scl * (t - 1.0) / (t + 1.0 + 1e-16));
    }
    cvec cf_fft = dft(F);
    std::vector<double> c(nf);
    for (int j = 0; j < nf; ++j) c[j] = cf_fft[j].real() / nf;

    // Analytic part of F: degree-ncheb polynomial in w.
    cvec f(nf);
    for (int j = 0; j < nf; ++j) {
        cplx acc = 0.0;
        for (int k = ncheb; k >= 0; --k) acc = acc * w[j] + c[k];
        f[j] = acc;
    }

    // Hankel matrix of c[1..ncheb]; singular triplet K.
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ncheb, ncheb);
    for (int i = 0; i < ncheb; ++i)
        for (int j = 0; j < ncheb - i; ++j) H(i, j) = c[1 + i + j];
    Eigen::BDCSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()(K);
    Eigen::VectorXd u_vec = svd.matrixU().col(K).reverse();
    Eigen::VectorXd v_vec = svd.matrixV().col(K);

    cvec u_pad(nf, 0.0), v_pad(nf, 0.0);
    for (int i = 0; i < ncheb; ++i) {
        u_pad[i] = u_vec(i);
        v_pad[i] = v_vec(i);
    }
    cvec bu = dft(u_pad), bv = dft(v_pad);

    // r-tilde on the unit circle and the outer roots of v (the poles in w).
    cvec rt(nf);
    for (int j = 0; j < nf; ++j) {
        cplx wn = std::pow(w[j], ncheb);
        rt[j] = f[j] - s * wn * (bu[j] / bv[j]);
    }
    cvec v_desc(ncheb);
    for (int i = 0; i < ncheb; ++i) v_desc[i] = v_vec(i);
    cvec all_roots = poly_roots(v_desc);
    cvec qk;
    for (const cplx& r : all_roots)
        if (std::abs(r) > 1.0) qk.push_back(r);
    if (static_cast<int>(qk.size()) != K)
        throw DomainError("CF construction: expected " + std::to_string(K) + " poles, got " +
                          std::to_string(qk.size()));

    cvec qc = poly_from_roots(qk);
    cvec pt(nf);
    for (int j = 0; j < nf; ++j) pt[j] = rt[j] * polyval(qc, w[j]);
    cvec pt_fft = dft(pt);
    cvec ptc(K + 1);
    for (int k = 0; k <= K; ++k) ptc[k] = pt_fft[K - k].real() / nf;

    CfRational out;
    out.degree = K;
    for (int k = 0; k < K; ++k) {
        cplx q = qk[k];
        cvec others;
        for (int j = 0; j < K; ++j)
            if (j != k) others.push_back(qk[j]);
        cplx ck = polyval(ptc, q) / polyval(poly_from_roots(others), q);
        cplx zk = scl * (q - 1.0) * (q - 1.0) / ((q + 1.0) * (q + 1.0));
        ck = 4.0 * ck * zk / (q * q - 1.0);
        if (zk.imag() > 0.0) {
            out.poles.push_back(zk);
            out.residues.push_back(ck);
        }
    }
    if (static_cast<int>(out.poles.size()) != K / 2)
        throw DomainError("CF construction: conjugate pole pairing failed");
    return out;
}

}  // namespace

const CfRational& cf_rational(int K) {
    static std::map<int, CfRational> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(K);
    if (it == cache.end()) it = cache.emplace(K, compute_cf(K)).first;
    return it->second;
}

double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& F,
                      double t, int K) {
    if (!(t > 0.0)) throw DomainError("invert_laplace: t must be positive");
    const CfRational& cf = cf_rational(K);
    cplx acc = 0.0;
    for (size_t k = 0; k < cf.poles.size(); ++k) acc += cf.residues[k] * F(cf.poles[k] / t);
    return -2.0 * acc.real() / t;
}

}  // namespace subfvm
