#include "subfvm/stepper.hpp"

#include <cmath>
#include <numeric>

namespace subfvm {

ReducedSystem identity_reduction(const SparseSystem& sys) {
    ReducedSystem red;
    red.n_full = sys.n_nodes;
    red.n_reduced = sys.n_nodes;
    red.full_to_red.resize(sys.n_nodes);
    for (int i = 0; i < sys.n_nodes; ++i) red.full_to_red[i] = i;
    red.offsets = Eigen::VectorXd::Zero(sys.n_nodes);
    red.mass = sys.mass;
    red.full_mass = sys.mass;
    for (const auto& b : sys.blocks) {
        ReducedSystem::Block rb;
        rb.gamma = b.gamma;
        rb.K = b.K;
        rb.K_full = b.K;
        rb.mass_share = b.mass_share;
        rb.k_offset = Eigen::VectorXd::Zero(sys.n_nodes);
        red.blocks.push_back(std::move(rb));
    }
    return red;
}

Evolution::Evolution(const ReducedSystem& sys, const Eigen::VectorXd& u0_full,
                     const StepperOptions& opt)
    : sys_(sys), opt_(opt) {
    if (opt_.tau <= 0.0) throw DomainError("time step must be positive");
    if (u0_full.size() != sys_.n_full) throw DomainError("initial condition size mismatch");
    const int m_opt = opt_.corrections ? opt_.num_corrections : 0;
    for (const auto& b : sys_.blocks) {
        weights_.emplace_back(b.gamma, opt_.max_steps + 1, m_opt);
        m_max_ = std::max(m_max_, weights_.back().num_corrections());
    }
    w0_ = sys_.project(u0_full);
    w_cur_ = w0_;
    w_prev_ = w0_;
    for (size_t r = 0; r < sys_.blocks.size(); ++r) {
        const auto& b = sys_.blocks[r];
        k_w0_.push_back(b.K * w0_);
        f0_.push_back(sys_.reduce_load(b.K_full * u0_full));
        g_ref_.push_back(k_w0_[r] + b.k_offset - f0_[r]);
        const auto& D = weights_[r].d_avg();
        std::vector<double> pre(D.size() + 1, 0.0);
        for (size_t j = 0; j < D.size(); ++j) pre[j + 1] = pre[j] + D[j];
        d_prefix_.push_back(std::move(pre));
    }
}

double Evolution::mean_value() const {
    // Volume-weighted mean over the reduced unknowns: the reduced masses carry
    // the whole cell volume (slave volumes folded into masters), and the
    // quasi-periodic offsets only add a time-invariant constant.
    return sys_.mass.dot(w_cur_) / sys_.mass.sum();
}

double Evolution::change_rate() const {
    if (n_ == 0) return 0.0;
    double du = (w_cur_ - w_prev_).lpNorm<Eigen::Infinity>();
    double scale = std::max(w_cur_.lpNorm<Eigen::Infinity>(), 1.0);
    return du / (opt_.tau * scale);
}

Eigen::VectorXd Evolution::load_at(double t_half) const {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys_.n_reduced);
    if (opt_.load) rhs += sys_.reduce_load(opt_.load(t_half));
    for (size_t r = 0; r < sys_.blocks.size(); ++r) {
        const double g = sys_.blocks[r].gamma;
        const double c = std::pow(t_half, g - 1.0) / std::tgamma(g);
        rhs += c * f0_[r];
    }
    return rhs;
}

Eigen::VectorXd Evolution::history_term(int block, int n) const {
    const auto& wt = weights_[block];
    const auto& D = wt.d_avg();
    Eigen::VectorXd h = Eigen::VectorXd::Zero(sys_.n_reduced);
    for (int k = 1; k <= n - 1; ++k) h += D[n - k] * diffs_[k - 1];
    auto E = wt.correction_fractional(n);
    for (int k = 1; k <= static_cast<int>(E.size()); ++k) h += E[k - 1] * diffs_[k - 1];
    return h;
}

void Evolution::factor_step_matrix() {
    const int N = sys_.n_reduced;
    Eigen::SparseMatrix<double> A(N, N);
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < N; ++i) trips.emplace_back(i, i, sys_.mass(i) / opt_.tau);
    A.setFromTriplets(trips.begin(), trips.end());
    for (size_t r = 0; r < sys_.blocks.size(); ++r) {
        const double g = sys_.blocks[r].gamma;
        const double scale = std::pow(opt_.tau, g - 1.0) * weights_[r].d_avg()[0];
        A -= scale * sys_.blocks[r].K;
    }
    lu_.compute(A);
    if (lu_.info() != Eigen::Success) throw SolverError("step matrix factorisation failed");
    factored_ = true;
}

void Evolution::startup() {
    const int N = sys_.n_reduced;
    const int m = m_max_;
    const double tau = opt_.tau;

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m * N);

    for (int n = 1; n <= m; ++n) {
        const int row0 = (n - 1) * N;
        for (int i = 0; i < N; ++i) trips.emplace_back(row0 + i, row0 + i, sys_.mass(i) / tau);
        if (n == 1)
            rhs.segment(row0, N) += sys_.mass.cwiseProduct(w0_) / tau;
        else
            for (int i = 0; i < N; ++i)
                trips.emplace_back(row0 + i, (n - 2) * N + i, -sys_.mass(i) / tau);

        rhs.segment(row0, N) += load_at((n - 0.5) * tau);

        for (size_t r = 0; r < sys_.blocks.size(); ++r) {
            const auto& wt = weights_[r];
            const auto& D = wt.d_avg();
            const double g = sys_.blocks[r].gamma;
            const double tg = std::pow(tau, g - 1.0);
            const int mr = wt.num_corrections();
            const auto E = wt.correction_fractional(n);
            const auto P = wt.correction_first_derivative(n);

            double c_sum = 0.0, p_sum = 0.0;
            for (int k = 1; k <= m; ++k) {
                double c = (k <= n ? D[n - k] : 0.0) + (k <= mr ? E[k - 1] : 0.0);
                double p = k <= mr ? P[k - 1] : 0.0;
                c_sum += c;
                p_sum += p;
                if (c != 0.0) {
                    const auto& K = sys_.blocks[r].K;
                    for (int col = 0; col < K.outerSize(); ++col)
                        for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it)
                            trips.emplace_back(row0 + it.row(), (k - 1) * N + it.col(),
                                               -tg * c * it.value());
                }
                if (p != 0.0)
                    for (int i = 0; i < N; ++i)
                        trips.emplace_back(row0 + i, (k - 1) * N + i,
                                           sys_.blocks[r].mass_share(i) * p / tau);
            }
            rhs.segment(row0, N) += tg * c_sum * (sys_.blocks[r].k_offset - f0_[r]);
            rhs.segment(row0, N) += (p_sum / tau) * sys_.blocks[r].mass_share.cwiseProduct(w0_);
        }
    }

    // The correction weights can span many orders of magnitude (small gamma,
    // many correction terms), which makes this block system severely
    // ill-conditioned; factorising in extended precision keeps the startup
    // levels (and with them the conserved mass) accurate.
    using LongVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    Eigen::SparseMatrix<long double> A_ld(m * N, m * N);
    {
        std::vector<Eigen::Triplet<long double>> trips_ld;
        trips_ld.reserve(trips.size());
        for (const auto& t : trips)
            trips_ld.emplace_back(t.row(), t.col(), static_cast<long double>(t.value()));
        A_ld.setFromTriplets(trips_ld.begin(), trips_ld.end());
    }
    Eigen::SparseLU<Eigen::SparseMatrix<long double>> blu;
    blu.compute(A_ld);
    if (blu.info() != Eigen::Success)
        throw SolverError("startup block solve failed to factorise (m=" + std::to_string(m) + ")");
    LongVec sol_ld = blu.solve(rhs.cast<long double>());
    Eigen::VectorXd sol = sol_ld.cast<double>();

    for (int k = 1; k <= m; ++k) diffs_.push_back(sol.segment((k - 1) * N, N) - w0_);
    w_prev_ = m >= 2 ? Eigen::VectorXd(sol.segment((m - 2) * N, N)) : w0_;
    w_cur_ = sol.segment((m - 1) * N, N);
    n_ = m;
}

void Evolution::step() {
    if (n_ == 0 && m_max_ >= 1) {
        startup();
        return;
    }
    const int n = n_ + 1;
    if (n > opt_.max_steps) throw SolverError("step budget exhausted");
    if (!factored_) factor_step_matrix();

    const double tau = opt_.tau;
    Eigen::VectorXd rhs = sys_.mass.cwiseProduct(w_cur_) / tau;
    rhs += load_at((n - 0.5) * tau);

    for (size_t r = 0; r < sys_.blocks.size(); ++r) {
        const auto& wt = weights_[r];
        const double g = sys_.blocks[r].gamma;
        const double tg = std::pow(tau, g - 1.0);
        const auto& D = wt.d_avg();

        Eigen::VectorXd h = Eigen::VectorXd::Zero(sys_.n_reduced);
        for (int k = 1; k <= n - 1; ++k) h += D[n - k] * diffs_[k - 1];
        const auto E = wt.correction_fractional(n);
        for (int k = 1; k <= static_cast<int>(E.size()); ++k) h += E[k - 1] * diffs_[k - 1];
        const double s_n = d_prefix_[r][n] + std::accumulate(E.begin(), E.end(), 0.0);
        rhs += tg * (sys_.blocks[r].K * h - D[0] * k_w0_[r] + s_n * g_ref_[r]);

        const auto P = wt.correction_first_derivative(n);
        for (int k = 1; k <= static_cast<int>(P.size()); ++k)
            rhs -= (P[k - 1] / tau) * sys_.blocks[r].mass_share.cwiseProduct(diffs_[k - 1]);
    }

    Eigen::VectorXd w = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success) throw SolverError("linear solve failed");
    w_prev_ = w_cur_;
    w_cur_ = w;
    diffs_.push_back(w_cur_ - w0_);
    n_ = n;
}

RunResult run_until_steady(Evolution& ev, double tol, int window, int max_steps,
                           const std::function<void(Evolution&)>& on_step) {
    RunResult res;
    int quiet = 0;
    while (ev.step_index() < max_steps) {
        ev.step();
        if (on_step) on_step(ev);
        res.steps = ev.step_index();
        res.final_time = ev.time();
        res.last_change = ev.change_rate();
        if (tol > 0.0) {
            quiet = res.last_change < tol ? quiet + 1 : 0;
            if (quiet >= window) {
                res.steady = true;
                res.stop_reason = "steady";
                return res;
            }
        }
    }
    res.stop_reason = tol > 0.0 ? "step budget exhausted" : "t_final reached";
    return res;
}

}  // namespace subfvm
