#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <vector>

#include "doctest.h"
#include "subfvm/mesh_synth.hpp"
#include "subfvm/mittag_leffler.hpp"
#include "subfvm/stepper.hpp"

using namespace subfvm;

namespace {

/// One-unknown relaxation system: m u' = memory-operator applied to (-u).
/// Its exact solution from u(0) = 1 is the one-parameter Mittag-Leffler decay.
SparseSystem scalar_system(double gamma) {
    SparseSystem s;
    s.n_nodes = 1;
    s.mass = Eigen::VectorXd::Ones(1);
    FracBlock b;
    b.gamma = gamma;
    b.K.resize(1, 1);
    b.K.insert(0, 0) = -1.0;
    b.K.makeCompressed();
    b.mass_share = Eigen::VectorXd::Ones(1);
    s.blocks.push_back(std::move(b));
    return s;
}

double relax_error(double gamma, double tau, double t_end, bool corrections) {
    SparseSystem sys = scalar_system(gamma);
    ReducedSystem red = identity_reduction(sys);
    StepperOptions opt;
    opt.tau = tau;
    opt.corrections = corrections;
    int steps = static_cast<int>(std::lround(t_end / tau));
    opt.max_steps = steps + 4;
    Evolution ev(red, Eigen::VectorXd::Ones(1), opt);
    while (ev.step_index() < steps) ev.step();
    double exact = mittag_leffler(gamma, -std::pow(t_end, gamma));
    return std::abs(ev.reduced()(0) - exact);
}

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("classical limit matches a hand-rolled Crank-Nicolson march") {
    Mesh mesh = structured_unit_square(4);
    CvMesh cv = build_control_volumes(mesh);
    RegionTags tags = tag_regions(mesh, MorphologySpec::rectangle());
    MediumSpec med;
    med.region[0] = {1.0, 1.0, 1.0, 1.0};
    med.region[1] = {1.0, 1.0, 1.0, 1.0};
    SparseSystem sys = single_medium(cv, tags, med);

    Eigen::VectorXd u0(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i)
        u0(i) = std::sin(3.0 * mesh.nodes[i].x) + mesh.nodes[i].y;

    const double tau = 0.02;
    StepperOptions opt;
    opt.tau = tau;
    Evolution ev(identity_reduction(sys), u0, opt);

    Eigen::MatrixXd M = sys.mass.asDiagonal();
    Eigen::MatrixXd K(sys.total_stiffness());
    Eigen::MatrixXd A = M / tau - 0.5 * K;
    Eigen::MatrixXd B = M / tau + 0.5 * K;
    Eigen::VectorXd u = u0;
    for (int n = 0; n < 20; ++n) {
        u = A.partialPivLu().solve(B * u);
        ev.step();
        CAPTURE(n);
        CHECK((ev.reduced() - u).lpNorm<Eigen::Infinity>() < 1e-11);
    }
}

TEST_CASE("relaxation decay is accurate and second order in time") {
    for (double gamma : {0.5, 0.8}) {
        CAPTURE(gamma);
        double e1 = relax_error(gamma, 1.0 / 40, 1.0, true);
        double e2 = relax_error(gamma, 1.0 / 80, 1.0, true);
        double e3 = relax_error(gamma, 1.0 / 160, 1.0, true);
        CHECK(e3 < 2e-5);
        double p12 = std::log2(e1 / e2);
        double p23 = std::log2(e2 / e3);
        CHECK(p12 > 1.7);
        CHECK(p12 < 2.4);
        CHECK(p23 > 1.7);
        CHECK(p23 < 2.4);
    }
}

TEST_CASE("starting corrections beat the plain scheme on the singular layer") {
    // Without the starting weights the low regularity of the memory kernel at
    // t = 0 pollutes the error; the corrected march must be clearly better.
    double corrected = relax_error(0.5, 1.0 / 100, 1.0, true);
    double plain = relax_error(0.5, 1.0 / 100, 1.0, false);
    CHECK(corrected < 0.2 * plain);
}

TEST_CASE("matches an independent dense reimplementation of the scalar march") {
    // Re-derive the whole scheme (startup block solve included) directly from
    // the weight tables for the one-unknown relaxation problem and compare the
    // trajectory level by level.
    for (double gamma : {0.5, 0.8}) {
        CAPTURE(gamma);
        const double tau = 0.05;
        const int n_end = 25;
        WeightTable wt(gamma, n_end + 1, -1);
        const int m = wt.num_corrections();
        const auto& D = wt.d_avg();
        const double tg = std::pow(tau, gamma - 1.0);
        const double u0 = 1.0;

        // equation at level n, unknowns d_1..d_max (d_k = u^k - u0):
        //   d_n/tau - d_{n-1}/tau + (1/tau) sum_k P_k d_k
        //     + tg [sum_{k<=n} D_{n-k} d_k + sum_{k<=m} E_k d_k]
        //     = -t_{n-1/2}^{gamma-1}/Gamma(gamma) * u0
        auto row = [&](int n, Eigen::VectorXd& coef) {
            coef.setZero();
            coef(n - 1) += 1.0 / tau;
            if (n >= 2) coef(n - 2) -= 1.0 / tau;
            auto P = wt.correction_first_derivative(n);
            auto E = wt.correction_fractional(n);
            for (int k = 1; k <= m; ++k) {
                coef(k - 1) += P[k - 1] / tau;
                coef(k - 1) += tg * E[k - 1];
            }
            for (int k = 1; k <= n; ++k) coef(k - 1) += tg * D[n - k];
            return -std::pow((n - 0.5) * tau, gamma - 1.0) / std::tgamma(gamma) * u0;
        };

        std::vector<double> d(n_end, 0.0);
        {  // coupled startup for levels 1..m
            Eigen::MatrixXd A(m, m);
            Eigen::VectorXd b(m), coef(n_end);
            for (int n = 1; n <= m; ++n) {
                b(n - 1) = row(n, coef);
                A.row(n - 1) = coef.head(m);
            }
            Eigen::VectorXd sol = A.partialPivLu().solve(b);
            for (int k = 0; k < m; ++k) d[k] = sol(k);
        }
        for (int n = m + 1; n <= n_end; ++n) {
            Eigen::VectorXd coef(n_end);
            double b = row(n, coef);
            for (int k = 1; k <= n - 1; ++k) b -= coef(k - 1) * d[k - 1];
            d[n - 1] = b / coef(n - 1);
        }

        StepperOptions opt;
        opt.tau = tau;
        opt.max_steps = n_end;
        Evolution ev(identity_reduction(scalar_system(gamma)), Eigen::VectorXd::Ones(1), opt);
        while (ev.step_index() < n_end) {
            ev.step();
            CHECK(ev.reduced()(0) ==
                  doctest::Approx(u0 + d[ev.step_index() - 1]).epsilon(1e-11));
        }
    }
}

TEST_CASE("periodic cell march conserves the volume-weighted mean") {
    Mesh mesh = circle_inclusion_unit_square(24, 2, 4);
    CvMesh cv = build_control_volumes(mesh);
    RegionTags tags = tag_regions(mesh, MorphologySpec::from_tags());
    MediumSpec med;
    med.region[0] = {1.0, 1.0, 0.5, 1.0};
    med.region[1] = {10.0, 10.0, 0.8, 1.0};
    SparseSystem sys = couple_binary(cv, tags, med);
    std::vector<PeriodicMap> maps{pair_periodic(mesh, Axis::X, 1.0),
                                  pair_periodic(mesh, Axis::Y, 0.0)};
    ReducedSystem red = apply_quasi_periodic(sys, maps);

    Eigen::VectorXd u0(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) u0(i) = mesh.nodes[i].x + 1.0;

    StepperOptions opt;
    opt.tau = 0.01;
    opt.max_steps = 80;
    Evolution ev(red, u0, opt);
    const double mean0 = ev.mean_value();
    for (int n = 0; n < 60; ++n) {
        ev.step();
        CHECK(std::abs(ev.mean_value() - mean0) < 1e-9);
    }
}

TEST_CASE("steady detection and budget reporting") {
    SparseSystem sys = scalar_system(1.0);
    StepperOptions opt;
    opt.tau = 0.05;
    opt.max_steps = 4000;
    Evolution fast(identity_reduction(sys), Eigen::VectorXd::Ones(1), opt);
    RunResult ok = run_until_steady(fast, 1e-8, 5, 4000);
    CHECK(ok.steady);
    CHECK(ok.stop_reason == "steady");

    Evolution slow(identity_reduction(scalar_system(0.5)), Eigen::VectorXd::Ones(1), opt);
    RunResult bust = run_until_steady(slow, 1e-14, 5, 30);
    CHECK(!bust.steady);
    CHECK(bust.stop_reason == "step budget exhausted");
    CHECK(bust.steps == 30);
}

TEST_CASE("step budget overrun raises") {
    StepperOptions opt;
    opt.tau = 0.1;
    opt.max_steps = 3;
    Evolution ev(identity_reduction(scalar_system(0.8)), Eigen::VectorXd::Ones(1), opt);
    for (int i = 0; i < 3; ++i)
        if (ev.step_index() < 3) ev.step();
    CHECK_THROWS_AS(ev.step(), SolverError);
}

TEST_CASE("invalid construction raises") {
    StepperOptions opt;
    opt.tau = -1.0;
    CHECK_THROWS_AS(
        Evolution(identity_reduction(scalar_system(0.5)), Eigen::VectorXd::Ones(1), opt),
        DomainError);
    opt.tau = 0.1;
    CHECK_THROWS_AS(
        Evolution(identity_reduction(scalar_system(0.5)), Eigen::VectorXd::Ones(2), opt),
        DomainError);
}

}  // TEST_SUITE
