#include "subfvm/assembly.hpp"

#include <algorithm>
#include <map>

namespace subfvm {

Eigen::SparseMatrix<double> SparseSystem::total_stiffness() const {
    Eigen::SparseMatrix<double> K(n_nodes, n_nodes);
    for (const auto& b : blocks) K += b.K;
    return K;
}

Eigen::VectorXd lumped_mass(const CvMesh& cv) {
    return Eigen::Map<const Eigen::VectorXd>(cv.cv_volumes.data(), cv.num_nodes());
}

namespace {

struct BlockBuilder {
    double gamma;
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd mass_share;
};

SparseSystem assemble(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium,
                      bool binary) {
    const int n = cv.num_nodes();
    SparseSystem sys;
    sys.n_nodes = n;

    // One block per distinct gamma, plus a classical block for interface rows
    // in ClassicalFlux mode.
    auto classical_rows =
        binary && medium.interface_mode == InterfaceMode::ClassicalFlux
            ? tags.interface_nodes
            : std::set<int>{};

    std::map<double, int> gamma_block;
    std::vector<BlockBuilder> builders;
    auto block_for = [&](double gamma) {
        auto it = gamma_block.find(gamma);
        if (it == gamma_block.end()) {
            it = gamma_block.emplace(gamma, builders.size()).first;
            builders.push_back({gamma, {}, Eigen::VectorXd::Zero(n)});
        }
        return it->second;
    };

    for (const auto& scv : cv.scvs) {
        const int region = tags.tri_region.empty() ? 0 : tags.tri_region[scv.triangle];
        const RegionMedium& med = medium.region[region];
        const int row = scv.node;
        const bool classical = classical_rows.count(row) > 0;
        const int bi = block_for(classical ? 1.0 : med.gamma);

        builders[bi].mass_share(row) += med.capacity * scv.area;

        const auto& tri = cv.base.triangles[scv.triangle];
        for (const auto& face : scv.faces) {
            for (int k = 0; k < 3; ++k) {
                double coeff = med.qx * cv.grad_x(scv.triangle, k) * face.dy -
                               med.qy * cv.grad_y(scv.triangle, k) * face.dx;
                builders[bi].triplets.emplace_back(row, tri[k], coeff);
            }
        }
    }

    sys.mass = Eigen::VectorXd::Zero(n);
    for (auto& b : builders) {
        FracBlock block;
        block.gamma = b.gamma;
        block.K.resize(n, n);
        block.K.setFromTriplets(b.triplets.begin(), b.triplets.end());
        block.mass_share = b.mass_share;
        sys.mass += b.mass_share;
        sys.blocks.push_back(std::move(block));
    }
    return sys;
}

}  // namespace

SparseSystem couple_binary(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium) {
    return assemble(cv, tags, medium, true);
}

SparseSystem single_medium(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium) {
    return assemble(cv, tags, medium, false);
}

Eigen::SparseMatrix<double> stiffness(const CvMesh& cv, const RegionTags& tags,
                                      const MediumSpec& medium) {
    return assemble(cv, tags, medium, true).total_stiffness();
}

Eigen::VectorXd boundary_flux_vector(const CvMesh& cv, const FluxFunction& psi, double t) {
    const int n = cv.num_nodes();
    Eigen::VectorXd fb = Eigen::VectorXd::Zero(n);

    // Oriented boundary edges: as they appear in their (unique) owning
    // triangle's counter-clockwise order, so the domain lies to the left.
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : cv.base.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    auto accumulate = [&](int node, Vec2 from, Vec2 to) {
        Vec2 mid = 0.5 * (from + to);
        double p1, p2;
        psi(mid.x, mid.y, t, p1, p2);
        fb(node) += p1 * (to.y - from.y) - p2 * (to.x - from.x);
    };
    for (const auto& tri : cv.base.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            if (edge_count[{std::min(a, b), std::max(a, b)}] != 1) continue;
            Vec2 pa = cv.base.nodes[a], pb = cv.base.nodes[b];
            Vec2 mid = 0.5 * (pa + pb);
            accumulate(a, pa, mid);
            accumulate(b, mid, pb);
        }
    return fb;
}

Eigen::VectorXd ReducedSystem::reduce(const Eigen::VectorXd& full) const {
    Eigen::VectorXd w(n_reduced);
    for (int i = 0; i < n_full; ++i) w(full_to_red[i]) = full(i) - offsets(i);
    return w;
}

Eigen::VectorXd ReducedSystem::project(const Eigen::VectorXd& full) const {
    Eigen::VectorXd num = Eigen::VectorXd::Zero(n_reduced);
    for (int i = 0; i < n_full; ++i)
        num(full_to_red[i]) += full_mass(i) * (full(i) - offsets(i));
    return num.cwiseQuotient(mass);
}

Eigen::VectorXd ReducedSystem::reduce_load(const Eigen::VectorXd& full) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n_reduced);
    for (int i = 0; i < n_full; ++i) w(full_to_red[i]) += full(i);
    return w;
}

Eigen::VectorXd ReducedSystem::expand(const Eigen::VectorXd& reduced) const {
    Eigen::VectorXd full(n_full);
    for (int i = 0; i < n_full; ++i) full(i) = reduced(full_to_red[i]) + offsets(i);
    return full;
}

ReducedSystem apply_quasi_periodic(const SparseSystem& sys,
                                   const std::vector<PeriodicMap>& maps) {
    const int n = sys.n_nodes;
    auto constraints = resolve_constraints(maps);

    ReducedSystem red;
    red.n_full = n;
    red.offsets = Eigen::VectorXd::Zero(n);
    red.full_to_red.assign(n, -1);

    std::vector<int> root_of(n);
    for (int i = 0; i < n; ++i) root_of[i] = i;
    for (const auto& c : constraints) {
        root_of[c.slave] = c.root;
        red.offsets(c.slave) = c.offset;
    }
    int next = 0;
    for (int i = 0; i < n; ++i)
        if (root_of[i] == i) red.full_to_red[i] = next++;
    red.n_reduced = next;
    for (int i = 0; i < n; ++i)
        if (root_of[i] != i) {
            int r = red.full_to_red[root_of[i]];
            if (r < 0) throw MeshError("periodic constraint root is itself a slave");
            red.full_to_red[i] = r;
        }

    red.full_mass = sys.mass;
    red.mass = Eigen::VectorXd::Zero(red.n_reduced);
    for (int i = 0; i < n; ++i) red.mass(red.full_to_red[i]) += sys.mass(i);

    for (const auto& b : sys.blocks) {
        ReducedSystem::Block rb;
        rb.gamma = b.gamma;
        rb.K_full = b.K;
        rb.mass_share = Eigen::VectorXd::Zero(red.n_reduced);
        for (int i = 0; i < n; ++i) rb.mass_share(red.full_to_red[i]) += b.mass_share(i);

        std::vector<Eigen::Triplet<double>> trips;
        Eigen::VectorXd koff = Eigen::VectorXd::Zero(red.n_reduced);
        for (int col = 0; col < b.K.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(b.K, col); it; ++it) {
                int r = red.full_to_red[it.row()];
                int c = red.full_to_red[it.col()];
                trips.emplace_back(r, c, it.value());
                koff(r) += it.value() * red.offsets(it.col());
            }
        rb.K.resize(red.n_reduced, red.n_reduced);
        rb.K.setFromTriplets(trips.begin(), trips.end());
        rb.k_offset = koff;
        red.blocks.push_back(std::move(rb));
    }
    return red;
}

}  // namespace subfvm
