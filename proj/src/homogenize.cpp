#include "subfvm/homogenize.hpp"

#include <cmath>

#include "subfvm/cv_mesh.hpp"
#include "subfvm/periodic.hpp"
#include "subfvm/weights.hpp"

namespace subfvm {

Tensor2 effective_tensor(const CvMesh& cv, const RegionTags& tags, const MediumSpec& medium,
                         const Eigen::VectorXd& phi_x, const Eigen::VectorXd& phi_y) {
    Tensor2 t;
    double total = 0.0;
    for (int tri = 0; tri < cv.base.num_triangles(); ++tri) {
        const int region = tags.tri_region.empty() ? 0 : tags.tri_region[tri];
        const RegionMedium& med = medium.region[region];
        const double area = cv.shape_coeffs[tri].area;
        double gx1 = 0.0, gy1 = 0.0, gx2 = 0.0, gy2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int node = cv.base.triangles[tri][k];
            gx1 += phi_x(node) * cv.grad_x(tri, k);
            gy1 += phi_x(node) * cv.grad_y(tri, k);
            gx2 += phi_y(node) * cv.grad_x(tri, k);
            gy2 += phi_y(node) * cv.grad_y(tri, k);
        }
        t.xx += med.qx * gx1 * area;
        t.yx += med.qy * gy1 * area;
        t.xy += med.qx * gx2 * area;
        t.yy += med.qy * gy2 * area;
        total += area;
    }
    t.xx /= total;
    t.xy /= total;
    t.yx /= total;
    t.yy /= total;
    return t;
}

std::pair<double, double> bounds(double eps1, double Db1, double Db2) {
    if (eps1 < 0.0 || eps1 > 1.0) throw DomainError("volume fraction must lie in [0, 1]");
    if (Db1 <= 0.0 || Db2 <= 0.0) throw DomainError("diffusivities must be positive");
    const double eps2 = 1.0 - eps1;
    return {1.0 / (eps1 / Db1 + eps2 / Db2), eps1 * Db1 + eps2 * Db2};
}

EffectiveTensorSeries run_cell_problem(const CellProblemSpec& spec) {
    const CvMesh cv = build_control_volumes(spec.mesh);
    const RegionTags tags = tag_regions(spec.mesh, spec.morphology);
    const SparseSystem sys = couple_binary(cv, tags, spec.medium);

    auto reduced_for = [&](double ox, double oy) {
        std::vector<PeriodicMap> maps{pair_periodic(spec.mesh, Axis::X, ox),
                                      pair_periodic(spec.mesh, Axis::Y, oy)};
        return apply_quasi_periodic(sys, maps);
    };
    const ReducedSystem red_x = reduced_for(1.0, 0.0);
    const ReducedSystem red_y = reduced_for(0.0, 1.0);

    const int n = cv.num_nodes();
    Eigen::VectorXd u0x(n), u0y(n);
    for (int i = 0; i < n; ++i) {
        u0x(i) = cv.base.nodes[i].x + spec.u0;
        u0y(i) = cv.base.nodes[i].y + spec.u0;
    }

    StepperOptions opt;
    opt.tau = spec.tau;
    opt.max_steps = spec.max_steps;
    opt.corrections = spec.corrections;
    Evolution ex(red_x, u0x, opt), ey(red_y, u0y, opt);

    EffectiveTensorSeries out;
    out.vol_fraction1 = tags.vol_fraction1;
    auto [k1, k2] = bounds(tags.vol_fraction1, spec.medium.region[1].qx, spec.medium.region[0].qx);
    out.k1 = k1 / spec.tensor_scale;
    out.k2 = k2 / spec.tensor_scale;

    auto tensor_now = [&]() {
        Tensor2 t = effective_tensor(cv, tags, spec.medium, ex.solution(), ey.solution());
        t.xx /= spec.tensor_scale;
        t.xy /= spec.tensor_scale;
        t.yx /= spec.tensor_scale;
        t.yy /= spec.tensor_scale;
        return t;
    };

    Tensor2 prev = tensor_now();
    out.samples.push_back({0.0, prev});
    int quiet = 0;
    long next_record = 1;
    while (ex.step_index() < spec.max_steps) {
        ex.step();
        ey.step();
        if (ex.step_index() < next_record) continue;
        next_record = std::max(next_record + 1, static_cast<long>(next_record * spec.record_growth));

        const Tensor2 cur = tensor_now();
        out.samples.push_back({ex.time(), cur});
        const double scale = std::max({std::abs(cur.xx), std::abs(cur.yy), 1e-30});
        const double change = std::max({std::abs(cur.xx - prev.xx), std::abs(cur.xy - prev.xy),
                                        std::abs(cur.yx - prev.yx), std::abs(cur.yy - prev.yy)}) /
                              scale;
        prev = cur;
        if (spec.steady_tol > 0.0) {
            quiet = change < spec.steady_tol ? quiet + 1 : 0;
            if (quiet >= spec.steady_window) {
                out.steady = true;
                break;
            }
        }
    }
    out.steps = ex.step_index();
    out.final_time = ex.time();
    out.final_tensor = tensor_now();
    out.stop_reason = out.steady ? "steady" : "step budget exhausted";
    return out;
}

EffectiveTensorSeries wood_cell_run(const WoodScenarioConfig& config) {
    std::string missing;
    auto need = [&](double v, const char* name) {
        if (v <= 0.0) missing += std::string(missing.empty() ? "" : ", ") + name;
    };
    need(config.capacity_lumen, "capacity_lumen");
    need(config.conductivity_lumen, "conductivity_lumen");
    need(config.capacity_solid, "capacity_solid");
    need(config.conductivity_solid, "conductivity_solid");
    need(config.vapour_diffusivity, "vapour_diffusivity");
    if (!missing.empty()) throw DomainError("wood scenario config missing: " + missing);

    CellProblemSpec spec;
    spec.mesh = config.mesh;
    spec.morphology = MorphologySpec::from_tags(1);
    spec.medium.region[1] = {config.conductivity_lumen, config.conductivity_lumen, 1.0,
                             config.capacity_lumen};
    spec.medium.region[0] = {config.conductivity_solid, config.conductivity_solid,
                             config.gamma_solid, config.capacity_solid};
    spec.tau = config.tau;
    spec.max_steps = config.max_steps;
    spec.steady_tol = config.steady_tol;
    spec.tensor_scale = config.vapour_diffusivity;
    return run_cell_problem(spec);
}

}  // namespace subfvm
