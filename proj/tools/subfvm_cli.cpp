// Command-line front end: scenario configs and CSV/JSON/VTK outputs for the
// convergence study, the layered cross-validation, the homogenisation runs,
// and the wood-cell scenario.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subfvm/assembly.hpp"
#include "subfvm/homogenize.hpp"
#include "subfvm/layered.hpp"
#include "subfvm/mesh_synth.hpp"
#include "subfvm/mittag_leffler.hpp"
#include "subfvm/stepper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace subfvm;

namespace {

// Exit codes (documented in --help and README).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;
constexpr int kExitCheck = 5;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Config plumbing: a JSON key/value tree file, overridden by flags.

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

// Echo the effective configuration into CSV comment headers so every output
// file is reproducible from its own header.
void write_config_echo(std::ostream& os, const json& cfg) {
    os << "# schema_version,1\n";
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        os << "# " << it.key() << "," << it.value().dump() << "\n";
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out.precision(12);
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

// Legacy ASCII VTK unstructured-grid export of nodal scalar fields.
void write_vtk(const fs::path& path, const Mesh& mesh,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields) {
    auto out = open_out(path);
    out << "# vtk DataFile Version 2.0\nsubfvm field export\nASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_nodes() << " double\n";
    for (const auto& p : mesh.nodes) out << p.x << " " << p.y << " 0\n";
    out << "CELLS " << mesh.num_triangles() << " " << 4 * mesh.num_triangles() << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "CELL_TYPES " << mesh.num_triangles() << "\n";
    for (int t = 0; t < mesh.num_triangles(); ++t) out << "5\n";
    out << "POINT_DATA " << mesh.num_nodes() << "\n";
    for (const auto& [name, v] : fields) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int i = 0; i < v.size(); ++i) out << v(i) << "\n";
    }
}

// ---------------------------------------------------------------------------
// Shared mesh / morphology selection.

Mesh crisscross_mesh(int n) { return crisscross_unit_square(n); }

struct MorphologyChoice {
    Mesh mesh;
    MorphologySpec morphology;
};

MorphologyChoice make_morphology(const std::string& name, const std::string& mesh_path,
                                 int refine) {
    MorphologyChoice c;
    if (!mesh_path.empty()) {
        c.mesh = parse_msh(mesh_path);
        c.morphology = MorphologySpec::from_tags();
        return c;
    }
    if (name == "rect") {
        c.mesh = structured_unit_square(8 * refine);
        c.morphology = MorphologySpec::rectangle();
    } else if (name == "circle") {
        c.mesh = circle_inclusion_unit_square(32 * refine, 3 * refine, 6 * refine);
        c.morphology = MorphologySpec::from_tags();
    } else if (name == "lshape") {
        c.mesh = structured_unit_square(16 * refine);
        c.morphology = MorphologySpec::lshape();
    } else if (name == "tagged") {
        throw ConfigError("--morphology tagged requires --mesh PATH");
    } else {
        throw ConfigError("unknown morphology: " + name);
    }
    return c;
}

json tensor_json(const Tensor2& t) {
    return {{"xx", t.xx}, {"xy", t.xy}, {"yx", t.yx}, {"yy", t.yy}};
}

// ---------------------------------------------------------------------------
// convergence: manufactured-solution error/order table.

int cmd_convergence(const json& cfg) {
    const double gamma = cfg.at("gamma").get<double>();
    const double tau = cfg.at("tau").get<double>();
    const fs::path out_dir = cfg.at("out").get<std::string>();
    const int n_steps = static_cast<int>(std::llround(1.0 / tau));
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("gamma must be in (0, 1]");

    std::vector<Mesh> meshes;
    std::vector<std::string> labels;
    if (cfg.contains("meshes") && !cfg["meshes"].empty()) {
        for (const auto& p : cfg["meshes"]) {
            meshes.push_back(parse_msh(p.get<std::string>()));
            labels.push_back(p.get<std::string>());
        }
    } else {
        for (int n : {4, 7, 12, 24, 46}) {
            meshes.push_back(crisscross_mesh(n));
            labels.push_back("crisscross-" + std::to_string(n));
        }
    }

    fs::create_directories(out_dir);
    auto csv = open_out(out_dir / "convergence.csv");
    write_config_echo(csv, cfg);
    csv << "mesh,h,num_nodes,error_corrected,order_corrected,error_uncorrected,order_uncorrected,"
           "l2_corrected,l2_uncorrected\n";

    json rows = json::array();
    double prev_err[2] = {0.0, 0.0};
    double prev_h = 0.0;
    for (size_t mi = 0; mi < meshes.size(); ++mi) {
        const Mesh& mesh = meshes[mi];
        CvMesh cv = build_control_volumes(mesh);
        RegionTags tags;
        tags.tri_region.assign(mesh.num_triangles(), 0);
        MediumSpec med;
        med.region[0] = {0.5, 0.5, gamma, 1.0};
        SparseSystem sys = single_medium(cv, tags, med);
        ReducedSystem red = identity_reduction(sys);

        // Manufactured problem: u = E_{gamma,1}(-t^gamma) sin x sin y with the
        // matching memory-carrying Neumann data on the square boundary.
        Eigen::VectorXd u0(mesh.num_nodes());
        for (int i = 0; i < mesh.num_nodes(); ++i)
            u0(i) = std::sin(mesh.nodes[i].x) * std::sin(mesh.nodes[i].y);
        auto load = [&cv, gamma](double t) {
            const double c =
                std::pow(t, gamma - 1.0) * mittag_leffler(gamma, gamma, -std::pow(t, gamma));
            FluxFunction psi = [c](double x, double y, double, double& p1, double& p2) {
                p1 = 0.5 * c * std::cos(x) * std::sin(y);
                p2 = 0.5 * c * std::sin(x) * std::cos(y);
            };
            return boundary_flux_vector(cv, psi, t);
        };
        const double ml = mittag_leffler(gamma, -1.0);

        double h = 0.0;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto& tri = mesh.triangles[t];
            for (int e = 0; e < 3; ++e) {
                Vec2 d = mesh.nodes[tri[e]] - mesh.nodes[tri[(e + 1) % 3]];
                h = std::max(h, std::hypot(d.x, d.y));
            }
        }

        double err[2];  // max nodal error; [0] corrected, [1] uncorrected
        double l2[2];   // volume-weighted L2 error
        for (int variant = 0; variant < 2; ++variant) {
            StepperOptions opt;
            opt.tau = tau;
            opt.max_steps = n_steps + 4;
            opt.corrections = variant == 0;
            opt.load = load;
            if (cfg.contains("m") && variant == 0) opt.num_corrections = cfg["m"].get<int>();
            Evolution ev(red, u0, opt);
            while (ev.step_index() < n_steps) ev.step();
            double e = 0.0, e2 = 0.0;
            for (int i = 0; i < mesh.num_nodes(); ++i) {
                const double d = std::abs(ev.reduced()(i) - ml * u0(i));
                e = std::max(e, d);
                e2 += sys.mass(i) * d * d;
            }
            err[variant] = e;
            l2[variant] = std::sqrt(e2);
        }

        json row = {{"mesh", labels[mi]}, {"h", h}, {"num_nodes", mesh.num_nodes()},
                    {"error_corrected", err[0]}, {"error_uncorrected", err[1]},
                    {"l2_corrected", l2[0]}, {"l2_uncorrected", l2[1]}};
        csv << labels[mi] << "," << h << "," << mesh.num_nodes();
        for (int variant = 0; variant < 2; ++variant) {
            csv << "," << err[variant] << ",";
            if (mi > 0 && prev_h > h && err[variant] > 0.0 && prev_err[variant] > 0.0) {
                const double order =
                    std::log(prev_err[variant] / err[variant]) / std::log(prev_h / h);
                csv << order;
                row[variant == 0 ? "order_corrected" : "order_uncorrected"] = order;
            }
            prev_err[variant] = err[variant];
        }
        csv << "," << l2[0] << "," << l2[1] << "\n";
        prev_h = h;
        rows.push_back(row);
    }

    write_json(out_dir / "convergence.json",
               {{"command", "convergence"}, {"config", cfg}, {"rows", rows}});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// layered: strip problem vs the semi-analytical oracle.

int cmd_layered(const json& cfg) {
    const double g1 = cfg.at("gamma1").get<double>();  // inner (high-D) layer
    const double g2 = cfg.at("gamma2").get<double>();  // outer layer
    const double tau = cfg.at("tau").get<double>();
    const double t_final = cfg.value("t_final", 1.0);
    const fs::path out_dir = cfg.at("out").get<std::string>();
    const std::string iface = cfg.value("interface", std::string("rl"));
    const int n_steps = static_cast<int>(std::llround(t_final / tau));
    if (g1 <= 0.0 || g1 > 1.0 || g2 <= 0.0 || g2 > 1.0)
        throw ConfigError("gamma1, gamma2 must be in (0, 1]");

    Mesh mesh = cfg.contains("mesh") ? parse_msh(cfg["mesh"].get<std::string>())
                                     : structured_unit_square(8);
    CvMesh cv = build_control_volumes(mesh);
    RegionTags tags = tag_regions(mesh, MorphologySpec::rectangle());
    std::vector<PeriodicMap> maps{pair_periodic(mesh, Axis::X, cfg.value("q0", 1.0)),
                                  pair_periodic(mesh, Axis::Y, 0.0)};
    MediumSpec med;
    med.interface_mode = iface == "classical" ? InterfaceMode::ClassicalFlux
                                              : InterfaceMode::RlFlux;
    if (iface != "classical" && iface != "rl")
        throw ConfigError("interface must be rl or classical");
    med.region[0] = {cfg.value("Db2", 1.0), cfg.value("Db2", 1.0), g2, 1.0};
    med.region[1] = {cfg.value("Db1", 10.0), cfg.value("Db1", 10.0), g1, 1.0};
    SparseSystem sys = couple_binary(cv, tags, med);
    ReducedSystem red = apply_quasi_periodic(sys, maps);

    const double u0_val = cfg.value("u0", 1.0);
    Eigen::VectorXd u0 = Eigen::VectorXd::Constant(mesh.num_nodes(), u0_val);
    StepperOptions opt;
    opt.tau = tau;
    opt.max_steps = n_steps + 4;
    // A spatially uniform start is incompatible with the quasi-periodic jump;
    // the smooth-solution correction weights do not apply to that case.
    opt.corrections = cfg.value("corrections", false);

    fs::create_directories(out_dir);
    Evolution ev(red, u0, opt);
    const double mean0 = ev.mean_value();
    auto mass_csv = open_out(out_dir / "mass_balance.csv");
    write_config_echo(mass_csv, cfg);
    mass_csv << "time,mean,relative_drift\n";
    double max_drift = 0.0;
    while (ev.step_index() < n_steps) {
        ev.step();
        const double drift = std::abs(ev.mean_value() - mean0) / std::abs(mean0);
        max_drift = std::max(max_drift, drift);
        if (ev.step_index() % std::max(1, n_steps / 100) == 0 || ev.step_index() == n_steps)
            mass_csv << ev.time() << "," << ev.mean_value() << "," << drift << "\n";
    }
    Eigen::VectorXd u = ev.solution();

    LayeredSpec lspec;
    lspec.gamma = {g2, g1, g2};
    lspec.diffusivity = {cfg.value("Db2", 1.0), cfg.value("Db1", 10.0), cfg.value("Db2", 1.0)};
    lspec.q0 = cfg.value("q0", 1.0);
    lspec.u0 = u0_val;
    LayeredOracle oracle(lspec);

    auto csv = open_out(out_dir / "profile.csv");
    write_config_echo(csv, cfg);
    csv << "x,fvm,oracle,gap\n";
    double max_gap = 0.0;
    std::vector<std::pair<double, int>> line;
    for (int i = 0; i < mesh.num_nodes(); ++i)
        if (std::abs(mesh.nodes[i].y - 0.5) < 1e-12) line.push_back({mesh.nodes[i].x, i});
    std::sort(line.begin(), line.end());
    for (const auto& [x, i] : line) {
        const double exact = oracle.evaluate(x, t_final);
        const double gap = std::abs(u(i) - exact);
        max_gap = std::max(max_gap, gap);
        csv << x << "," << u(i) << "," << exact << "," << gap << "\n";
    }

    if (cfg.value("vtk", false))
        write_vtk(out_dir / "field.vtk", mesh, {{"u", u}});
    write_json(out_dir / "layered.json",
               {{"command", "layered"}, {"config", cfg}, {"t_final", t_final},
                {"max_gap", max_gap}, {"max_mass_drift", max_drift},
                {"oracle_mean", oracle.mass_balance(t_final)}});
    std::cout << "max centreline gap at t=" << t_final << ": " << max_gap << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// homogenize: cell problems and effective tensor time series.

void write_series_csv(const fs::path& path, const json& cfg, const EffectiveTensorSeries& r) {
    auto csv = open_out(path);
    write_config_echo(csv, cfg);
    csv << "time,D_bx,D_bxy,D_byx,D_by,K1,K2\n";
    for (const auto& s : r.samples)
        csv << s.time << "," << s.tensor.xx << "," << s.tensor.xy << "," << s.tensor.yx << ","
            << s.tensor.yy << "," << r.k1 << "," << r.k2 << "\n";
}

json series_summary(const json& cfg, const char* command, const EffectiveTensorSeries& r) {
    return {{"command", command},   {"config", cfg},
            {"steady", r.steady},   {"steps", r.steps},
            {"final_time", r.final_time}, {"stop_reason", r.stop_reason},
            {"tensor", tensor_json(r.final_tensor)},
            {"K1", r.k1},           {"K2", r.k2},
            {"vol_fraction1", r.vol_fraction1}};
}

int cmd_homogenize(const json& cfg) {
    const fs::path out_dir = cfg.at("out").get<std::string>();
    const double ratio = cfg.value("ratio", 10.0);
    const double alpha1 = cfg.value("alpha1", 0.0);  // inclusion memory exponent
    const double alpha2 = cfg.value("alpha2", 0.0);
    if (alpha1 < 0.0 || alpha1 >= 1.0 || alpha2 < 0.0 || alpha2 >= 1.0)
        throw ConfigError("alpha must be in [0, 1)");

    CellProblemSpec spec;
    auto choice = make_morphology(cfg.value("morphology", std::string("rect")),
                                  cfg.value("mesh", std::string()), cfg.value("refine", 1));
    spec.mesh = std::move(choice.mesh);
    spec.morphology = choice.morphology;
    spec.medium.region[0] = {1.0, 1.0, 1.0 - alpha2, 1.0};
    spec.medium.region[1] = {ratio, ratio, 1.0 - alpha1, 1.0};
    if (cfg.value("interface", std::string("rl")) == "classical")
        spec.medium.interface_mode = InterfaceMode::ClassicalFlux;
    spec.tau = cfg.value("tau", alpha1 > 0.0 || alpha2 > 0.0 ? 1.0 : 0.02);
    spec.max_steps = cfg.value("max_steps", 40000);
    spec.steady_tol = cfg.value("steady_tol", alpha1 > 0.0 || alpha2 > 0.0 ? 0.0 : 1e-8);
    spec.corrections = cfg.value("corrections", false);
    spec.record_growth = cfg.value("record_growth", 1.2);

    EffectiveTensorSeries r = run_cell_problem(spec);

    fs::create_directories(out_dir);
    write_series_csv(out_dir / "tensor_series.csv", cfg, r);
    write_json(out_dir / "homogenize.json", series_summary(cfg, "homogenize", r));
    std::printf("final tensor: xx=%.6f xy=%+.6f yx=%+.6f yy=%.6f  (K1=%.6f K2=%.6f)\n",
                r.final_tensor.xx, r.final_tensor.xy, r.final_tensor.yx, r.final_tensor.yy,
                r.k1, r.k2);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// wood: linearised two-phase cell with optional solid-phase memory.

int cmd_wood(const json& cfg) {
    const fs::path out_dir = cfg.at("out").get<std::string>();
    WoodScenarioConfig wc;
    wc.mesh = cfg.contains("mesh") ? parse_msh(cfg["mesh"].get<std::string>())
                                   : circle_inclusion_unit_square(32, 3, 6);
    std::vector<std::string> missing;
    auto require = [&](const char* key, double& slot) {
        if (cfg.contains(key))
            slot = cfg[key].get<double>();
        else
            missing.push_back(key);
    };
    require("capacity_lumen", wc.capacity_lumen);
    require("conductivity_lumen", wc.conductivity_lumen);
    require("capacity_solid", wc.capacity_solid);
    require("conductivity_solid", wc.conductivity_solid);
    require("vapour_diffusivity", wc.vapour_diffusivity);
    if (!missing.empty()) {
        std::ostringstream os;
        os << "missing wood config constants:";
        for (const auto& k : missing) os << " " << k;
        throw ConfigError(os.str());
    }
    wc.gamma_solid = cfg.value("gamma_solid", 1.0);
    wc.tau = cfg.value("tau", wc.gamma_solid < 1.0 ? 1.0 : 0.05);
    wc.max_steps = cfg.value("max_steps", 40000);
    wc.steady_tol = cfg.value("steady_tol", wc.gamma_solid < 1.0 ? 0.0 : 1e-8);

    EffectiveTensorSeries r = wood_cell_run(wc);

    fs::create_directories(out_dir);
    write_series_csv(out_dir / "tensor_series.csv", cfg, r);
    write_json(out_dir / "wood.json", series_summary(cfg, "wood", r));
    std::printf("scaled tensor: xx=%.6f yy=%.6f  series=%.6f parallel=%.6f\n",
                r.final_tensor.xx, r.final_tensor.yy, r.k1, r.k2);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Control-volume subdiffusion solver and homogenisation driver"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok, 2 config error, 3 I/O error, 4 solver error, 5 check failed.");

    std::string config_path, mesh_path, out_dir = "out", morphology = "rect", interface_mode;
    std::optional<double> tau, gamma1, gamma2, ratio, alpha1, steady_tol;
    std::optional<int> max_steps;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        cmd->add_option("--mesh", mesh_path, "MSH 2.2 mesh file");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--tau", tau, "time step");
        cmd->add_option("--max-steps", max_steps, "step budget");
    };
    auto* conv = app.add_subcommand("convergence", "manufactured-solution error/order table");
    add_common(conv);
    conv->add_option("--gamma1", gamma1, "fractional index gamma");
    auto* lay = app.add_subcommand("layered", "strip problem vs the semi-analytical oracle");
    add_common(lay);
    lay->add_option("--gamma1", gamma1, "inner-layer fractional index");
    lay->add_option("--gamma2", gamma2, "outer-layer fractional index");
    lay->add_option("--interface", interface_mode, "interface flux mode: rl|classical");
    auto* hom = app.add_subcommand("homogenize", "effective diffusivity cell problems");
    add_common(hom);
    hom->add_option("--ratio", ratio, "inclusion/matrix diffusivity ratio");
    hom->add_option("--alpha1", alpha1, "inclusion memory exponent (gamma1 = 1 - alpha1)");
    hom->add_option("--morphology", morphology, "rect|circle|lshape|tagged");
    hom->add_option("--interface", interface_mode, "interface flux mode: rl|classical");
    hom->add_option("--steady-tol", steady_tol, "steady-state tolerance (0 = fixed horizon)");
    auto* wood = app.add_subcommand("wood", "linearised wood-cell scenario");
    add_common(wood);
    wood->add_option("--steady-tol", steady_tol, "steady-state tolerance (0 = fixed horizon)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        json cfg = load_config(config_path);
        cfg["out"] = out_dir;
        if (!mesh_path.empty()) cfg["mesh"] = mesh_path;
        if (tau) cfg["tau"] = *tau;
        if (max_steps) cfg["max_steps"] = *max_steps;
        if (gamma1) cfg[conv->parsed() ? "gamma" : "gamma1"] = *gamma1;
        if (gamma2) cfg["gamma2"] = *gamma2;
        if (ratio) cfg["ratio"] = *ratio;
        if (alpha1) cfg["alpha1"] = *alpha1;
        if (steady_tol) cfg["steady_tol"] = *steady_tol;
        if (!interface_mode.empty()) cfg["interface"] = interface_mode;
        if (hom->parsed()) cfg["morphology"] = morphology;
        if (conv->parsed()) {
            if (!cfg.contains("gamma")) cfg["gamma"] = 0.5;
            if (!cfg.contains("tau")) cfg["tau"] = 1e-3;
            return cmd_convergence(cfg);
        }
        if (lay->parsed()) {
            if (!cfg.contains("gamma1")) cfg["gamma1"] = 0.5;
            if (!cfg.contains("gamma2")) cfg["gamma2"] = 0.5;
            if (!cfg.contains("tau")) cfg["tau"] = 1e-3;
            return cmd_layered(cfg);
        }
        if (hom->parsed()) return cmd_homogenize(cfg);
        if (wood->parsed()) return cmd_wood(cfg);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const MeshError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheck;
    }
}
