#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "lambdisp/analysis.hpp"
#include "lambdisp/config.hpp"
#include "lambdisp/dispersion_io.hpp"
#include "lambdisp/extraction.hpp"
#include "lambdisp/interpolate.hpp"
#include "lambdisp/lamb_reference.hpp"
#include "lambdisp/svg.hpp"
#include "lambdisp/verify.hpp"

namespace fs = std::filesystem;
using namespace lambdisp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;  // overrides config [output] dir when set
    int jobs = 1;
    std::string mesh_preset;  // "", "desk", "paper"
    std::vector<std::string> inputs;  // analyze only
};

void apply_mesh_preset(RunConfig& cfg, const std::string& preset) {
    if (preset.empty()) return;
    if (preset == "desk") {
        cfg.nx = 2;
        cfg.ny = 40;
    } else if (preset == "paper") {
        // 1000 biquadratic elements through the cell
        cfg.nx = 10;
        cfg.ny = 100;
    } else {
        throw ConfigError("unknown mesh preset '" + preset +
                          "' (expected desk or paper)");
    }
}

RunConfig load_and_prepare(const CommonOpts& opts) {
    if (opts.config_path.empty())
        throw ConfigError("this subcommand requires --config");
    RunConfig cfg = load_config(opts.config_path);
    apply_mesh_preset(cfg, opts.mesh_preset);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

void require(const RunConfig& cfg, bool material, bool geometry, bool sweep_s,
             bool loads, bool wavefield) {
    if (material && !cfg.has_material)
        throw ConfigError("config: [material] section required");
    if (geometry && !cfg.has_geometry)
        throw ConfigError("config: [geometry] section required");
    if (sweep_s && !cfg.has_sweep)
        throw ConfigError("config: [sweep] section required");
    if (loads && !cfg.has_loads)
        throw ConfigError("config: [loads] section required");
    if (wavefield && !cfg.has_wavefield)
        throw ConfigError("config: [wavefield] section required");
}

DispersionSet run_sweep(const RunConfig& cfg, double sigma, int jobs) {
    const UnitCellMesh mesh = build_mesh(cfg.dx1, cfg.d, cfg.nx, cfg.ny);
    const PreStressState state = solve_uniaxial(cfg.material, sigma);
    SweepOptions so;
    so.jobs = jobs;
    // The linear model is linearized about the unloaded reference:
    // pre-stress must leave the wave solution untouched.
    so.assembly.geometric_stiffness = cfg.kind != MaterialKind::Linear;
    return sweep(cfg.material, state, mesh, cfg.k_grid(), cfg.n_modes, so);
}

std::string sigma_tag(double sigma_pa) {
    std::ostringstream os;
    os << sigma_pa * 1e-6;
    return os.str();
}

int cmd_dispersion(const CommonOpts& opts) {
    const RunConfig cfg = load_and_prepare(opts);
    require(cfg, true, true, true, true, false);
    for (double sigma : cfg.sigmas) {
        const DispersionSet set = run_sweep(cfg, sigma, opts.jobs);
        const fs::path out = fs::path(cfg.out_dir) /
                             ("dispersion_" + model_name(cfg.kind) + "_" +
                              sigma_tag(sigma) + "MPa.csv");
        write_dispersion_csv(out.string(), set);
        std::cout << "wrote " << out.string() << "\n";
    }
    return kExitOk;
}

int cmd_reference(const CommonOpts& opts) {
    const RunConfig cfg = load_and_prepare(opts);
    require(cfg, true, true, true, false, false);
    const LambProblem prob = LambProblem::from_lame(
        cfg.material.lambda, cfg.material.mu, cfg.material.rho0, cfg.d);
    DispersionSet set;
    set.material = cfg.material;
    set.sigma = 0.0;
    set.thickness = cfg.d;
    set.k_grid = cfg.k_grid();
    for (LambMode mode : {LambMode::S0, LambMode::A0}) {
        ModeBranch br;
        br.label = mode == LambMode::S0 ? "S0" : "A0";
        for (double k : set.k_grid) {
            const double fd = lamb_fd_for_k(prob, k, mode);
            br.samples.push_back({k, fd / cfg.d, lamb_cp(prob, fd, mode)});
        }
        set.branches.push_back(std::move(br));
    }
    const fs::path out = fs::path(cfg.out_dir) / "reference.csv";
    write_dispersion_csv(out.string(), set);
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int cmd_roundtrip(const CommonOpts& opts) {
    const RunConfig cfg = load_and_prepare(opts);
    require(cfg, true, true, true, false, true);
    const double sigma = cfg.has_loads ? cfg.sigmas.front() : 0.0;
    DispersionSet set = run_sweep(cfg, sigma, opts.jobs);

    // Only the fundamental branches are excited in the synthetic record.
    DispersionSet fundamentals = set;
    fundamentals.branches.clear();
    for (const char* label : {"S0", "A0"})
        if (const ModeBranch* br = set.find(label))
            fundamentals.branches.push_back(*br);
    if (fundamentals.branches.size() != 2)
        throw SweepError("roundtrip: sweep did not yield S0 and A0 branches");

    SynthesisOptions syn;
    syn.seed = cfg.seed;
    syn.noise_std = cfg.noise_std;
    const WavefieldRecord rec = synthesize_wavefield(
        fundamentals, cfg.excitation, cfg.path, cfg.sample_rate, syn);
    const EvaluationWindow window =
        evaluation_window(cfg.path.l_mes, cfg.path.dl, cfg.d);
    const std::vector<double> nu_grid = make_nu_grid(window);
    const ExtractedPairs pairs =
        extract_dispersion(rec, cfg.excitation, window, nu_grid);

    // label per track from the phase-velocity grouping
    const auto tracks = to_phase_velocity(pairs, cfg.d);
    std::map<int, std::string> track_label;
    for (const auto& p : pairs.retained())
        if (!track_label.count(p.track))
            track_label[p.track] = "";
    {
        // to_phase_velocity sorts tracks by mean cp; recover the id order
        std::map<int, double> mean_cp;
        std::map<int, int> count;
        for (const auto& p : pairs.retained()) {
            mean_cp[p.track] += p.f / p.nu;
            ++count[p.track];
        }
        std::vector<std::pair<double, int>> order;
        for (auto& [tid, sum] : mean_cp)
            order.emplace_back(sum / count[tid], tid);
        std::sort(order.begin(), order.end());
        for (size_t i = 0; i < order.size(); ++i)
            track_label[order[i].second] = "T" + std::to_string(i);
    }

    const fs::path pairs_path = fs::path(cfg.out_dir) / "extracted_pairs.csv";
    {
        std::ofstream out(pairs_path);
        out << std::setprecision(12);
        out << "f_Hz,nu_per_m,cp_m_per_s,fd_MHzmm,mode,flag\n";
        for (const auto& p : pairs.pairs) {
            std::string label = "-";
            auto it = track_label.find(p.track);
            if (it != track_label.end() && !it->second.empty())
                label = it->second;
            const char* flag = !p.in_window ? "outside_window"
                               : p.outlier  ? "outlier"
                                            : "ok";
            out << p.f << ',' << p.nu << ',' << p.f / p.nu << ','
                << p.f * cfg.d * 1e-3 << ',' << label << ',' << flag << '\n';
        }
    }

    // comparison against the FEM input curves
    std::vector<std::pair<std::string, Pchip>> fem_curves;
    for (const auto& br : fundamentals.branches) {
        std::vector<double> fd, cp;
        for (const auto& s : br.samples) {
            if (!fd.empty() && s.f * cfg.d <= fd.back()) continue;
            fd.push_back(s.f * cfg.d);
            cp.push_back(s.cp);
        }
        fem_curves.emplace_back(br.label, Pchip(std::move(fd), std::move(cp)));
    }
    std::vector<double> rel_errors;
    for (const auto& p : pairs.retained()) {
        const double fd = p.f * cfg.d;
        const double cp = p.f / p.nu;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [label, curve] : fem_curves) {
            if (!curve.covers(fd)) continue;
            best = std::min(best, std::abs(cp - curve(fd)) / curve(fd));
        }
        if (std::isfinite(best)) rel_errors.push_back(best);
    }
    if (rel_errors.empty())
        throw ExtractionError("roundtrip: no comparable pairs inside the "
                              "evaluation window");
    std::sort(rel_errors.begin(), rel_errors.end());
    const double median = rel_errors[rel_errors.size() / 2];
    const double maxerr = rel_errors.back();

    const fs::path report_path = fs::path(cfg.out_dir) / "roundtrip_report.txt";
    {
        std::ofstream out(report_path);
        out << std::setprecision(6);
        out << "pairs_retained " << rel_errors.size() << "\n";
        out << "median_cp_error_pct " << 100.0 * median << "\n";
        out << "max_cp_error_pct " << 100.0 * maxerr << "\n";
        out << "window_nu_min_per_m " << pairs.window.nu_min << "\n";
        out << "window_nu_max_per_m " << pairs.window.nu_max << "\n";
    }
    std::cout << "retained " << rel_errors.size() << " pairs; median cp error "
              << 100.0 * median << "%, max " << 100.0 * maxerr << "%\n";
    std::cout << "wrote " << pairs_path.string() << " and "
              << report_path.string() << "\n";
    return kExitOk;
}

struct ModelGroup {
    std::vector<DispersionTable> tables;  // ascending sigma
};

int cmd_analyze(const CommonOpts& opts) {
    if (opts.inputs.empty())
        throw ConfigError("analyze: provide at least one dispersion CSV");
    std::string out_dir = opts.out_dir;
    if (!opts.config_path.empty()) {
        RunConfig cfg = load_config(opts.config_path);
        if (out_dir.empty()) out_dir = cfg.out_dir;
    }
    if (out_dir.empty()) out_dir = ".";
    fs::create_directories(out_dir);

    std::map<std::string, ModelGroup> groups;
    for (const auto& path : opts.inputs)
        groups[read_dispersion_csv(path).model].tables.push_back(
            read_dispersion_csv(path));
    for (auto& [model, grp] : groups) {
        std::sort(grp.tables.begin(), grp.tables.end(),
                  [](const auto& a, const auto& b) {
                      return a.sigma_mpa < b.sigma_mpa;
                  });
        if (grp.tables.size() < 2)
            throw ConfigError("analyze: model '" + model +
                              "' has a single load state; phase-velocity "
                              "differences need at least two");
    }

    for (const auto& [model, grp] : groups) {
        // modes present in every load state of this model
        std::vector<std::string> modes;
        for (const auto& [mode, samples] : grp.tables.front().modes) {
            if (mode.front() == 'U') continue;
            bool everywhere = true;
            for (const auto& t : grp.tables)
                if (!t.modes.count(mode)) everywhere = false;
            if (everywhere) modes.push_back(mode);
        }
        if (modes.empty())
            throw ConfigError("analyze: no common mode labels for model '" +
                              model + "'");

        std::vector<DeltaCurve> deltas;
        std::vector<RegressionResult> regressions;
        std::vector<SvgSeries> delta_series;
        std::vector<SvgSeries> cp_sigma_series;

        for (const auto& mode : modes) {
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            for (const auto& t : grp.tables) {
                const auto& samples = t.modes.at(mode);
                lo = std::max(lo, samples.front().first);
                hi = std::min(hi, samples.back().first);
            }
            if (!(hi > lo))
                throw ConfigError("analyze: no common fd coverage for mode " +
                                  mode);
            // shrink slightly so interpolation stays strictly inside
            const double margin = 1e-6 * (hi - lo);
            lo += margin;
            hi -= margin;
            std::vector<double> grid(400);
            for (size_t i = 0; i < grid.size(); ++i)
                grid[i] = lo + (hi - lo) * i / (grid.size() - 1);
            LoadSeries series(SeriesSource::FEM, grid);
            for (const auto& t : grp.tables)
                series.add(t.sigma_mpa * 1e6, mode, t.modes.at(mode));

            const double sigma_ls = grp.tables.front().sigma_mpa * 1e6;
            for (size_t i = 1; i < grp.tables.size(); ++i) {
                const double sigma_hs = grp.tables[i].sigma_mpa * 1e6;
                deltas.push_back(delta_cp(series, sigma_hs, sigma_ls, mode));
            }
            {
                SvgSeries sv;
                sv.label = mode + " @ " +
                           sigma_tag(grp.tables.back().sigma_mpa * 1e6) +
                           " MPa";
                for (const auto& [fd, dcp] : deltas.back().samples)
                    sv.points.emplace_back(fd * 1e-3, dcp);
                delta_series.push_back(std::move(sv));
            }

            if (grp.tables.size() >= 3) {
                // probe frequencies: standard 50 kHzmm / 3 MHzmm when
                // covered, plus quartiles of the common range
                std::vector<double> probes = {lo + 0.25 * (hi - lo),
                                              lo + 0.5 * (hi - lo),
                                              lo + 0.75 * (hi - lo)};
                for (double fd : {50.0, 3000.0})
                    if (fd > lo && fd < hi) probes.push_back(fd);
                std::sort(probes.begin(), probes.end());
                for (double fd : probes)
                    regressions.push_back(regress(series, fd, mode));

                const auto unity =
                    unity_load_step(series, grid, mode, 10e6);
                write_unity_step_csv(
                    (fs::path(out_dir) /
                     ("unity_step_" + model + "_" + mode + ".csv"))
                        .string(),
                    mode, unity);

                for (double fd : probes) {
                    SvgSeries sv;
                    std::ostringstream lbl;
                    lbl << mode << " @ " << std::setprecision(3) << fd * 1e-3
                        << " MHzmm";
                    sv.label = lbl.str();
                    for (const auto& t : grp.tables) {
                        // cp at the probe, linear on the common grid
                        const auto& cp = series.cp(t.sigma_mpa * 1e6, mode);
                        const auto it = std::lower_bound(grid.begin(),
                                                         grid.end(), fd);
                        const size_t hi_i = std::min<size_t>(
                            std::max<std::ptrdiff_t>(1, it - grid.begin()),
                            grid.size() - 1);
                        const double t01 = (fd - grid[hi_i - 1]) /
                                           (grid[hi_i] - grid[hi_i - 1]);
                        sv.points.emplace_back(
                            t.sigma_mpa,
                            (1 - t01) * cp[hi_i - 1] + t01 * cp[hi_i]);
                    }
                    cp_sigma_series.push_back(std::move(sv));
                }
            }
        }

        write_delta_csv(
            (fs::path(out_dir) / ("delta_cp_" + model + ".csv")).string(),
            deltas);
        if (!regressions.empty())
            write_regression_csv(
                (fs::path(out_dir) / ("regression_" + model + ".csv"))
                    .string(),
                regressions);
        write_svg_plot(
            (fs::path(out_dir) / ("delta_cp_" + model + ".svg")).string(),
            "Phase-velocity difference (" + model + ")", "fd [MHz mm]",
            "delta cp [m/s]", delta_series);
        if (!cp_sigma_series.empty())
            write_svg_plot(
                (fs::path(out_dir) / ("cp_sigma_" + model + ".svg")).string(),
                "Phase velocity vs load (" + model + ")", "sigma [MPa]",
                "cp [m/s]", cp_sigma_series);
        std::cout << "analyzed model " << model << ": "
                  << grp.tables.size() << " load states, "
                  << modes.size() << " modes\n";
    }
    return kExitOk;
}

int cmd_material_check() {
    const auto [lambda, mu] = from_engineering(68e9, 0.33);
    const struct {
        MaterialKind kind;
        double ell, m3, n3;
    } defs[] = {
        {MaterialKind::Linear, 0.0, 0.0, 0.0},
        {MaterialKind::NeoHooke, 0.0, 0.0, 0.0},
        {MaterialKind::Murnaghan, -255.2e9, -325.0e9, -351.2e9},
    };
    bool all_pass = true;
    std::cout << std::left << std::setw(12) << "model" << std::setw(16)
              << "stress FD err" << std::setw(16) << "tangent FD err"
              << "result\n";
    for (const auto& d : defs) {
        const Material mat =
            Material::make(d.kind, lambda, mu, 2700.0, d.ell, d.m3, d.n3);
        const FdCheckResult r = fd_check(mat, 100, 42);
        all_pass = all_pass && r.pass;
        std::cout << std::left << std::setw(12) << r.model << std::setw(16)
                  << r.max_stress_err << std::setw(16) << r.max_tangent_err
                  << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    return all_pass ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lamb-wave dispersion in pre-stressed hyperelastic plates"};
    app.require_subcommand(1);
    CommonOpts opts;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path,
                                  "run configuration file");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--jobs", opts.jobs, "worker threads for the k-sweep")
            ->check(CLI::PositiveNumber);
        sub->add_option("--mesh", opts.mesh_preset,
                        "mesh preset overriding [geometry] nx/ny")
            ->check(CLI::IsMember({"desk", "paper"}));
    };

    auto* disp = app.add_subcommand(
        "dispersion", "FEM dispersion sweep, one CSV per load level");
    add_common(disp, true);
    auto* ref = app.add_subcommand(
        "reference", "analytical fundamental-mode dispersion CSV");
    add_common(ref, true);
    auto* rt = app.add_subcommand(
        "roundtrip", "synthesize a wavefield and re-extract its dispersion");
    add_common(rt, true);
    auto* an = app.add_subcommand(
        "analyze", "phase-velocity differences and stress regressions");
    add_common(an, false);
    an->add_option("inputs", opts.inputs, "dispersion CSV files");
    auto* mc = app.add_subcommand(
        "material-check", "finite-difference constitutive verification");
    (void)mc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (disp->parsed()) return cmd_dispersion(opts);
        if (ref->parsed()) return cmd_reference(opts);
        if (rt->parsed()) return cmd_roundtrip(opts);
        if (an->parsed()) return cmd_analyze(opts);
        if (mc->parsed()) return cmd_material_check();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
