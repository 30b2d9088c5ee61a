// floqsteer: driven spin-chain simulator CLI.
//
// Subcommands: fs-scan (fidelity-susceptibility heatmap over drive
// frequency), evolve (stroboscopic observables under one drive), steer
// (alternating two-drive block protocol), magnus-check (distance of the
// one-period operator from the averaged effective evolution).

#include "floq/analytic.hpp"
#include "floq/config.hpp"
#include "floq/report.hpp"
#include "floq/unitary_cache.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

using namespace floq;

struct FlagSpec {
    const char* flag;
    const char* section;
    const char* key;
    const char* desc;
};

const FlagSpec kFlags[] = {
    {"--L", "lattice", "L", "chain length (2..14)"},
    {"--g", "lattice", "g", "transverse field (sets the unit of energy)"},
    {"--J0", "lattice", "J0", "bare exchange, units of g"},
    {"--preset", "drive", "preset",
     "uniform | odd-omega1-even-omega0 | odd-omega0-even-omega1"},
    {"--omega-base", "drive", "omega", "base drive frequency, units of g"},
    {"--multipliers", "drive", "multipliers", "comma-separated per-bond multipliers"},
    {"--dt", "propagator", "dt", "integrator step, units of 1/g (max 0.01)"},
    {"--order", "propagator", "order", "exponential series order"},
    {"--method", "propagator", "method", "midpoint-exponential | rk4"},
    {"--threads", "propagator", "threads", "worker threads (0 = all cores)"},
    {"--omega-min", "scan", "omega_min", "scan grid start, units of g"},
    {"--omega-max", "scan", "omega_max", "scan grid end, units of g"},
    {"--omega-step", "scan", "omega_step", "scan grid step, units of g"},
    {"--t-max", "scan", "t_max", "scan time horizon, units of 1/g"},
    {"--t-step", "scan", "t_step", "scan time stride, units of 1/g"},
    {"--delta-omega", "scan", "delta_omega", "finite-difference step, units of g"},
    {"--sequence", "protocol", "sequence", "block sequence, e.g. 1,2,1,2,1,1,2,1,2,1"},
    {"--m", "protocol", "m", "periods per block (0 = round(Omega0/(2 J0)))"},
    {"--strict-m", "protocol", "strict_m", "require an integer block ratio (true/false)"},
    {"--periods", "protocol", "periods", "periods to iterate in evolve"},
    {"--out-dir", "output", "dir", "output directory"},
    {"--svg", "output", "svg", "emit SVG plots (true/false)"},
    {"--cache-dir", "output", "cache_dir", "binary cache for period operators (empty = off)"},
    {"--deterministic", "output", "deterministic", "fixed work partitioning (true/false)"},
};

struct SubcommandState {
    CLI::App* app = nullptr;
    std::string config_path;
    std::vector<std::string> values{std::size(kFlags)};
};

void attach_flags(SubcommandState& st) {
    st.app->add_option("--config", st.config_path, "sectioned key=value config file");
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
        st.app->add_option(kFlags[i].flag, st.values[i], kFlags[i].desc);
    }
}

RunConfig build_config(const SubcommandState& st) {
    RunConfig cfg;
    if (!st.config_path.empty()) cfg = load_config_file(st.config_path, cfg);
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
        if (st.app->count(kFlags[i].flag) > 0) {
            apply_config_value(cfg, kFlags[i].section, kFlags[i].key, st.values[i]);
        }
    }
    cfg.validate();
    cfg.warn(std::cerr);
    return cfg;
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
    return std::filesystem::path(cfg.out_dir) / name;
}

std::string preset_name_or_custom(const RunConfig& cfg) {
    return cfg.multipliers.empty() ? cfg.preset : "custom-multiplier";
}

void note_written(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << '\n'; }

int run_fs_scan(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SusceptibilityMap map = fs_scan(cfg.lattice, cfg.drive_template(), cfg.scan, cfg.propagator);
    const std::vector<Peak> peaks = detect_peaks(map);

    write_map_csv(out_path(cfg, "fs_scan.csv"), map);
    note_written(out_path(cfg, "fs_scan.csv"));
    write_peaks_json(out_path(cfg, "fs_peaks.json"), map, peaks);
    note_written(out_path(cfg, "fs_peaks.json"));
    if (cfg.svg) {
        svg_heatmap(out_path(cfg, "fs_scan.svg"), "fidelity susceptibility", "omega / g",
                    "t * g", map.omegas, map.times, map.values);
        note_written(out_path(cfg, "fs_scan.svg"));
    }

    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "scan: " << map.omegas.size() << " x " << map.times.size() << " grid in "
              << fmt12(dt) << " s\n";
    std::cout << "peaks (by height):";
    for (std::size_t i = 0; i < peaks.size() && i < 5; ++i) {
        std::cout << ' ' << fmt12(peaks[i].omega);
    }
    std::cout << (peaks.empty() ? " none" : "") << '\n';
    return 0;
}

int run_evolve(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const DriveAssignment drive = cfg.drive();
    UnitaryMatrix u = cached_one_period_operator(cfg.lattice, drive, cfg.propagator, cfg.cache_dir);
    const StateVector psi0 = StateVector::all_down(cfg.lattice.sites);
    const ObservableSeries series =
        series_from_states(stroboscopic_evolve(psi0, u, cfg.periods), drive.period());

    write_series_csv(out_path(cfg, "evolve.csv"), series);
    note_written(out_path(cfg, "evolve.csv"));
    if (cfg.svg && series.size() >= 2) {
        std::vector<LineSeries> sz_lines;
        for (int j = 1; j <= cfg.lattice.sites; ++j) {
            LineSeries s{"sz_" + std::to_string(j), {}};
            for (const auto& row : series.sz) s.ys.push_back(row[static_cast<std::size_t>(j - 1)]);
            sz_lines.push_back(std::move(s));
        }
        std::vector<double> ns(series.size());
        for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = static_cast<double>(i);
        svg_lines(out_path(cfg, "evolve_sz.svg"), "site magnetizations", "n (periods)", "<sigma^z>",
                  ns, sz_lines);
        note_written(out_path(cfg, "evolve_sz.svg"));

        const int bonds = cfg.lattice.sites - 1;
        std::vector<double> bond_axis(static_cast<std::size_t>(bonds));
        for (int b = 0; b < bonds; ++b) bond_axis[static_cast<std::size_t>(b)] = b + 1;
        std::vector<double> corr(ns.size() * static_cast<std::size_t>(bonds));
        for (std::size_t i = 0; i < ns.size(); ++i) {
            for (int b = 0; b < bonds; ++b) {
                corr[i * static_cast<std::size_t>(bonds) + static_cast<std::size_t>(b)] =
                    series.corr[i][static_cast<std::size_t>(b)];
            }
        }
        svg_heatmap(out_path(cfg, "evolve_corr.svg"), "bond correlations", "n (periods)", "bond j",
                    ns, bond_axis, corr);
        note_written(out_path(cfg, "evolve_corr.svg"));
    }

    double cmax = 0.0;
    int cmax_bond = 1, cmax_n = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (std::size_t b = 0; b < series.corr[i].size(); ++b) {
            if (series.corr[i][b] > cmax) {
                cmax = series.corr[i][b];
                cmax_bond = static_cast<int>(b) + 1;
                cmax_n = static_cast<int>(i);
            }
        }
    }
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "evolve: " << cfg.periods << " periods of " << preset_name_or_custom(cfg)
              << " drive in " << fmt12(dt) << " s\n";
    std::cout << "max C_" << cmax_bond << "," << cmax_bond + 1 << " = " << fmt12(cmax) << " at n="
              << cmax_n << '\n';
    return 0;
}

int run_steer(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    int m = cfg.block_periods;
    const int m_auto = default_m(cfg.lattice, cfg.strict_m && m == 0);
    if (m == 0) {
        m = m_auto;
    } else if (cfg.strict_m && m != m_auto) {
        throw NonIntegerRatio("explicit m = " + std::to_string(m) +
                              " does not match round(Omega0/(2 J0)) = " + std::to_string(m_auto) +
                              "; pass --strict-m false to override");
    }

    const double omega = cfg.omega_base;
    const DriveAssignment d1 = make_drive(DrivePreset::OddBondsDouble, cfg.lattice.sites, omega);
    const DriveAssignment d2 = make_drive(DrivePreset::EvenBondsDouble, cfg.lattice.sites, omega);
    UnitaryMatrix u1 = cached_one_period_operator(cfg.lattice, d1, cfg.propagator, cfg.cache_dir);
    u1.set_label("U1(T)");
    UnitaryMatrix u2 = cached_one_period_operator(cfg.lattice, d2, cfg.propagator, cfg.cache_dir);
    u2.set_label("U2(T)");

    const ProtocolSequence seq = compile_sequence(cfg.sequence, m);
    const StateVector psi0 = StateVector::all_down(cfg.lattice.sites);
    const ObservableSeries series = run_protocol(psi0, u1, u2, seq, d1.period());

    write_series_csv(out_path(cfg, "steer.csv"), series);
    note_written(out_path(cfg, "steer.csv"));

    const int central = std::max(1, cfg.lattice.sites / 2);
    if (cfg.svg && series.size() >= 2) {
        const int bonds = cfg.lattice.sites - 1;
        std::vector<double> ns(series.size());
        for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = static_cast<double>(i);
        std::vector<double> bond_axis(static_cast<std::size_t>(bonds));
        for (int b = 0; b < bonds; ++b) bond_axis[static_cast<std::size_t>(b)] = b + 1;
        std::vector<double> corr(ns.size() * static_cast<std::size_t>(bonds));
        for (std::size_t i = 0; i < ns.size(); ++i) {
            for (int b = 0; b < bonds; ++b) {
                corr[i * static_cast<std::size_t>(bonds) + static_cast<std::size_t>(b)] =
                    series.corr[i][static_cast<std::size_t>(b)];
            }
        }
        svg_heatmap(out_path(cfg, "steer_corr.svg"), "bond correlations under the block protocol",
                    "n (periods)", "bond j", ns, bond_axis, corr);
        note_written(out_path(cfg, "steer_corr.svg"));

        LineSeries cline{"C_" + std::to_string(central) + "," + std::to_string(central + 1), {}};
        for (const auto& row : series.corr) cline.ys.push_back(row[static_cast<std::size_t>(central - 1)]);
        LineSeries fline{"fidelity", series.fidelity_to_initial};
        svg_lines(out_path(cfg, "steer_center.svg"), "central bond and return fidelity",
                  "n (periods)", "value", ns, {cline, fline});
        note_written(out_path(cfg, "steer_center.svg"));
    }

    double cmax = 0.0;
    int cmax_n = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double v = series.corr[i][static_cast<std::size_t>(central - 1)];
        if (v > cmax) {
            cmax = v;
            cmax_n = static_cast<int>(i);
        }
    }
    double final_cabs = 0.0;
    for (double v : series.corr.back()) final_cabs = std::max(final_cabs, std::abs(v));
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "steer: " << seq.blocks.size() << " blocks x " << m << " periods in " << fmt12(dt)
              << " s\n";
    std::cout << "max C_" << central << "," << central + 1 << " = " << fmt12(cmax)
              << " at n=" << cmax_n << '\n';
    std::cout << "final fidelity = " << fmt12(series.fidelity_to_initial.back())
              << ", final max |C| = " << fmt12(final_cabs) << '\n';
    return 0;
}

int run_magnus_check(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<MagnusCheckRow> rows;
    for (int halvings = 0; halvings < 3; ++halvings) {
        LatticeConfig lat = cfg.lattice;
        lat.exchange = cfg.lattice.exchange / static_cast<double>(1 << halvings);
        const DriveAssignment drive = [&] {
            RunConfig scaled = cfg;
            scaled.lattice = lat;
            return scaled.drive();
        }();
        const EffectiveHamiltonian eff = magnus_zeroth(lat, drive);
        const UnitaryMatrix u =
            cached_one_period_operator(lat, drive, cfg.propagator, cfg.cache_dir);
        rows.push_back({lat.exchange, magnus_residual(u, eff, lat, drive, cfg.propagator),
                        eff.empty()});
    }
    write_magnus_csv(out_path(cfg, "magnus_check.csv"), rows);
    note_written(out_path(cfg, "magnus_check.csv"));

    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "magnus-check in " << fmt12(dt) << " s\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::cout << "J0 = " << fmt12(rows[i].exchange) << "  residual = " << fmt12(rows[i].residual);
        if (i > 0 && rows[i].residual > 0.0)
            std::cout << "  ratio = " << fmt12(rows[i - 1].residual / rows[i].residual);
        if (rows[i].effective_empty) std::cout << "  (empty effective Hamiltonian)";
        std::cout << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-tone driven spin-chain simulator"};
    app.require_subcommand(1);

    SubcommandState fs, ev, st, mg;
    fs.app = app.add_subcommand("fs-scan", "fidelity-susceptibility frequency scan");
    ev.app = app.add_subcommand("evolve", "stroboscopic evolution under one drive");
    st.app = app.add_subcommand("steer", "alternating two-drive block protocol");
    mg.app = app.add_subcommand("magnus-check", "averaged-Hamiltonian residual ladder");
    for (auto* s : {&fs, &ev, &st, &mg}) attach_flags(*s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fs.app->parsed()) return run_fs_scan(build_config(fs));
        if (ev.app->parsed()) return run_evolve(build_config(ev));
        if (st.app->parsed()) return run_steer(build_config(st));
        if (mg.app->parsed()) return run_magnus_check(build_config(mg));
    } catch (const NumericalIntegrity& e) {
        std::cerr << "numerical integrity failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
