#include "piezstab/cli.hpp"

#include "piezstab/config_io.hpp"
#include "piezstab/continued_fraction.hpp"
#include "piezstab/csvio.hpp"
#include "piezstab/integrate.hpp"
#include "piezstab/measures.hpp"
#include "piezstab/quotient.hpp"
#include "piezstab/spectral.hpp"
#include "piezstab/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace piezstab {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::vector<int> mesh;
    double dt = 0.0;
    double horizon = 50.0;
    std::string grid = "1:100:200";
    long long nmax = 10;
    int jobs = 1;
    std::string init = "smooth";
    std::string fit = "both";
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:n"
    double a = 0, b = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw std::invalid_argument("--grid expects a:b:n with n >= 1");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] =
            (n == 1) ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

std::vector<int> default_mesh(Variant v) {
    return v == Variant::EPE ? std::vector<int>{60, 60, 60} : std::vector<int>{60, 60};
}

struct LoadedConfig {
    ConfigData data;
    SystemConfig config;
    std::string raw;
};

LoadedConfig load(const CommonOpts& opts) {
    std::string raw = slurp(opts.config_path);
    ConfigData data = parse_config(raw);
    return {data, SystemConfig::from(data), raw};
}

void ensure_out(const CommonOpts& opts) {
    if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    return (fs::path(opts.out_dir) / name).string();
}

RunManifest base_manifest(const std::string& subcommand, const CommonOpts& opts,
                          const LoadedConfig& loaded) {
    RunManifest manifest;
    manifest.set("tool", "piezstab");
    manifest.set("version", kVersion);
    manifest.set("subcommand", subcommand);
    manifest.set("config", opts.config_path);
    manifest.set("config_hash", fnv1a_hex(loaded.raw));
    std::istringstream cfg(serialize_config(loaded.data));
    std::string line;
    while (std::getline(cfg, line)) {
        auto eq = line.find(" = ");
        if (eq != std::string::npos)
            manifest.set("param." + line.substr(0, eq), line.substr(eq + 3));
    }
    return manifest;
}

std::string mesh_string(const std::vector<int>& mesh) {
    std::string s;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mesh[i]);
    }
    return s;
}

int cmd_validate(const CommonOpts& opts) {
    std::string raw = slurp(opts.config_path);
    ConfigData data = parse_config(raw);
    ValidationReport report = validate(data);
    std::cout << "validation = " << (report.admissible() ? "ok" : "invalid") << "\n";
    for (const auto& v : report.violations)
        std::cout << "violation." << v.key << " = " << v.message << "\n";
    for (const auto& f : report.flags) std::cout << "flag = " << f << "\n";
    return report.admissible() ? 0 : 2;
}

int cmd_classify(const CommonOpts& opts) {
    LoadedConfig loaded = load(opts);
    const MaterialParams& m = loaded.config.materials;
    SpectralData sd = sigma_pm(m);
    QuotientClass cls = classify_quotient(m);
    DecayVerdict verdict = decay_prediction(cls);

    std::ostringstream out;
    out << "alpha1 = " << format_rational(m.alpha1.exact) << "\n";
    out << "sigma_plus = " << format_double(sd.sigma_plus) << "\n";
    out << "sigma_minus = " << format_double(sd.sigma_minus) << "\n";
    out << "sigma_plus_sq = " << sd.sigma_plus_sq.str() << "\n";
    out << "sigma_minus_sq = " << sd.sigma_minus_sq.str() << "\n";
    out << "quotient = " << format_double(cls.quotient_value) << "\n";
    out << "class = " << quotient_kind_name(cls.kind) << "\n";
    if (cls.kind == QuotientKind::RationalOddOdd || cls.kind == QuotientKind::RationalMixedParity)
        out << "quotient_exact = " << cls.xi_plus.str() << "/" << cls.xi_minus.str() << "\n";
    if (cls.kind == QuotientKind::QuadraticSurd) {
        out << "quotient_exact = " << cls.exact_surd.str() << "\n";
        ContinuedFraction cf = continued_fraction(cls.exact_surd, 12);
        out << "quotient_cf = [";
        for (std::size_t i = 0; i < cf.partial_quotients.size(); ++i)
            out << (i == 0 ? "" : (i == 1 ? "; " : " ")) << cf.partial_quotients[i].str();
        out << " ...]\n";
        auto bad = badly_approximable(cf);
        out << "badly_approximable = "
            << (bad.verdict == BoundedQuotients::Yes
                    ? "yes"
                    : bad.verdict == BoundedQuotients::No ? "no" : "undetermined")
            << " (max quotient " << bad.max_quotient.str() << ")\n";
    }
    out << "verdict = " << verdict.describe() << "\n";
    if (verdict.regime == DecayRegime::NotStronglyStable) {
        auto witnesses = find_resonances(m, loaded.config.geometry.l1.approx, opts.nmax);
        for (const auto& w : witnesses)
            out << "resonance." << w.n_plus << "." << w.n_minus
                << ".lambda_star = " << format_double(w.lambda_star) << "\n";
    }

    std::cout << out.str();
    if (!opts.out_dir.empty()) {
        ensure_out(opts);
        write_text_file(out_path(opts, "classify.txt"), out.str());
        RunManifest manifest = base_manifest("classify", opts, loaded);
        manifest.set("output.classify", out_path(opts, "classify.txt"));
        manifest.write(out_path(opts, "run_manifest.txt"));
    }
    return 0;
}

int cmd_simulate(const CommonOpts& opts) {
    LoadedConfig loaded = load(opts);
    std::vector<int> meshn = opts.mesh.empty() ? default_mesh(loaded.config.variant()) : opts.mesh;
    Mesh mesh = build_mesh(loaded.config, meshn);
    DiscreteSystem sys = assemble(loaded.config, mesh);

    Eigen::VectorXd w0;
    if (opts.init == "smooth") {
        w0 = smooth_initial_state(sys);
    } else if (opts.init == "resonant") {
        auto witnesses = find_resonances(sys.config.materials, sys.config.geometry.l1.approx, opts.nmax);
        if (witnesses.empty()) throw NotResonant("no resonance witness within nmax");
        w0 = resonant_initial_state(sys, witnesses.front());
    } else {
        throw std::invalid_argument("--init must be smooth or resonant");
    }

    const double dt = opts.dt > 0 ? opts.dt : default_dt(sys);
    IntegrateResult result = integrate(sys, w0, dt, opts.horizon);

    std::vector<DecayFit> fits;
    auto try_fit = [&](DecayModel model) {
        try {
            fits.push_back(fit_decay(result.trace, model));
        } catch (const DegenerateTrace&) {
            // flat traces (e.g. resonant persistence) have no decay to fit
        }
    };
    if (opts.fit == "exp" || opts.fit == "both") try_fit(DecayModel::Exponential);
    if (opts.fit == "poly" || opts.fit == "both") try_fit(DecayModel::Polynomial);

    const double e0 = result.trace.energies.front();
    const double eT = result.trace.energies.back();
    std::cout << "steps = " << result.trace.times.size() - 1 << "\n";
    std::cout << "dt = " << format_double(dt) << "\n";
    std::cout << "E0 = " << format_double(e0) << "\n";
    std::cout << "ET = " << format_double(eT) << "\n";
    std::cout << "ET_over_E0 = " << format_double(eT / std::max(e0, 1e-300)) << "\n";
    for (const auto& f : fits) {
        if (f.model == DecayModel::Exponential)
            std::cout << "fit.exponential.omega = " << format_double(f.omega)
                      << "\nfit.exponential.r2 = " << format_double(f.r_squared) << "\n";
        else
            std::cout << "fit.polynomial.exponent = " << format_double(f.exponent)
                      << "\nfit.polynomial.r2 = " << format_double(f.r_squared) << "\n";
    }

    if (!opts.out_dir.empty()) {
        ensure_out(opts);
        write_text_file(out_path(opts, "energy_trace.csv"), energy_trace_csv(result.trace));
        write_text_file(out_path(opts, "decay_report.csv"), decay_report_csv(fits));
        RunManifest manifest = base_manifest("simulate", opts, loaded);
        manifest.set("mesh", mesh_string(meshn));
        manifest.set("dt", dt);
        manifest.set("horizon", opts.horizon);
        manifest.set("init", opts.init);
        manifest.set("output.trace", out_path(opts, "energy_trace.csv"));
        manifest.set("output.decay", out_path(opts, "decay_report.csv"));
        manifest.write(out_path(opts, "run_manifest.txt"));
    }
    return 0;
}

int cmd_spectrum(const CommonOpts& opts) {
    LoadedConfig loaded = load(opts);
    std::vector<int> meshn = opts.mesh.empty() ? default_mesh(loaded.config.variant()) : opts.mesh;
    Mesh mesh = build_mesh(loaded.config, meshn);
    DiscreteSystem sys = assemble(loaded.config, mesh);
    SpectrumReport report = spectrum(sys, opts.nmax);

    std::cout << "eigenvalues = " << report.eigenvalues.size() << "\n";
    std::cout << "abscissa = " << format_double(report.abscissa) << "\n";
    for (const auto& match : report.resonance_matches)
        std::cout << "resonance." << match.witness.n_plus << "." << match.witness.n_minus
                  << ".gap = " << format_double(match.gap) << "\n";

    if (!opts.out_dir.empty()) {
        ensure_out(opts);
        write_text_file(out_path(opts, "spectrum.csv"), spectrum_csv(report));
        RunManifest manifest = base_manifest("spectrum", opts, loaded);
        manifest.set("mesh", mesh_string(meshn));
        manifest.set("output.spectrum", out_path(opts, "spectrum.csv"));
        manifest.write(out_path(opts, "run_manifest.txt"));
    }
    return 0;
}

int cmd_resolvent(const CommonOpts& opts) {
    LoadedConfig loaded = load(opts);
    std::vector<int> meshn = opts.mesh.empty() ? default_mesh(loaded.config.variant()) : opts.mesh;
    Mesh mesh = build_mesh(loaded.config, meshn);
    DiscreteSystem sys = assemble(loaded.config, mesh);
    std::vector<double> grid = parse_grid(opts.grid);
    ResolventSweep sweep = resolvent_sweep(sys, grid, opts.jobs);

    std::cout << "sup_norm = " << format_double(sweep.sup_norm) << "\n";
    std::cout << "growth_exponent = " << format_double(sweep.growth_exponent) << "\n";

    if (!opts.out_dir.empty()) {
        ensure_out(opts);
        write_text_file(out_path(opts, "resolvent_sweep.csv"), sweep_csv(sweep));
        RunManifest manifest = base_manifest("resolvent", opts, loaded);
        manifest.set("mesh", mesh_string(meshn));
        manifest.set("grid", opts.grid);
        manifest.set("output.sweep", out_path(opts, "resolvent_sweep.csv"));
        manifest.write(out_path(opts, "run_manifest.txt"));
    }
    return 0;
}

int cmd_modes(const CommonOpts& opts) {
    LoadedConfig loaded = load(opts);
    const MaterialParams& m = loaded.config.materials;
    const double l1 = loaded.config.geometry.l1.approx;
    auto witnesses = find_resonances(m, l1, opts.nmax);

    const int npts = 401;
    std::vector<double> grid(npts);
    for (int i = 0; i < npts; ++i) grid[static_cast<std::size_t>(i)] = l1 * i / (npts - 1.0);

    CsvWriter csv;
    std::vector<std::string> header = {"x"};
    std::vector<std::vector<double>> modes;
    for (const auto& w : witnesses) {
        header.push_back("v_" + std::to_string(w.n_plus) + "_" + std::to_string(w.n_minus));
        modes.push_back(resonant_mode(w, l1, grid));
    }
    csv.header(header);
    for (int i = 0; i < npts; ++i) {
        std::vector<double> row = {grid[static_cast<std::size_t>(i)]};
        for (const auto& mode : modes) row.push_back(mode[static_cast<std::size_t>(i)]);
        csv.row(row);
    }

    std::cout << "witnesses = " << witnesses.size() << "\n";
    for (const auto& w : witnesses)
        std::cout << "witness." << w.n_plus << "." << w.n_minus
                  << ".lambda_star = " << format_double(w.lambda_star) << "\n";

    if (!opts.out_dir.empty()) {
        ensure_out(opts);
        write_text_file(out_path(opts, "modes.csv"), csv.str());
        RunManifest manifest = base_manifest("modes", opts, loaded);
        manifest.set("nmax", static_cast<double>(opts.nmax));
        manifest.set("output.modes", out_path(opts, "modes.csv"));
        manifest.write(out_path(opts, "run_manifest.txt"));
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"stability lab for serially-connected piezoelectric-elastic transmission lines"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool needs_mesh) {
        sub->add_option("--config", opts.config_path, "config file path")->required();
        sub->add_option("--out", opts.out_dir, "output directory for CSV artifacts");
        if (needs_mesh)
            sub->add_option("--mesh", opts.mesh, "elements per layer, e.g. 60,60")
                ->delimiter(',');
        return sub;
    };

    auto* classify = add_common(app.add_subcommand("classify", "decay-regime classification"), false);
    classify->add_option("--nmax", opts.nmax, "resonance witness search bound");

    auto* simulate = add_common(app.add_subcommand("simulate", "time integration + decay fit"), true);
    simulate->add_option("--dt", opts.dt, "time step (default: min h / (2 max speed))");
    simulate->add_option("--horizon", opts.horizon, "final time T");
    simulate->add_option("--init", opts.init, "initial data: smooth | resonant");
    simulate->add_option("--fit", opts.fit, "decay fit: exp | poly | both");
    simulate->add_option("--nmax", opts.nmax, "witness bound for --init resonant");

    add_common(app.add_subcommand("spectrum", "dense generator spectrum"), true);

    auto* resolvent = add_common(app.add_subcommand("resolvent", "resolvent norm sweep"), true);
    resolvent->add_option("--grid", opts.grid, "lambda grid a:b:n");
    resolvent->add_option("--jobs", opts.jobs, "parallel sweep workers");

    auto* modes = add_common(app.add_subcommand("modes", "resonant eigenfunctions"), false);
    modes->add_option("--nmax", opts.nmax, "resonance witness search bound");

    add_common(app.add_subcommand("validate", "config validation report"), false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;  // help exits cleanly, usage errors as 1
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(opts);
        if (app.got_subcommand("classify")) return cmd_classify(opts);
        if (app.got_subcommand("simulate")) return cmd_simulate(opts);
        if (app.got_subcommand("spectrum")) return cmd_spectrum(opts);
        if (app.got_subcommand("resolvent")) return cmd_resolvent(opts);
        if (app.got_subcommand("modes")) return cmd_modes(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

}  // namespace piezstab
