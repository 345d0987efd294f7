// Command-line front end: resolves a preset plus overrides into an
// experiment, echoes the resolved configuration next to the outputs, runs,
// and writes CSV/JSON reports.

#include "presets.hpp"

#include "dnls/errors.hpp"
#include "dnls/report_io.hpp"
#include "dnls/util.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using namespace dnls;
using cli::DecayPreset;
using cli::find_preset;
using cli::NumericsPreset;
using cli::Preset;

namespace {

Scheme parse_scheme(const std::string& s) {
    if (s == "lri") return Scheme::LRI;
    if (s == "strang") return Scheme::Strang;
    if (s == "fd") return Scheme::FD;
    throw ConfigError("unknown scheme '" + s + "' (lri, strang, fd)");
}

PotentialKind parse_potential_kind(const std::string& s) {
    if (s == "fourier-uniform") return PotentialKind::FourierUniform;
    if (s == "fourier-normal") return PotentialKind::FourierNormal;
    if (s == "pointwise") return PotentialKind::PointwiseUniform;
    if (s == "localization") return PotentialKind::LocalizationBand;
    throw ConfigError("unknown potential kind '" + s + "'");
}

const char* to_string(PotentialKind k) {
    switch (k) {
    case PotentialKind::FourierUniform: return "fourier-uniform";
    case PotentialKind::FourierNormal: return "fourier-normal";
    case PotentialKind::PointwiseUniform: return "pointwise";
    case PotentialKind::LocalizationBand: return "localization";
    case PotentialKind::Imported: return "imported";
    }
    return "?";
}

std::string default_output_dir() {
    if (const char* env = std::getenv("DNLS_OUTPUT_DIR"))
        return env;
    return "dnls-out";
}

// Options shared by every experiment subcommand.
struct CommonOpts {
    std::string preset;
    std::string out_dir = default_output_dir();
    std::string cache_dir;
    std::uint64_t seed = 1234;
    int samples = 0; // 0: preset default
    int threads = 0;
    bool full_scale = false;
    bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_preset = true) {
    auto* p = cmd->add_option("--preset", o.preset, "experiment preset name");
    if (needs_preset)
        p->required();
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--cache-dir", o.cache_dir,
                    "reference-solution disk cache directory");
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
    cmd->add_option("--samples", o.samples, "ensemble size (0: preset default)");
    cmd->add_option("--threads", o.threads, "worker cap (0: hardware)");
    cmd->add_flag("--full-scale", o.full_scale,
                  "use the full-scale resolution instead of the desk-scale default");
    cmd->add_flag("--dry-run", o.dry_run,
                  "validate and write the resolved config without running");
}

struct SweepOverrides {
    int n_points = 0;
    std::vector<double> tau_targets;
    double tau_ref = 0.0;
    std::string ref_scheme;
    int ref_n = 0;
    std::vector<std::string> schemes;
    std::vector<int> grid_sizes;
    double fixed_tau = 0.0;
    double lambda = std::numeric_limits<double>::quiet_NaN();
};

void add_sweep_overrides(CLI::App* cmd, SweepOverrides& o, bool spatial) {
    cmd->add_option("--n", o.n_points, "grid size override (continuous problems)");
    if (spatial) {
        cmd->add_option("--grid-sizes", o.grid_sizes, "swept grid sizes")
            ->delimiter(',');
        cmd->add_option("--tau", o.fixed_tau, "fixed time step of the spatial sweep");
        cmd->add_option("--ref-n", o.ref_n, "reference grid size");
    } else {
        cmd->add_option("--tau-targets", o.tau_targets,
                        "swept time steps (snapped to divisors of T)")
            ->delimiter(',');
    }
    cmd->add_option("--tau-ref", o.tau_ref, "reference time step target");
    cmd->add_option("--ref-scheme", o.ref_scheme, "reference scheme (lri|strang|fd)");
    cmd->add_option("--schemes", o.schemes, "schemes under test")->delimiter(',');
    cmd->add_option("--lambda", o.lambda, "nonlinearity strength override");
}

ExperimentSpec resolve_spec(const Preset& preset, const CommonOpts& common,
                            const SweepOverrides& over, SweepKind sweep) {
    const NumericsPreset& num = common.full_scale ? preset.paper : preset.desk;

    ExperimentSpec spec;
    spec.problem = preset.problem;
    spec.sweep = sweep;
    spec.final_time = preset.final_time;
    spec.master_seed = common.seed;
    spec.n_samples = common.samples > 0 ? common.samples : num.samples;
    spec.threads = common.threads;
    spec.cache_dir = common.cache_dir;
    spec.reference.scheme =
        over.ref_scheme.empty() ? num.ref_scheme : parse_scheme(over.ref_scheme);

    if (auto* prob = std::get_if<ContinuousProblem>(&spec.problem)) {
        prob->n_points = over.n_points > 0 ? over.n_points : num.n_points;
        if (!std::isnan(over.lambda))
            prob->lambda = over.lambda;
        spec.schemes = {Scheme::LRI, Scheme::Strang, Scheme::FD};
    } else {
        if (!std::isnan(over.lambda))
            std::get<LatticeProblem>(spec.problem).lambda = over.lambda;
        spec.schemes = {Scheme::Strang, Scheme::FD};
    }
    if (!over.schemes.empty()) {
        spec.schemes.clear();
        for (const std::string& s : over.schemes)
            spec.schemes.push_back(parse_scheme(s));
    }

    if (sweep == SweepKind::Temporal) {
        const auto& targets =
            over.tau_targets.empty() ? num.tau_targets : over.tau_targets;
        spec.taus = divisor_taus(spec.final_time, targets);
        const double ref_target = over.tau_ref > 0.0 ? over.tau_ref : num.tau_ref_target;
        spec.reference.tau =
            divisor_taus(spec.final_time, std::vector<double>{ref_target}).front();
        spec.reference.n_points = 0;
    } else {
        spec.grid_sizes = over.grid_sizes.empty() ? num.grid_sizes : over.grid_sizes;
        const double fixed_target =
            over.fixed_tau > 0.0 ? over.fixed_tau : num.fixed_tau_target;
        spec.fixed_tau =
            divisor_taus(spec.final_time, std::vector<double>{fixed_target}).front();
        const double ref_target =
            over.tau_ref > 0.0 ? over.tau_ref : spec.fixed_tau / 10.0;
        spec.reference.tau =
            divisor_taus(spec.final_time, std::vector<double>{ref_target}).front();
        spec.reference.n_points = over.ref_n > 0 ? over.ref_n : num.ref_n_points;
    }
    return spec;
}

std::string scheme_list(const std::vector<Scheme>& schemes) {
    std::string out;
    for (Scheme s : schemes)
        out += (out.empty() ? "" : ",") + std::string(to_string(s));
    return out;
}

void write_resolved_config(const ExperimentSpec& spec, const Preset& preset,
                           const CommonOpts& common, const fs::path& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot write resolved config '" + path.string() + "'");
    os << "[problem]\n";
    if (const auto* c = std::get_if<ContinuousProblem>(&spec.problem)) {
        os << "kind = continuous\n";
        os << "half_length = " << format_double(c->half_length) << "\n";
        os << "n_points = " << c->n_points << "\n";
        os << "lambda = " << format_double(c->lambda) << "\n";
        os << "u0 = " << to_string(c->u0) << "\n";
        os << "potential = " << to_string(c->potential.kind) << "\n";
        os << "theta = " << format_double(c->potential.theta) << "\n";
        os << "normalize = " << (c->potential.normalize ? 1 : 0) << "\n";
        os << "band_modes = " << c->potential.band_modes << "\n";
    } else {
        const auto& l = std::get<LatticeProblem>(spec.problem);
        os << "kind = lattice\n";
        os << "n_half = " << l.n_half << "\n";
        os << "hopping = " << format_double(l.hopping) << "\n";
        os << "lambda = " << format_double(l.lambda) << "\n";
        os << "disorder = "
           << (l.disorder == CoeffDist::UniformSym ? "uniform" : "normal") << "\n";
    }
    os << "final_time = " << format_double(spec.final_time) << "\n";
    os << "\n[numerics]\n";
    os << "sweep = " << (spec.sweep == SweepKind::Temporal ? "temporal" : "spatial")
       << "\n";
    if (spec.sweep == SweepKind::Temporal) {
        os << "taus = ";
        for (std::size_t i = 0; i < spec.taus.size(); ++i)
            os << (i ? "," : "") << format_double(spec.taus[i]);
        os << "\n";
    } else {
        os << "grid_sizes = ";
        for (std::size_t i = 0; i < spec.grid_sizes.size(); ++i)
            os << (i ? "," : "") << spec.grid_sizes[i];
        os << "\nfixed_tau = " << format_double(spec.fixed_tau) << "\n";
    }
    os << "tau_ref = " << format_double(spec.reference.tau) << "\n";
    os << "ref_scheme = " << to_string(spec.reference.scheme) << "\n";
    os << "ref_n_points = " << spec.reference.n_points << "\n";
    os << "\n[run]\n";
    os << "preset = " << preset.name << "\n";
    os << "scale = " << (common.full_scale ? "full" : "desk") << "\n";
    os << "samples = " << spec.n_samples << "\n";
    os << "seed = " << spec.master_seed << "\n";
    os << "threads = " << spec.threads << "\n";
    os << "schemes = " << scheme_list(spec.schemes) << "\n";
    os << "output_dir = " << common.out_dir << "\n";
    if (!os.good())
        throw IoError("failed writing resolved config '" + path.string() + "'");
}

int run_convergence_command(const Preset& preset, const CommonOpts& common,
                            const SweepOverrides& over, SweepKind sweep) {
    ExperimentSpec spec = resolve_spec(preset, common, over, sweep);
    fs::create_directories(common.out_dir);
    write_resolved_config(spec, preset, common,
                          fs::path(common.out_dir) / "resolved-config.ini");
    validate(spec);
    if (common.dry_run) {
        std::cout << "dry run: configuration valid\n";
        return 0;
    }
    ConvergenceReport report = run_convergence(spec);
    write_report_csv(report, (fs::path(common.out_dir) / "report.csv").string());
    write_report_json(report, spec,
                      (fs::path(common.out_dir) / "report.json").string());
    print_report_summary(report, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral solver suite for the 1D disordered NLS"};
    app.require_subcommand(1);
    // key = value config with one [section] per subcommand; unknown keys are
    // hard errors. The flag must precede the subcommand name.
    app.set_config("--config", "",
                   "config file (key = value, [section] per subcommand)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // converge-time ---------------------------------------------------------
    auto* time_cmd =
        app.add_subcommand("converge-time", "temporal convergence experiment");
    CommonOpts time_common;
    SweepOverrides time_over;
    add_common(time_cmd, time_common);
    add_sweep_overrides(time_cmd, time_over, false);

    // converge-space --------------------------------------------------------
    auto* space_cmd =
        app.add_subcommand("converge-space", "spatial convergence experiment");
    CommonOpts space_common;
    SweepOverrides space_over;
    add_common(space_cmd, space_common);
    add_sweep_overrides(space_cmd, space_over, true);

    // discrete --------------------------------------------------------------
    auto* discrete_cmd =
        app.add_subcommand("discrete", "lattice model convergence experiment");
    CommonOpts discrete_common;
    SweepOverrides discrete_over;
    add_common(discrete_cmd, discrete_common);
    add_sweep_overrides(discrete_cmd, discrete_over, false);

    // decay -----------------------------------------------------------------
    auto* decay_cmd =
        app.add_subcommand("decay", "ensemble Fourier mode decay diagnostic");
    CommonOpts decay_common;
    double decay_weight = 0.0; // 0: preset default
    double decay_tau = 0.0;
    int decay_n = 0;
    std::vector<double> decay_times;
    add_common(decay_cmd, decay_common);
    decay_cmd->add_option("--weight", decay_weight, "mode weight exponent");
    decay_cmd->add_option("--tau", decay_tau, "time step");
    decay_cmd->add_option("--n", decay_n, "grid size");
    decay_cmd->add_option("--times", decay_times, "snapshot times")->delimiter(',');

    // simulate --------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "localization/spreading run");
    CommonOpts sim_common;
    double sim_lambda = std::numeric_limits<double>::quiet_NaN();
    double sim_tau = 0.0, sim_half_length = 0.0, sim_final_time = 0.0;
    double sim_mass_radius = 0.0, sim_mass_interval = 1.0;
    int sim_n = 0, sim_band = 0;
    bool sim_zero_potential = false;
    std::vector<double> sim_snapshots;
    add_common(sim_cmd, sim_common);
    sim_cmd->add_option("--lambda", sim_lambda, "nonlinearity strength");
    sim_cmd->add_option("--tau", sim_tau, "time step");
    sim_cmd->add_option("--n", sim_n, "grid size");
    sim_cmd->add_option("--half-length", sim_half_length, "torus half-length");
    sim_cmd->add_option("--final-time", sim_final_time, "simulation end time");
    sim_cmd->add_option("--band-modes", sim_band, "potential band size N0 (0: N/64)");
    sim_cmd->add_option("--snapshot-times", sim_snapshots, "|u| snapshot times")
        ->delimiter(',');
    sim_cmd->add_option("--mass-radius", sim_mass_radius,
                        "observation radius R (0: half-domain L/2)");
    sim_cmd->add_option("--mass-interval", sim_mass_interval,
                        "cadence of the mass-fraction series");
    sim_cmd->add_flag("--zero-potential", sim_zero_potential,
                      "run the free equation instead (diagnostic)");

    // potential -------------------------------------------------------------
    auto* pot_cmd = app.add_subcommand("potential", "generate or import a potential");
    CommonOpts pot_common;
    std::string pot_kind = "pointwise";
    std::string pot_import;
    double pot_theta = 2.0, pot_half_length = std::numbers::pi;
    int pot_n = 1 << 10, pot_band = 0;
    bool pot_no_normalize = false;
    add_common(pot_cmd, pot_common, false);
    pot_cmd->add_option("--kind", pot_kind,
                        "fourier-uniform|fourier-normal|pointwise|localization");
    pot_cmd->add_option("--n", pot_n, "grid size")->capture_default_str();
    pot_cmd->add_option("--theta", pot_theta, "regularizing exponent")
        ->capture_default_str();
    pot_cmd->add_option("--half-length", pot_half_length, "torus half-length")
        ->capture_default_str();
    pot_cmd->add_option("--band-modes", pot_band, "band size N0 (0: N/64)");
    pot_cmd->add_flag("--no-normalize", pot_no_normalize,
                      "skip the sup-norm normalization of Fourier potentials");
    pot_cmd->add_option("--import", pot_import,
                        "validate and re-export an existing potential CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*time_cmd)
            return run_convergence_command(find_preset(time_common.preset),
                                           time_common, time_over,
                                           SweepKind::Temporal);
        if (*space_cmd)
            return run_convergence_command(find_preset(space_common.preset),
                                           space_common, space_over,
                                           SweepKind::Spatial);
        if (*discrete_cmd) {
            const Preset& preset = find_preset(discrete_common.preset);
            if (!std::holds_alternative<LatticeProblem>(preset.problem))
                throw ConfigError("preset '" + preset.name +
                                  "' is not a lattice experiment");
            return run_convergence_command(preset, discrete_common, discrete_over,
                                           SweepKind::Temporal);
        }

        if (*decay_cmd) {
            const Preset& preset = find_preset(decay_common.preset);
            const auto* c = std::get_if<ContinuousProblem>(&preset.problem);
            if (!c)
                throw ConfigError("decay diagnostics need a continuous preset");
            const auto& maybe =
                decay_common.full_scale ? preset.decay_paper : preset.decay_desk;
            if (!maybe)
                throw ConfigError("preset '" + preset.name +
                                  "' has no decay parameters");
            DecaySpec spec;
            spec.problem = *c;
            spec.problem.n_points = decay_n > 0 ? decay_n : maybe->n_points;
            spec.tau = decay_tau > 0 ? decay_tau : maybe->tau;
            spec.times = decay_times.empty() ? maybe->times : decay_times;
            spec.n_samples =
                decay_common.samples > 0 ? decay_common.samples : maybe->samples;
            spec.master_seed = decay_common.seed;
            spec.threads = decay_common.threads;
            const double weight = decay_weight > 0 ? decay_weight : maybe->weight;

            fs::create_directories(decay_common.out_dir);
            {
                std::ofstream os(fs::path(decay_common.out_dir) /
                                 "resolved-config.ini");
                os << "[decay]\npreset = " << preset.name
                   << "\nn_points = " << spec.problem.n_points
                   << "\ntau = " << format_double(spec.tau) << "\nweight = "
                   << format_double(weight) << "\nsamples = " << spec.n_samples
                   << "\nseed = " << spec.master_seed << "\ntimes = ";
                for (std::size_t i = 0; i < spec.times.size(); ++i)
                    os << (i ? "," : "") << format_double(spec.times[i]);
                os << "\n";
            }
            if (decay_common.dry_run) {
                std::cout << "dry run: configuration valid\n";
                return 0;
            }
            DecayCurves curves = fourier_decay_diagnostic(spec, weight);
            write_decay_csv(curves,
                            (fs::path(decay_common.out_dir) / "decay.csv").string());
            std::cout << "decay curves for " << spec.times.size() << " time(s), "
                      << curves.values.front().size() << " modes each -> "
                      << decay_common.out_dir << "/decay.csv\n";
            return 0;
        }

        if (*sim_cmd) {
            const Preset& preset = find_preset(sim_common.preset);
            const auto& maybe =
                sim_common.full_scale ? preset.sim_paper : preset.sim_desk;
            if (!maybe)
                throw ConfigError("preset '" + preset.name +
                                  "' has no simulation parameters");
            LocalizationParams params;
            params.half_length =
                sim_half_length > 0 ? sim_half_length : maybe->half_length;
            params.n_points = sim_n > 0 ? sim_n : maybe->n_points;
            params.tau = sim_tau > 0 ? sim_tau : maybe->tau;
            params.final_time =
                sim_final_time > 0 ? sim_final_time : maybe->final_time;
            params.lambda = std::isnan(sim_lambda)
                                ? std::get<ContinuousProblem>(preset.problem).lambda
                                : sim_lambda;
            params.band_modes = sim_band;
            params.mass_radius = sim_mass_radius;
            params.mass_interval = sim_mass_interval;
            if (!sim_snapshots.empty())
                params.snapshot_times = sim_snapshots;
            params.seed = sim_common.seed;
            params.zero_potential = sim_zero_potential;

            fs::create_directories(sim_common.out_dir);
            {
                std::ofstream os(fs::path(sim_common.out_dir) /
                                 "resolved-config.ini");
                os << "[simulate]\npreset = " << preset.name
                   << "\nhalf_length = " << format_double(params.half_length)
                   << "\nn_points = " << params.n_points
                   << "\ntau = " << format_double(params.tau)
                   << "\nfinal_time = " << format_double(params.final_time)
                   << "\nlambda = " << format_double(params.lambda)
                   << "\nband_modes = " << params.band_modes
                   << "\nmass_radius = " << format_double(params.mass_radius)
                   << "\nseed = " << params.seed
                   << "\nzero_potential = " << (params.zero_potential ? 1 : 0)
                   << "\nsnapshot_times = ";
                for (std::size_t i = 0; i < params.snapshot_times.size(); ++i)
                    os << (i ? "," : "") << format_double(params.snapshot_times[i]);
                os << "\n";
            }
            if (sim_common.dry_run) {
                std::cout << "dry run: configuration valid\n";
                return 0;
            }
            LocalizationResult res = simulate_localization(params);
            write_snapshots_csv(
                res, (fs::path(sim_common.out_dir) / "snapshots.csv").string());
            write_mass_csv(res,
                           (fs::path(sim_common.out_dir) / "mass.csv").string());
            double min_frac = 1.0;
            for (const auto& [t, f] : res.mass_fraction)
                min_frac = std::min(min_frac, f);
            std::cout << "mass fraction within |x| <= "
                      << format_double(res.mass_radius) << ": minimum "
                      << format_double(min_frac) << " over [0, "
                      << format_double(params.final_time) << "]\n";
            return 0;
        }

        if (*pot_cmd) {
            fs::create_directories(pot_common.out_dir);
            const fs::path out_csv = fs::path(pot_common.out_dir) / "potential.csv";
            if (!pot_import.empty()) {
                DisorderPotential pot = read_potential_csv(pot_import);
                write_potential_csv(pot, out_csv.string());
                std::cout << "imported " << pot.xi.size() << " samples on (-"
                          << format_double(pot.xi.grid.half_length()) << ", "
                          << format_double(pot.xi.grid.half_length()) << ") -> "
                          << out_csv.string() << "\n";
                return 0;
            }
            TorusGrid grid(pot_half_length, pot_n);
            SampleRng rng = SampleRng::for_sample(pot_common.seed, 0);
            PotentialParams params;
            params.kind = parse_potential_kind(pot_kind);
            params.theta = pot_theta;
            params.normalize = !pot_no_normalize;
            params.band_modes = pot_band;
            DisorderPotential pot = make_potential(grid, params, rng);
            write_potential_csv(pot, out_csv.string());
            std::cout << "wrote " << pot.xi.size() << " samples -> "
                      << out_csv.string() << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
