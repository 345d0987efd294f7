#include "dnls/harness.hpp"

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"
#include "dnls/util.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace dnls {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::int64_t steps_for(double final_time, double tau) {
    return std::llround(final_time / tau);
}

bool divides(double final_time, double tau) {
    const double k = std::round(final_time / tau);
    return k >= 1.0 && std::abs(k * tau - final_time) <= 1e-12 * final_time;
}

} // namespace

DisorderPotential make_potential(const TorusGrid& grid, const PotentialParams& p,
                                 SampleRng& rng) {
    switch (p.kind) {
    case PotentialKind::FourierUniform:
        return gen_fourier_potential(grid, p.theta, CoeffDist::UniformSym, rng,
                                     p.normalize);
    case PotentialKind::FourierNormal:
        return gen_fourier_potential(grid, p.theta, CoeffDist::Normal, rng,
                                     p.normalize);
    case PotentialKind::PointwiseUniform:
        return gen_pointwise_potential(grid, rng);
    case PotentialKind::LocalizationBand: {
        const int n0 = p.band_modes > 0 ? p.band_modes : grid.n_points() / 64;
        return gen_localization_potential(grid, n0, rng);
    }
    case PotentialKind::Imported:
        throw ConfigError("imported potentials cannot be sampled");
    }
    throw ConfigError("unknown potential kind");
}

std::vector<double> divisor_taus(double final_time, std::span<const double> targets) {
    std::vector<double> out;
    out.reserve(targets.size());
    for (double t : targets) {
        if (!(t > 0.0) || !(t <= final_time))
            throw ConfigError("tau targets must lie in (0, T]");
        out.push_back(final_time / std::round(final_time / t));
    }
    return out;
}

void validate(const ExperimentSpec& spec) {
    if (!(spec.final_time > 0.0))
        throw ConfigError("final time must be positive");
    if (spec.n_samples < 1)
        throw ConfigError("at least one sample is required");
    if (spec.schemes.empty())
        throw ConfigError("no schemes under test");
    if (!(spec.reference.tau > 0.0) || !divides(spec.final_time, spec.reference.tau))
        throw ConfigError("reference tau must divide the final time");

    const bool lattice = std::holds_alternative<LatticeProblem>(spec.problem);
    if (lattice) {
        if (spec.sweep != SweepKind::Temporal)
            throw ConfigError("lattice experiments sweep tau only");
        if (spec.reference.scheme == Scheme::LRI ||
            std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::LRI) !=
                spec.schemes.end())
            throw ConfigError("the LRI scheme is not defined on the lattice");
    }

    if (spec.sweep == SweepKind::Temporal) {
        if (spec.taus.empty())
            throw ConfigError("temporal sweep requires tau values");
        double tau_min = spec.taus.front();
        for (double tau : spec.taus) {
            if (!(tau > 0.0) || !divides(spec.final_time, tau))
                throw ConfigError("every swept tau must divide the final time");
            tau_min = std::min(tau_min, tau);
        }
        if (spec.reference.tau > tau_min / 10.0 * (1.0 + 1e-12))
            throw ConfigError("reference tau must be at most a tenth of the "
                              "finest swept tau");
        if (!lattice && spec.reference.n_points != 0) {
            const int n = std::get<ContinuousProblem>(spec.problem).n_points;
            if (spec.reference.n_points < n || spec.reference.n_points % n != 0)
                throw ConfigError("reference grid must be a multiple of the run grid");
        }
    } else {
        if (lattice)
            throw ConfigError("lattice experiments sweep tau only");
        if (spec.grid_sizes.empty())
            throw ConfigError("spatial sweep requires grid sizes");
        if (!(spec.fixed_tau > 0.0) || !divides(spec.final_time, spec.fixed_tau))
            throw ConfigError("the fixed tau must divide the final time");
        if (spec.reference.tau > spec.fixed_tau / 10.0 * (1.0 + 1e-12))
            throw ConfigError("reference tau must be at most a tenth of the run tau");
        int n_max = 0;
        for (int n : spec.grid_sizes)
            n_max = std::max(n_max, n);
        if (spec.reference.n_points < n_max)
            throw ConfigError("reference grid must be at least the largest swept grid");
        for (int n : spec.grid_sizes)
            if (spec.reference.n_points % n != 0)
                throw ConfigError("reference grid must be a multiple of every "
                                  "swept grid");
    }
}

std::string canonical_string(const ExperimentSpec& spec) {
    std::ostringstream os;
    if (const auto* c = std::get_if<ContinuousProblem>(&spec.problem)) {
        os << "continuous;L=" << format_double(c->half_length)
           << ";N=" << c->n_points << ";u0=" << to_string(c->u0)
           << ";pot=" << static_cast<int>(c->potential.kind)
           << ";theta=" << format_double(c->potential.theta)
           << ";norm=" << c->potential.normalize
           << ";band=" << c->potential.band_modes
           << ";lambda=" << format_double(c->lambda);
    } else {
        const auto& l = std::get<LatticeProblem>(spec.problem);
        os << "lattice;N=" << l.n_half << ";J=" << format_double(l.hopping)
           << ";lambda=" << format_double(l.lambda)
           << ";dist=" << static_cast<int>(l.disorder);
    }
    os << ";sweep=" << (spec.sweep == SweepKind::Temporal ? "t" : "x");
    os << ";taus=";
    for (double t : spec.taus)
        os << format_double(t) << ",";
    os << ";ns=";
    for (int n : spec.grid_sizes)
        os << n << ",";
    os << ";tau0=" << format_double(spec.fixed_tau)
       << ";T=" << format_double(spec.final_time)
       << ";samples=" << spec.n_samples << ";seed=" << spec.master_seed
       << ";ref=" << to_string(spec.reference.scheme) << ","
       << format_double(spec.reference.tau) << "," << spec.reference.n_points
       << ";schemes=";
    for (Scheme s : spec.schemes)
        os << to_string(s) << ",";
    return os.str();
}

ComplexField restrict_to(const ComplexField& fine, const TorusGrid& coarse) {
    const TorusGrid& fg = fine.grid;
    if (fg.half_length() != coarse.half_length())
        throw ConfigError("restriction requires matching torus lengths");
    if (fg.n_points() % coarse.n_points() != 0)
        throw ConfigError("fine grid is not a multiple of the coarse grid");
    const int stride = fg.n_points() / coarse.n_points();
    ComplexField out(coarse);
    for (int j = 0; j < coarse.n_points(); ++j)
        out[j] = fine[j * stride];
    return out;
}

double relative_l2_error(const ComplexField& u_num, const ComplexField& u_ref) {
    if (u_num.grid == u_ref.grid) {
        const double denom = l2_norm(u_ref);
        if (denom == 0.0)
            throw NumericalError("reference solution is identically zero");
        return l2_distance(u_num, u_ref) / denom;
    }
    if (u_ref.grid.n_points() > u_num.grid.n_points())
        return relative_l2_error(u_num, restrict_to(u_ref, u_num.grid));
    throw ConfigError("numerical solution is finer than the reference");
}

namespace {

struct ContinuousSample {
    DisorderPotential pot;
    ComplexField u0;
};

// Draw order is fixed (potential first, then initial data) and never
// depends on the sweep position, so ensembles are reproducible and the
// same sample is shared by every sweep value and scheme.
ContinuousSample make_continuous_sample(const ContinuousProblem& prob,
                                        const TorusGrid& grid,
                                        std::uint64_t master_seed, int index) {
    SampleRng rng = SampleRng::for_sample(master_seed, static_cast<std::uint64_t>(index));
    DisorderPotential pot = make_potential(grid, prob.potential, rng);
    ComplexField u0 = make_initial_data(grid, prob.u0, &rng);
    return ContinuousSample{std::move(pot), std::move(u0)};
}

TorusGrid generation_grid(const ExperimentSpec& spec) {
    const auto& prob = std::get<ContinuousProblem>(spec.problem);
    const int n_ref =
        spec.reference.n_points > 0 ? spec.reference.n_points : prob.n_points;
    return TorusGrid(prob.half_length, n_ref);
}

ComplexField march_continuous(const ContinuousSample& sample, Scheme scheme,
                              double lambda, double tau, std::int64_t n_steps) {
    IntegratorConfig cfg{tau, lambda, scheme};
    SolverState state = make_state(sample.u0, sample.pot, cfg);
    state = evolve(std::move(state), sample.pot, cfg, n_steps);
    return std::move(state.u);
}

LatticeState march_lattice(LatticeState state, Scheme scheme, double tau,
                           std::int64_t n_steps) {
    if (scheme == Scheme::Strang) {
        for (std::int64_t k = 0; k < n_steps; ++k)
            state = lattice_strang_step(std::move(state), tau);
        return state;
    }
    if (scheme != Scheme::FD)
        throw ConfigError("unsupported lattice scheme");
    if (n_steps == 0)
        return state;
    LatticeState prev = state;
    state = lattice_fd_first_step(std::move(state), tau);
    for (std::int64_t k = 1; k < n_steps; ++k) {
        LatticeState next = lattice_fd_step(state, prev, tau);
        prev = std::move(state);
        state = std::move(next);
    }
    return state;
}

LatticeState make_lattice_sample(const LatticeProblem& prob,
                                 std::uint64_t master_seed, int index) {
    SampleRng rng = SampleRng::for_sample(master_seed, static_cast<std::uint64_t>(index));
    LatticeState state = make_lattice_state(
        prob.n_half, prob.hopping, prob.lambda,
        make_lattice_disorder(prob.n_half, prob.disorder, rng));
    set_three_site_data(state);
    return state;
}

std::string reference_cache_key(const ExperimentSpec& spec, int sample_index) {
    std::ostringstream os;
    if (const auto* c = std::get_if<ContinuousProblem>(&spec.problem)) {
        os << "refv1;L=" << format_double(c->half_length)
           << ";u0=" << to_string(c->u0) << ";pot=" << static_cast<int>(c->potential.kind)
           << ";theta=" << format_double(c->potential.theta)
           << ";norm=" << c->potential.normalize << ";band=" << c->potential.band_modes
           << ";lambda=" << format_double(c->lambda);
    }
    os << ";T=" << format_double(spec.final_time)
       << ";ref=" << to_string(spec.reference.scheme) << ","
       << format_double(spec.reference.tau) << ";Nref="
       << generation_grid(spec).n_points() << ";seed=" << spec.master_seed
       << ";sample=" << sample_index;
    return os.str();
}

bool load_cached_field(const std::string& path, const TorusGrid& grid,
                       ComplexField& out) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return false;
    char magic[8] = {};
    is.read(magic, 8);
    std::int64_t n = 0;
    double half_length = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&half_length), sizeof half_length);
    if (!is || std::string_view(magic, 8) != "DNLSREF1" || n != grid.n_points() ||
        half_length != grid.half_length())
        return false;
    std::vector<cplx> values(static_cast<std::size_t>(n));
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(sizeof(cplx) * values.size()));
    if (!is)
        return false;
    out = ComplexField(grid, std::move(values));
    return true;
}

// write-temp-then-rename keeps concurrent readers consistent
void store_cached_field(const std::string& path, const ComplexField& f) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            throw IoError("cannot open cache file '" + tmp + "'");
        os.write("DNLSREF1", 8);
        const std::int64_t n = f.grid.n_points();
        const double half_length = f.grid.half_length();
        os.write(reinterpret_cast<const char*>(&n), sizeof n);
        os.write(reinterpret_cast<const char*>(&half_length), sizeof half_length);
        os.write(reinterpret_cast<const char*>(f.values.data()),
                 static_cast<std::streamsize>(sizeof(cplx) * f.values.size()));
        if (!os.good())
            throw IoError("failed writing cache file '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot finalize cache file '" + path + "': " + ec.message());
}

} // namespace

ComplexField reference_solution(const ExperimentSpec& spec, int sample_index) {
    const auto& prob = std::get<ContinuousProblem>(spec.problem);
    const TorusGrid grid = generation_grid(spec);

    std::string cache_path;
    if (!spec.cache_dir.empty()) {
        std::filesystem::create_directories(spec.cache_dir);
        cache_path = spec.cache_dir + "/dnls-ref-" +
                     to_hex(fnv1a64(reference_cache_key(spec, sample_index))) + ".bin";
        ComplexField cached{grid};
        if (load_cached_field(cache_path, grid, cached))
            return cached;
    }

    ContinuousSample sample =
        make_continuous_sample(prob, grid, spec.master_seed, sample_index);
    ComplexField ref =
        march_continuous(sample, spec.reference.scheme, prob.lambda,
                         spec.reference.tau, steps_for(spec.final_time, spec.reference.tau));
    if (!cache_path.empty())
        store_cached_field(cache_path, ref);
    return ref;
}

namespace {

void parallel_for_samples(int n, int threads, const std::function<void(int)>& fn) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1)
        hw = 1;
    int t = threads > 0 ? threads : hw;
    t = std::min(t, n);
    if (t <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (int k = 0; k < t; ++k)
        pool.emplace_back(body);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

SweepPoint aggregate_point(double sweep_value, std::span<const double> errors) {
    std::vector<double> ok;
    ok.reserve(errors.size());
    for (double e : errors)
        if (!std::isnan(e))
            ok.push_back(e);
    SweepPoint pt{sweep_value, nan_value, 0.0, static_cast<int>(ok.size()),
                  static_cast<int>(errors.size() - ok.size())};
    if (ok.empty())
        return pt;
    pt.mean_error = pairwise_sum(ok) / static_cast<double>(ok.size());
    if (ok.size() > 1) {
        std::vector<double> sq(ok.size());
        for (std::size_t i = 0; i < ok.size(); ++i)
            sq[i] = (ok[i] - pt.mean_error) * (ok[i] - pt.mean_error);
        pt.std_error =
            std::sqrt(pairwise_sum(sq) / static_cast<double>(ok.size() - 1));
    }
    return pt;
}

} // namespace

double fit_order(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2)
        throw ConfigError("order fit needs at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [step, err] : points) {
        if (!(step > 0.0) || !(err > 0.0))
            throw NumericalError("order fit requires positive steps and errors");
        const double x = std::log(step);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw NumericalError("order fit is degenerate (all steps equal)");
    return (n * sxy - sx * sy) / denom;
}

ConvergenceReport run_convergence(const ExperimentSpec& spec) {
    validate(spec);
    const auto t_start = std::chrono::steady_clock::now();

    const bool lattice = std::holds_alternative<LatticeProblem>(spec.problem);
    const int n_schemes = static_cast<int>(spec.schemes.size());

    std::vector<double> sweep_values;
    if (spec.sweep == SweepKind::Temporal) {
        sweep_values = spec.taus;
    } else {
        const auto& prob = std::get<ContinuousProblem>(spec.problem);
        for (int n : spec.grid_sizes)
            sweep_values.push_back(2.0 * prob.half_length / n);
    }
    const int n_points = static_cast<int>(sweep_values.size());

    // errors[sample][scheme][point]
    std::vector<std::vector<std::vector<double>>> errors(
        static_cast<std::size_t>(spec.n_samples),
        std::vector<std::vector<double>>(
            static_cast<std::size_t>(n_schemes),
            std::vector<double>(static_cast<std::size_t>(n_points), nan_value)));

    auto run_sample = [&](int i) {
        auto& slot = errors[static_cast<std::size_t>(i)];
        if (lattice) {
            const auto& prob = std::get<LatticeProblem>(spec.problem);
            LatticeState init = make_lattice_sample(prob, spec.master_seed, i);
            LatticeState ref =
                march_lattice(init, spec.reference.scheme, spec.reference.tau,
                              steps_for(spec.final_time, spec.reference.tau));
            for (int s = 0; s < n_schemes; ++s)
                for (int p = 0; p < n_points; ++p) {
                    const double tau = spec.taus[static_cast<std::size_t>(p)];
                    try {
                        LatticeState num = march_lattice(
                            init, spec.schemes[static_cast<std::size_t>(s)], tau,
                            steps_for(spec.final_time, tau));
                        slot[s][p] = lattice_relative_linf_error(num, ref);
                    } catch (const NumericalError&) {
                        // recorded as a failed sample point
                    }
                }
            return;
        }

        const auto& prob = std::get<ContinuousProblem>(spec.problem);
        const TorusGrid gen_grid = generation_grid(spec);
        ContinuousSample sample =
            make_continuous_sample(prob, gen_grid, spec.master_seed, i);
        ComplexField ref{gen_grid};
        try {
            ref = reference_solution(spec, i);
        } catch (const NumericalError&) {
            return; // whole sample failed; all points stay NaN
        }

        if (spec.sweep == SweepKind::Temporal) {
            TorusGrid run_grid(prob.half_length, prob.n_points);
            ContinuousSample run_sample_data =
                gen_grid == run_grid
                    ? std::move(sample)
                    : ContinuousSample{
                          DisorderPotential{restrict_to(sample.pot.xi, run_grid),
                                            sample.pot.kind, sample.pot.theta,
                                            sample.pot.seed},
                          restrict_to(sample.u0, run_grid)};
            for (int s = 0; s < n_schemes; ++s)
                for (int p = 0; p < n_points; ++p) {
                    const double tau = spec.taus[static_cast<std::size_t>(p)];
                    try {
                        ComplexField num = march_continuous(
                            run_sample_data, spec.schemes[static_cast<std::size_t>(s)],
                            prob.lambda, tau, steps_for(spec.final_time, tau));
                        slot[s][p] = relative_l2_error(num, ref);
                    } catch (const NumericalError&) {
                    }
                }
        } else {
            for (int p = 0; p < n_points; ++p) {
                TorusGrid coarse(prob.half_length,
                                 spec.grid_sizes[static_cast<std::size_t>(p)]);
                ContinuousSample coarse_sample{
                    DisorderPotential{restrict_to(sample.pot.xi, coarse),
                                      sample.pot.kind, sample.pot.theta,
                                      sample.pot.seed},
                    restrict_to(sample.u0, coarse)};
                ComplexField ref_coarse = restrict_to(ref, coarse);
                for (int s = 0; s < n_schemes; ++s) {
                    try {
                        ComplexField num = march_continuous(
                            coarse_sample, spec.schemes[static_cast<std::size_t>(s)],
                            prob.lambda, spec.fixed_tau,
                            steps_for(spec.final_time, spec.fixed_tau));
                        slot[s][p] = relative_l2_error(num, ref_coarse);
                    } catch (const NumericalError&) {
                    }
                }
            }
        }
    };

    parallel_for_samples(spec.n_samples, spec.threads, run_sample);

    ConvergenceReport report;
    report.sweep = spec.sweep;
    report.n_samples = spec.n_samples;
    report.master_seed = spec.master_seed;
    report.spec_hash = to_hex(fnv1a64(canonical_string(spec)));
    for (int s = 0; s < n_schemes; ++s) {
        SchemeCurve curve;
        curve.scheme = spec.schemes[static_cast<std::size_t>(s)];
        curve.fitted_order = nan_value;
        for (int p = 0; p < n_points; ++p) {
            std::vector<double> errs(static_cast<std::size_t>(spec.n_samples));
            for (int i = 0; i < spec.n_samples; ++i)
                errs[static_cast<std::size_t>(i)] = errors[i][s][p];
            SweepPoint pt = aggregate_point(sweep_values[static_cast<std::size_t>(p)], errs);
            report.total_failures += pt.n_failed;
            curve.points.push_back(pt);
        }
        std::vector<std::pair<double, double>> fit_points;
        for (const SweepPoint& pt : curve.points)
            if (pt.n_ok > 0 && pt.mean_error > 0.0)
                fit_points.emplace_back(pt.sweep_value, pt.mean_error);
        if (fit_points.size() >= 3)
            curve.fitted_order = fit_order(fit_points);
        report.curves.push_back(std::move(curve));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return report;
}

std::vector<double> weighted_mode_curve(const ComplexField& u, double weight) {
    const int n = u.grid.n_points();
    Spectrum s = to_spectrum(u);
    std::vector<double> out(static_cast<std::size_t>(n / 2 - 1));
    for (int l = 1; l < n / 2; ++l)
        out[static_cast<std::size_t>(l - 1)] =
            std::abs(s.at_mode(l)) * std::pow(static_cast<double>(l), weight);
    return out;
}

DecayCurves fourier_decay_diagnostic(const DecaySpec& spec, double weight) {
    if (spec.times.empty())
        throw ConfigError("decay diagnostic needs at least one time");
    if (!(spec.tau > 0.0))
        throw ConfigError("decay diagnostic needs tau > 0");
    for (double t : spec.times)
        if (!divides(t, spec.tau))
            throw ConfigError("every diagnostic time must be a multiple of tau");
    if (!std::is_sorted(spec.times.begin(), spec.times.end()))
        throw ConfigError("diagnostic times must be ascending");

    const auto& prob = spec.problem;
    const TorusGrid grid(prob.half_length, prob.n_points);
    const int n_modes = prob.n_points / 2 - 1; // 0 < l < N/2
    const int n_times = static_cast<int>(spec.times.size());

    std::vector<std::int64_t> snap_steps;
    for (double t : spec.times)
        snap_steps.push_back(steps_for(t, spec.tau));

    // per-sample accumulation, reduced pairwise afterwards
    std::vector<std::vector<std::vector<double>>> per_sample(
        static_cast<std::size_t>(spec.n_samples));

    auto run_sample = [&](int i) {
        ContinuousSample sample =
            make_continuous_sample(prob, grid, spec.master_seed, i);
        IntegratorConfig cfg{spec.tau, prob.lambda, spec.scheme};
        SolverState state = make_state(sample.u0, sample.pot, cfg);

        auto& mine = per_sample[static_cast<std::size_t>(i)];
        mine.assign(static_cast<std::size_t>(n_times),
                    std::vector<double>(static_cast<std::size_t>(n_modes), 0.0));
        int slot = 0;
        SnapshotHook hook = [&](std::int64_t step, const ComplexField& u) {
            Spectrum s = to_spectrum(u);
            while (slot < n_times && snap_steps[static_cast<std::size_t>(slot)] == step) {
                for (int l = 1; l < prob.n_points / 2; ++l)
                    mine[static_cast<std::size_t>(slot)][static_cast<std::size_t>(l - 1)] =
                        std::abs(s.at_mode(l));
                ++slot;
            }
        };
        evolve(std::move(state), sample.pot, cfg, snap_steps.back(), snap_steps, hook);
    };
    parallel_for_samples(spec.n_samples, spec.threads, run_sample);

    DecayCurves out;
    out.times = spec.times;
    out.weight = weight;
    out.values.assign(static_cast<std::size_t>(n_times),
                      std::vector<double>(static_cast<std::size_t>(n_modes), 0.0));
    std::vector<double> buf(static_cast<std::size_t>(spec.n_samples));
    for (int t = 0; t < n_times; ++t)
        for (int m = 0; m < n_modes; ++m) {
            for (int i = 0; i < spec.n_samples; ++i)
                buf[static_cast<std::size_t>(i)] = per_sample[i][t][m];
            const double mean =
                pairwise_sum(buf) / static_cast<double>(spec.n_samples);
            out.values[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] =
                mean * std::pow(static_cast<double>(m + 1), weight);
        }
    return out;
}

LocalizationResult simulate_localization(const LocalizationParams& params) {
    const TorusGrid grid(params.half_length, params.n_points);
    const double radius =
        params.mass_radius > 0.0 ? params.mass_radius : params.half_length / 2.0;

    SampleRng rng = SampleRng::for_sample(params.seed, 0);
    const int n0 = params.band_modes > 0 ? params.band_modes : params.n_points / 64;
    DisorderPotential pot = gen_localization_potential(grid, n0, rng);
    if (params.zero_potential)
        for (cplx& v : pot.xi.values)
            v = 0.0;
    ComplexField u0 = make_initial_data(grid, InitialData::Gaussian);

    auto mass_fraction = [&](const ComplexField& u) {
        double inside = 0.0, total = 0.0;
        for (int j = 0; j < u.size(); ++j) {
            const double m = std::norm(u[j]);
            total += m;
            if (std::abs(grid.node(j)) <= radius)
                inside += m;
        }
        return total > 0.0 ? inside / total : 0.0;
    };

    const std::int64_t total_steps = steps_for(params.final_time, params.tau);

    // merge the snapshot times and the mass cadence into one step schedule
    std::vector<std::int64_t> mass_steps;
    if (params.mass_interval > 0.0)
        for (double t = params.mass_interval; t <= params.final_time + 1e-12;
             t += params.mass_interval)
            mass_steps.push_back(steps_for(t, params.tau));
    mass_steps.push_back(total_steps);
    std::sort(mass_steps.begin(), mass_steps.end());
    mass_steps.erase(std::unique(mass_steps.begin(), mass_steps.end()),
                     mass_steps.end());
    std::vector<std::int64_t> snap_steps;
    for (double t : params.snapshot_times) {
        if (t > params.final_time + 1e-12)
            throw ConfigError("snapshot time beyond the final time");
        snap_steps.push_back(steps_for(t, params.tau));
    }
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()),
                     snap_steps.end());
    std::vector<std::int64_t> all_steps;
    all_steps.reserve(mass_steps.size() + snap_steps.size());
    all_steps.insert(all_steps.end(), mass_steps.begin(), mass_steps.end());
    all_steps.insert(all_steps.end(), snap_steps.begin(), snap_steps.end());
    std::sort(all_steps.begin(), all_steps.end());
    all_steps.erase(std::unique(all_steps.begin(), all_steps.end()), all_steps.end());

    LocalizationResult result;
    result.mass_radius = radius;
    result.mass_fraction.emplace_back(0.0, mass_fraction(u0));

    IntegratorConfig cfg{params.tau, params.lambda, params.scheme};
    SolverState state = make_state(std::move(u0), pot, cfg);
    std::size_t next_snap = 0;
    SnapshotHook hook = [&](std::int64_t step, const ComplexField& u) {
        const double t = static_cast<double>(step) * params.tau;
        if (std::binary_search(mass_steps.begin(), mass_steps.end(), step))
            result.mass_fraction.emplace_back(t, mass_fraction(u));
        if (next_snap < snap_steps.size() &&
            snap_steps[next_snap] == step) {
            result.snapshot_times.push_back(t);
            result.snapshots.push_back(u);
            ++next_snap;
        }
    };
    evolve(std::move(state), pot, cfg, total_steps, all_steps, hook);
    return result;
}

} // namespace dnls
