#pragma once

#include "dnls/initial_data.hpp"
#include "dnls/integrators.hpp"
#include "dnls/lattice.hpp"
#include "dnls/potentials.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace dnls {

struct PotentialParams {
    PotentialKind kind = PotentialKind::FourierUniform;
    double theta = 2.0;
    bool normalize = true;
    int band_modes = 0; // LocalizationBand: N0; 0 selects N/64
};

DisorderPotential make_potential(const TorusGrid& grid, const PotentialParams& p,
                                 SampleRng& rng);

struct ContinuousProblem {
    double half_length = 3.14159265358979323846;
    int n_points = 1 << 10;
    InitialData u0 = InitialData::Ex1Smooth;
    PotentialParams potential;
    double lambda = 1.0;
};

struct LatticeProblem {
    int n_half = 128;
    double hopping = 1.0;
    double lambda = 1.0;
    CoeffDist disorder = CoeffDist::UniformSym;
};

struct ReferenceProtocol {
    Scheme scheme = Scheme::Strang;
    double tau = 1e-5;
    int n_points = 0; // 0: reference shares the run grid (temporal sweeps)
};

enum class SweepKind { Temporal, Spatial };

/// Ensemble convergence experiment. The same potential sample (same
/// sub-seed) is reused across every sweep value and scheme so the error
/// curves are comparable.
struct ExperimentSpec {
    std::variant<ContinuousProblem, LatticeProblem> problem;
    SweepKind sweep = SweepKind::Temporal;
    std::vector<double> taus;    // temporal sweep values
    std::vector<int> grid_sizes; // spatial sweep values
    double fixed_tau = 1e-4;     // time step used for spatial sweeps
    double final_time = 0.5;
    int n_samples = 20;
    std::uint64_t master_seed = 1234;
    ReferenceProtocol reference;
    std::vector<Scheme> schemes = {Scheme::LRI, Scheme::Strang, Scheme::FD};
    int threads = 0; // 0: hardware concurrency
    std::string cache_dir;
};

/// Checks the spec invariants (integer step counts, reference finer than
/// every tested resolution, ...); throws ConfigError on violation.
void validate(const ExperimentSpec& spec);

/// tau values T/round(T/target): nearest divisors of T to the targets.
std::vector<double> divisor_taus(double final_time, std::span<const double> targets);

std::string canonical_string(const ExperimentSpec& spec);

struct SweepPoint {
    double sweep_value; // tau, or mesh h for spatial sweeps
    double mean_error;
    double std_error;
    int n_ok;
    int n_failed;
};

struct SchemeCurve {
    Scheme scheme;
    std::vector<SweepPoint> points;
    double fitted_order; // NaN when fewer than 3 sweep points
};

struct ConvergenceReport {
    std::vector<SchemeCurve> curves;
    SweepKind sweep;
    int n_samples = 0;
    int total_failures = 0;
    std::uint64_t master_seed = 0;
    std::string spec_hash;
    double wall_seconds = 0.0;
};

/// ||u_num - u_ref|| / ||u_ref|| in the discrete L2 norm. u_ref may live on
/// a finer grid whose size is a multiple of u_num's; it is then restricted
/// to the shared nodes first.
double relative_l2_error(const ComplexField& u_num, const ComplexField& u_ref);

/// Node-subset restriction fine -> coarse (grids share x_j = -L + j h).
ComplexField restrict_to(const ComplexField& fine, const TorusGrid& coarse);

/// Reference solution of ensemble member `sample_index` under the spec's
/// reference protocol. Deterministic in (spec, sample); cached on disk when
/// spec.cache_dir is set (content-hash key, atomic writes).
ComplexField reference_solution(const ExperimentSpec& spec, int sample_index);

ConvergenceReport run_convergence(const ExperimentSpec& spec);

/// Least-squares slope of log(error) against log(step) for (step, error)
/// pairs; steps and errors must be positive, and at least two points.
double fit_order(std::span<const std::pair<double, double>> points);

struct DecaySpec {
    ContinuousProblem problem;
    double tau = 5e-4;
    std::vector<double> times = {0.5}; // multiples of tau; ascending
    int n_samples = 10;
    std::uint64_t master_seed = 1234;
    Scheme scheme = Scheme::LRI;
    int threads = 0;
};

struct DecayCurves {
    std::vector<double> times;
    double weight = 4.0;
    // values[t][l-1] = mean over samples of |u_hat_l| * l^weight, 0 < l < N/2
    std::vector<std::vector<double>> values;
};

/// |u_hat_l| * l^weight for 0 < l < N/2 of a single field.
std::vector<double> weighted_mode_curve(const ComplexField& u, double weight);

/// Ensemble mean of the weighted Fourier-mode moduli at the requested times;
/// a flat profile in l indicates H^weight regularity of the solution.
DecayCurves fourier_decay_diagnostic(const DecaySpec& spec, double weight);

struct LocalizationParams {
    double half_length = 256.0 * 3.14159265358979323846;
    int n_points = 1 << 15;
    double tau = 2.5e-3;
    double final_time = 20.0;
    double lambda = 0.0;
    int band_modes = 0;            // 0: N/64
    double mass_radius = 0.0;      // 0: half_length / 2
    double mass_interval = 1.0;    // cadence of the mass-fraction series
    std::vector<double> snapshot_times = {10.0, 20.0};
    std::uint64_t seed = 1234;
    Scheme scheme = Scheme::LRI;
    bool zero_potential = false;   // diagnostic switch: free dispersion run
};

struct LocalizationResult {
    std::vector<double> snapshot_times;
    std::vector<ComplexField> snapshots;
    std::vector<std::pair<double, double>> mass_fraction; // (t, fraction)
    double mass_radius = 0.0;
};

/// Evolves a localized Gaussian in one banded-disorder sample, recording
/// |u| snapshots and the fraction of L2 mass inside |x| <= mass_radius.
LocalizationResult simulate_localization(const LocalizationParams& params);

} // namespace dnls
