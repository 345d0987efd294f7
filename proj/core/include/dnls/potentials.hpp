#pragma once

#include "dnls/field.hpp"
#include "dnls/rng.hpp"

#include <iosfwd>
#include <string>

namespace dnls {

enum class PotentialKind {
    FourierUniform,   // i.i.d. Fourier coefficients, uniform on [-1,1]
    FourierNormal,    // i.i.d. Fourier coefficients, standard normal
    PointwiseUniform, // i.i.d. node values, uniform on [-1,1]
    LocalizationBand, // band-limited potential for the localization runs
    Imported,         // read from CSV
};

/// Real random potential xi sampled on the grid. The samples are stored as a
/// ComplexField whose imaginary parts are round-off residue of the conjugate
/// symmetrization; consumers read the real part.
struct DisorderPotential {
    ComplexField xi;
    PotentialKind kind;
    double theta = 0.0;
    SeedRecord seed;

    double real_at(int j) const { return xi[j].real(); }
};

/// tau-dependent smoothings of xi entering the low-regularity integrator:
/// per mode l != 0,
///   xi1_hat_l = m1(mu_l) xi_hat_l,  m1(mu) = (1 - e^{i tau mu^2}) / mu^2,
///   xi2_hat_l = m2(mu_l) xi_hat_l,  m2(mu) = (1 - e^{i a} + i a e^{i a}) / (tau mu^3),
/// with a = tau mu^2, and zero at l = 0. |m1| <= tau and
/// |m2| <= min(1.5 tau |mu|, 2/|mu|) hold mode-by-mode.
struct RegularizedPotential {
    ComplexField xi1;
    ComplexField xi2;
    cplx xi0_hat;
    double tau;
};

/// Scalar multipliers; series evaluation near tau*mu^2 = 0 keeps the
/// analytic bounds tight in floating point.
cplx regularizer_m1(double tau, double mu);
cplx regularizer_m2(double tau, double mu);

/// Potential built from i.i.d. complex Fourier coefficients damped by
/// |l|^{-theta}, scaled by 1/N, and made real by adding the conjugate field
/// (the Nyquist coefficient is zeroed first so the result is exactly
/// Hermitian). With normalize, rescales to max_j |xi(x_j)| = 2.
DisorderPotential gen_fourier_potential(const TorusGrid& grid, double theta,
                                        CoeffDist dist, SampleRng& rng,
                                        bool normalize);

/// Assembly step of gen_fourier_potential from explicit raw coefficients
/// (length N, FFT-natural order).
DisorderPotential build_fourier_potential(const TorusGrid& grid, double theta,
                                          std::span<const cplx> coeffs,
                                          bool normalize, PotentialKind kind,
                                          const SeedRecord& seed);

/// Assembly step of gen_localization_potential from explicit coefficients
/// for the modes l = -n0/2 .. n0/2-1 (in that order).
DisorderPotential build_localization_potential(const TorusGrid& grid, int n0,
                                               std::span<const cplx> coeffs,
                                               const SeedRecord& seed);

/// xi(x_j) i.i.d. uniform on [-1,1]; exactly N draws in node order.
DisorderPotential gen_pointwise_potential(const TorusGrid& grid, SampleRng& rng);

/// Band potential 13/sqrt(N0) * sum_{|l|<=N0/2} [u + i u'] e^{i mu_l (x+L)} + c.c.
/// with u, u' uniform on [0,1); supported on modes |l| <= N0/2.
DisorderPotential gen_localization_potential(const TorusGrid& grid, int n0,
                                             SampleRng& rng);

RegularizedPotential precompute_regularized(const DisorderPotential& pot, double tau);

// CSV exchange format: header "x,xi", one row per node.
void write_potential_csv(const DisorderPotential& pot, std::ostream& os);
void write_potential_csv(const DisorderPotential& pot, const std::string& path);
DisorderPotential read_potential_csv(std::istream& is);
DisorderPotential read_potential_csv(const std::string& path);

} // namespace dnls
