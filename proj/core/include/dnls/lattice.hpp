#pragma once

#include "dnls/grid.hpp"
#include "dnls/rng.hpp"

#include <vector>

namespace dnls {

/// Finite periodic lattice with 2N sites. Site l = -N..N-1 is stored at
/// array position p = l + N; all neighbor access wraps around, which
/// realizes the periodic identifications of the model.
struct LatticeState {
    std::vector<cplx> amplitudes; // u_l
    std::vector<double> disorder; // xi_l
    double hopping = 1.0;         // J
    double lambda = 1.0;

    int n_sites() const { return static_cast<int>(amplitudes.size()); }
    int n_half() const { return n_sites() / 2; }

    cplx& site(int l) { return amplitudes[static_cast<std::size_t>(l + n_half())]; }
    const cplx& site(int l) const {
        return amplitudes[static_cast<std::size_t>(l + n_half())];
    }
};

LatticeState make_lattice_state(int n_half, double hopping, double lambda,
                                std::vector<double> disorder);

/// i.i.d. on-site disorder, one draw per site in storage order.
std::vector<double> make_lattice_disorder(int n_half, CoeffDist dist, SampleRng& rng);

/// Paper-style localized initial data: u_{-1} = u_{1} = 1/4, u_0 = 1/2.
void set_three_site_data(LatticeState& state);

/// Exact hopping flow: diagonal in the lattice DFT basis with eigenvalue
/// phase exp(2 i t J cos(j pi / N)). Conserves sum_l |u_l|^2 to round-off.
LatticeState lattice_kinetic_flow(LatticeState state, double t);

/// Exact on-site flow: u_l -> exp(-i t (xi_l + lambda |u_l|^2)) u_l.
LatticeState lattice_potential_flow(LatticeState state, double t);

/// Potential half-step, kinetic step, potential half-step.
LatticeState lattice_strang_step(LatticeState state, double tau);

/// Explicit first-order starting step of the semi-implicit scheme.
LatticeState lattice_fd_first_step(LatticeState state, double tau);

/// Leapfrog step with the hopping term averaged over levels n-1 and n+1,
/// solved diagonally in the lattice DFT basis.
LatticeState lattice_fd_step(const LatticeState& state_n,
                             const LatticeState& state_nm1, double tau);

double lattice_l2_norm(const LatticeState& state);
double lattice_linf_norm(const LatticeState& state);
double lattice_relative_linf_error(const LatticeState& num, const LatticeState& ref);

} // namespace dnls
