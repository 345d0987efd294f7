#pragma once

#include "dnls/field.hpp"
#include "dnls/potentials.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

namespace dnls {

enum class Scheme { LRI, Strang, FD };

const char* to_string(Scheme s);

struct IntegratorConfig {
    double tau;
    double lambda = 1.0;
    Scheme scheme = Scheme::LRI;
};

/// Marching state. u_prev carries the second level of the leapfrog scheme
/// (present iff scheme == FD and at least one step was taken); reg carries
/// the tau-matched regularized potential for the LRI scheme.
struct SolverState {
    ComplexField u;
    std::optional<ComplexField> u_prev;
    std::int64_t step_index = 0;
    std::shared_ptr<const RegularizedPotential> reg;
};

/// Exact potential-subflow: w -> exp(-i t (xi + lambda |w|^2)) w, pointwise.
/// Pure phase, so |out_j| = |w_j|.
ComplexField phi_v_flow(const ComplexField& w, const ComplexField& xi, double t,
                        double lambda);

/// Second-order splitting step: potential half-step, full free flow,
/// potential half-step. Conserves the discrete L2 norm to round-off.
ComplexField strang_step(const ComplexField& u, const ComplexField& xi,
                         const IntegratorConfig& cfg);

/// First-order semi-implicit starting step, solved per Fourier mode:
/// u1_hat = (u0_hat - i tau F_hat) / (1 + i tau mu^2), F = xi u0 + lambda |u0|^2 u0.
ComplexField fd_first_step(const ComplexField& u0, const ComplexField& xi,
                           const IntegratorConfig& cfg);

/// Semi-implicit leapfrog step with the Laplacian averaged over levels
/// n-1 and n+1; diagonal solve in Fourier space.
ComplexField fd_step(const ComplexField& u_n, const ComplexField& u_nm1,
                     const ComplexField& xi, const IntegratorConfig& cfg);

// Second-order interaction terms of the low-regularity integrator. The
// tau-weighted zero-mode corrections carry a -i*lambda factor; this constant
// is pinned by the exact mode-sum, constant-field, and Duhamel oracles in
// the test suite (see tests/test_integrators.cpp).
ComplexField j1_term(const ComplexField& v, double tau, double lambda);
ComplexField j2_term(const ComplexField& v, double tau, double lambda);

/// One step of the low-regularity Fourier integrator. Fully explicit;
/// requires reg to have been built for cfg.tau (hard error otherwise).
ComplexField lri_step(const ComplexField& u, const DisorderPotential& pot,
                      const RegularizedPotential& reg, const IntegratorConfig& cfg);

using SnapshotHook = std::function<void(std::int64_t step, const ComplexField& u)>;

/// Initial state for the selected scheme; precomputes the regularized
/// potential for LRI.
SolverState make_state(ComplexField u0, const DisorderPotential& pot,
                       const IntegratorConfig& cfg);

/// Applies the selected scheme n_steps times. snapshot_steps (ascending)
/// selects step indices after which hook(index, u) is invoked.
SolverState evolve(SolverState state, const DisorderPotential& pot,
                   const IntegratorConfig& cfg, std::int64_t n_steps,
                   std::span<const std::int64_t> snapshot_steps = {},
                   const SnapshotHook& hook = {});

} // namespace dnls
