#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dnls/errors.hpp"
#include "dnls/harness.hpp"
#include "dnls/integrators.hpp"
#include "dnls/spectral.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace dnls;

namespace {

const double pi = std::numbers::pi;

DisorderPotential wrap_potential(ComplexField xi) {
    return DisorderPotential{std::move(xi), PotentialKind::Imported, 0.0, {}};
}

DisorderPotential zero_potential(const TorusGrid& grid) {
    return wrap_potential(ComplexField(grid));
}

ComplexField constant_field(const TorusGrid& grid, cplx c) {
    ComplexField f(grid);
    for (auto& v : f.values)
        v = c;
    return f;
}

} // namespace

TEST_CASE("potential flow: constant phase, identity, modulus") {
    TorusGrid grid(pi, 64);
    SUBCASE("constant potential acts as a global phase on a constant state") {
        ComplexField w = constant_field(grid, 1.0);
        ComplexField xi = constant_field(grid, 0.9);
        ComplexField out = phi_v_flow(w, xi, 0.31, 0.0);
        const cplx want = std::polar(1.0, -0.31 * 0.9);
        for (int j = 0; j < 64; ++j)
            CHECK(std::abs(out[j] - want) < 1e-15);
    }
    SUBCASE("t = 0 is the identity") {
        SampleRng rng(2);
        ComplexField w = oracle::random_field(grid, rng);
        ComplexField xi = oracle::random_field(grid, rng); // imag part ignored
        ComplexField out = phi_v_flow(w, xi, 0.0, 1.0);
        CHECK(oracle::max_abs_diff(out, w) == 0.0);
    }
    SUBCASE("the flow preserves every modulus") {
        SampleRng rng(3);
        ComplexField w = oracle::random_field(grid, rng);
        ComplexField xi(grid);
        for (int j = 0; j < 64; ++j)
            xi[j] = rng.uniform_sym();
        ComplexField out = phi_v_flow(w, xi, 2.7, -0.8);
        for (int j = 0; j < 64; ++j)
            CHECK(std::abs(std::abs(out[j]) - std::abs(w[j])) <=
                  4e-16 * std::abs(w[j]));
    }
    SUBCASE("gauge property: shifting xi by a constant multiplies by a phase") {
        SampleRng rng(4);
        ComplexField w = oracle::random_field(grid, rng);
        ComplexField xi(grid);
        for (int j = 0; j < 64; ++j)
            xi[j] = rng.uniform_sym();
        const double c = 1.37, t = 0.52, lambda = 0.6;
        ComplexField shifted = xi;
        for (auto& v : shifted.values)
            v += c;
        ComplexField a = phi_v_flow(w, shifted, t, lambda);
        ComplexField b = phi_v_flow(w, xi, t, lambda);
        const cplx phase = std::polar(1.0, -t * c);
        for (int j = 0; j < 64; ++j)
            CHECK(std::abs(a[j] - phase * b[j]) < 4e-15 * (std::abs(w[j]) + 1.0));
    }
}

TEST_CASE("Strang step: exactly solvable limits") {
    TorusGrid grid(pi, 128);
    SampleRng rng(5);
    ComplexField u = oracle::random_field(grid, rng);

    SUBCASE("lambda = 0, constant potential commutes with the Laplacian") {
        const double c = 0.73, tau = 0.21;
        IntegratorConfig cfg{tau, 0.0, Scheme::Strang};
        ComplexField out = strang_step(u, constant_field(grid, c), cfg);
        ComplexField want = apply_free_flow(u, tau);
        const cplx phase = std::polar(1.0, -tau * c);
        for (auto& v : want.values)
            v *= phase;
        CHECK(oracle::max_abs_diff(out, want) < 1e-14 * linf_norm(u));
    }
    SUBCASE("free case reduces to the free flow") {
        IntegratorConfig cfg{0.17, 0.0, Scheme::Strang};
        ComplexField out = strang_step(u, ComplexField(grid), cfg);
        ComplexField want = apply_free_flow(u, 0.17);
        CHECK(oracle::max_abs_diff(out, want) < 1e-14 * linf_norm(u));
    }
}

TEST_CASE("Strang conserves the discrete L2 norm over many steps") {
    TorusGrid grid(pi, 256);
    SampleRng rng = SampleRng::for_sample(77, 0);
    DisorderPotential pot =
        gen_fourier_potential(grid, 2.0, CoeffDist::UniformSym, rng, true);
    ComplexField u = make_initial_data(grid, InitialData::Ex1Smooth);
    IntegratorConfig cfg{1e-3, 1.0, Scheme::Strang};
    const double mass0 = l2_norm(u);
    for (int k = 0; k < 1000; ++k)
        u = strang_step(u, pot.xi, cfg);
    CHECK(std::abs(l2_norm(u) - mass0) < 1e-12 * mass0);
}

TEST_CASE("FD first step: closed forms") {
    TorusGrid grid(pi, 64);
    SUBCASE("free constant data is preserved") {
        IntegratorConfig cfg{0.1, 0.0, Scheme::FD};
        ComplexField u0 = constant_field(grid, cplx(0.4, -0.2));
        ComplexField u1 = fd_first_step(u0, ComplexField(grid), cfg);
        CHECK(oracle::max_abs_diff(u1, u0) < 1e-15);
    }
    SUBCASE("plane wave: one-mode solve, first-order consistent") {
        const double tau = 0.01;
        IntegratorConfig cfg{tau, 0.0, Scheme::FD};
        ComplexField u0 = oracle::plane_wave(grid, 1);
        ComplexField u1 = fd_first_step(u0, ComplexField(grid), cfg);
        const double mu = grid.frequency(1);
        const cplx amp = 1.0 / cplx(1.0, tau * mu * mu);
        for (int j = 0; j < 64; ++j)
            CHECK(std::abs(u1[j] - amp * u0[j]) < 1e-13);
        const cplx exact = std::polar(1.0, -tau * mu * mu);
        CHECK(std::abs(amp - exact) <= 0.5 * tau * tau * mu * mu * mu * mu);
    }
    SUBCASE("constant potential on unit data gives the scalar relation") {
        const double tau = 0.05, c = 1.9;
        IntegratorConfig cfg{tau, 0.0, Scheme::FD};
        ComplexField u1 =
            fd_first_step(constant_field(grid, 1.0), constant_field(grid, c), cfg);
        for (int j = 0; j < 64; ++j)
            CHECK(std::abs(u1[j] - cplx(1.0, -tau * c)) < 1e-14);
    }
}

TEST_CASE("FD leapfrog: plane-wave trajectory converges at second order") {
    TorusGrid grid(pi, 64);
    ComplexField u0 = oracle::plane_wave(grid, 1);
    const double mu = grid.frequency(1);
    const double T = 1.0;
    std::vector<std::pair<double, double>> points;
    for (double tau : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
        IntegratorConfig cfg{tau, 0.0, Scheme::FD};
        SolverState st = make_state(u0, zero_potential(grid), cfg);
        st = evolve(std::move(st), zero_potential(grid), cfg,
                    static_cast<std::int64_t>(T / tau));
        const cplx exact = std::polar(1.0, -T * mu * mu);
        double err = 0.0;
        for (int j = 0; j < 64; ++j)
            err = std::max(err, std::abs(st.u[j] - exact * u0[j]));
        points.emplace_back(tau, err);
    }
    CHECK(fit_order(points) >= 1.9);
}

TEST_CASE("FD per-mode recurrence sits on the unit circle") {
    TorusGrid grid(pi, 256);
    const double tau = 0.02;
    for (int k = 0; k < 256; ++k) {
        const double mu = grid.frequency_at_index(k);
        const cplx num(0.0, 0.5 / tau);
        const cplx r = (num + 0.5 * mu * mu) / (num - 0.5 * mu * mu);
        // companion matrix [[0, r], [1, 0]] has eigenvalues +-sqrt(r)
        const cplx eig = std::sqrt(r);
        CHECK(std::abs(std::abs(eig) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(-eig) - 1.0) < 1e-12);
    }
}

TEST_CASE("interaction terms vanish for zero input or zero coupling") {
    TorusGrid grid(pi, 64);
    SampleRng rng(6);
    ComplexField v = oracle::random_field(grid, rng);
    CHECK(linf_norm(j1_term(ComplexField(grid), 0.1, 1.0)) == 0.0);
    CHECK(linf_norm(j2_term(ComplexField(grid), 0.1, 1.0)) == 0.0);
    CHECK(linf_norm(j1_term(v, 0.1, 0.0)) == 0.0);
    CHECK(linf_norm(j2_term(v, 0.1, 0.0)) == 0.0);
}

TEST_CASE("interaction terms match the exact mode-sum evaluation") {
    TorusGrid grid(pi, 32);
    const double tau = 0.085, lambda = 1.4;
    SampleRng rng(7);

    SUBCASE("band-limited random data") {
        ComplexField v = oracle::random_band_limited(grid, 4, rng);
        ComplexField ref1 = oracle::j_mode_sum(v, tau, lambda, true);
        ComplexField ref2 = oracle::j_mode_sum(v, tau, lambda, false);
        const double scale = std::pow(linf_norm(v), 3) + 1.0;
        CHECK(oracle::max_abs_diff(j1_term(v, tau, lambda), ref1) < 1e-12 * scale);
        CHECK(oracle::max_abs_diff(j2_term(v, tau, lambda), ref2) < 1e-12 * scale);
    }
    SUBCASE("single high mode") {
        ComplexField v = oracle::plane_wave(grid, 3);
        ComplexField ref1 = oracle::j_mode_sum(v, tau, lambda, true);
        ComplexField ref2 = oracle::j_mode_sum(v, tau, lambda, false);
        CHECK(oracle::max_abs_diff(j1_term(v, tau, lambda), ref1) < 1e-12);
        CHECK(oracle::max_abs_diff(j2_term(v, tau, lambda), ref2) < 1e-12);
    }
}

TEST_CASE("zero-mean data removes the J2 zero-mode correction") {
    TorusGrid grid(pi, 64);
    SampleRng rng(8);
    ComplexField v = oracle::random_band_limited(grid, 8, rng);
    const cplx mean = zero_mode(v);
    for (auto& z : v.values)
        z -= mean;
    const double tau = 0.07, lambda = 0.9;

    // bracket-only evaluation through the public spectral operations
    ComplexField f = apply_inverse_derivative(apply_free_flow(v, tau), 1);
    ComplexField f2(grid);
    for (int j = 0; j < 64; ++j)
        f2[j] = f[j] * f[j];
    ComplexField g = apply_free_flow(f2, -tau);
    ComplexField h = apply_inverse_derivative(v, 1);
    ComplexField want(grid);
    for (int j = 0; j < 64; ++j)
        want[j] = 0.5 * lambda * (g[j] - h[j] * h[j]) * std::conj(v[j]);

    CHECK(oracle::max_abs_diff(j2_term(v, tau, lambda), want) <
          1e-12 * (std::pow(linf_norm(v), 3) + 1.0));
}

TEST_CASE("LRI with zero potential and zero coupling is exactly the free flow") {
    TorusGrid grid(pi, 128);
    SampleRng rng(9);
    ComplexField u = oracle::random_field(grid, rng);
    const double tau = 0.03;
    DisorderPotential pot = zero_potential(grid);
    RegularizedPotential reg = precompute_regularized(pot, tau);
    IntegratorConfig cfg{tau, 0.0, Scheme::LRI};
    ComplexField out = lri_step(u, pot, reg, cfg);
    ComplexField want = apply_free_flow(u, tau);
    CHECK(oracle::max_abs_diff(out, want) == 0.0);
}

TEST_CASE("LRI with zero potential reduces to the potential-free integrator") {
    TorusGrid grid(pi, 128);
    SampleRng rng(10);
    ComplexField u = oracle::random_field(grid, rng);
    const double tau = 0.04, lambda = 1.0;
    DisorderPotential pot = zero_potential(grid);
    RegularizedPotential reg = precompute_regularized(pot, tau);
    CHECK(linf_norm(reg.xi1) == 0.0);
    CHECK(linf_norm(reg.xi2) == 0.0);

    IntegratorConfig cfg{tau, lambda, Scheme::LRI};
    ComplexField out = lri_step(u, pot, reg, cfg);

    ComplexField j1 = j1_term(u, tau, lambda);
    ComplexField j2 = j2_term(u, tau, lambda);
    ComplexField sum(grid);
    for (int j = 0; j < 128; ++j)
        sum[j] = std::polar(1.0, lambda * tau * std::norm(u[j])) * u[j] + j1[j] + j2[j];
    ComplexField want = apply_free_flow(sum, tau);
    CHECK(oracle::max_abs_diff(out, want) < 1e-13 * (linf_norm(u) + 1.0));
}

TEST_CASE("LRI one-step error on constant data shrinks eightfold per halving") {
    TorusGrid grid(pi, 32);
    const cplx c(0.8, 0.3);
    const double lambda = 1.3;
    DisorderPotential pot = zero_potential(grid);
    ComplexField u0 = constant_field(grid, c);

    std::vector<double> errs;
    for (double tau : {0.05, 0.025, 0.0125}) {
        RegularizedPotential reg = precompute_regularized(pot, tau);
        IntegratorConfig cfg{tau, lambda, Scheme::LRI};
        ComplexField out = lri_step(u0, pot, reg, cfg);
        const cplx exact = std::polar(1.0, -lambda * tau * std::norm(c)) * c;
        double err = 0.0;
        for (int j = 0; j < 32; ++j)
            err = std::max(err, std::abs(out[j] - exact));
        errs.push_back(err);
    }
    for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
        const double ratio = errs[k] / errs[k + 1];
        CHECK(ratio >= 6.0);
        CHECK(ratio <= 10.0);
    }
}

TEST_CASE("one-step errors against the twisted-equation reference") {
    TorusGrid grid(pi, 64);
    ComplexField xi_field = oracle::smooth_test_potential(grid);
    DisorderPotential pot = wrap_potential(xi_field);
    ComplexField u0 = make_initial_data(grid, InitialData::Ex1Smooth);
    const double lambda = 1.0;

    auto one_step_error = [&](Scheme scheme, double tau) {
        ComplexField ref = oracle::duhamel_reference(u0, pot.xi, lambda, tau, 1000);
        ComplexField num(grid);
        switch (scheme) {
        case Scheme::LRI: {
            RegularizedPotential reg = precompute_regularized(pot, tau);
            num = lri_step(u0, pot, reg, IntegratorConfig{tau, lambda, Scheme::LRI});
            break;
        }
        case Scheme::Strang:
            num = strang_step(u0, pot.xi, IntegratorConfig{tau, lambda, Scheme::Strang});
            break;
        case Scheme::FD:
            num = fd_first_step(u0, pot.xi, IntegratorConfig{tau, lambda, Scheme::FD});
            break;
        }
        return l2_distance(num, ref);
    };

    SUBCASE("LRI is locally third order") {
        std::vector<double> errs;
        for (double tau : {1.0 / 64, 1.0 / 128, 1.0 / 256})
            errs.push_back(one_step_error(Scheme::LRI, tau));
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            const double ratio = errs[k] / errs[k + 1];
            CHECK(ratio >= 6.0);
            CHECK(ratio <= 10.0);
        }
    }
    SUBCASE("Strang is locally third order (wide window)") {
        std::vector<double> errs;
        for (double tau : {1.0 / 64, 1.0 / 128, 1.0 / 256})
            errs.push_back(one_step_error(Scheme::Strang, tau));
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            const double log_ratio = std::log2(errs[k] / errs[k + 1]);
            CHECK(log_ratio >= 0.6 * 3.0);
            CHECK(log_ratio <= 1.4 * 3.0);
        }
    }
    SUBCASE("FD starting step is locally second order (wide window)") {
        std::vector<double> errs;
        for (double tau : {1.0 / 64, 1.0 / 128, 1.0 / 256})
            errs.push_back(one_step_error(Scheme::FD, tau));
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            const double log_ratio = std::log2(errs[k] / errs[k + 1]);
            CHECK(log_ratio >= 0.6 * 2.0);
            CHECK(log_ratio <= 1.4 * 2.0);
        }
    }
    SUBCASE("FD leapfrog step is locally third order (wide window)") {
        std::vector<double> errs;
        for (double tau : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
            ComplexField u1 = oracle::duhamel_reference(u0, pot.xi, lambda, tau, 1000);
            ComplexField u2_ref =
                oracle::duhamel_reference(u0, pot.xi, lambda, 2.0 * tau, 2000);
            ComplexField u2 =
                fd_step(u1, u0, pot.xi, IntegratorConfig{tau, lambda, Scheme::FD});
            errs.push_back(l2_distance(u2, u2_ref));
        }
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            const double log_ratio = std::log2(errs[k] / errs[k + 1]);
            CHECK(log_ratio >= 0.6 * 3.0);
            CHECK(log_ratio <= 1.4 * 3.0);
        }
    }
}

TEST_CASE("steppers are equivariant under one-cell translations") {
    TorusGrid grid(pi, 64);
    SampleRng rng(11);
    ComplexField u = oracle::random_field(grid, rng);
    ComplexField xi(grid);
    for (int j = 0; j < 64; ++j)
        xi[j] = rng.uniform_sym();
    const double tau = 0.02, lambda = 0.7;
    const double scale = linf_norm(u) + 1.0;

    ComplexField us = shift_cells(u, 1);
    ComplexField xis = shift_cells(xi, 1);
    DisorderPotential pot = wrap_potential(xi);
    DisorderPotential pot_s = wrap_potential(xis);

    SUBCASE("Strang") {
        IntegratorConfig cfg{tau, lambda, Scheme::Strang};
        ComplexField a = strang_step(us, xis, cfg);
        ComplexField b = shift_cells(strang_step(u, xi, cfg), 1);
        CHECK(oracle::max_abs_diff(a, b) < 1e-12 * scale);
    }
    SUBCASE("FD") {
        IntegratorConfig cfg{tau, lambda, Scheme::FD};
        ComplexField a = fd_first_step(us, xis, cfg);
        ComplexField b = shift_cells(fd_first_step(u, xi, cfg), 1);
        CHECK(oracle::max_abs_diff(a, b) < 1e-12 * scale);
    }
    SUBCASE("LRI") {
        IntegratorConfig cfg{tau, lambda, Scheme::LRI};
        RegularizedPotential reg = precompute_regularized(pot, tau);
        RegularizedPotential reg_s = precompute_regularized(pot_s, tau);
        ComplexField a = lri_step(us, pot_s, reg_s, cfg);
        ComplexField b = shift_cells(lri_step(u, pot, reg, cfg), 1);
        CHECK(oracle::max_abs_diff(a, b) < 1e-11 * scale);
    }
}

TEST_CASE("evolve bookkeeping") {
    TorusGrid grid(pi, 64);
    SampleRng rng = SampleRng::for_sample(21, 0);
    DisorderPotential pot =
        gen_fourier_potential(grid, 2.0, CoeffDist::UniformSym, rng, true);
    ComplexField u0 = make_initial_data(grid, InitialData::Ex1Smooth);

    SUBCASE("zero steps is the identity") {
        IntegratorConfig cfg{0.01, 1.0, Scheme::Strang};
        SolverState st = make_state(u0, pot, cfg);
        st = evolve(std::move(st), pot, cfg, 0);
        CHECK(st.step_index == 0);
        CHECK(oracle::max_abs_diff(st.u, u0) == 0.0);
    }
    SUBCASE("stepping composes bitwise") {
        for (Scheme scheme : {Scheme::LRI, Scheme::Strang, Scheme::FD}) {
            IntegratorConfig cfg{0.01, 1.0, scheme};
            SolverState once = make_state(u0, pot, cfg);
            once = evolve(std::move(once), pot, cfg, 7);
            SolverState split = make_state(u0, pot, cfg);
            split = evolve(std::move(split), pot, cfg, 3);
            split = evolve(std::move(split), pot, cfg, 4);
            CHECK(once.step_index == split.step_index);
            CHECK(oracle::max_abs_diff(once.u, split.u) == 0.0);
        }
    }
    SUBCASE("FD keeps its second level after the first step") {
        IntegratorConfig cfg{0.01, 1.0, Scheme::FD};
        SolverState st = make_state(u0, pot, cfg);
        CHECK(!st.u_prev.has_value());
        st = evolve(std::move(st), pot, cfg, 1);
        CHECK(st.u_prev.has_value());
        CHECK(st.step_index == 1);
    }
    SUBCASE("a stale regularized potential is a hard error") {
        IntegratorConfig cfg{0.01, 1.0, Scheme::LRI};
        RegularizedPotential reg = precompute_regularized(pot, 0.02);
        CHECK_THROWS_AS(lri_step(u0, pot, reg, cfg), NumericalError);
    }
    SUBCASE("snapshot hooks fire at the requested indices") {
        IntegratorConfig cfg{0.01, 1.0, Scheme::Strang};
        std::vector<std::int64_t> want{2, 5};
        std::vector<std::int64_t> got;
        SolverState st = make_state(u0, pot, cfg);
        evolve(std::move(st), pot, cfg, 6, want,
               [&](std::int64_t step, const ComplexField&) { got.push_back(step); });
        CHECK(got == want);
    }
}
