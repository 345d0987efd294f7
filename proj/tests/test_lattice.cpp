#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dnls/harness.hpp"
#include "dnls/lattice.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace dnls;

namespace {

LatticeState random_state(int n_half, double hopping, double lambda,
                          SampleRng& rng) {
    LatticeState s = make_lattice_state(
        n_half, hopping, lambda, make_lattice_disorder(n_half, CoeffDist::UniformSym, rng));
    for (auto& v : s.amplitudes)
        v = cplx(rng.normal(), rng.normal());
    return s;
}

double max_site_diff(const LatticeState& a, const LatticeState& b) {
    double m = 0.0;
    for (int p = 0; p < a.n_sites(); ++p)
        m = std::max(m, std::abs(a.amplitudes[p] - b.amplitudes[p]));
    return m;
}

} // namespace

TEST_CASE("kinetic flow identities") {
    SampleRng rng(1);
    SUBCASE("J = 0 is the identity") {
        LatticeState s = random_state(16, 0.0, 1.0, rng);
        LatticeState out = lattice_kinetic_flow(s, 0.73);
        CHECK(max_site_diff(out, s) < 1e-14);
    }
    SUBCASE("t = 0 is the identity") {
        LatticeState s = random_state(16, 1.0, 1.0, rng);
        LatticeState out = lattice_kinetic_flow(s, 0.0);
        CHECK(max_site_diff(out, s) < 1e-14);
    }
    SUBCASE("lattice plane waves are eigenvectors") {
        const int n_half = 32;
        LatticeState s = make_lattice_state(n_half, 1.0, 1.0,
                                            std::vector<double>(2 * n_half, 0.0));
        const int j0 = 5;
        for (int l = -n_half; l < n_half; ++l)
            s.site(l) = std::polar(1.0, j0 * l * std::numbers::pi / n_half);
        const double t = 0.41;
        LatticeState out = lattice_kinetic_flow(s, t);
        const cplx phase =
            std::polar(1.0, 2.0 * t * s.hopping * std::cos(j0 * std::numbers::pi / n_half));
        for (int l = -n_half; l < n_half; ++l)
            CHECK(std::abs(out.site(l) - phase * s.site(l)) < 1e-13);
    }
    SUBCASE("the flow conserves the site norm") {
        LatticeState s = random_state(64, 1.3, 1.0, rng);
        const double n0 = lattice_l2_norm(s);
        LatticeState out = lattice_kinetic_flow(s, 2.17);
        CHECK(std::abs(lattice_l2_norm(out) - n0) < 1e-12 * n0);
    }
}

TEST_CASE("potential flow identities") {
    SampleRng rng(2);
    SUBCASE("t = 0 is the identity") {
        LatticeState s = random_state(16, 1.0, 0.8, rng);
        CHECK(max_site_diff(lattice_potential_flow(s, 0.0), s) == 0.0);
    }
    SUBCASE("constant disorder with lambda = 0 is a global phase") {
        const int n_half = 16;
        LatticeState s = make_lattice_state(n_half, 1.0, 0.0,
                                            std::vector<double>(2 * n_half, 0.6));
        for (auto& v : s.amplitudes)
            v = cplx(rng.normal(), rng.normal());
        const double t = 0.9;
        LatticeState out = lattice_potential_flow(s, t);
        const cplx phase = std::polar(1.0, -t * 0.6);
        CHECK(max_site_diff(out, [&] {
                  LatticeState w = s;
                  for (auto& v : w.amplitudes)
                      v *= phase;
                  return w;
              }()) < 1e-15);
    }
    SUBCASE("every site keeps its modulus") {
        LatticeState s = random_state(16, 1.0, 1.2, rng);
        LatticeState out = lattice_potential_flow(s, 1.7);
        for (int p = 0; p < s.n_sites(); ++p)
            CHECK(std::abs(std::abs(out.amplitudes[p]) - std::abs(s.amplitudes[p])) <=
                  4e-16 * std::abs(s.amplitudes[p]));
    }
}

TEST_CASE("lattice Strang limits and conservation") {
    SampleRng rng(3);
    SUBCASE("free case is the exact kinetic flow") {
        const int n_half = 16;
        LatticeState s = make_lattice_state(n_half, 1.0, 0.0,
                                            std::vector<double>(2 * n_half, 0.0));
        for (auto& v : s.amplitudes)
            v = cplx(rng.normal(), rng.normal());
        LatticeState a = lattice_strang_step(s, 0.13);
        LatticeState b = lattice_kinetic_flow(s, 0.13);
        CHECK(max_site_diff(a, b) < 1e-14);
    }
    SUBCASE("J = 0 is the exact potential flow") {
        LatticeState s = random_state(16, 0.0, 1.0, rng);
        LatticeState a = lattice_strang_step(s, 0.13);
        LatticeState b = lattice_potential_flow(s, 0.13);
        CHECK(max_site_diff(a, b) < 1e-13);
    }
    SUBCASE("norm conservation over many steps") {
        LatticeState s = random_state(128, 1.0, 1.0, rng);
        const double n0 = lattice_l2_norm(s);
        for (int k = 0; k < 1000; ++k)
            s = lattice_strang_step(std::move(s), 0.01);
        CHECK(std::abs(lattice_l2_norm(s) - n0) < 1e-12 * n0);
    }
}

TEST_CASE("lattice FD basics") {
    SUBCASE("free constant data is preserved") {
        const int n_half = 16;
        LatticeState s = make_lattice_state(n_half, 0.0, 0.0,
                                            std::vector<double>(2 * n_half, 0.0));
        for (auto& v : s.amplitudes)
            v = cplx(0.3, -0.1);
        LatticeState s1 = lattice_fd_first_step(s, 0.05);
        CHECK(max_site_diff(s1, s) < 1e-14);
        LatticeState s2 = lattice_fd_step(s1, s, 0.05);
        CHECK(max_site_diff(s2, s) < 1e-13);
    }
    SUBCASE("first step matches the explicit formula on a tiny lattice") {
        const int n_half = 2; // sites l = -2..1
        std::vector<double> xi{0.1, -0.4, 0.7, 0.2};
        LatticeState s = make_lattice_state(n_half, 1.3, 0.9, xi);
        s.site(-2) = cplx(0.2, 0.1);
        s.site(-1) = cplx(-0.5, 0.3);
        s.site(0) = cplx(0.8, -0.2);
        s.site(1) = cplx(0.0, 0.6);
        const double tau = 0.07;
        LatticeState out = lattice_fd_first_step(s, tau);
        for (int l = -2; l < 2; ++l) {
            const cplx up = s.site(l);
            const cplx right = l + 1 < 2 ? s.site(l + 1) : s.site(-2);
            const cplx left = l - 1 >= -2 ? s.site(l - 1) : s.site(1);
            const cplx want = up + cplx(0.0, 1.3 * tau) * (right + left) -
                              cplx(0.0, tau) *
                                  (xi[static_cast<std::size_t>(l + 2)] +
                                   0.9 * std::norm(up)) *
                                  up;
            CHECK(std::abs(out.site(l) - want) < 1e-15);
        }
    }
    SUBCASE("isolated sites follow the exact on-site phase at second order") {
        // J = 0 decouples the sites; compare against the exact phase flow
        const int n_half = 4;
        std::vector<double> xi{0.9, -0.3, 0.5, -0.8, 0.2, 0.6, -0.1, 0.4};
        const double lambda = 1.1, T = 1.0;
        std::vector<std::pair<double, double>> points;
        for (double tau : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
            LatticeState s = make_lattice_state(n_half, 0.0, lambda, xi);
            for (int p = 0; p < 8; ++p)
                s.amplitudes[static_cast<std::size_t>(p)] =
                    std::polar(0.5 + 0.05 * p, 0.3 * p);
            LatticeState exact = lattice_potential_flow(s, T);
            LatticeState prev = s;
            LatticeState cur = lattice_fd_first_step(s, tau);
            const auto n_steps = static_cast<std::int64_t>(T / tau);
            for (std::int64_t k = 1; k < n_steps; ++k) {
                LatticeState next = lattice_fd_step(cur, prev, tau);
                prev = std::move(cur);
                cur = std::move(next);
            }
            points.emplace_back(tau, lattice_relative_linf_error(cur, exact));
        }
        CHECK(fit_order(points) >= 1.9);
    }
}

TEST_CASE("lattice steps are translation equivariant") {
    SampleRng rng(5);
    const int n_half = 16;
    LatticeState s = random_state(n_half, 1.0, 1.0, rng);

    auto shift = [&](const LatticeState& in) {
        LatticeState out = in;
        const int m = in.n_sites();
        for (int p = 0; p < m; ++p) {
            out.amplitudes[static_cast<std::size_t>(p)] =
                in.amplitudes[static_cast<std::size_t>((p - 1 + m) % m)];
            out.disorder[static_cast<std::size_t>(p)] =
                in.disorder[static_cast<std::size_t>((p - 1 + m) % m)];
        }
        return out;
    };

    LatticeState a = lattice_strang_step(shift(s), 0.03);
    LatticeState b = shift(lattice_strang_step(s, 0.03));
    CHECK(max_site_diff(a, b) < 1e-13);

    LatticeState c = lattice_fd_first_step(shift(s), 0.03);
    LatticeState d = shift(lattice_fd_first_step(s, 0.03));
    CHECK(max_site_diff(c, d) < 1e-13);
}

TEST_CASE("three-site data and disorder sampling") {
    SampleRng rng = SampleRng::for_sample(9, 4);
    LatticeState s = make_lattice_state(
        128, 1.0, 1.0, make_lattice_disorder(128, CoeffDist::UniformSym, rng));
    set_three_site_data(s);
    CHECK(s.site(0) == cplx(0.5, 0.0));
    CHECK(s.site(1) == cplx(0.25, 0.0));
    CHECK(s.site(-1) == cplx(0.25, 0.0));
    CHECK(s.n_sites() == 256);
    for (double v : s.disorder) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    // one Strang step is more accurate than one FD step on the same sample
    LatticeState ref = s;
    for (int k = 0; k < 1000; ++k)
        ref = lattice_strang_step(std::move(ref), 1e-4);
    LatticeState strang = s;
    for (int k = 0; k < 10; ++k)
        strang = lattice_strang_step(std::move(strang), 1e-2);
    LatticeState prev = s;
    LatticeState fd = lattice_fd_first_step(s, 1e-2);
    for (int k = 1; k < 10; ++k) {
        LatticeState next = lattice_fd_step(fd, prev, 1e-2);
        prev = std::move(fd);
        fd = std::move(next);
    }
    CHECK(lattice_relative_linf_error(strang, ref) <
          lattice_relative_linf_error(fd, ref));
}
