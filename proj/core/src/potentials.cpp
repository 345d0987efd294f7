#include "dnls/potentials.hpp"

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace dnls {

namespace {

// b_l = a_l + conj(a_{-l}): adds the complex conjugate field in spectrum
// form, producing a Hermitian spectrum (hence a real field).
Spectrum add_conjugate(const Spectrum& a) {
    const int n = a.size();
    Spectrum b(a.grid);
    for (int k = 0; k < n; ++k)
        b.coeffs[k] = a.coeffs[k] + std::conj(a.coeffs[(n - k) % n]);
    return b;
}

DisorderPotential finalize(ComplexField xi, PotentialKind kind, double theta,
                           const SeedRecord& seed) {
    return DisorderPotential{std::move(xi), kind, theta, seed};
}

} // namespace

// The closed forms cancel to O(a) resp. O(a^2) as a = tau mu^2 -> 0, so both
// switch to the Taylor series of their integral representations below a = 1/2.

cplx regularizer_m1(double tau, double mu) {
    if (mu == 0.0)
        return 0.0;
    const double a = tau * mu * mu;
    if (std::abs(a) < 0.5) {
        // m1 = -i tau sum_k (ia)^k / (k! (k+1))
        cplx sum = 0.0;
        cplx term = 1.0;
        const cplx ia(0.0, a);
        for (int k = 0; k < 20; ++k) {
            sum += term / static_cast<double>(k + 1);
            term *= ia / static_cast<double>(k + 1);
        }
        return cplx(0.0, -tau) * sum;
    }
    return tau * (1.0 - std::polar(1.0, a)) / a;
}

cplx regularizer_m2(double tau, double mu) {
    if (mu == 0.0)
        return 0.0;
    const double a = tau * mu * mu;
    if (std::abs(a) < 0.5) {
        // m2 = -tau mu sum_k (ia)^k / (k! (k+2))
        cplx sum = 0.0;
        cplx term = 1.0;
        const cplx ia(0.0, a);
        for (int k = 0; k < 20; ++k) {
            sum += term / static_cast<double>(k + 2);
            term *= ia / static_cast<double>(k + 1);
        }
        return -tau * mu * sum;
    }
    const cplx eia = std::polar(1.0, a);
    return (1.0 - eia + cplx(0.0, a) * eia) / (tau * mu * mu * mu);
}

DisorderPotential build_fourier_potential(const TorusGrid& grid, double theta,
                                          std::span<const cplx> coeffs,
                                          bool normalize, PotentialKind kind,
                                          const SeedRecord& seed) {
    if (theta < 0.0)
        throw ConfigError("regularizing exponent theta must be >= 0");
    const int n = grid.n_points();
    if (static_cast<int>(coeffs.size()) != n)
        throw ConfigError("coefficient count does not match grid size");
    Spectrum a(grid);
    for (int k = 0; k < n; ++k) {
        const int l = grid.mode_of_index(k);
        const double damp = l == 0 ? 1.0 : std::pow(std::abs(static_cast<double>(l)), -theta);
        a.coeffs[k] = coeffs[k] * (damp / n);
    }
    a.coeffs[grid.nyquist_index()] = 0.0;

    ComplexField xi = from_spectrum(add_conjugate(a));
    if (normalize) {
        const double peak = linf_norm(xi);
        if (peak == 0.0)
            throw NumericalError("cannot normalize an identically zero potential");
        const double scale = 2.0 / peak;
        for (cplx& v : xi.values)
            v *= scale;
    }
    return finalize(std::move(xi), kind, theta, seed);
}

DisorderPotential gen_fourier_potential(const TorusGrid& grid, double theta,
                                        CoeffDist dist, SampleRng& rng,
                                        bool normalize) {
    const int n = grid.n_points();
    std::vector<cplx> coeffs(static_cast<std::size_t>(n));
    for (cplx& c : coeffs) {
        const double re = dist == CoeffDist::UniformSym ? rng.uniform_sym() : rng.normal();
        const double im = dist == CoeffDist::UniformSym ? rng.uniform_sym() : rng.normal();
        c = cplx(re, im);
    }
    const PotentialKind kind = dist == CoeffDist::UniformSym
                                   ? PotentialKind::FourierUniform
                                   : PotentialKind::FourierNormal;
    return build_fourier_potential(grid, theta, coeffs, normalize, kind, rng.record());
}

DisorderPotential gen_pointwise_potential(const TorusGrid& grid, SampleRng& rng) {
    ComplexField xi(grid);
    for (int j = 0; j < grid.n_points(); ++j)
        xi[j] = rng.uniform_sym();
    return finalize(std::move(xi), PotentialKind::PointwiseUniform, 0.0, rng.record());
}

DisorderPotential build_localization_potential(const TorusGrid& grid, int n0,
                                               std::span<const cplx> coeffs,
                                               const SeedRecord& seed) {
    const int n = grid.n_points();
    if (n0 <= 0 || n0 % 2 != 0)
        throw ConfigError("band size N0 must be positive and even");
    if (n0 > n)
        throw ConfigError("band size N0 exceeds the grid size");
    if (static_cast<int>(coeffs.size()) != n0)
        throw ConfigError("coefficient count does not match the band size");

    const double amp = 13.0 / std::sqrt(static_cast<double>(n0));
    Spectrum a(grid);
    for (int l = -n0 / 2; l < n0 / 2; ++l)
        a.at_mode(l) = amp * coeffs[static_cast<std::size_t>(l + n0 / 2)];
    if (n0 == n)
        a.coeffs[grid.nyquist_index()] = 0.0;
    ComplexField xi = from_spectrum(add_conjugate(a));
    return finalize(std::move(xi), PotentialKind::LocalizationBand, 0.0, seed);
}

DisorderPotential gen_localization_potential(const TorusGrid& grid, int n0,
                                             SampleRng& rng) {
    if (n0 <= 0)
        throw ConfigError("band size N0 must be positive");
    std::vector<cplx> coeffs(static_cast<std::size_t>(n0));
    for (cplx& c : coeffs)
        c = cplx(rng.uniform_unit(), rng.uniform_unit());
    return build_localization_potential(grid, n0, coeffs, rng.record());
}

RegularizedPotential precompute_regularized(const DisorderPotential& pot, double tau) {
    if (!(tau > 0.0))
        throw ConfigError("regularized potentials require tau > 0");
    const TorusGrid& grid = pot.xi.grid;
    const Spectrum xi_hat = to_spectrum(pot.xi);

    Spectrum s1(grid);
    Spectrum s2(grid);
    const int n = grid.n_points();
    const int nyq = grid.nyquist_index();
    for (int k = 1; k < n; ++k) {
        const double mu = grid.frequency_at_index(k);
        s1.coeffs[k] = regularizer_m1(tau, mu) * xi_hat.coeffs[k];
        // m2 is odd in mu; the Nyquist mode is dropped, matching the other
        // odd-symmetric multiplier operators.
        s2.coeffs[k] = k == nyq ? 0.0 : regularizer_m2(tau, mu) * xi_hat.coeffs[k];
    }
    return RegularizedPotential{from_spectrum(s1), from_spectrum(s2),
                                xi_hat.coeffs[0], tau};
}

void write_potential_csv(const DisorderPotential& pot, std::ostream& os) {
    os << "x,xi\n";
    char buf[64];
    for (int j = 0; j < pot.xi.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pot.xi.grid.node(j),
                      pot.real_at(j));
        os << buf;
    }
}

void write_potential_csv(const DisorderPotential& pot, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    write_potential_csv(pot, os);
    if (!os.good())
        throw IoError("failed while writing '" + path + "'");
}

DisorderPotential read_potential_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,xi", 0) != 0)
        throw IoError("potential CSV must start with header 'x,xi'");

    std::vector<double> xs;
    std::vector<double> vals;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        double x = 0.0, v = 0.0;
        if (std::sscanf(line.c_str(), "%lg,%lg", &x, &v) != 2)
            throw IoError("malformed potential CSV row: " + line);
        xs.push_back(x);
        vals.push_back(v);
    }
    const int n = static_cast<int>(xs.size());
    if (n < 2)
        throw IoError("potential CSV holds fewer than two rows");
    const double h = xs[1] - xs[0];
    const double half_length = -xs[0];
    TorusGrid grid(half_length, n); // validates N and L
    const double tol = 1e-9 * (1.0 + half_length);
    if (std::abs(grid.mesh() - h) > tol)
        throw IoError("potential CSV nodes are not a uniform torus grid");
    for (int j = 0; j < n; ++j)
        if (std::abs(xs[j] - grid.node(j)) > tol)
            throw IoError("potential CSV node mismatch at row " + std::to_string(j));

    ComplexField xi(grid);
    for (int j = 0; j < n; ++j)
        xi[j] = vals[j];
    return DisorderPotential{std::move(xi), PotentialKind::Imported, 0.0, {}};
}

DisorderPotential read_potential_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    return read_potential_csv(is);
}

} // namespace dnls
