#include "dnls/initial_data.hpp"

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

#include <cmath>
#include <numbers>

namespace dnls {

const char* to_string(InitialData d) {
    switch (d) {
    case InitialData::Ex1Smooth: return "ex1-smooth";
    case InitialData::Ex1H2Random: return "h2-random";
    case InitialData::Ex2Smooth: return "ex2-smooth";
    case InitialData::Ex3Sech: return "sech";
    case InitialData::Gaussian: return "gaussian";
    }
    return "?";
}

InitialData parse_initial_data(const std::string& name) {
    if (name == "ex1-smooth") return InitialData::Ex1Smooth;
    if (name == "h2-random") return InitialData::Ex1H2Random;
    if (name == "ex2-smooth") return InitialData::Ex2Smooth;
    if (name == "sech") return InitialData::Ex3Sech;
    if (name == "gaussian") return InitialData::Gaussian;
    throw ConfigError("unknown initial data selector '" + name + "'");
}

namespace {

ComplexField h2_random_data(const TorusGrid& grid, SampleRng& rng) {
    const int n = grid.n_points();
    Spectrum coeffs(grid);
    for (int k = 0; k < n; ++k) {
        const cplx draw(rng.uniform_unit(), rng.uniform_unit());
        const int l = grid.mode_of_index(k);
        const double damp = l == 0 ? 1.0 : 1.0 / (static_cast<double>(l) * l);
        coeffs.coeffs[k] = damp * draw;
    }
    ComplexField u = from_spectrum(coeffs);
    const double peak = linf_norm(u);
    if (peak == 0.0)
        throw NumericalError("degenerate zero draw for random initial data");
    for (cplx& v : u.values)
        v /= peak;
    return u;
}

} // namespace

ComplexField make_initial_data(const TorusGrid& grid, InitialData which,
                               SampleRng* rng) {
    if (which == InitialData::Ex1H2Random) {
        if (!rng)
            throw ConfigError("random initial data requires an RNG stream");
        return h2_random_data(grid, *rng);
    }
    ComplexField u(grid);
    for (int j = 0; j < grid.n_points(); ++j) {
        const double x = grid.node(j);
        switch (which) {
        case InitialData::Ex1Smooth: {
            const double s = std::sin(x);
            u[j] = cplx(std::cos(x), std::sin(2.0 * x)) / (1.0 + s * s);
            break;
        }
        case InitialData::Ex2Smooth:
            u[j] = cplx(2.0 * std::cos(x) / (2.0 + std::sin(2.0 * x)), std::cos(x));
            break;
        case InitialData::Ex3Sech:
            u[j] = 2.0 / std::cosh(x * x);
            break;
        case InitialData::Gaussian:
            u[j] = std::exp(-x * x) / std::sqrt(std::numbers::pi);
            break;
        case InitialData::Ex1H2Random:
            break; // handled above
        }
    }
    return u;
}

} // namespace dnls
