#include "dnls/field.hpp"

#include "dnls/errors.hpp"

#include <cmath>

namespace dnls {

ComplexField::ComplexField(const TorusGrid& g)
    : grid(g), values(static_cast<std::size_t>(g.n_points())) {}

ComplexField::ComplexField(const TorusGrid& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_points())
        throw ConfigError("field sample count does not match grid size");
}

Spectrum::Spectrum(const TorusGrid& g)
    : grid(g), coeffs(static_cast<std::size_t>(g.n_points())) {}

Spectrum::Spectrum(const TorusGrid& g, std::vector<cplx> c)
    : grid(g), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != g.n_points())
        throw ConfigError("coefficient count does not match grid size");
}

double l2_norm(const ComplexField& f) {
    double s = 0.0;
    for (const cplx& v : f.values)
        s += std::norm(v);
    return std::sqrt(f.grid.mesh() * s);
}

double linf_norm(const ComplexField& f) {
    double m = 0.0;
    for (const cplx& v : f.values)
        m = std::max(m, std::abs(v));
    return m;
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
    if (a.grid != b.grid)
        throw ConfigError("fields live on different grids");
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        s += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(a.grid.mesh() * s);
}

ComplexField shift_cells(const ComplexField& f, int cells) {
    const int n = f.size();
    ComplexField out(f.grid);
    for (int j = 0; j < n; ++j)
        out[j] = f[((j - cells) % n + n) % n];
    return out;
}

} // namespace dnls
