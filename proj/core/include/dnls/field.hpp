#pragma once

#include "dnls/grid.hpp"

#include <span>
#include <vector>

namespace dnls {

/// Complex-valued function sampled at the grid nodes x_j.
struct ComplexField {
    TorusGrid grid;
    std::vector<cplx> values;

    explicit ComplexField(const TorusGrid& g);
    ComplexField(const TorusGrid& g, std::vector<cplx> v);

    int size() const { return grid.n_points(); }
    cplx& operator[](int j) { return values[static_cast<std::size_t>(j)]; }
    const cplx& operator[](int j) const { return values[static_cast<std::size_t>(j)]; }
};

/// Fourier coefficients f_hat_l, stored in FFT-natural order (see
/// TorusGrid::mode_of_index). Convention:
///   f_hat_l = (1/N) sum_j exp(-i mu_l (x_j + L)) f(x_j),
///   f(x_j)  =       sum_l exp(+i mu_l (x_j + L)) f_hat_l.
struct Spectrum {
    TorusGrid grid;
    std::vector<cplx> coeffs;

    explicit Spectrum(const TorusGrid& g);
    Spectrum(const TorusGrid& g, std::vector<cplx> c);

    int size() const { return grid.n_points(); }
    cplx& at_mode(int l) { return coeffs[static_cast<std::size_t>(grid.index_of_mode(l))]; }
    const cplx& at_mode(int l) const {
        return coeffs[static_cast<std::size_t>(grid.index_of_mode(l))];
    }
};

/// Discrete L2 norm sqrt(h * sum_j |f_j|^2); agrees with the continuum
/// L2(T) norm for band-limited functions.
double l2_norm(const ComplexField& f);

/// max_j |f(x_j)|
double linf_norm(const ComplexField& f);

double l2_distance(const ComplexField& a, const ComplexField& b);

/// Cyclic shift by whole grid cells: out_j = f_{j-cells mod N}.
ComplexField shift_cells(const ComplexField& f, int cells);

} // namespace dnls
