#pragma once

#include <complex>

namespace dnls {

using cplx = std::complex<double>;

/// Uniform periodic grid on the torus (-L, L) with N nodes x_j = -L + j h,
/// h = 2L/N, and paired Fourier frequencies mu_l = pi l / L for
/// l = -N/2 .. N/2-1. N is restricted to even powers of two.
class TorusGrid {
  public:
    TorusGrid(double half_length, int n_points);

    double half_length() const { return half_length_; }
    int n_points() const { return n_points_; }
    double mesh() const { return mesh_; }

    double node(int j) const { return -half_length_ + j * mesh_; }

    // Spectra are stored in FFT-natural order: array index k holds mode
    // l = k for k < N/2 and l = k - N otherwise.
    int mode_of_index(int k) const { return k < n_points_ / 2 ? k : k - n_points_; }
    int index_of_mode(int l) const { return l >= 0 ? l : l + n_points_; }
    int nyquist_index() const { return n_points_ / 2; }

    double frequency(int l) const;
    double frequency_at_index(int k) const { return frequency(mode_of_index(k)); }

    bool operator==(const TorusGrid& o) const {
        return half_length_ == o.half_length_ && n_points_ == o.n_points_;
    }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }

  private:
    double half_length_;
    int n_points_;
    double mesh_;
};

} // namespace dnls
