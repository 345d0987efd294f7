#pragma once

#include "dnls/field.hpp"

namespace dnls {

Spectrum to_spectrum(const ComplexField& f);
ComplexField from_spectrum(const Spectrum& s);

/// Exact free Schroedinger flow exp(i t dxx): per-mode phase exp(-i t mu_l^2).
/// Unitary in the discrete L2 norm; t may be negative (inverse flow).
ComplexField apply_free_flow(const ComplexField& f, double t);

/// Antiderivative operator: multiplies mode l != 0 by (i mu_l)^{-m} and
/// drops the zero mode. Odd m zeroes the Nyquist mode as well.
ComplexField apply_inverse_derivative(const ComplexField& f, int m);

/// Spectral derivative (i mu_l)^m; zero mode vanishes for m >= 1 and odd m
/// zeroes the Nyquist mode, mirroring apply_inverse_derivative.
ComplexField apply_derivative(const ComplexField& f, int m);

/// Stabilizing filter sin(-i tau dx): real per-mode multiplier sin(tau mu_l),
/// zero at the Nyquist mode. Non-expansive in L2.
ComplexField apply_sin_filter(const ComplexField& f, double tau);

/// f_hat_0, i.e. the mean of the physical samples.
cplx zero_mode(const ComplexField& f);

// In-place spectrum-space variants used by the steppers to share transforms.
void free_flow_inplace(Spectrum& s, double t);
void inverse_derivative_inplace(Spectrum& s, int m);
void sin_filter_inplace(Spectrum& s, double tau);

/// Spectrum of conj(f) given the spectrum of f: g_hat_k = conj(f_hat_{-k mod N}).
Spectrum conjugate_spectrum(const Spectrum& s);

} // namespace dnls
