#include "dnls/spectral.hpp"

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

#include <cmath>

namespace dnls {

Spectrum to_spectrum(const ComplexField& f) {
    Spectrum s(f.grid);
    fft::forward(f.values, s.coeffs);
    const double inv_n = 1.0 / f.size();
    for (cplx& c : s.coeffs)
        c *= inv_n;
    return s;
}

ComplexField from_spectrum(const Spectrum& s) {
    ComplexField f(s.grid);
    fft::backward(s.coeffs, f.values);
    return f;
}

void free_flow_inplace(Spectrum& s, double t) {
    const int n = s.size();
    for (int k = 0; k < n; ++k) {
        const double mu = s.grid.frequency_at_index(k);
        s.coeffs[k] *= std::polar(1.0, -t * mu * mu);
    }
}

void inverse_derivative_inplace(Spectrum& s, int m) {
    if (m < 1)
        throw ConfigError("inverse derivative order must be >= 1");
    const int n = s.size();
    const int nyq = s.grid.nyquist_index();
    const bool odd = (m % 2) != 0;
    s.coeffs[0] = 0.0;
    for (int k = 1; k < n; ++k) {
        if (odd && k == nyq) {
            s.coeffs[k] = 0.0;
            continue;
        }
        const cplx imu(0.0, s.grid.frequency_at_index(k));
        s.coeffs[k] /= (m == 1) ? imu : std::pow(imu, m);
    }
}

void sin_filter_inplace(Spectrum& s, double tau) {
    const int n = s.size();
    const int nyq = s.grid.nyquist_index();
    for (int k = 0; k < n; ++k) {
        if (k == nyq) {
            s.coeffs[k] = 0.0;
            continue;
        }
        s.coeffs[k] *= std::sin(tau * s.grid.frequency_at_index(k));
    }
}

Spectrum conjugate_spectrum(const Spectrum& s) {
    const int n = s.size();
    Spectrum out(s.grid);
    for (int k = 0; k < n; ++k)
        out.coeffs[k] = std::conj(s.coeffs[(n - k) % n]);
    return out;
}

ComplexField apply_free_flow(const ComplexField& f, double t) {
    Spectrum s = to_spectrum(f);
    free_flow_inplace(s, t);
    return from_spectrum(s);
}

ComplexField apply_inverse_derivative(const ComplexField& f, int m) {
    Spectrum s = to_spectrum(f);
    inverse_derivative_inplace(s, m);
    return from_spectrum(s);
}

ComplexField apply_derivative(const ComplexField& f, int m) {
    if (m < 1)
        throw ConfigError("derivative order must be >= 1");
    Spectrum s = to_spectrum(f);
    const int n = s.size();
    const int nyq = s.grid.nyquist_index();
    const bool odd = (m % 2) != 0;
    for (int k = 0; k < n; ++k) {
        if (odd && k == nyq) {
            s.coeffs[k] = 0.0;
            continue;
        }
        const cplx imu(0.0, s.grid.frequency_at_index(k));
        s.coeffs[k] *= (m == 1) ? imu : std::pow(imu, m);
    }
    return from_spectrum(s);
}

ComplexField apply_sin_filter(const ComplexField& f, double tau) {
    if (!(tau > 0.0))
        throw ConfigError("sin filter requires tau > 0");
    Spectrum s = to_spectrum(f);
    sin_filter_inplace(s, tau);
    return from_spectrum(s);
}

cplx zero_mode(const ComplexField& f) {
    cplx acc = 0.0;
    for (const cplx& v : f.values)
        acc += v;
    return acc / static_cast<double>(f.size());
}

} // namespace dnls
