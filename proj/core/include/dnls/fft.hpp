#pragma once

#include "dnls/grid.hpp"

#include <span>

namespace dnls::fft {

// Unnormalized complex-to-complex transforms,
//   forward:  out_k = sum_j in_j exp(-2 pi i j k / N)
//   backward: out_j = sum_k in_k exp(+2 pi i j k / N)
// Plans are cached per size and shared; execution is reentrant, so these are
// safe to call concurrently from multiple threads. in and out may alias.
void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

} // namespace dnls::fft
