#pragma once

#include "dnls/field.hpp"
#include "dnls/rng.hpp"

#include <string>

namespace dnls {

/// Named initial conditions used by the experiment presets.
enum class InitialData {
    Ex1Smooth,   // (cos x + i sin 2x) / (1 + sin^2 x)
    Ex1H2Random, // |dx|^{-2}-filtered complex uniform noise, sup-normalized
    Ex2Smooth,   // 2 cos x / (2 + sin 2x) + i cos x
    Ex3Sech,     // 2 sech(x^2)
    Gaussian,    // pi^{-1/2} exp(-x^2)
};

const char* to_string(InitialData d);
InitialData parse_initial_data(const std::string& name);

/// Samples the selected profile on the grid. Ex1H2Random consumes 2N draws
/// from rng (required non-null for that selector only).
ComplexField make_initial_data(const TorusGrid& grid, InitialData which,
                               SampleRng* rng = nullptr);

} // namespace dnls
