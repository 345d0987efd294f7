#pragma once

// Experiment presets. Physics parameters (domain, lambda, final time, data
// and potential selectors) are fixed per preset; the numerical resolution
// has a desk-scale default and a --full-scale variant that only changes N,
// the tau ladder, and the sample count.

#include "dnls/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dnls::cli {

struct NumericsPreset {
    int n_points = 0;                  // continuous runs
    std::vector<double> tau_targets;   // divisor-adjusted against T
    double tau_ref_target = 0.0;
    Scheme ref_scheme = Scheme::Strang;
    int samples = 0;
    // spatial sweeps
    std::vector<int> grid_sizes;
    double fixed_tau_target = 0.0;
    int ref_n_points = 0;
};

struct DecayPreset {
    int n_points = 0;
    double tau = 0.0;
    std::vector<double> times;
    int samples = 0;
    double weight = 4.0;
};

struct SimulatePreset {
    double half_length = 0.0;
    int n_points = 0;
    double tau = 0.0;
    double final_time = 0.0;
};

struct Preset {
    std::string name;
    std::variant<ContinuousProblem, LatticeProblem> problem;
    double final_time = 0.0;
    NumericsPreset desk;
    NumericsPreset paper;
    std::optional<DecayPreset> decay_desk;
    std::optional<DecayPreset> decay_paper;
    std::optional<SimulatePreset> sim_desk;
    std::optional<SimulatePreset> sim_paper;
};

const Preset& find_preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace dnls::cli
