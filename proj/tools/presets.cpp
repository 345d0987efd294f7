#include "presets.hpp"

#include "dnls/errors.hpp"

#include <numbers>

namespace dnls::cli {

namespace {

const double pi = std::numbers::pi;

std::vector<Preset> build_presets() {
    std::vector<Preset> out;

    // H^2 Fourier potential on (-pi, pi), smooth data, T = 0.5
    {
        Preset p;
        p.name = "example1-smooth";
        ContinuousProblem prob;
        prob.half_length = pi;
        prob.n_points = 1 << 10;
        prob.u0 = InitialData::Ex1Smooth;
        prob.potential = {PotentialKind::FourierUniform, 2.0, true, 0};
        prob.lambda = 1.0;
        p.problem = prob;
        p.final_time = 0.5;
        p.desk = {1 << 10,
                  {1e-2, 3.1622776601683794e-3, 1e-3, 3.1622776601683794e-4},
                  3.1622776601683794e-5,
                  Scheme::Strang,
                  20,
                  {1 << 7, 1 << 8, 1 << 9, 1 << 10},
                  5e-4,
                  1 << 12};
        p.paper = {1 << 13,
                   {2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4, 1.5625e-4},
                   1e-5,
                   Scheme::Strang,
                   100,
                   {1 << 9, 1 << 10, 1 << 11, 1 << 12},
                   1e-5,
                   1 << 13};
        p.decay_desk = DecayPreset{1 << 10, 1e-3, {0.5}, 10, 4.0};
        p.decay_paper = DecayPreset{1 << 10, 5e-5, {1.0, 2.0, 3.0}, 100, 4.0};
        out.push_back(std::move(p));
    }

    // same setup with rough H^2 random initial data
    {
        Preset p = out.back();
        p.name = "example1-h2";
        std::get<ContinuousProblem>(p.problem).u0 = InitialData::Ex1H2Random;
        p.decay_desk.reset();
        p.decay_paper.reset();
        out.push_back(std::move(p));
    }

    // pointwise uniform L^2 potential, smooth data, T = 2
    {
        Preset p;
        p.name = "example2-pointwise";
        ContinuousProblem prob;
        prob.half_length = pi;
        prob.n_points = 1 << 12;
        prob.u0 = InitialData::Ex2Smooth;
        prob.potential = {PotentialKind::PointwiseUniform, 0.0, false, 0};
        prob.lambda = 1.0;
        p.problem = prob;
        p.final_time = 2.0;
        p.desk = {1 << 12,
                  {5e-2, 2.5e-2, 1.25e-2, 6.25e-3},
                  6.25e-4,
                  Scheme::LRI,
                  20,
                  {1 << 7, 1 << 8, 1 << 9, 1 << 10},
                  1e-3,
                  1 << 12};
        p.paper = {1 << 16,
                   {5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3},
                   1e-4,
                   Scheme::LRI,
                   100,
                   {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14},
                   1e-4,
                   1 << 16};
        p.decay_desk = DecayPreset{1 << 10, 1e-3, {0.5}, 10, 2.0};
        p.decay_paper = DecayPreset{1 << 12, 5e-4, {0.5, 1.0, 2.0}, 50, 2.0};
        out.push_back(std::move(p));
    }

    // theta = 0 normal-distribution Fourier potential variant of example 2
    {
        Preset p = out.back();
        p.name = "example2-theta0";
        std::get<ContinuousProblem>(p.problem).potential =
            {PotentialKind::FourierNormal, 0.0, true, 0};
        out.push_back(std::move(p));
    }

    // truncated whole-space run, T = 1
    {
        Preset p;
        p.name = "example3-whole-space";
        ContinuousProblem prob;
        prob.half_length = 7.0 * pi;
        prob.n_points = 1 << 12;
        prob.u0 = InitialData::Ex3Sech;
        prob.potential = {PotentialKind::PointwiseUniform, 0.0, false, 0};
        prob.lambda = 1.0;
        p.problem = prob;
        p.final_time = 1.0;
        p.desk = {1 << 12,
                  {2e-2, 1e-2, 5e-3, 2.5e-3},
                  2.5e-4,
                  Scheme::LRI,
                  20,
                  {1 << 8, 1 << 9, 1 << 10, 1 << 11},
                  1e-3,
                  1 << 13};
        p.paper = {1 << 18,
                   {2e-2, 1e-2, 5e-3, 2e-3, 1e-3},
                   1e-4,
                   Scheme::LRI,
                   100,
                   {1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16},
                   1e-4,
                   1 << 18};
        out.push_back(std::move(p));
    }

    // localized Gaussian in a banded random potential
    {
        Preset p;
        p.name = "localization";
        ContinuousProblem prob;
        prob.half_length = 256.0 * pi;
        prob.n_points = 1 << 15;
        prob.u0 = InitialData::Gaussian;
        prob.potential = {PotentialKind::LocalizationBand, 0.0, false, 0};
        prob.lambda = 0.0;
        p.problem = prob;
        p.final_time = 20.0;
        p.sim_desk = SimulatePreset{64.0 * pi, 1 << 13, 2.5e-3, 20.0};
        p.sim_paper = SimulatePreset{256.0 * pi, 1 << 15, 2.5e-3, 20.0};
        out.push_back(std::move(p));
    }

    // discrete lattice runs, T = 1
    for (CoeffDist dist : {CoeffDist::UniformSym, CoeffDist::Normal}) {
        Preset p;
        p.name = dist == CoeffDist::UniformSym ? "discrete-uniform" : "discrete-normal";
        p.problem = LatticeProblem{128, 1.0, 1.0, dist};
        p.final_time = 1.0;
        p.desk = {0, {5e-2, 2.5e-2, 1.25e-2, 6.25e-3}, 1e-4, Scheme::Strang, 20,
                  {}, 0.0, 0};
        p.paper = {0, {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3}, 1e-4,
                   Scheme::Strang, 100, {}, 0.0, 0};
        out.push_back(std::move(p));
    }

    return out;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = build_presets();
    return table;
}

} // namespace

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name)
            return p;
    std::string known;
    for (const Preset& p : presets())
        known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const Preset& p : presets())
        names.push_back(p.name);
    return names;
}

} // namespace dnls::cli
