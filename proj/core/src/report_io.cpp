#include "dnls/report_io.hpp"

#include "dnls/errors.hpp"
#include "dnls/util.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace dnls {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    return os;
}

template <typename Fn>
void to_file(const std::string& path, Fn&& fn) {
    std::ofstream os = open_out(path);
    fn(os);
    if (!os.good())
        throw IoError("failed while writing '" + path + "'");
}

} // namespace

void write_report_csv(const ConvergenceReport& report, std::ostream& os) {
    os << "scheme,sweep_value,mean_error,std_error,n_ok,n_failed\n";
    for (const SchemeCurve& curve : report.curves)
        for (const SweepPoint& pt : curve.points)
            os << to_string(curve.scheme) << ',' << format_double(pt.sweep_value)
               << ',' << format_double(pt.mean_error) << ','
               << format_double(pt.std_error) << ',' << pt.n_ok << ','
               << pt.n_failed << '\n';
}

void write_report_csv(const ConvergenceReport& report, const std::string& path) {
    to_file(path, [&](std::ostream& os) { write_report_csv(report, os); });
}

void write_report_json(const ConvergenceReport& report, const ExperimentSpec& spec,
                       std::ostream& os) {
    nlohmann::json j;
    j["spec_hash"] = report.spec_hash;
    j["spec"] = canonical_string(spec);
    j["master_seed"] = report.master_seed;
    j["n_samples"] = report.n_samples;
    j["sweep"] = report.sweep == SweepKind::Temporal ? "temporal" : "spatial";
    j["total_failures"] = report.total_failures;
    j["wall_seconds"] = report.wall_seconds;
    nlohmann::json curves = nlohmann::json::array();
    for (const SchemeCurve& curve : report.curves) {
        nlohmann::json c;
        c["scheme"] = to_string(curve.scheme);
        if (std::isnan(curve.fitted_order))
            c["fitted_order"] = nullptr;
        else
            c["fitted_order"] = curve.fitted_order;
        nlohmann::json pts = nlohmann::json::array();
        for (const SweepPoint& pt : curve.points)
            pts.push_back({{"sweep_value", pt.sweep_value},
                           {"mean_error", pt.mean_error},
                           {"std_error", pt.std_error},
                           {"n_ok", pt.n_ok},
                           {"n_failed", pt.n_failed}});
        c["points"] = std::move(pts);
        curves.push_back(std::move(c));
    }
    j["curves"] = std::move(curves);
    os << j.dump(2) << '\n';
}

void write_report_json(const ConvergenceReport& report, const ExperimentSpec& spec,
                       const std::string& path) {
    to_file(path, [&](std::ostream& os) { write_report_json(report, spec, os); });
}

void write_decay_csv(const DecayCurves& curves, std::ostream& os) {
    os << "l_or_x,value,time\n";
    for (std::size_t t = 0; t < curves.times.size(); ++t)
        for (std::size_t m = 0; m < curves.values[t].size(); ++m)
            os << (m + 1) << ',' << format_double(curves.values[t][m]) << ','
               << format_double(curves.times[t]) << '\n';
}

void write_decay_csv(const DecayCurves& curves, const std::string& path) {
    to_file(path, [&](std::ostream& os) { write_decay_csv(curves, os); });
}

void write_snapshots_csv(const LocalizationResult& result, std::ostream& os) {
    os << "l_or_x,value,time\n";
    for (std::size_t s = 0; s < result.snapshots.size(); ++s) {
        const ComplexField& u = result.snapshots[s];
        for (int j = 0; j < u.size(); ++j)
            os << format_double(u.grid.node(j)) << ','
               << format_double(std::abs(u[j])) << ','
               << format_double(result.snapshot_times[s]) << '\n';
    }
}

void write_snapshots_csv(const LocalizationResult& result, const std::string& path) {
    to_file(path, [&](std::ostream& os) { write_snapshots_csv(result, os); });
}

void write_mass_csv(const LocalizationResult& result, std::ostream& os) {
    os << "time,mass_fraction\n";
    for (const auto& [t, frac] : result.mass_fraction)
        os << format_double(t) << ',' << format_double(frac) << '\n';
}

void write_mass_csv(const LocalizationResult& result, const std::string& path) {
    to_file(path, [&](std::ostream& os) { write_mass_csv(result, os); });
}

void print_report_summary(const ConvergenceReport& report, std::ostream& os) {
    os << "sweep: " << (report.sweep == SweepKind::Temporal ? "temporal" : "spatial")
       << "   samples: " << report.n_samples
       << "   failures: " << report.total_failures << "   wall: " << std::fixed
       << std::setprecision(1) << report.wall_seconds << "s\n";
    os.unsetf(std::ios::fixed);
    for (const SchemeCurve& curve : report.curves) {
        os << "  " << to_string(curve.scheme) << "  (fitted order ";
        if (std::isnan(curve.fitted_order))
            os << "n/a";
        else
            os << std::setprecision(3) << curve.fitted_order;
        os << ")\n";
        for (const SweepPoint& pt : curve.points) {
            os << "    " << std::scientific << std::setprecision(4)
               << pt.sweep_value << "  ->  " << pt.mean_error << "  (std "
               << pt.std_error << ", ok " << pt.n_ok << ", failed " << pt.n_failed
               << ")\n";
            os.unsetf(std::ios::scientific);
        }
    }
}

} // namespace dnls
