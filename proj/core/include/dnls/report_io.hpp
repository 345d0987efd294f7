#pragma once

#include "dnls/harness.hpp"

#include <iosfwd>
#include <string>

namespace dnls {

/// CSV: scheme,sweep_value,mean_error,std_error,n_ok,n_failed
void write_report_csv(const ConvergenceReport& report, std::ostream& os);
void write_report_csv(const ConvergenceReport& report, const std::string& path);

/// Full-metadata JSON document for a convergence run.
void write_report_json(const ConvergenceReport& report, const ExperimentSpec& spec,
                       std::ostream& os);
void write_report_json(const ConvergenceReport& report, const ExperimentSpec& spec,
                       const std::string& path);

/// CSV: l_or_x,value,time — shared by mode-decay curves and |u| snapshots.
void write_decay_csv(const DecayCurves& curves, std::ostream& os);
void write_decay_csv(const DecayCurves& curves, const std::string& path);

void write_snapshots_csv(const LocalizationResult& result, std::ostream& os);
void write_snapshots_csv(const LocalizationResult& result, const std::string& path);

void write_mass_csv(const LocalizationResult& result, std::ostream& os);
void write_mass_csv(const LocalizationResult& result, const std::string& path);

/// Human-readable table of errors and fitted orders.
void print_report_summary(const ConvergenceReport& report, std::ostream& os);

} // namespace dnls
