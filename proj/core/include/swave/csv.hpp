#pragma once

#include <string>
#include <vector>

#include "swave/experiments.hpp"
#include "swave/observables.hpp"

namespace swave {

/// Format with 17 significant digits so a write/read round trip is exact.
std::string format_full(double x);

/// Header: scheme,h,k,component,rmse,stderr,M,status
/// status is "ok" or "exploded"; exploded rows leave rmse/stderr empty.
std::string error_table_csv(const ErrorTable& table);
void write_error_csv(const std::string& path, const ErrorTable& table);
ErrorTable read_error_csv(const std::string& path);

/// Header: scheme,t,energy,stderr,exact_energy
std::string energy_csv(const std::vector<EnergyCurve>& curves);
void write_energy_csv(const std::string& path, const std::vector<EnergyCurve>& curves);
std::vector<EnergyCurve> read_energy_csv(const std::string& path);

/// Header: k,d1_msq,d1_stderr,d2_msq,d2_stderr
std::string defect_csv(const std::vector<DefectRow>& rows);
void write_defect_csv(const std::string& path, const std::vector<DefectRow>& rows);

}  // namespace swave
