#ifndef PQHARM_IO_HPP
#define PQHARM_IO_HPP

// JSON encodings. Readers reject unknown keys and throw FormatError on any schema violation.
//
//   series:   {"ell": 3, "truncation": 12, "a": {"4": [re, im]}, "b": {"3": [re, im]}}
//   operator: {"p": 0.9, "q": 0.5, "ell": 3, "delta": 1.0, "t": 1}
//   class:    {"operator": {...}, "sigma": 0.3}
//   grid:     {"r_values": [...], "angles_per_radius": 256, "r_max": 0.995}
//             or {"radii": 64, "angles_per_radius": 256, "r_max": 0.995} for the uniform schedule

#include <filesystem>
#include <string>

#include "json.hpp"

#include "pqharm/classcheck.hpp"
#include "pqharm/verify.hpp"

namespace pqharm::io {

using json = nlohmann::ordered_json;

json to_json(const HarmonicSeriesd& f);
HarmonicSeriesd series_from_json(const json& j);

json to_json(const OperatorParamsd& op);
OperatorParamsd operator_from_json(const json& j);

json to_json(const ClassParamsd& cp);
ClassParamsd class_from_json(const json& j);

json to_json(const DiskGrid& grid);
DiskGrid grid_from_json(const json& j);

json to_json(const MembershipReport<double>& report);

json to_json(const verify::SuiteConfig& config);
verify::SuiteConfig suite_config_from_json(const json& j);

json to_json(const verify::TrialReport& trial);
json to_json(const verify::SuiteReport& report);

json complex_to_json(std::complex<double> z);

/// Parses a file; FormatError on I/O or syntax errors.
json read_json_file(const std::filesystem::path& path);
/// Writes `j.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);

/// report-<suite>-<seed>.json
std::string report_file_name(verify::Suite suite, std::uint64_t seed);

}  // namespace pqharm::io

#endif  // PQHARM_IO_HPP
