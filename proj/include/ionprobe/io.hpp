#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ionprobe/analysis.hpp"
#include "ionprobe/domain.hpp"

namespace ionprobe::io {

/// Shortest representation that round-trips a double exactly (17
/// significant digits, C locale, '.' decimal point).
std::string format_double(double value);

enum class FileFormat { csv, json };

/// Pick a format from a path extension (".json" -> json, else csv).
FileFormat format_from_path(const std::filesystem::path& path);

void write_scan_csv(std::ostream& out, const FringeSignal& signal);
void write_scan_json(std::ostream& out, const FringeSignal& signal);
FringeSignal read_scan_csv(std::istream& in);
FringeSignal read_scan_json(std::istream& in);

void write_scan_file(const std::filesystem::path& path,
                     const FringeSignal& signal, FileFormat format);
FringeSignal read_scan_file(const std::filesystem::path& path);

/// Versioned JSON rendering of a cross-check report.
std::string report_to_json(const analysis::VisibilityReport& report);

}  // namespace ionprobe::io
