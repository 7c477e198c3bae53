#include "ionprobe/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ionprobe::io {

namespace {

constexpr int kScanSchemaVersion = 1;
constexpr int kReportSchemaVersion = 1;

using nlohmann::json;

json metadata_to_json(const ScanMetadata& meta) {
    json extra = json::object();
    for (const auto& [key, value] : meta.extra) extra[key] = value;
    return json{{"model", meta.model},
                {"wavenumber_per_m", meta.wavenumber},
                {"mean_signal", meta.mean_signal},
                {"extra", extra}};
}

ScanMetadata metadata_from_json(const json& j) {
    ScanMetadata meta;
    meta.model = j.value("model", "");
    meta.wavenumber = j.value("wavenumber_per_m", 0.0);
    meta.mean_signal = j.value("mean_signal", 0.0);
    if (j.contains("extra")) {
        for (const auto& [key, value] : j.at("extra").items()) {
            meta.extra.emplace_back(key, value.get<double>());
        }
    }
    return meta;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

FileFormat format_from_path(const std::filesystem::path& path) {
    return path.extension() == ".json" ? FileFormat::json : FileFormat::csv;
}

void write_scan_csv(std::ostream& out, const FringeSignal& signal) {
    const ScanMetadata& meta = signal.metadata();
    out << "# ionprobe-scan v" << kScanSchemaVersion << "\n";
    out << "# model=" << meta.model << "\n";
    out << "# wavenumber_per_m=" << format_double(meta.wavenumber) << "\n";
    out << "# mean_signal=" << format_double(meta.mean_signal) << "\n";
    for (const auto& [key, value] : meta.extra) {
        out << "# " << key << "=" << format_double(value) << "\n";
    }
    out << "position_m,signal_counts_per_s,position_nm\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const double x = signal.positions()[i];
        out << format_double(x) << ',' << format_double(signal.signals()[i])
            << ',' << format_double(x * 1e9) << "\n";
    }
}

FringeSignal read_scan_csv(std::istream& in) {
    ScanMetadata meta;
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            key.erase(key.find_last_not_of(' ') + 1);
            const std::string value = line.substr(eq + 1);
            if (key == "model") {
                meta.model = value;
            } else if (key == "wavenumber_per_m") {
                meta.wavenumber = std::stod(value);
            } else if (key == "mean_signal") {
                meta.mean_signal = std::stod(value);
            } else {
                meta.extra.emplace_back(key, std::stod(value));
            }
            continue;
        }
        if (!header_seen) {  // column header row
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ',')) continue;
        const double x = std::stod(cell);
        if (!std::getline(row, cell, ',')) {
            throw std::invalid_argument("malformed CSV row: " + line);
        }
        xs.push_back(x);
        ys.push_back(std::stod(cell));
    }
    if (xs.empty()) {
        throw std::invalid_argument("scan file contains no samples");
    }
    return FringeSignal(std::move(xs), std::move(ys), std::move(meta));
}

void write_scan_json(std::ostream& out, const FringeSignal& signal) {
    json j = metadata_to_json(signal.metadata());
    j["schema_version"] = kScanSchemaVersion;
    j["kind"] = "scan";
    j["positions_m"] =
        std::vector<double>(signal.positions().begin(), signal.positions().end());
    j["signals"] =
        std::vector<double>(signal.signals().begin(), signal.signals().end());
    out << j.dump(2) << "\n";
}

FringeSignal read_scan_json(std::istream& in) {
    json j = json::parse(in);
    auto xs = j.at("positions_m").get<std::vector<double>>();
    auto ys = j.at("signals").get<std::vector<double>>();
    return FringeSignal(std::move(xs), std::move(ys), metadata_from_json(j));
}

void write_scan_file(const std::filesystem::path& path,
                     const FringeSignal& signal, FileFormat format) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open " + path.string() +
                                    " for writing");
    }
    if (format == FileFormat::csv) {
        write_scan_csv(out, signal);
    } else {
        write_scan_json(out, signal);
    }
    if (!out.good()) {
        throw std::runtime_error("failed while writing " + path.string());
    }
}

FringeSignal read_scan_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    return format_from_path(path) == FileFormat::csv ? read_scan_csv(in)
                                                     : read_scan_json(in);
}

std::string report_to_json(const analysis::VisibilityReport& report) {
    json paths = json::object();
    for (const auto& path : report.paths) {
        json p = json::object();
        if (path.value) {
            p["value"] = *path.value;
        } else {
            p["error"] = path.error;
        }
        if (path.statistical) p["standard_error"] = path.standard_error;
        paths[path.name] = std::move(p);
    }

    json deviations = json::array();
    for (const auto& dev : report.deviations) {
        deviations.push_back(json{{"a", dev.a},
                                  {"b", dev.b},
                                  {"deviation", dev.deviation},
                                  {"tolerance", dev.tolerance},
                                  {"statistical", dev.statistical},
                                  {"pass", dev.pass}});
    }

    json j{{"schema_version", kReportSchemaVersion},
           {"kind", "cross-check"},
           {"parameters",
            {{"wavenumber_per_m", report.wavenumber},
             {"sigma0_m", report.sigma0},
             {"nbar", report.nbar},
             {"sigma_m", report.sigma},
             {"eta", report.eta}}},
           {"seed", report.seed},
           {"mc_samples", report.mc_samples},
           {"paths", std::move(paths)},
           {"deviations", std::move(deviations)},
           {"pass", report.pass},
           {"notes", report.notes}};
    return j.dump(2);
}

}  // namespace ionprobe::io
