#pragma once

// CSV (RFC 4180, 17 significant digits), JSON files and SVG line charts.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/diagnostics.hpp"
#include "wavelab/profiles.hpp"

namespace wavelab {

/// Shortest round-trip-safe text for a double ("%.17g"; nan/inf spelled out).
std::string format_double(double x);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& fields);
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    std::size_t columns_;
};

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

/// xi, v, u, v_xi, u_xi for every table node.
void write_profile_csv(const std::filesystem::path& path, const ProfileTable& table);

struct Series {
    std::string name;
    std::vector<double> y;
};

/// Line chart of one or more series against x; log_y drops non-positive points.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::string& x_label, const std::vector<double>& x,
                     const std::vector<Series>& series, bool log_y);

}  // namespace wavelab
