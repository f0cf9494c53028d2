#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sle/densities.hpp"
#include "sle/lattice_mc.hpp"

namespace sle::io {

inline constexpr const char* schema = "sle-densities/v1";

std::string code_version();

// Shortest text that reads back as the same double.
std::string format_double(double v);

// "RE,IM" -> complex
std::complex<double> parse_complex(const std::string& text);

struct RunManifest {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::vector<std::string> outputs;
    bool ok = true;
    int error_count = 0;

    nlohmann::ordered_json to_json() const;
};

std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const RunManifest& m, const std::filesystem::path& output);

void write_grid(const densities::DensityGrid& grid, const std::filesystem::path& path, const std::string& command);

struct ParsedGrid {
    std::string kind;
    double kappa = 0.0, L = 0.0;
    std::vector<double> x, y, value;
};
ParsedGrid read_grid(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const mc::McEstimate& e);
mc::McEstimate estimate_from_json(const nlohmann::json& j);
void write_estimate(const mc::McEstimate& e, const std::filesystem::path& path, RunManifest manifest);
mc::McEstimate read_estimate(const std::filesystem::path& path);

}  // namespace sle::io
