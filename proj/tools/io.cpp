#include "io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sle/error.hpp"

namespace sle::io {

std::string code_version() { return SLE_VERSION; }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::complex<double> parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) fail(ErrorKind::domain, "expected RE,IM but got '" + text + "'");
    auto number = [&](std::string_view s) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) fail(ErrorKind::domain, "not a number: '" + std::string(s) + "'");
        return v;
    };
    const std::string_view all(text);
    return {number(all.substr(0, comma)), number(all.substr(comma + 1))};
}

nlohmann::ordered_json RunManifest::to_json() const {
    return {{"schema", schema},         {"command", command},
            {"parameters", parameters}, {"code_version", code_version()},
            {"outputs", outputs},       {"status", ok ? "ok" : "failed"},
            {"error_count", error_count}};
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    return output.string() + ".manifest.json";
}

static std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
    return out;
}

static void close_out(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) fail(ErrorKind::io, "write to '" + path.string() + "' failed");
}

void write_manifest(const RunManifest& m, const std::filesystem::path& output) {
    const auto p = manifest_path(output);
    auto out = open_out(p);
    out << m.to_json().dump(2) << '\n';
    close_out(out, p);
}

void write_grid(const densities::DensityGrid& g, const std::filesystem::path& path, const std::string& command) {
    auto out = open_out(path);
    out << "# " << schema << " kind=" << densities::to_string(g.kind) << " kappa=" << format_double(g.kappa)
        << " L=" << format_double(g.L) << '\n';
    out << "x,y,value\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out << format_double(g.xs[i]) << ',' << format_double(g.ys[j]) << ','
                << format_double(g.values[std::size_t(j) * g.nx + i]) << '\n';
    close_out(out, path);

    RunManifest m;
    m.command = command;
    m.parameters = {{"kind", densities::to_string(g.kind)},
                    {"kappa", g.kappa},
                    {"L", g.L},
                    {"region", {g.region.xmin, g.region.xmax, g.region.ymin, g.region.ymax}},
                    {"resolution", {g.nx, g.ny}},
                    {"normalization", g.normalization}};
    m.outputs = {path.string()};
    m.error_count = g.error_count;
    m.ok = g.error_count == 0;
    write_manifest(m, path);
}

ParsedGrid read_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "'");
    ParsedGrid g;
    std::string line;
    std::getline(in, line);
    std::istringstream head(line);
    std::string hash, tag, field;
    head >> hash >> tag;
    if (hash != "#" || tag != schema) fail(ErrorKind::io, "missing '" + std::string(schema) + "' header");
    while (head >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const auto key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "kind") g.kind = val;
        else if (key == "kappa") g.kappa = std::stod(val);
        else if (key == "L") g.L = std::stod(val);
    }
    std::getline(in, line);
    if (line != "x,y,value") fail(ErrorKind::io, "missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v[3];
        const char* p = line.data();
        const char* end = p + line.size();
        for (int k = 0; k < 3; ++k) {
            const auto r = std::from_chars(p, end, v[k]);
            if (r.ec != std::errc()) {
                // from_chars rejects "nan"/"inf" spellings produced by printf on some platforms
                v[k] = std::strtod(p, nullptr);
                p = std::find(p, end, ',');
            } else {
                p = r.ptr;
            }
            if (k < 2) {
                if (p == end || *p != ',') fail(ErrorKind::io, "malformed row: '" + line + "'");
                ++p;
            }
        }
        g.x.push_back(v[0]);
        g.y.push_back(v[1]);
        g.value.push_back(v[2]);
    }
    return g;
}

nlohmann::ordered_json to_json(const mc::McEstimate& e) {
    nlohmann::ordered_json probes = nlohmann::ordered_json::array();
    for (const auto& p : e.probes) probes.push_back({p.real(), p.imag()});
    return {{"probes", probes},
            {"means", e.means},
            {"std_errors", e.std_errors},
            {"seed", e.seed},
            {"n_samples", e.n_samples}};
}

mc::McEstimate estimate_from_json(const nlohmann::json& j) {
    mc::McEstimate e;
    try {
        for (const auto& p : j.at("probes")) e.probes.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        e.means = j.at("means").get<std::vector<double>>();
        e.std_errors = j.at("std_errors").get<std::vector<double>>();
        e.seed = j.at("seed").get<std::uint64_t>();
        e.n_samples = j.at("n_samples").get<long>();
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::io, std::string("malformed estimate: ") + ex.what());
    }
    if (e.means.size() != e.probes.size() || e.std_errors.size() != e.probes.size())
        fail(ErrorKind::io, "malformed estimate: probes, means and std_errors differ in length");
    return e;
}

void write_estimate(const mc::McEstimate& e, const std::filesystem::path& path, RunManifest manifest) {
    auto j = to_json(e);
    j["kind"] = manifest.parameters.value("mode", "");
    j["parameters"] = manifest.parameters;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    close_out(out, path);
    manifest.outputs = {path.string()};
    write_manifest(manifest, path);
}

mc::McEstimate read_estimate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::io, std::string("invalid JSON in '") + path.string() + "': " + ex.what());
    }
    return estimate_from_json(j);
}

}  // namespace sle::io
