#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "io.hpp"
#include "sle/densities.hpp"
#include "sle/error.hpp"
#include "sle/lattice_mc.hpp"
#include "sle/solutions.hpp"
#include "verify.hpp"

namespace sle::cli {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

namespace {

void emit(std::ostream& os, const json& j) { os << j.dump() << '\n'; }

json error_json(const std::string& kind, const std::string& message) {
    return {{"status", "error"}, {"error", kind}, {"message", message}};
}

json z_json(cplx z) { return json::array({z.real(), z.imag()}); }

densities::Kind require_kind(const std::string& name) {
    const auto k = densities::parse_kind(name);
    if (!k) fail(ErrorKind::domain, "unknown density kind '" + name + "'");
    return *k;
}

std::string joined(const std::vector<std::string>& args) {
    std::string s = "sle-densities";
    for (const auto& a : args) s += ' ' + a;
    return s;
}

}  // namespace

std::vector<cplx> default_connectivity_probes(int W) {
    const double R = W / 8.0;
    std::vector<cplx> p;
    for (double fy : {0.125, 0.25, 0.375, 0.5, 0.625})
        for (double fx : {-0.625, -0.3125, 0.0, 0.3125, 0.625}) p.emplace_back(fx * R, fy * R);
    return p;
}

std::vector<cplx> default_lpp_probes(int W) {
    const double r = W / 16.0;
    return {std::polar(r, 0.25 * std::numbers::pi), std::polar(r, 0.5 * std::numbers::pi),
            std::polar(r, 0.75 * std::numbers::pi)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster densities and SLE observables: evaluation, grids, verification, Monte Carlo", "sle-densities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::code_version());

    double kappa = 6.0, L = 1.0;
    std::string kind_name, z_text, out_path, mc_path;

    auto* constants = app.add_subcommand("constants", "structure constants as JSON");
    constants->add_option("--kappa", kappa, "SLE parameter")->required();

    auto* density = app.add_subcommand("density", "one density value");
    density->add_option("--kind", kind_name, "rho110|rho112|rho220|rho222_lower|rho224")->required();
    density->add_option("--kappa", kappa)->required();
    density->add_option("--L", L, "anchor separation")->required();
    density->add_option("--z", z_text, "bulk point RE,IM")->required();

    densities::Region region{};
    int nx = 0, ny = 0, threads = 0;
    auto* grid = app.add_subcommand("grid", "density on a cell-centred grid, written as CSV");
    grid->add_option("--kind", kind_name)->required();
    grid->add_option("--kappa", kappa)->required();
    grid->add_option("--L", L)->required();
    grid->add_option("--xmin", region.xmin)->required();
    grid->add_option("--xmax", region.xmax)->required();
    grid->add_option("--ymin", region.ymin)->required();
    grid->add_option("--ymax", region.ymax)->required();
    grid->add_option("--nx", nx)->required()->check(CLI::PositiveNumber);
    grid->add_option("--ny", ny)->required()->check(CLI::PositiveNumber);
    grid->add_option("--out", out_path)->required();
    grid->add_option("--threads", threads, "worker count (0 = automatic)")->check(CLI::NonNegativeNumber);

    auto* lpp = app.add_subcommand("lpp", "left-passage probability");
    lpp->add_option("--kappa", kappa)->required();
    lpp->add_option("--z", z_text)->required();

    auto* greens = app.add_subcommand("greens", "chordal Green's function, greens(i) = 1");
    greens->add_option("--kappa", kappa)->required();
    greens->add_option("--z", z_text)->required();

    std::vector<double> verify_kappas;
    auto* verify = app.add_subcommand("verify", "residual, crossing, invariant and constant checks");
    verify->add_option("--kappa", verify_kappas, "kappa values (default 5.3 and 6.7)");

    std::string mode;
    std::uint64_t seed = 0;
    long samples = 0;
    std::vector<int> box{512, 256};
    std::vector<std::string> probe_texts;
    auto* mc = app.add_subcommand("mc", "triangular-lattice site percolation Monte Carlo");
    mc->add_option("mode", mode, "connectivity|lpp")->required()->check(CLI::IsMember({"connectivity", "lpp"}));
    mc->add_option("--seed", seed)->required();
    mc->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
    mc->add_option("--box", box, "width height in sites")->expected(2);
    mc->add_option("--out", out_path)->required();
    mc->add_option("--probe", probe_texts, "RE,IM in lattice units (repeatable)");
    mc->add_option("--threads", threads)->check(CLI::NonNegativeNumber);

    auto* compare = app.add_subcommand("compare", "fit a Monte Carlo estimate against the closed form");
    compare->add_option("--mc", mc_path)->required();
    compare->add_option("--kind", kind_name, "density kind, or lpp")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << io::code_version() << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        emit(err, error_json("usage", e.what()));
        return usage;
    }

    try {
        if (*constants) {
            if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorKind::domain, "kappa must be positive");
            json j{{"kappa", kappa}, {"C_110", 1.0}};
            json undefined = json::object();
            const std::pair<const char*, double (*)(double)> items[] = {
                {"C_112", solutions::C112}, {"C_222", solutions::C222}, {"C_224", solutions::C224}};
            for (const auto& [name, fn] : items) {
                try {
                    j[name] = fn(kappa);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::pole && e.kind() != ErrorKind::domain) throw;
                    j[name] = nullptr;
                    undefined[name] = e.what();
                }
            }
            if (!undefined.empty()) j["undefined"] = undefined;
            emit(out, j);
        } else if (*density) {
            const auto kind = require_kind(kind_name);
            const cplx z = io::parse_complex(z_text);
            emit(out, {{"kind", kind_name}, {"kappa", kappa}, {"L", L}, {"z", z_json(z)},
                       {"value", densities::density(kind, L, z, kappa)}});
        } else if (*grid) {
            const auto kind = require_kind(kind_name);
            const auto g = densities::grid_eval(kind, kappa, L, region, nx, ny, threads);
            io::write_grid(g, out_path, joined(args));
            emit(out, {{"status", g.error_count == 0 ? "ok" : "failed"},
                       {"output", out_path},
                       {"manifest", io::manifest_path(out_path).string()},
                       {"error_count", g.error_count}});
            if (g.error_count > 0) return failure;
        } else if (*lpp) {
            const cplx z = io::parse_complex(z_text);
            emit(out, {{"kappa", kappa}, {"z", z_json(z)}, {"value", densities::left_passage(z, kappa)}});
        } else if (*greens) {
            const cplx z = io::parse_complex(z_text);
            emit(out, {{"kappa", kappa}, {"z", z_json(z)}, {"value", densities::greens(z, kappa)}});
        } else if (*verify) {
            if (verify_kappas.empty()) verify_kappas = {5.3, 6.7};
            const auto results = verify::run_suite(verify_kappas);
            json failed = json::array();
            for (const auto& r : results) {
                emit(out, {{"check", r.name}, {"status", verify::to_string(r.status)}, {"detail", r.detail},
                           {"seconds", r.seconds}});
                if (r.status == verify::Status::fail) failed.push_back(r.name);
            }
            if (!failed.empty()) {
                emit(err, {{"status", "error"}, {"error", "verification"}, {"failed", failed}});
                return verification;
            }
            emit(out, {{"status", "ok"}, {"checks", results.size()}});
        } else if (*mc) {
            mc::McConfig cfg;
            cfg.box_width = box[0];
            cfg.box_height = box[1];
            cfg.seed = seed;
            cfg.n_samples = samples;
            cfg.wired_interval = {-cfg.box_width / 16.0, cfg.box_width / 16.0};
            std::vector<cplx> probes;
            for (const auto& t : probe_texts) probes.push_back(io::parse_complex(t));
            if (probes.empty())
                probes = mode == "lpp" ? default_lpp_probes(cfg.box_width) : default_connectivity_probes(cfg.box_width);
            const auto est = mode == "lpp" ? mc::trace_interface_lpp(cfg, probes, threads)
                                           : mc::sample_connectivity(cfg, probes, threads);
            io::RunManifest m;
            m.command = joined(args);
            m.parameters = {{"mode", mode},
                            {"kappa", 6.0},
                            {"seed", seed},
                            {"n_samples", samples},
                            {"box", box},
                            {"spacing", cfg.spacing},
                            {"p", cfg.p}};
            if (mode == "connectivity") {
                m.parameters["wired_interval"] = {cfg.wired_interval.first, cfg.wired_interval.second};
                m.parameters["L"] = cfg.wired_interval.second - cfg.wired_interval.first;
            }
            io::write_estimate(est, out_path, m);
            emit(out, {{"status", "ok"}, {"output", out_path}, {"manifest", io::manifest_path(out_path).string()}});
        } else if (*compare) {
            std::ifstream in(mc_path);
            if (!in) fail(ErrorKind::io, "cannot open '" + mc_path + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                fail(ErrorKind::io, std::string("invalid JSON: ") + e.what());
            }
            const auto est = io::estimate_from_json(j);
            const auto params = j.value("parameters", nlohmann::json::object());
            const double k = params.value("kappa", 6.0);
            std::vector<double> formula;
            if (kind_name == "lpp") {
                for (const auto& p : est.probes) formula.push_back(densities::left_passage(p, k));
            } else {
                const auto kind = require_kind(kind_name);
                if (!params.contains("L")) fail(ErrorKind::domain, "estimate has no wired-interval length L");
                const double len = params.at("L").get<double>();
                for (const auto& p : est.probes) formula.push_back(densities::density(kind, len, p, k));
            }
            const auto fit = mc::fit_shape(est, formula);
            double max_rel = 0.0, max_z = 0.0;
            for (std::size_t i = 0; i < formula.size(); ++i) {
                max_rel = std::max(max_rel, std::abs(est.means[i] / formula[i] - 1.0));
                if (est.std_errors[i] > 0.0)
                    max_z = std::max(max_z, std::abs(est.means[i] - formula[i]) / est.std_errors[i]);
            }
            json jr{{"kind", kind_name}, {"constant", fit.constant}, {"rms_rel_error", fit.rms_rel_error},
                    {"n_samples", est.n_samples}, {"seed", est.seed}};
            if (kind_name == "lpp") {
                jr["max_rel_error_unfitted"] = max_rel;
                jr["max_z_unfitted"] = max_z;
            }
            emit(out, jr);
        }
    } catch (const Error& e) {
        emit(err, error_json(to_string(e.kind()), e.what()));
        return failure;
    } catch (const std::exception& e) {
        emit(err, error_json("internal", e.what()));
        return failure;
    }
    return ok;
}

}  // namespace sle::cli
