#pragma once
/*!
 * \file pipeline.hpp
 * \brief Orchestration behind the command-line tool: gen, check and plot.
 *
 * Every file written embeds the FNV-1a hash of the config bytes and the seed.
 * No timestamps or other run-dependent data are written, so repeated runs
 * with one config produce identical bytes.
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hullmetric.hpp"
#include "json_io.hpp"
#include "mef.hpp"
#include "meyer.hpp"
#include "modelset.hpp"
#include "pointset_io.hpp"
#include "returns.hpp"
#include "scalar.hpp"
#include "svg.hpp"
#include "window.hpp"

namespace meyerlab {

struct CliArgs {
    std::string command;
    std::string config;
    std::string out = ".";
    std::string which;
    std::string kind;
    std::string input;
};

/// 2 for configuration, schema and scheme-construction problems, 3 for
/// failures of the mathematics on valid input.
inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ConfigError:
        case ErrorKind::ParseError:
        case ErrorKind::IoError:
        case ErrorKind::SingularBasis:
        case ErrorKind::InjectivityFailure:
        case ErrorKind::DensityFailure:
        case ErrorKind::InvalidWindow:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::InvalidArgument:
            return 2;
        default:
            return 3;
    }
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <Scalar S>
Json envelope(const RunConfig<S>& rc, const std::string& command) {
    Json j;
    j["format"] = "meyerlab v1";
    j["command"] = command;
    j["config_hash"] = rc.hash;
    j["seed"] = rc.seed;
    j["mode"] = rc.mode.to_string();
    return j;
}

inline std::string csv_comment(const std::string& what, const std::string& hash, std::uint64_t seed) {
    return "# meyerlab " + what + " v1; config=" + hash + "; seed=" + std::to_string(seed) + "\n";
}

template <Scalar S>
int run_gen(const RunConfig<S>& rc, const std::filesystem::path& out, std::ostream& err) {
    const auto ps = generate(rc.scheme, rc.window, rc.region);
    if (ps.size() == 0) err << "warning: the region contains no points\n";
    save_pointset(ps, (out / "pointset.tsv").string(), rc.hash);
    Json j = envelope(rc, "gen");
    j["points"] = ps.size();
    j["region"] = box_to_json(rc.region);
    j["window"] = window_to_json(rc.window);
    j["nonsingular"] = verdict_to_json(is_nonsingular(rc.scheme, rc.window, rc.probe_radius));
    if (ps.d == 1 && ps.size() >= 2) {
        Json gaps = Json::array();
        for (const auto& g : gap_set(ps)) gaps.push_back(scalar_to_json(g));
        j["gaps"] = gaps;
    }
    write_file(out / "gen_summary.json", dump(j));
    return 0;
}

template <Scalar S>
int run_check(const RunConfig<S>& rc, const CliArgs& args, const std::filesystem::path& out, std::ostream& err) {
    const bool from_file = !args.input.empty();
    const PointSet<S> ps = from_file ? load_pointset<S>(args.input) : generate(rc.scheme, rc.window, rc.region);
    Json j = envelope(rc, "check");
    j["which"] = args.which;
    j["points"] = ps.size();
    j["source"] = from_file ? "file" : "config";
    if (ps.source.resorted) err << "warning: input points were not sorted; re-sorted\n";

    if (args.which == "meyer") {
        const auto rep = meyer_cover(ps, rc.budget);
        j["pass"] = rep.cover.has_value();
        j["witnesses"] = Json::array();
        j["covering_radius"] = scalar_to_json(rep.r_covering);
        j["validity"] = box_to_json(ps.region);
        j["r_packing"] = scalar_to_json(rep.r_packing);
        j["r_covering"] = scalar_to_json(rep.r_covering);
        j["budget"] = rep.budget;
        j["differences_tested"] = rep.differences_tested;
        if (rep.cover) {
            Json f = Json::array();
            for (const auto& p : *rep.cover) f.push_back(point_to_json(p));
            j["cover"] = f;
        } else {
            j["cover"] = "AbsentWithinBudget";
        }
    } else if (args.which == "schlottmann") {
        const auto v = check_schlottmann(ps, rc.K, rc.K_ladder);
        j["K"] = scalar_to_json(rc.K);
        j.update(verdict_to_json(v));
    } else if (args.which == "additivity" || (args.which == "aa" && from_file)) {
        const auto v = check_additivity(ps, rc.eps, rc.delta_ladder, rc.metric);
        j["eps"] = scalar_to_json(rc.eps);
        j.update(verdict_to_json(v));
        if (v.selected) j["delta"] = j["kprime"];
        if (args.which == "aa") {
            j["notes"].push_back("intrinsic mode: no torus for file input, additivity check only");
        }
        Json sets = envelope(rc, "check");
        sets["psets"] = Json::array({pset_to_json(p_epsilon(ps, rc.eps, rc.metric))});
        for (const auto& d : rc.delta_ladder) sets["psets"].push_back(pset_to_json(p_epsilon(ps, d, rc.metric)));
        write_file(out / "psets.json", dump(sets));
    } else if (args.which == "aa") {
        const TorusMap<S> tm(rc.scheme);
        const auto kern = kernel_check(ps, tm, rc.eps_ladder, rc.metric, KernelOptions{256, rc.seed});
        CorrelationOptions co;
        co.eta_ladder = rc.eta_ladder;
        co.eps_ladder.clear();
        for (const auto& e : rc.eps_ladder) co.eps_ladder.push_back(to_double(e));
        co.ball_radius = rc.ball_radius;
        co.random_points = rc.random_points;
        co.seed = rc.seed;
        const auto corr = aa_correlation(ps, tm, rc.metric, co);
        const auto veech = veech_fiber_estimate(ps, rc.eps_ladder, rc.ball_radius, rc.metric, rc.veech);
        j.update(verdict_to_json(kern.verdict));
        Json kernel = Json::array();
        for (const auto& t : kern.kernel) kernel.push_back(scalar_to_json(t));
        j["kernel"] = kernel;
        j["kernel_size"] = kern.kernel.size();
        j["survivors"] = kern.survivors.size();
        j["torus_bounds"] = kern.bounds;
        j["grid_survivors"] = kern.grid_survivors.size();
        j["eta_ladder"] = co.eta_ladder;
        j["forward_modulus"] = corr.forward;
        j["reverse_modulus"] = corr.reverse;
        Json vj = Json::array();
        for (const auto& l : veech) {
            vj.push_back(Json{{"eps", l.eps}, {"components", l.components}, {"family", l.family}, {"diameter", l.diameter}});
        }
        j["veech"] = vj;
        j["samples"] = corr.samples.size();

        std::string csv = csv_comment("correlation", rc.hash, rc.seed) + "t,torus_dist,pattern_dist\n";
        for (const auto& s : corr.samples) {
            csv += ScalarTraits<double>::format(to_double(s.t)) + "," + ScalarTraits<double>::format(s.torus) + "," +
                   ScalarTraits<double>::format(s.pattern) + "\n";
        }
        write_file(out / "correlation.csv", csv);
        std::string mod = csv_comment("moduli", rc.hash, rc.seed) + "ladder,param,value\n";
        for (std::size_t i = 0; i < co.eta_ladder.size(); ++i) {
            mod += "forward," + ScalarTraits<double>::format(co.eta_ladder[i]) + "," +
                   ScalarTraits<double>::format(corr.forward[i]) + "\n";
        }
        for (std::size_t i = 0; i < co.eps_ladder.size(); ++i) {
            mod += "reverse," + ScalarTraits<double>::format(co.eps_ladder[i]) + "," +
                   ScalarTraits<double>::format(corr.reverse[i]) + "\n";
        }
        for (const auto& l : veech) {
            mod += "veech," + ScalarTraits<double>::format(l.eps) + "," + ScalarTraits<double>::format(l.diameter) + "\n";
        }
        write_file(out / "moduli.csv", mod);
    } else {
        throw Error(ErrorKind::ConfigError, "unknown check '" + args.which + "' (meyer|schlottmann|additivity|aa)");
    }
    write_file(out / ("check_" + args.which + ".json"), dump(j));
    return 0;
}

template <Scalar S>
int run_with(const Json& cfg, const std::string& hash, const CliArgs& args, std::ostream& err) {
    const auto rc = run_config_from_json<S>(cfg, hash);
    std::filesystem::path out(args.out);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + out.string());
    if (args.command == "gen") return run_gen(rc, out, err);
    return run_check(rc, args, out, err);
}

inline double loose_number(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return QuadraticNumber::parse(j.get<std::string>(), 0).to_double();
    if (j.is_array() && j.size() == 2) return loose_number(j[0]) + loose_number(j[1]) * std::sqrt(5.0);
    throw Error(ErrorKind::ParseError, "not a number: " + j.dump());
}

inline int run_plot(const CliArgs& args, std::ostream& err) {
    if (args.kind != "patch" && args.kind != "returns" && args.kind != "moduli") {
        throw Error(ErrorKind::ConfigError, "unknown plot kind '" + args.kind + "' (patch|returns|moduli)");
    }
    if (args.input.empty()) throw Error(ErrorKind::ConfigError, "plot needs --input");
    const std::string text = read_file(args.input);
    std::string hash = args.config.empty() ? fnv1a_hex(text) : fnv1a_hex(read_file(args.config));
    const std::string comment = "meyerlab plot v1; kind=" + args.kind + "; config=" + hash;
    std::string svg_text;
    bool empty = false;
    if (args.kind == "patch") {
        std::vector<std::vector<double>> pts;
        if (text.find("mode=float") != std::string::npos) {
            for (const auto& p : parse_pointset<double>(text).points) pts.push_back(p);
        } else {
            for (const auto& p : parse_pointset<QuadraticNumber>(text).points) {
                std::vector<double> q;
                for (const auto& x : p) q.push_back(x.to_double());
                pts.push_back(q);
            }
        }
        empty = pts.empty();
        svg_text = svg::points_plot(pts, comment);
    } else if (args.kind == "returns") {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
        std::vector<std::pair<double, std::vector<std::pair<double, double>>>> rows;
        const Json sets = j.contains("psets") ? j["psets"] : Json::array({j});
        for (const auto& s : sets) {
            std::vector<std::pair<double, double>> comps;
            for (const auto& c : s.at("components")) comps.emplace_back(loose_number(c[0]), loose_number(c[1]));
            rows.emplace_back(loose_number(s.at("eps")), std::move(comps));
        }
        empty = rows.empty();
        svg_text = svg::interval_rows(rows, comment);
    } else {
        std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> curves;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("ladder,", 0) == 0) continue;
            const auto cells = split(line, ',');
            if (cells.size() != 3) throw Error(ErrorKind::ParseError, "moduli line '" + line + "' needs 3 columns");
            auto it = std::find_if(curves.begin(), curves.end(), [&](const auto& c) { return c.first == cells[0]; });
            if (it == curves.end()) {
                curves.emplace_back(cells[0], std::vector<std::pair<double, double>>{});
                it = curves.end() - 1;
            }
            it->second.emplace_back(std::stod(cells[1]), std::stod(cells[2]));
        }
        empty = curves.empty();
        svg_text = svg::log_curves(curves, comment);
    }
    if (empty) err << "warning: empty input, axes only\n";
    std::filesystem::path out(args.out);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    write_file(out / ("plot_" + args.kind + ".svg"), svg_text);
    return 0;
}

}  // namespace detail

/// Runs one command; returns the process exit code and reports errors on `err`.
inline int run_cli(const CliArgs& args, std::ostream& err) {
    try {
        if (args.command == "plot") return detail::run_plot(args, err);
        if (args.command != "gen" && args.command != "check") {
            throw Error(ErrorKind::ConfigError, "unknown command '" + args.command + "'");
        }
        if (args.config.empty()) throw Error(ErrorKind::ConfigError, "--config is required");
        if (args.command == "check" && args.which.empty()) throw Error(ErrorKind::ConfigError, "check needs --which");
        std::string raw;
        const Json cfg = read_json_file(args.config, &raw);
        const std::string hash = fnv1a_hex(raw);
        const Mode mode = mode_from_config(cfg);
        if (mode.is_exact()) return detail::run_with<QuadraticNumber>(cfg, hash, args, err);
        return detail::run_with<double>(cfg, hash, args, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace meyerlab
