#pragma once
/*!
 * \file json_io.hpp
 * \brief Run configuration and JSON encodings of schemes, windows and results.
 *
 * Scalars in JSON may be a number (read as its shortest decimal, so 0.05 is
 * exactly 1/20), a string ("1/2+1/2√5", "-3/7", "2.5e-3"), or a pair [a, b]
 * meaning a + b√D. Exact results are written as strings, float results as numbers.
 *
 * Config keys:
 *
 *     scheme        "fibonacci" | "integers" | {preset, mode, tolerance}
 *                   | {d, m, mode: "exact"|"float", D, tolerance, basis}
 *     window        {boxes: [{lo, hi, lo_closed, hi_closed}]}   (omit when m = 0)
 *     region        {lo: [...], hi: [...]}
 *     K, K_ladder, eps, delta_ladder, eta_ladder, eps_ladder,
 *     budget, probe_radius, ball_radius, metric {cap, pitch}, seed,
 *     random_points, veech {family, components, fraction}
 */

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "box.hpp"
#include "errors.hpp"
#include "hullmetric.hpp"
#include "intervals.hpp"
#include "mef.hpp"
#include "returns.hpp"
#include "scalar.hpp"
#include "scheme.hpp"
#include "verdict.hpp"
#include "window.hpp"

namespace meyerlab {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

template <Scalar S>
S scalar_from_json(const Json& j, const Mode& mode) {
    try {
        if (j.is_number_integer()) return ScalarTraits<S>::from_int(j.get<std::int64_t>());
        if (j.is_number()) return ScalarTraits<S>::from_double(j.get<double>());
        if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>(), mode);
        if (j.is_array() && j.size() == 2) {
            auto part = [&](const Json& x) -> Rational {
                if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
                if (x.is_number()) return Rational::from_double_decimal(x.get<double>());
                if (x.is_string()) return Rational::parse(x.get<std::string>());
                throw Error(ErrorKind::ConfigError, "bad scalar component " + x.dump());
            };
            const Rational a = part(j[0]);
            const Rational b = part(j[1]);
            if constexpr (ScalarTraits<S>::exact) {
                if (b.is_zero()) return S(a);
                if (!mode.is_exact()) throw Error(ErrorKind::ConfigError, "[a, b] scalar needs exact mode");
                return S(a, b, mode.D);
            } else {
                return a.to_double() + b.to_double() * std::sqrt(static_cast<double>(mode.D ? mode.D : 5));
            }
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        throw Error(ErrorKind::ConfigError, std::string("bad scalar ") + j.dump() + ": " + e.what());
    }
    throw Error(ErrorKind::ConfigError, "bad scalar " + j.dump());
}

template <Scalar S>
Json scalar_to_json(const S& x) {
    if constexpr (ScalarTraits<S>::exact) {
        return x.to_string();
    } else {
        return x;
    }
}

template <Scalar S>
Json point_to_json(const Point<S>& p) {
    if (p.size() == 1) return scalar_to_json(p[0]);
    Json a = Json::array();
    for (const auto& x : p) a.push_back(scalar_to_json(x));
    return a;
}

template <Scalar S>
Json box_to_json(const Box<S>& b) {
    if (b.dim() == 1) return Json::array({scalar_to_json(b.lo[0]), scalar_to_json(b.hi[0])});
    return Json{{"lo", point_to_json(b.lo)}, {"hi", point_to_json(b.hi)}};
}

template <Scalar S>
std::vector<S> scalar_list(const Json& j, const Mode& mode, const std::string& key) {
    if (!j.is_array()) throw Error(ErrorKind::ConfigError, key + " must be an array");
    std::vector<S> out;
    for (const auto& x : j) out.push_back(scalar_from_json<S>(x, mode));
    return out;
}

/// Parses the scheme block; the resulting mode decides the scalar type.
inline Mode mode_from_config(const Json& cfg) {
    if (!cfg.contains("scheme")) throw Error(ErrorKind::ConfigError, "config lacks 'scheme'");
    const auto& s = cfg["scheme"];
    if (s.is_string()) return Mode::exact(5);
    if (!s.is_object()) throw Error(ErrorKind::ConfigError, "'scheme' must be a string or an object");
    const std::string kind = s.value("mode", std::string("exact"));
    if (kind == "exact") {
        const int D = s.value("D", 5);
        try {
            return Mode::exact(D);
        } catch (const Error& e) {
            throw Error(ErrorKind::ConfigError, e.what());
        }
    }
    if (kind == "float") return Mode::floating(s.value("tolerance", 1e-9));
    throw Error(ErrorKind::ConfigError, "unknown mode '" + kind + "'");
}

template <Scalar S>
Scheme<S> scheme_from_json(const Json& s, const SchemeOptions& opts) {
    std::string preset;
    if (s.is_string()) preset = s.get<std::string>();
    else if (s.contains("preset")) preset = s["preset"].get<std::string>();
    if (preset == "fibonacci") return fibonacci_scheme<S>(opts);
    if (preset == "integers") return integer_scheme<S>(opts);
    if (!preset.empty()) throw Error(ErrorKind::ConfigError, "unknown scheme preset '" + preset + "'");
    const Mode mode = mode_from_config(Json{{"scheme", s}});
    if (!s.contains("d") || !s.contains("basis")) throw Error(ErrorKind::ConfigError, "scheme needs d and basis");
    const auto d = s["d"].get<std::size_t>();
    const auto m = s.value("m", std::size_t{0});
    Matrix<S> basis;
    for (const auto& row : s["basis"]) basis.push_back(scalar_list<S>(row, mode, "basis row"));
    return build_scheme<S>(basis, d, m, mode, opts);
}

template <Scalar S>
Window<S> window_from_json(const Json& w, std::size_t m, const Mode& mode) {
    if (m == 0) return Window<S>(0, {});
    if (!w.is_object() || !w.contains("boxes")) throw Error(ErrorKind::ConfigError, "window needs 'boxes'");
    std::vector<WindowBox<S>> boxes;
    for (const auto& b : w["boxes"]) {
        WindowBox<S> box;
        box.lo = scalar_list<S>(b.at("lo"), mode, "lo");
        box.hi = scalar_list<S>(b.at("hi"), mode, "hi");
        box.lo_closed = b.contains("lo_closed") ? b["lo_closed"].get<std::vector<bool>>() : std::vector<bool>(box.lo.size(), true);
        box.hi_closed = b.contains("hi_closed") ? b["hi_closed"].get<std::vector<bool>>() : std::vector<bool>(box.hi.size(), true);
        boxes.push_back(std::move(box));
    }
    return Window<S>(m, std::move(boxes), mode.tol());
}

template <Scalar S>
Json window_to_json(const Window<S>& w) {
    Json boxes = Json::array();
    for (const auto& b : w.normal_form()) {
        Json lo = Json::array(), hi = Json::array();
        for (const auto& x : b.lo) lo.push_back(scalar_to_json(x));
        for (const auto& x : b.hi) hi.push_back(scalar_to_json(x));
        boxes.push_back(Json{{"lo", lo}, {"hi", hi}, {"lo_closed", b.lo_closed}, {"hi_closed", b.hi_closed}});
    }
    return Json{{"boxes", boxes}};
}

/// Everything a run needs, with defaults for absent keys.
template <Scalar S>
struct RunConfig {
    Json raw;
    std::string hash;
    Mode mode;
    Scheme<S> scheme;
    Window<S> window;
    Box<S> region;
    S K{};
    std::vector<S> K_ladder;
    S eps{};
    std::vector<S> delta_ladder;
    std::vector<double> eta_ladder;
    std::vector<S> eps_ladder;
    std::size_t budget = 64;
    S probe_radius{};
    double ball_radius = 20;
    MetricParams metric;
    std::uint64_t seed = 1;
    std::size_t random_points = 64;
    VeechOptions veech;
};

namespace detail {

template <Scalar S>
void require_monotone(const std::vector<S>& xs, bool ascending, const std::string& key) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const int c = cmp(xs[i - 1], xs[i], 0.0);
        if (ascending ? c >= 0 : c <= 0) {
            throw Error(ErrorKind::ConfigError, key + " must be strictly " + (ascending ? "increasing" : "decreasing"));
        }
    }
}

}  // namespace detail

template <Scalar S>
RunConfig<S> run_config_from_json(const Json& cfg, const std::string& hash) {
    RunConfig<S> rc;
    rc.raw = cfg;
    rc.hash = hash;
    rc.mode = mode_from_config(cfg);
    SchemeOptions so;
    if (cfg.contains("probe")) {
        const auto& p = cfg["probe"];
        so.density_eta = p.value("density_eta", so.density_eta);
        so.density_physical_half = p.value("density_physical", so.density_physical_half);
        so.injectivity_half = p.value("injectivity", so.injectivity_half);
        so.enumeration_cap = p.value("enumeration_cap", so.enumeration_cap);
    }
    rc.scheme = scheme_from_json<S>(cfg.at("scheme"), so);
    rc.mode = rc.scheme.mode;
    const auto& mode = rc.mode;
    rc.window = window_from_json<S>(cfg.contains("window") ? cfg["window"] : Json(), rc.scheme.m, mode);
    if (!cfg.contains("region")) throw Error(ErrorKind::ConfigError, "config lacks 'region'");
    rc.region.lo = scalar_list<S>(cfg["region"].at("lo"), mode, "region.lo");
    rc.region.hi = scalar_list<S>(cfg["region"].at("hi"), mode, "region.hi");
    if (rc.region.dim() != rc.scheme.d) throw Error(ErrorKind::ConfigError, "region dimension differs from d");

    auto get = [&](const char* key, const Json& fallback) { return cfg.contains(key) ? cfg[key] : fallback; };
    rc.K = scalar_from_json<S>(get("K", 2), mode);
    rc.K_ladder = scalar_list<S>(get("K_ladder", Json::array({2, 5, 10, 20, 50})), mode, "K_ladder");
    rc.eps = scalar_from_json<S>(get("eps", 0.05), mode);
    rc.delta_ladder = scalar_list<S>(get("delta_ladder", Json::array({0.025, 0.0125, 0.00625})), mode, "delta_ladder");
    rc.eps_ladder = scalar_list<S>(get("eps_ladder", Json::array({0.1, 0.05, 0.025, 0.0125})), mode, "eps_ladder");
    rc.eta_ladder = get("eta_ladder", Json::array({0.1, 0.05, 0.025, 0.0125})).template get<std::vector<double>>();
    rc.budget = get("budget", 64).template get<std::size_t>();
    rc.probe_radius = scalar_from_json<S>(get("probe_radius", 100), mode);
    rc.ball_radius = get("ball_radius", 20).template get<double>();
    rc.seed = get("seed", 1).template get<std::uint64_t>();
    rc.random_points = get("random_points", 64).template get<std::size_t>();
    if (cfg.contains("metric")) {
        rc.metric.cap = cfg["metric"].value("cap", rc.metric.cap);
        rc.metric.pitch = cfg["metric"].value("pitch", rc.metric.pitch);
    }
    if (cfg.contains("veech")) {
        rc.veech.family = cfg["veech"].value("family", rc.veech.family);
        rc.veech.components = cfg["veech"].value("components", rc.veech.components);
        rc.veech.fraction = cfg["veech"].value("fraction", rc.veech.fraction);
    }
    try {
        rc.metric.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::ConfigError, e.what());
    }
    detail::require_monotone(rc.K_ladder, true, "K_ladder");
    detail::require_monotone(rc.delta_ladder, false, "delta_ladder");
    detail::require_monotone(rc.eps_ladder, false, "eps_ladder");
    detail::require_monotone(rc.eta_ladder, false, "eta_ladder");
    if (rc.budget == 0) throw Error(ErrorKind::ConfigError, "budget must be positive");
    return rc;
}

inline Json read_json_file(const std::string& path, std::string* raw_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (raw_out) *raw_out = buf.str();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, path + ": " + e.what());
    }
}

template <Scalar S>
Json verdict_to_json(const Verdict<S>& v) {
    Json j;
    j["check"] = v.check;
    j["pass"] = v.pass;
    if (v.selected) j["kprime"] = scalar_to_json(*v.selected);
    Json w = Json::array();
    for (const auto& x : v.witnesses) {
        Json pair = Json::array({point_to_json(x.t1), x.t2.empty() ? Json() : point_to_json(x.t2)});
        w.push_back(pair);
    }
    j["witnesses"] = w;
    j["covering_radius"] = v.covering_radius ? scalar_to_json(*v.covering_radius) : Json();
    j["validity"] = box_to_json(v.validity);
    Json notes = Json::array();
    for (const auto& x : v.witnesses) {
        Json n{{"note", x.note}};
        if (x.value) n["direct_distance"] = *x.value;
        notes.push_back(n);
    }
    j["witness_notes"] = notes;
    Json cands = Json::array();
    for (const auto& c : v.candidates) {
        cands.push_back(Json{{"parameter", scalar_to_json(c.parameter)},
                             {"times", c.times},
                             {"tested_pairs", c.tested_pairs},
                             {"violations", c.violations},
                             {"relatively_dense", c.relatively_dense},
                             {"covering_radius", c.covering_radius ? scalar_to_json(*c.covering_radius) : Json()},
                             {"passed", c.passed}});
    }
    j["candidates"] = cands;
    Json parts = Json::object();
    for (const auto& [k, ok] : v.parts) parts[k] = ok;
    if (!v.parts.empty()) j["parts"] = parts;
    j["notes"] = v.notes;
    return j;
}

template <Scalar S>
Json pset_to_json(const ReturnSet<S>& rs) {
    Json comps = Json::array();
    for (const auto& c : rs.components) comps.push_back(Json::array({scalar_to_json(c.lo), scalar_to_json(c.hi)}));
    return Json{{"eps", scalar_to_json(rs.parameter)}, {"components", comps}, {"validity", box_to_json(rs.validity)}};
}

}  // namespace meyerlab
