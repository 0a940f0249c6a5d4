#pragma once
/*!
 * \file pointset_io.hpp
 * \brief Text format for point sets.
 *
 *     # meyerlab pointset v1; d=1; mode=exact:D=5; region=[0|40]; source=model-set; desc=...; config=...
 *     0
 *     1+√5
 *
 * One point per line, coordinates tab-separated, exact values written as
 * a+b√D. `region` lists the low corner then the high corner, comma-separated
 * per axis. Lines starting with '#' after the header are ignored.
 */

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modelset.hpp"
#include "scalar.hpp"

namespace meyerlab {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline Mode parse_mode(const std::string& text) {
    if (text.rfind("exact:D=", 0) == 0) return Mode::exact(std::stoi(text.substr(8)));
    if (text.rfind("float:tol=", 0) == 0) return Mode::floating(std::stod(text.substr(10)));
    throw Error(ErrorKind::ParseError, "unknown mode '" + text + "'");
}

// Header values must not contain the field separator.
inline std::string sanitize(std::string s) {
    for (auto& c : s) {
        if (c == ';' || c == '\n' || c == '\r') c = ',';
    }
    return s;
}

}  // namespace detail

template <Scalar S>
std::string format_pointset(const PointSet<S>& ps, const std::string& config_hash = "") {
    std::ostringstream out;
    out << "# meyerlab pointset v1; d=" << ps.d << "; mode=" << ps.mode.to_string() << "; region=[";
    for (std::size_t i = 0; i < ps.d; ++i) out << (i ? "," : "") << ScalarTraits<S>::format(ps.region.lo[i]);
    out << "|";
    for (std::size_t i = 0; i < ps.d; ++i) out << (i ? "," : "") << ScalarTraits<S>::format(ps.region.hi[i]);
    out << "]; source=" << detail::sanitize(ps.source.kind);
    if (!ps.source.description.empty()) out << "; desc=" << detail::sanitize(ps.source.description);
    if (ps.source.resorted) out << "; resorted=1";
    if (!config_hash.empty()) out << "; config=" << config_hash;
    out << "\n";
    for (const auto& p : ps.points) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "\t" : "") << ScalarTraits<S>::format(p[i]);
        out << "\n";
    }
    return out.str();
}

template <Scalar S>
PointSet<S> parse_pointset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# meyerlab pointset v1", 0) != 0) {
        throw Error(ErrorKind::ParseError, "missing '# meyerlab pointset v1' header");
    }
    std::map<std::string, std::string> fields;
    for (const auto& part : detail::split(line.substr(2), ';')) {
        const auto t = detail::trim(part);
        const auto eq = t.find('=');
        if (eq == std::string::npos) continue;
        fields[t.substr(0, eq)] = t.substr(eq + 1);
    }
    if (!fields.count("d")) throw Error(ErrorKind::ParseError, "header lacks d");
    const std::size_t d = std::stoul(fields["d"]);
    const Mode mode = fields.count("mode") ? detail::parse_mode(fields["mode"]) : default_mode<S>();
    if (mode.is_exact() != ScalarTraits<S>::exact) {
        throw Error(ErrorKind::ParseError, "file mode " + mode.to_string() + " does not match the requested scalar type");
    }
    Provenance src;
    src.kind = fields.count("source") ? fields["source"] : "file";
    src.description = fields.count("desc") ? fields["desc"] : "";
    const bool was_resorted = fields.count("resorted") && fields["resorted"] == "1";

    std::vector<Point<S>> pts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cells = detail::split(t, '\t');
        if (cells.size() != d) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected " + std::to_string(d) +
                                                   " coordinates");
        }
        Point<S> p;
        for (const auto& c : cells) p.push_back(ScalarTraits<S>::parse(detail::trim(c), mode));
        pts.push_back(std::move(p));
    }

    Box<S> region;
    if (fields.count("region")) {
        auto r = fields["region"];
        if (r.size() < 2 || r.front() != '[' || r.back() != ']') throw Error(ErrorKind::ParseError, "bad region");
        const auto halves = detail::split(r.substr(1, r.size() - 2), '|');
        if (halves.size() != 2) throw Error(ErrorKind::ParseError, "bad region");
        for (const auto& v : detail::split(halves[0], ',')) region.lo.push_back(ScalarTraits<S>::parse(v, mode));
        for (const auto& v : detail::split(halves[1], ',')) region.hi.push_back(ScalarTraits<S>::parse(v, mode));
    } else {
        // Bounding box of the data.
        region.lo.assign(d, ScalarTraits<S>::from_int(0));
        region.hi.assign(d, ScalarTraits<S>::from_int(0));
        for (std::size_t k = 0; k < pts.size(); ++k) {
            for (std::size_t i = 0; i < d; ++i) {
                if (k == 0 || cmp(pts[k][i], region.lo[i], mode.tol()) < 0) region.lo[i] = pts[k][i];
                if (k == 0 || cmp(pts[k][i], region.hi[i], mode.tol()) > 0) region.hi[i] = pts[k][i];
            }
        }
    }
    try {
        auto ps = make_pointset<S>(d, std::move(pts), std::move(region), mode, src);
        ps.source.resorted = ps.source.resorted || was_resorted;
        return ps;
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

template <Scalar S>
void save_pointset(const PointSet<S>& ps, const std::string& path, const std::string& config_hash = "") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out << format_pointset(ps, config_hash);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

template <Scalar S>
PointSet<S> load_pointset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pointset<S>(buf.str());
}

}  // namespace meyerlab
