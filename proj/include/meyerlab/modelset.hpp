#pragma once
/*!
 * \file modelset.hpp
 * \brief Finite patches of model sets and of reference point sets.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "scalar.hpp"
#include "scheme.hpp"
#include "window.hpp"

namespace meyerlab {

struct Provenance {
    /// model-set | lattice | file | synthetic
    std::string kind = "synthetic";
    std::string description;
    bool resorted = false;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Sorted, duplicate-free points of G together with the box they were sampled from.
template <Scalar S>
struct PointSet {
    std::size_t d = 1;
    std::vector<Point<S>> points;
    Box<S> region;
    Mode mode;
    Provenance source;

    std::size_t size() const { return points.size(); }
    double tol() const { return mode.tol(); }

    /// Coordinates of a one-dimensional set.
    std::vector<S> coords() const {
        if (d != 1) throw Error(ErrorKind::Unsupported, "one-dimensional point set expected, got d=" + std::to_string(d));
        std::vector<S> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(p[0]);
        return out;
    }

    bool contains(const Point<S>& p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p, [this](const Point<S>& a, const Point<S>& b) {
            return lex_compare(a, b, tol()) < 0;
        });
        return it != points.end() && lex_compare(*it, p, tol()) == 0;
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.d == b.d && a.points == b.points && a.region == b.region && a.mode == b.mode && a.source == b.source;
    }
};

/// Builds a point set, sorting if needed (recorded in provenance) and
/// rejecting duplicates and points outside the region.
template <Scalar S>
PointSet<S> make_pointset(std::size_t d, std::vector<Point<S>> pts, Box<S> region, Mode mode, Provenance source) {
    const double tol = mode.tol();
    if (region.dim() != d) throw Error(ErrorKind::DimensionMismatch, "region dimension differs from d");
    bool sorted = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != d) throw Error(ErrorKind::DimensionMismatch, "point of wrong dimension");
        if (i > 0 && lex_compare(pts[i - 1], pts[i], tol) > 0) sorted = false;
    }
    if (!sorted) {
        std::stable_sort(pts.begin(), pts.end(),
                         [tol](const Point<S>& a, const Point<S>& b) { return lex_compare(a, b, tol) < 0; });
        source.resorted = true;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && lex_compare(pts[i - 1], pts[i], tol) == 0) {
            throw Error(ErrorKind::InvalidArgument, "duplicate point " + ScalarTraits<S>::format(pts[i][0]));
        }
        if (!region.contains(pts[i], tol)) {
            throw Error(ErrorKind::InvalidArgument, "point outside the region " + region.to_string());
        }
    }
    PointSet<S> ps;
    ps.d = d;
    ps.points = std::move(pts);
    ps.region = std::move(region);
    ps.mode = mode;
    ps.source = std::move(source);
    return ps;
}

/// Points t of the region with (t*, t) in the lattice and t* in the window.
template <Scalar S>
PointSet<S> generate(const Scheme<S>& scheme, const Window<S>& window, const Box<S>& region) {
    if (window.dim() != scheme.m) throw Error(ErrorKind::DimensionMismatch, "window and scheme dimensions differ");
    if (region.dim() != scheme.d) throw Error(ErrorKind::DimensionMismatch, "region and scheme dimensions differ");
    std::vector<Point<S>> pts;
    for (auto& p : lattice_points_in_box(scheme, window.bounding_box(), region)) {
        if (window.contains(p.internal)) pts.push_back(std::move(p.physical));
    }
    Provenance src;
    src.kind = scheme.m == 0 ? "lattice" : "model-set";
    src.description = "window " + window.to_string();
    return make_pointset(scheme.d, std::move(pts), region, scheme.mode, src);
}

/// Prefix of the fixed point of L -> LS, S -> L.
inline std::string fibonacci_word_oracle(std::size_t n_letters) {
    if (n_letters == 0) throw Error(ErrorKind::InvalidArgument, "word length must be at least 1");
    std::string w = "L";
    while (w.size() < n_letters) {
        std::string next;
        next.reserve(w.size() * 2);
        for (char c : w) next += (c == 'L') ? "LS" : "L";
        w = std::move(next);
    }
    w.resize(n_letters);
    return w;
}

/// Gap word of a one-dimensional set: L for a gap `long_gap`, S for `short_gap`, '?' otherwise.
template <Scalar S>
std::string gap_word(const PointSet<S>& ps, const S& long_gap, const S& short_gap) {
    const auto xs = ps.coords();
    std::string w;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const S g = xs[i] - xs[i - 1];
        if (cmp(g, long_gap, ps.tol()) == 0) w += 'L';
        else if (cmp(g, short_gap, ps.tol()) == 0) w += 'S';
        else w += '?';
    }
    return w;
}

/// Distinct consecutive gaps of a one-dimensional set, ascending.
template <Scalar S>
std::vector<S> gap_set(const PointSet<S>& ps) {
    const auto xs = ps.coords();
    const double tol = ps.tol();
    std::vector<S> gaps;
    for (std::size_t i = 1; i < xs.size(); ++i) gaps.push_back(xs[i] - xs[i - 1]);
    std::sort(gaps.begin(), gaps.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) < 0; });
    gaps.erase(std::unique(gaps.begin(), gaps.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) == 0; }),
               gaps.end());
    return gaps;
}

/// Offset into `reference` where `word` matches, allowing the first and last
/// letter to differ (a region edge can split a tile). -1 when none.
inline std::ptrdiff_t match_word_up_to_edges(const std::string& word, const std::string& reference) {
    if (word.empty()) return 0;
    const std::size_t n = word.size();
    for (std::size_t off = 0; off + n <= reference.size(); ++off) {
        bool ok = true;
        for (std::size_t i = 1; i + 1 < n && ok; ++i) ok = word[i] == reference[off + i];
        if (ok) return static_cast<std::ptrdiff_t>(off);
    }
    return -1;
}

template <Scalar S>
PointSet<S> translated(const PointSet<S>& ps, const Point<S>& g) {
    PointSet<S> out = ps;
    for (auto& p : out.points) p = p + g;
    out.region = ps.region.translated(g);
    return out;
}

/// Integers in [lo, hi].
template <Scalar S>
PointSet<S> integer_patch(std::int64_t lo, std::int64_t hi, Mode mode = default_mode<S>()) {
    std::vector<Point<S>> pts;
    for (auto k = lo; k <= hi; ++k) pts.push_back({ScalarTraits<S>::from_int(k)});
    return make_pointset<S>(1, std::move(pts), Box<S>::interval(ScalarTraits<S>::from_int(lo), ScalarTraits<S>::from_int(hi)),
                            mode, Provenance{"lattice", "Z", false});
}

/// Sorted one-dimensional set from coordinates on a given region.
template <Scalar S>
PointSet<S> points_1d(std::vector<S> xs, const S& lo, const S& hi, Mode mode, Provenance src) {
    std::vector<Point<S>> pts;
    for (auto& x : xs) pts.push_back({std::move(x)});
    return make_pointset<S>(1, std::move(pts), Box<S>::interval(lo, hi), mode, std::move(src));
}

/// Z ∪ {n + 1/n : 2 ≤ n ≤ N} on [0, N + 1]; not a Meyer set as N grows.
template <Scalar S>
PointSet<S> harmonic_perturbed_integers(std::int64_t N, Mode mode = default_mode<S>()) {
    std::vector<S> xs;
    for (std::int64_t k = 0; k <= N + 1; ++k) xs.push_back(ScalarTraits<S>::from_int(k));
    for (std::int64_t n = 2; n <= N; ++n) xs.push_back(ScalarTraits<S>::from_rational(Rational(n * n + 1, n)));
    return points_1d<S>(std::move(xs), ScalarTraits<S>::from_int(0), ScalarTraits<S>::from_int(N + 1), mode,
                        Provenance{"synthetic", "Z with points n+1/n", false});
}

}  // namespace meyerlab
