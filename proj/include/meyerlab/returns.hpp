#pragma once
/*!
 * \file returns.hpp
 * \brief K-return sets Λ_K and the inclusion Λ_{K'} − Λ_{K'} ⊆ Λ_K.
 *
 * K is always the centered box of a given half-width. A translation t is
 * reported only when K + t lies inside the sampled region, so every reported
 * time is decided on data, never guessed.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "intervals.hpp"
#include "modelset.hpp"
#include "scalar.hpp"
#include "verdict.hpp"

namespace meyerlab {

enum class ReturnKind { LambdaK, PEps };

/// Connected component of P_ε: the open interval (lo, hi) around a seed.
template <Scalar S>
struct PComponent {
    S lo{};
    S hi{};
    S seed{};
};

template <Scalar S>
struct ReturnSet {
    ReturnKind kind = ReturnKind::LambdaK;
    /// Half-width of K, or ε.
    S parameter{};
    /// Return times (LambdaK).
    std::vector<Point<S>> times;
    /// Sorted, merged components (PEps, one-dimensional).
    std::vector<PComponent<S>> components;
    Box<S> validity;
    double tol = 0.0;
    /// K empty: every translation returns.
    bool vacuous = false;
    /// No point of Λ in K: times come from the grid search.
    bool grid_fallback = false;

    bool contains_time(const Point<S>& t) const {
        auto it = std::lower_bound(times.begin(), times.end(), t,
                                   [this](const Point<S>& a, const Point<S>& b) { return lex_compare(a, b, tol) < 0; });
        return it != times.end() && lex_compare(*it, t, tol) == 0;
    }

    IntervalSet<S> as_intervals() const {
        std::vector<Interval<S>> parts;
        for (const auto& c : components) parts.push_back(Interval<S>::open(c.lo, c.hi));
        return IntervalSet<S>(std::move(parts), tol);
    }
};

struct ReturnOptions {
    /// Pitch of the fallback grid search when K misses Λ.
    double grid_pitch = 0.01;
    std::size_t max_witnesses = 8;
};

namespace detail {

template <Scalar S>
std::size_t count_in_box(const PointSet<S>& ps, const std::vector<S>& xs, const Box<S>& box) {
    const double tol = ps.tol();
    if (ps.d == 1) {
        auto a = std::lower_bound(xs.begin(), xs.end(), box.lo[0], [tol](const S& x, const S& v) { return cmp(x, v, tol) < 0; });
        auto b = std::upper_bound(xs.begin(), xs.end(), box.hi[0], [tol](const S& v, const S& x) { return cmp(v, x, tol) < 0; });
        return b > a ? static_cast<std::size_t>(b - a) : 0;
    }
    std::size_t n = 0;
    for (const auto& p : ps.points) n += box.contains(p, tol) ? 1 : 0;
    return n;
}

}  // namespace detail

/// Λ_K = { t : (Λ − t) ∩ K = Λ ∩ K } on the region shrunk by the half-width.
template <Scalar S>
ReturnSet<S> lambda_K(const PointSet<S>& ps, const S& half_width, const ReturnOptions& opts = {}) {
    const double tol = ps.tol();
    ReturnSet<S> rs;
    rs.kind = ReturnKind::LambdaK;
    rs.parameter = half_width;
    rs.tol = tol;
    if (ScalarTraits<S>::sign(half_width, tol) < 0) {
        rs.vacuous = true;
        rs.validity = ps.region;
        return rs;
    }
    rs.validity = ps.region.shrunk(half_width);
    if (rs.validity.empty(tol)) return rs;
    const Box<S> K = Box<S>::centered(ps.d, half_width);
    const std::vector<S> xs = ps.d == 1 ? ps.coords() : std::vector<S>{};

    std::vector<Point<S>> patch;
    for (const auto& p : ps.points) {
        if (K.contains(p, tol)) patch.push_back(p);
    }
    if (patch.empty()) {
        // Nothing to anchor on: grid search for translations with an empty patch.
        rs.grid_fallback = true;
        std::vector<std::size_t> steps(ps.d);
        std::size_t total = 1;
        for (std::size_t i = 0; i < ps.d; ++i) {
            steps[i] = static_cast<std::size_t>(
                           std::floor((to_double(rs.validity.hi[i]) - to_double(rs.validity.lo[i])) / opts.grid_pitch)) + 1;
            total *= steps[i];
        }
        if (total > 5'000'000) throw Error(ErrorKind::BoxTooLarge, "grid fallback too large");
        const S pitch = ScalarTraits<S>::from_double(opts.grid_pitch);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            Point<S> t(ps.d);
            for (std::size_t i = ps.d; i-- > 0;) {
                t[i] = rs.validity.lo[i] + pitch * ScalarTraits<S>::from_int(static_cast<std::int64_t>(rem % steps[i]));
                rem /= steps[i];
            }
            if (detail::count_in_box(ps, xs, K.translated(t)) == 0) rs.times.push_back(std::move(t));
        }
        std::sort(rs.times.begin(), rs.times.end(),
                  [tol](const Point<S>& a, const Point<S>& b) { return lex_compare(a, b, tol) < 0; });
        return rs;
    }
    // Anchor: the point of Λ ∩ K nearest the origin; every return time maps it into Λ.
    Point<S> anchor = patch.front();
    for (const auto& p : patch) {
        if (cmp(max_norm(p, tol), max_norm(anchor, tol), tol) < 0) anchor = p;
    }
    for (const auto& lam : ps.points) {
        Point<S> t = lam - anchor;
        if (!rs.validity.contains(t, tol)) continue;
        if (detail::count_in_box(ps, xs, K.translated(t)) != patch.size()) continue;
        bool same = true;
        for (const auto& p : patch) {
            if (!ps.contains(p + t)) {
                same = false;
                break;
            }
        }
        if (same) rs.times.push_back(std::move(t));
    }
    return rs;
}

template <Scalar S>
struct Denseness {
    bool bounded = false;
    S radius{};
};

/// Covering radius of the times (or components) inside the validity box.
/// Unbounded when the data cannot certify relative denseness: fewer than two
/// times, or a gap wider than half the validity width.
template <Scalar S>
Denseness<S> relative_denseness(const ReturnSet<S>& rs, double grid_pitch = 0.05) {
    const double tol = rs.tol;
    Denseness<S> out;
    if (rs.vacuous) {
        out.bounded = true;
        out.radius = ScalarTraits<S>::from_int(0);
        return out;
    }
    if (rs.validity.empty(tol)) return out;
    const S two = ScalarTraits<S>::from_int(2);
    const std::size_t d = rs.validity.dim();
    if (d == 1) {
        // Covered pieces as closed intervals: points, or component closures.
        std::vector<std::pair<S, S>> pieces;
        if (rs.kind == ReturnKind::LambdaK) {
            for (const auto& t : rs.times) pieces.emplace_back(t[0], t[0]);
        } else {
            for (const auto& c : rs.components) pieces.emplace_back(c.lo, c.hi);
        }
        if (pieces.size() < 2) return out;
        const S lo = rs.validity.lo[0];
        const S hi = rs.validity.hi[0];
        const S half = (hi - lo) / two;
        S max_gap = ScalarTraits<S>::from_int(0);
        for (std::size_t i = 1; i < pieces.size(); ++i) {
            const S g = pieces[i].first - pieces[i - 1].second;
            if (cmp(g, max_gap, tol) > 0) max_gap = g;
        }
        if (cmp(max_gap, half, tol) > 0) return out;
        if (cmp(pieces.front().first - lo, half, tol) > 0 || cmp(hi - pieces.back().second, half, tol) > 0) return out;
        out.bounded = true;
        out.radius = max_gap / two;
        return out;
    }
    if (rs.kind != ReturnKind::LambdaK) throw Error(ErrorKind::Unsupported, "component sets are one-dimensional");
    if (rs.times.size() < 2) return out;
    std::vector<std::size_t> steps(d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        steps[i] = static_cast<std::size_t>(
                       std::ceil((to_double(rs.validity.hi[i]) - to_double(rs.validity.lo[i])) / grid_pitch)) + 1;
        total *= steps[i];
    }
    if (total > 2'000'000) throw Error(ErrorKind::BoxTooLarge, "denseness grid too fine");
    double best = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::vector<double> g(d);
        for (std::size_t i = d; i-- > 0;) {
            const double f = static_cast<double>(rem % steps[i]) / static_cast<double>(std::max<std::size_t>(steps[i] - 1, 1));
            rem /= steps[i];
            g[i] = to_double(rs.validity.lo[i]) + f * (to_double(rs.validity.hi[i]) - to_double(rs.validity.lo[i]));
        }
        double nearest = INFINITY;
        for (const auto& t : rs.times) {
            double v = 0;
            for (std::size_t i = 0; i < d; ++i) v = std::max(v, std::abs(to_double(t[i]) - g[i]));
            nearest = std::min(nearest, v);
        }
        best = std::max(best, nearest);
    }
    if (best > rs.validity.min_half_width()) return out;
    out.bounded = true;
    out.radius = ScalarTraits<S>::from_double(best);
    return out;
}

/// Searches the ladder of half-widths K' for Λ_{K'} − Λ_{K'} ⊆ Λ_K. A ladder
/// entry passes when Λ_{K'} is relatively dense on the data, at least one
/// difference was decidable, and none escaped Λ_K. The verdict also requires
/// Λ_K itself to be relatively dense. FAIL means "fail up to the ladder".
template <Scalar S>
Verdict<S> check_schlottmann(const PointSet<S>& ps, const S& half_width, const std::vector<S>& ladder,
                             const ReturnOptions& opts = {}) {
    const double tol = ps.tol();
    Verdict<S> v;
    v.check = "schlottmann";
    const auto base = lambda_K(ps, half_width, opts);
    const auto base_dense = relative_denseness(base);
    v.validity = base.validity;
    if (base_dense.bounded) v.covering_radius = base_dense.radius;
    if (!base_dense.bounded) v.notes.push_back("Λ_K is not relatively dense on the sampled region");
    if (base.grid_fallback) v.notes.push_back("K misses Λ; Λ_K from grid search");
    v.notes.push_back("PASS is exact on the sampled data; FAIL means no ladder entry passed");

    for (const auto& kp : ladder) {
        CandidateReport<S> c;
        c.parameter = kp;
        const auto rs = lambda_K(ps, kp, opts);
        const auto dense = relative_denseness(rs);
        c.times = rs.times.size();
        c.relatively_dense = dense.bounded;
        if (dense.bounded) c.covering_radius = dense.radius;
        std::size_t kept = 0;
        for (const auto& t1 : rs.times) {
            for (const auto& t2 : rs.times) {
                const Point<S> diff = t1 - t2;
                if (!base.validity.contains(diff, tol)) continue;
                ++c.tested_pairs;
                if (base.vacuous || base.contains_time(diff)) continue;
                ++c.violations;
                if (kept < opts.max_witnesses) {
                    Witness<S> w;
                    w.t1 = t1;
                    w.t2 = t2;
                    w.note = "K'=" + ScalarTraits<S>::format(kp) + ": t1 - t2 not in Λ_K";
                    v.witnesses.push_back(std::move(w));
                    ++kept;
                }
            }
        }
        c.passed = base_dense.bounded && dense.bounded && c.violations == 0 && c.tested_pairs > 0;
        if (c.passed && !v.pass) {
            v.pass = true;
            v.selected = kp;
        }
        v.candidates.push_back(std::move(c));
    }
    return v;
}

}  // namespace meyerlab
