#pragma once
/*!
 * \file meyer.hpp
 * \brief Uniform discreteness, relative denseness and the finite cover Λ − Λ ⊆ Λ + F.
 *
 * Distances are max-norm distances in G.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "modelset.hpp"
#include "scalar.hpp"

namespace meyerlab {

template <Scalar S>
struct MeyerReport {
    S r_packing{};
    S r_covering{};
    /// Sorted residues; empty optional means AbsentWithinBudget.
    std::optional<std::vector<Point<S>>> cover;
    std::size_t budget = 0;
    std::size_t differences_tested = 0;
};

template <Scalar S>
struct PackingCovering {
    S r_packing{};
    S r_covering{};
};

namespace detail {

template <Scalar S>
S distance_to_set_brute(const Point<S>& x, const std::vector<Point<S>>& pts, double tol) {
    S best = max_norm(x - pts.front(), tol);
    for (const auto& p : pts) {
        const S v = max_norm(x - p, tol);
        if (cmp(v, best, tol) < 0) best = v;
    }
    return best;
}

}  // namespace detail

/// Half the minimal distance and the covering radius over the region
/// (points of the region shrunk by the radius lie within the radius of the set).
template <Scalar S>
PackingCovering<S> packing_covering(const PointSet<S>& ps, double grid_pitch = 0.05) {
    if (ps.size() < 2) throw Error(ErrorKind::TooFewPoints, "need at least 2 points, have " + std::to_string(ps.size()));
    const double tol = ps.tol();
    const S two = ScalarTraits<S>::from_int(2);
    PackingCovering<S> out;
    if (ps.d == 1) {
        const auto xs = ps.coords();
        S min_gap = xs[1] - xs[0];
        S max_gap = min_gap;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const S g = xs[i] - xs[i - 1];
            if (cmp(g, min_gap, tol) < 0) min_gap = g;
            if (cmp(g, max_gap, tol) > 0) max_gap = g;
        }
        S cover = max_gap / two;
        const S left = (xs.front() - ps.region.lo[0]) / two;
        const S right = (ps.region.hi[0] - xs.back()) / two;
        if (cmp(left, cover, tol) > 0) cover = left;
        if (cmp(right, cover, tol) > 0) cover = right;
        out.r_packing = min_gap / two;
        out.r_covering = cover;
        return out;
    }
    S min_dist = max_norm(ps.points[1] - ps.points[0], tol);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const S v = max_norm(ps.points[j] - ps.points[i], tol);
            if (cmp(v, min_dist, tol) < 0) min_dist = v;
        }
    }
    out.r_packing = min_dist / two;
    // Grid estimate, then re-evaluated on the region shrunk by the estimate.
    S r = ScalarTraits<S>::from_int(0);
    for (int pass = 0; pass < 2; ++pass) {
        const Box<S> probe = ps.region.shrunk(pass == 0 ? ScalarTraits<S>::from_int(0) : r);
        if (probe.empty(tol)) break;
        std::vector<std::size_t> steps(ps.d);
        std::size_t total = 1;
        for (std::size_t i = 0; i < ps.d; ++i) {
            steps[i] = static_cast<std::size_t>(std::ceil((to_double(probe.hi[i]) - to_double(probe.lo[i])) / grid_pitch)) + 1;
            total *= steps[i];
        }
        if (total > 2'000'000) throw Error(ErrorKind::BoxTooLarge, "covering grid too fine");
        S best = ScalarTraits<S>::from_int(0);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            Point<S> g(ps.d);
            for (std::size_t i = ps.d; i-- > 0;) {
                const std::size_t k = rem % steps[i];
                rem /= steps[i];
                const S frac = ScalarTraits<S>::from_rational(
                    Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(std::max<std::size_t>(steps[i] - 1, 1))));
                g[i] = probe.lo[i] + (probe.hi[i] - probe.lo[i]) * frac;
            }
            const S v = detail::distance_to_set_brute(g, ps.points, tol);
            if (cmp(v, best, tol) > 0) best = v;
        }
        r = best;
    }
    out.r_covering = r;
    return out;
}

/// Greedy residues f = t − p for differences t of in-region points, p the
/// nearest point of the set to t. A difference is used only when its nearest
/// point is closer than the region edge, so the nearest point is certain.
template <Scalar S>
MeyerReport<S> meyer_cover(const PointSet<S>& ps, std::size_t budget) {
    if (budget == 0) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");
    const auto pc = packing_covering(ps);
    const double tol = ps.tol();
    MeyerReport<S> rep;
    rep.r_packing = pc.r_packing;
    rep.r_covering = pc.r_covering;
    rep.budget = budget;

    // Residues merge at 10x the scheme tolerance in float mode.
    const double merge_tol = 10 * tol;
    auto less = [tol](const Point<S>& a, const Point<S>& b) { return lex_compare(a, b, tol) < 0; };
    std::vector<Point<S>> diffs;
    diffs.reserve(ps.size() * ps.size());
    for (const auto& a : ps.points) {
        for (const auto& b : ps.points) diffs.push_back(a - b);
    }
    std::sort(diffs.begin(), diffs.end(), less);
    diffs.erase(std::unique(diffs.begin(), diffs.end(),
                            [tol](const Point<S>& a, const Point<S>& b) { return lex_compare(a, b, tol) == 0; }),
                diffs.end());

    std::vector<Point<S>> residues;
    auto add_residue = [&](Point<S> f) {
        for (const auto& r : residues) {
            if (lex_compare(r, f, merge_tol) == 0) return;
        }
        residues.push_back(std::move(f));
    };
    auto edge_distance = [&](const Point<S>& t) {
        S best = t[0] - ps.region.lo[0];
        for (std::size_t i = 0; i < ps.d; ++i) {
            for (const S& v : {t[i] - ps.region.lo[i], ps.region.hi[i] - t[i]}) {
                if (cmp(v, best, tol) < 0) best = v;
            }
        }
        return best;
    };
    const auto xs = ps.d == 1 ? ps.coords() : std::vector<S>{};
    for (const auto& t : diffs) {
        const S edge = edge_distance(t);
        if (ScalarTraits<S>::sign(edge, tol) <= 0) continue;
        Point<S> p;
        S dist{};
        if (ps.d == 1) {
            auto it = std::lower_bound(xs.begin(), xs.end(), t[0], [tol](const S& a, const S& b) { return cmp(a, b, tol) < 0; });
            // Nearest, ties to the lower point.
            std::optional<S> best;
            if (it != xs.begin()) best = *(it - 1);
            if (it != xs.end()) {
                if (!best || cmp(*it - t[0], t[0] - *best, tol) < 0) best = *it;
            }
            p = {*best};
            dist = abs_value(t[0] - *best, tol);
        } else {
            dist = detail::distance_to_set_brute(t, ps.points, tol);
            for (const auto& q : ps.points) {
                if (cmp(max_norm(t - q, tol), dist, tol) == 0) {
                    p = q;
                    break;
                }
            }
        }
        if (cmp(dist, edge, tol) >= 0) continue;
        ++rep.differences_tested;
        add_residue(t - p);
        if (residues.size() > budget) {
            rep.cover.reset();
            return rep;
        }
    }
    std::sort(residues.begin(), residues.end(), less);
    rep.cover = std::move(residues);
    return rep;
}

}  // namespace meyerlab
