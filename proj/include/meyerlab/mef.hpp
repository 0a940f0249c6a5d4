#pragma once
/*!
 * \file mef.hpp
 * \brief The torus T = (H x G)/Γ of a scheme with r(t) = [(0, t)], and the
 *        diagnostics comparing torus distance with pattern distance.
 *
 * Torus points are lattice coordinates reduced to [0, 1)^{d+m}. The torus
 * distance is the max-norm distance in H x G to the nearest lattice translate,
 * searched over coefficient offsets in [−c, c].
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "hullmetric.hpp"
#include "modelset.hpp"
#include "parallel.hpp"
#include "returns.hpp"
#include "scalar.hpp"
#include "scheme.hpp"
#include "verdict.hpp"

namespace meyerlab {

template <Scalar S>
struct TorusMap {
    const Scheme<S>* scheme = nullptr;
    int search = 2;

    explicit TorusMap(const Scheme<S>& s, int c = 2) : scheme(&s), search(c) {}
};

/// Lattice coordinates of (0_H, t) modulo Z^{d+m}.
template <Scalar S>
std::vector<S> torus_embed(const TorusMap<S>& tm, const Point<S>& t) {
    const auto& sc = *tm.scheme;
    if (t.size() != sc.d) throw Error(ErrorKind::DimensionMismatch, "physical point has wrong dimension");
    std::vector<S> x(sc.m, ScalarTraits<S>::from_int(0));
    x.insert(x.end(), t.begin(), t.end());
    auto c = row_times(x, sc.basis_inverse);
    for (auto& v : c) v = v - ScalarTraits<S>::from_int(ScalarTraits<S>::floor(v, sc.tol()));
    return c;
}

/// Group sum of two torus points, reduced.
template <Scalar S>
std::vector<S> torus_add(const TorusMap<S>& tm, const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
        out[i] = out[i] - ScalarTraits<S>::from_int(ScalarTraits<S>::floor(out[i], tm.scheme->tol()));
    }
    return out;
}

template <Scalar S>
S torus_dist(const TorusMap<S>& tm, const std::vector<S>& a, const std::vector<S>& b) {
    const auto& sc = *tm.scheme;
    const std::size_t n = sc.rank();
    const double tol = sc.tol();
    std::vector<S> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        diff[i] = a[i] - b[i];
        diff[i] = diff[i] - ScalarTraits<S>::from_int(ScalarTraits<S>::floor(diff[i], tol));
    }
    std::vector<std::int64_t> k(n, -tm.search);
    std::optional<S> best;
    std::vector<S> v(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) v[i] = diff[i] - ScalarTraits<S>::from_int(k[i]);
        const S d = max_norm(row_times(v, sc.basis), tol);
        if (!best || cmp(d, *best, tol) < 0) best = d;
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (k[i] < tm.search) {
                ++k[i];
                break;
            }
            k[i] = -tm.search;
        }
        if (i == n) break;
    }
    return *best;
}

/// Torus distance from r(t) to the unit.
template <Scalar S>
S torus_norm(const TorusMap<S>& tm, const Point<S>& t) {
    const std::vector<S> zero(tm.scheme->rank(), ScalarTraits<S>::from_int(0));
    return torus_dist(tm, torus_embed(tm, t), zero);
}

template <Scalar S>
struct KernelReport {
    Verdict<S> verdict;
    /// Seeds in every P_ε of the ladder with r(t) at the unit exactly.
    std::vector<S> kernel;
    /// Seeds in every P_ε of the ladder.
    std::vector<S> survivors;
    /// Per ladder entry: max torus distance over the seeds of P_ε.
    std::vector<double> bounds;
    std::vector<std::size_t> seeds_per_level;
    /// Random grid points in every P_ε, with their torus distances.
    std::vector<std::pair<S, double>> grid_survivors;
};

struct KernelOptions {
    std::size_t grid_points = 256;
    std::uint64_t seed = 1;
};

/// Compares the intersection of the P_ε ladder with Ker(r): every seed that
/// survives the whole ladder is reported with its torus distance, and the
/// torus distance over each P_ε must not grow as ε shrinks.
template <Scalar S>
KernelReport<S> kernel_check(const PointSet<S>& ps, const TorusMap<S>& tm, const std::vector<S>& eps_ladder,
                             const MetricParams& params, const KernelOptions& opts = {}) {
    const double tol = ps.tol();
    KernelReport<S> rep;
    rep.verdict.check = "kernel";
    if (eps_ladder.empty()) throw Error(ErrorKind::InvalidArgument, "empty ε ladder");
    std::vector<ReturnSet<S>> sets;
    std::vector<IntervalSet<S>> unions;
    for (const auto& e : eps_ladder) {
        sets.push_back(p_epsilon(ps, e, params));
        unions.push_back(sets.back().as_intervals());
    }
    // Smallest validity among the ladder.
    Box<S> valid = sets.front().validity;
    for (const auto& s : sets) valid = valid.intersect(s.validity, tol);
    rep.verdict.validity = valid;
    bool monotone = true;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        double worst = 0;
        for (const auto& c : sets[k].components) worst = std::max(worst, to_double(torus_norm(tm, Point<S>{c.seed})));
        rep.bounds.push_back(worst);
        rep.seeds_per_level.push_back(sets[k].components.size());
        if (k > 0 && worst > rep.bounds[k - 1] + 1e-12) monotone = false;
    }
    auto in_all = [&](const S& t) {
        if (!valid.contains({t}, tol)) return false;
        for (const auto& u : unions) {
            if (!u.contains(t)) return false;
        }
        return true;
    };
    bool zero_in = false;
    for (const auto& c : sets.back().components) {
        if (!in_all(c.seed)) continue;
        rep.survivors.push_back(c.seed);
        if (ScalarTraits<S>::sign(torus_norm(tm, Point<S>{c.seed}), tol) == 0) {
            rep.kernel.push_back(c.seed);
            if (ScalarTraits<S>::sign(c.seed, tol) == 0) zero_in = true;
        }
    }
    if (!valid.empty(tol) && opts.grid_points > 0) {
        std::mt19937_64 rng(opts.seed);
        const auto lo = static_cast<std::int64_t>(std::ceil(to_double(valid.lo[0]) * 4096));
        const auto hi = static_cast<std::int64_t>(std::floor(to_double(valid.hi[0]) * 4096));
        for (std::size_t i = 0; i < opts.grid_points && hi > lo; ++i) {
            const auto k = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
            const S t = ScalarTraits<S>::from_rational(Rational(k, 4096));
            if (in_all(t)) rep.grid_survivors.emplace_back(t, to_double(torus_norm(tm, Point<S>{t})));
        }
    }
    rep.verdict.pass = monotone && zero_in;
    rep.verdict.parts.emplace_back("torus bound non-increasing along the ladder", monotone);
    rep.verdict.parts.emplace_back("0 in every P_eps", zero_in);
    rep.verdict.notes.push_back("kernel size " + std::to_string(rep.kernel.size()) + ", survivors " +
                                std::to_string(rep.survivors.size()));
    return rep;
}

struct CorrelationOptions {
    std::vector<double> eta_ladder{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> eps_ladder{0.1, 0.05, 0.025, 0.0125};
    /// Pattern distances look only at this radius.
    double ball_radius = 20;
    /// Jitters ±jitter·η_k are added to every lattice sample.
    double jitter = 0.99;
    std::size_t random_points = 64;
    std::uint64_t seed = 1;
};

template <Scalar S>
struct CorrelationSample {
    S t{};
    double torus = 0;
    double pattern = 0;
};

template <Scalar S>
struct CorrelationReport {
    std::vector<CorrelationSample<S>> samples;
    /// η_k ↦ max pattern distance over samples with torus distance < η_k.
    std::vector<double> forward;
    /// ε_k ↦ max torus distance over samples with pattern distance < ε_k.
    std::vector<double> reverse;
    Box<S> validity;
    CorrelationOptions options;
};

/// Samples t near the kernel of r (lattice points with small star, jittered)
/// plus random grid points, and pairs torus distance with pattern distance.
template <Scalar S>
CorrelationReport<S> aa_correlation(const PointSet<S>& ps, const TorusMap<S>& tm, const MetricParams& params_in,
                                    const CorrelationOptions& opts = {}) {
    if (ps.d != 1 || tm.scheme->d != 1) throw Error(ErrorKind::Unsupported, "correlation is implemented for d = 1");
    const double tol = ps.tol();
    MetricParams params = params_in;
    params.ball_cap = opts.ball_radius;
    CorrelationReport<S> rep;
    rep.options = opts;
    const S margin = ScalarTraits<S>::from_double(opts.ball_radius + 2 * params.cap + 1);
    rep.validity = ps.region.shrunk(margin);
    if (rep.validity.empty(tol)) throw Error(ErrorKind::InsufficientRegion, "region too small for the observation ball");
    const double eta_max = *std::max_element(opts.eta_ladder.begin(), opts.eta_ladder.end());

    std::vector<S> ts;
    const auto& sc = *tm.scheme;
    const S e = ScalarTraits<S>::from_double(eta_max);
    const auto lattice = lattice_points_in_box(sc, Box<S>{Point<S>(sc.m, -e), Point<S>(sc.m, e)}, rep.validity);
    std::vector<S> jitters{ScalarTraits<S>::from_int(0)};
    const Rational frac = Rational::from_double_decimal(opts.jitter);
    for (double eta : opts.eta_ladder) {
        const S j = ScalarTraits<S>::from_rational(frac * Rational::from_double_decimal(eta));
        jitters.push_back(j);
        jitters.push_back(-j);
    }
    for (const auto& p : lattice) {
        for (const auto& j : jitters) ts.push_back(p.physical[0] + j);
    }
    std::mt19937_64 rng(opts.seed);
    const auto lo = static_cast<std::int64_t>(std::ceil(to_double(rep.validity.lo[0]) * 4096));
    const auto hi = static_cast<std::int64_t>(std::floor(to_double(rep.validity.hi[0]) * 4096));
    for (std::size_t i = 0; i < opts.random_points && hi > lo; ++i) {
        const auto k = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        ts.push_back(ScalarTraits<S>::from_rational(Rational(k, 4096)));
    }
    std::sort(ts.begin(), ts.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) < 0; });
    ts.erase(std::unique(ts.begin(), ts.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) == 0; }), ts.end());
    std::vector<S> kept;
    for (auto& t : ts) {
        if (rep.validity.contains({t}, tol)) kept.push_back(t);
    }

    const auto base = Patch1D<S>::from(ps);
    rep.samples.resize(kept.size());
    parallel_for(kept.size(), [&](std::size_t i) {
        auto& s = rep.samples[i];
        s.t = kept[i];
        s.torus = to_double(torus_norm(tm, Point<S>{kept[i]}));
        s.pattern = pattern_distance(base.shifted(kept[i]), base, params);
    });
    for (double eta : opts.eta_ladder) {
        double worst = 0;
        for (const auto& s : rep.samples) {
            if (s.torus < eta) worst = std::max(worst, s.pattern);
        }
        rep.forward.push_back(worst);
    }
    for (double eps : opts.eps_ladder) {
        double worst = 0;
        for (const auto& s : rep.samples) {
            if (s.pattern < eps) worst = std::max(worst, s.torus);
        }
        rep.reverse.push_back(worst);
    }
    return rep;
}

struct VeechOptions {
    /// Family size after deterministic subsampling.
    std::size_t family = 40;
    /// Components used, nearest the origin first.
    std::size_t components = 60;
    /// Samples at seed ± fraction·(distance to the component end).
    double fraction = 0.9;
};

struct VeechLevel {
    double eps = 0;
    std::size_t components = 0;
    std::size_t family = 0;
    double diameter = 0;
};

/// For each ε: translates of Λ by differences of sampled points of P_ε, and
/// the largest pattern distance (on the given ball) from Λ to one of them.
template <Scalar S>
std::vector<VeechLevel> veech_fiber_estimate(const PointSet<S>& ps, const std::vector<S>& eps_ladder, double ball_radius,
                                             const MetricParams& params_in, const VeechOptions& opts = {}) {
    const double tol = ps.tol();
    MetricParams ball = params_in;
    ball.ball_cap = ball_radius;
    const auto base = Patch1D<S>::from(ps);
    const S margin = ScalarTraits<S>::from_double(ball_radius + 2 * ball.cap + 1);
    const Box<S> valid = ps.region.shrunk(margin);
    const S frac = ScalarTraits<S>::from_rational(Rational::from_double_decimal(opts.fraction));
    std::vector<VeechLevel> out;
    for (const auto& e : eps_ladder) {
        const auto pe = p_epsilon(ps, e, params_in);
        auto comps = pe.components;
        std::stable_sort(comps.begin(), comps.end(), [tol](const PComponent<S>& a, const PComponent<S>& b) {
            return cmp(abs_value(a.seed, tol), abs_value(b.seed, tol), tol) < 0;
        });
        if (comps.size() > opts.components) comps.resize(opts.components);
        std::vector<S> pts;
        for (const auto& c : comps) {
            pts.push_back(c.seed);
            pts.push_back(c.seed - frac * (c.seed - c.lo));
            pts.push_back(c.seed + frac * (c.hi - c.seed));
        }
        std::vector<S> diffs;
        for (const auto& a : pts) {
            for (const auto& b : pts) {
                const S v = a - b;
                if (valid.contains({v}, tol)) diffs.push_back(v);
            }
        }
        std::sort(diffs.begin(), diffs.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) < 0; });
        diffs.erase(std::unique(diffs.begin(), diffs.end(), [tol](const S& a, const S& b) { return cmp(a, b, tol) == 0; }),
                    diffs.end());
        if (diffs.size() > opts.family) {
            std::vector<S> sub;
            for (std::size_t i = 0; i < opts.family; ++i) sub.push_back(diffs[i * diffs.size() / opts.family]);
            diffs = std::move(sub);
        }
        std::vector<double> dist(diffs.size());
        parallel_for(diffs.size(), [&](std::size_t i) { dist[i] = pattern_distance(base.shifted(diffs[i]), base, ball); });
        VeechLevel lvl;
        lvl.eps = to_double(e);
        lvl.components = pe.components.size();
        lvl.family = diffs.size();
        for (double x : dist) lvl.diameter = std::max(lvl.diameter, x);
        out.push_back(lvl);
    }
    return out;
}

}  // namespace meyerlab
