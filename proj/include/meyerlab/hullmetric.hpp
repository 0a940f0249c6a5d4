#pragma once
/*!
 * \file hullmetric.hpp
 * \brief A concrete patch metric on one-dimensional point sets, ε-return sets P_ε,
 *        the additivity check P_δ − P_δ ⊆ P_ε and the comparison of P_ε with Λ_K + U.
 *
 * The metric:
 *
 *     d(A, B) = inf { ε ∈ (0, ε₀] : ∃ |t|, |t'| ≤ ε,
 *                     (A − t) ∩ [−R, R] = (B − t') ∩ [−R, R] },   R = min(1/ε, ball cap)
 *
 * and d = ε₀ when no ε ≤ ε₀ works. Only patch agreement up to small shifts is
 * used; the triangle inequality is not guaranteed for this realization and
 * nothing below relies on it.
 *
 * Patches are finite. Points outside a patch's known region are unknown and
 * never counted as mismatches, so distances below 1/(known radius) are
 * optimistic. P_ε is computed only where every ball it needs lies in the data.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "intervals.hpp"
#include "modelset.hpp"
#include "returns.hpp"
#include "scalar.hpp"
#include "verdict.hpp"

namespace meyerlab {

struct MetricParams {
    double cap = 1.0;
    double pitch = 1e-4;
    /// Caps the observation radius 1/ε; unset means no cap.
    std::optional<double> ball_cap;

    void validate() const {
        if (!(cap > 0)) throw Error(ErrorKind::InvalidArgument, "metric cap must be positive");
        if (!(pitch > 0) || !(pitch < cap / 10)) throw Error(ErrorKind::InvalidArgument, "pitch must be below cap/10");
        if (ball_cap && !(*ball_cap > 0)) throw Error(ErrorKind::InvalidArgument, "ball cap must be positive");
    }
    double radius(double eps) const {
        const double r = 1.0 / eps;
        return ball_cap ? std::min(r, *ball_cap) : r;
    }
};

/// Sorted coordinates with the interval on which the set is known.
template <Scalar S>
struct Patch1D {
    std::vector<S> xs;
    S lo{};
    S hi{};
    double tol = 0.0;

    static Patch1D from(const PointSet<S>& ps) {
        return Patch1D{ps.coords(), ps.region.lo[0], ps.region.hi[0], ps.tol()};
    }
    /// The set minus t, i.e. t.Λ.
    Patch1D shifted(const S& t) const {
        Patch1D out{xs, lo - t, hi - t, tol};
        for (auto& x : out.xs) x = x - t;
        return out;
    }
    /// Indices of points with double value in [a, b].
    std::pair<std::size_t, std::size_t> range(double a, double b) const {
        auto first = std::lower_bound(xs.begin(), xs.end(), a, [](const S& x, double v) { return to_double(x) < v; });
        auto last = std::upper_bound(xs.begin(), xs.end(), b, [](double v, const S& x) { return v < to_double(x); });
        return {static_cast<std::size_t>(first - xs.begin()),
                static_cast<std::size_t>(std::max(first, last) - xs.begin())};
    }
};

namespace detail {

/// Positions of A Δ (B + u) with double value in [−L, L] and inside both known regions.
template <Scalar S>
std::vector<double> mismatches(const Patch1D<S>& A, const Patch1D<S>& B, const S& u, double L) {
    const double ud = to_double(u);
    const double known_lo = std::max({to_double(A.lo), to_double(B.lo) + ud, -L});
    const double known_hi = std::min({to_double(A.hi), to_double(B.hi) + ud, L});
    std::vector<double> out;
    if (known_lo > known_hi) return out;
    const double slack = 1e-9 * (1 + L);
    auto [a0, a1] = A.range(known_lo - slack, known_hi + slack);
    auto [b0, b1] = B.range(known_lo - ud - slack, known_hi - ud + slack);
    const double tol = A.tol;
    auto inside = [&](double x) { return x >= known_lo && x <= known_hi; };
    while (a0 < a1 || b0 < b1) {
        if (b0 >= b1) {
            if (inside(to_double(A.xs[a0]))) out.push_back(to_double(A.xs[a0]));
            ++a0;
            continue;
        }
        const S bu = B.xs[b0] + u;
        if (a0 >= a1) {
            if (inside(to_double(bu))) out.push_back(to_double(bu));
            ++b0;
            continue;
        }
        const int c = cmp(A.xs[a0], bu, tol);
        if (c == 0) {
            ++a0;
            ++b0;
        } else if (c < 0) {
            if (inside(to_double(A.xs[a0]))) out.push_back(to_double(A.xs[a0]));
            ++a0;
        } else {
            if (inside(to_double(bu))) out.push_back(to_double(bu));
            ++b0;
        }
    }
    return out;
}

/// Some gap (m_i + R, m_{i+1} − R) of the mismatch list meets the closed [tlo, thi].
inline bool gap_meets(const std::vector<double>& mm, double R, double tlo, double thi) {
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= mm.size(); ++i) {
        const double glo = i == 0 ? -inf : mm[i - 1] + R;
        const double ghi = i == mm.size() ? inf : mm[i] - R;
        if (glo < ghi && glo < thi && tlo < ghi) return true;
    }
    return false;
}

template <Scalar S>
bool feasible(const Patch1D<S>& A, const Patch1D<S>& B, double eps, const MetricParams& params) {
    const double R = params.radius(eps);
    const double L = R + eps + 1e-9;
    std::vector<S> shifts;
    // Anchor: a point of A that every admissible ball contains.
    std::optional<S> anchor;
    {
        auto [i0, i1] = A.range(-(R - eps), R - eps);
        for (auto i = i0; i < i1; ++i) {
            if (!anchor || std::abs(to_double(A.xs[i])) < std::abs(to_double(*anchor))) anchor = A.xs[i];
        }
    }
    const double slack = 1e-12;
    if (anchor) {
        const double a = to_double(*anchor);
        auto [j0, j1] = B.range(a - 2 * eps - slack, a + 2 * eps + slack);
        for (auto j = j0; j < j1; ++j) shifts.push_back(*anchor - B.xs[j]);
    } else {
        shifts.push_back(ScalarTraits<S>::from_int(0));
        const double W = R + 2 * eps + 1;
        auto [i0, i1] = A.range(-W, W);
        for (auto i = i0; i < i1; ++i) {
            const double a = to_double(A.xs[i]);
            auto [j0, j1] = B.range(a - 2 * eps - slack, a + 2 * eps + slack);
            for (auto j = j0; j < j1; ++j) shifts.push_back(A.xs[i] - B.xs[j]);
        }
    }
    for (const auto& u : shifts) {
        const double ud = to_double(u);
        const double tlo = std::max(-eps, ud - eps);
        const double thi = std::min(eps, ud + eps);
        if (tlo > thi + 1e-15) continue;
        if (gap_meets(mismatches(A, B, u, L), R, tlo, std::max(tlo, thi))) return true;
    }
    return false;
}

}  // namespace detail

/// d(A, B) by bisection to within `pitch`. Exactly 0 when A and B agree on
/// the observed range without any shift.
template <Scalar S>
double pattern_distance(const Patch1D<S>& A, const Patch1D<S>& B, const MetricParams& params) {
    params.validate();
    const double R0 = params.radius(params.cap);
    const double need = R0 + 2 * params.cap;
    for (const auto* P : {&A, &B}) {
        if (to_double(P->lo) > -need || to_double(P->hi) < need) {
            throw Error(ErrorKind::InsufficientRegion,
                        "patch known on [" + ScalarTraits<double>::format(to_double(P->lo)) + ", " +
                            ScalarTraits<double>::format(to_double(P->hi)) + "] but the metric needs [-" +
                            ScalarTraits<double>::format(need) + ", " + ScalarTraits<double>::format(need) + "]");
        }
    }
    const double observed = params.ball_cap ? *params.ball_cap + 2 * params.cap : std::numeric_limits<double>::infinity();
    if (detail::mismatches(A, B, ScalarTraits<S>::from_int(0), observed).empty()) return 0.0;
    if (!detail::feasible(A, B, params.cap, params)) return params.cap;
    double lo = 0.0, hi = params.cap;
    while (hi - lo > params.pitch) {
        const double mid = 0.5 * (lo + hi);
        if (detail::feasible(A, B, mid, params)) hi = mid;
        else lo = mid;
    }
    return hi;
}

template <Scalar S>
double pattern_distance(const PointSet<S>& A, const PointSet<S>& B, const MetricParams& params) {
    return pattern_distance(Patch1D<S>::from(A), Patch1D<S>::from(B), params);
}

/// Same distance by scanning ε on a grid of the given pitch (test oracle; slow).
template <Scalar S>
double pattern_distance_grid(const Patch1D<S>& A, const Patch1D<S>& B, const MetricParams& params, double pitch) {
    if (detail::mismatches(A, B, ScalarTraits<S>::from_int(0),
                           params.ball_cap ? *params.ball_cap + 2 * params.cap : std::numeric_limits<double>::infinity())
            .empty()) {
        return 0.0;
    }
    for (double e = pitch; e <= params.cap + 1e-12; e += pitch) {
        if (detail::feasible(A, B, e, params)) return e;
    }
    return params.cap;
}

/// Point of Λ nearest the origin, ties to the lower one.
template <Scalar S>
S nearest_to_origin(const std::vector<S>& xs, double tol) {
    if (xs.empty()) throw Error(ErrorKind::TooFewPoints, "empty point set");
    auto it = std::lower_bound(xs.begin(), xs.end(), ScalarTraits<S>::from_int(0),
                               [tol](const S& a, const S& b) { return cmp(a, b, tol) < 0; });
    if (it == xs.end()) return xs.back();
    if (it == xs.begin()) return *it;
    const S& up = *it;
    const S& down = *(it - 1);
    return cmp(up, -down, tol) < 0 ? up : down;
}

/// P_ε = { t : d(t.Λ, Λ) < ε } as open components around seeds of Λ − μ₀.
/// Near a seed s, t = s + δ returns iff |δ| ≤ 2ε and some gap of the ball
/// centres avoiding the mismatches (Λ − s) Δ Λ meets the admissible shifts;
/// that set of δ is an interval, computed in closed form per seed.
template <Scalar S>
ReturnSet<S> p_epsilon(const PointSet<S>& ps, const S& eps, const MetricParams& params) {
    params.validate();
    const double tol = ps.tol();
    if (ScalarTraits<S>::sign(eps, tol) <= 0) throw Error(ErrorKind::InvalidArgument, "ε must be positive");
    ReturnSet<S> rs;
    rs.kind = ReturnKind::PEps;
    rs.parameter = eps;
    rs.tol = tol;
    const auto base = Patch1D<S>::from(ps);
    if (to_double(eps) > params.cap) {
        rs.validity = ps.region;
        rs.components.push_back(PComponent<S>{ps.region.lo[0], ps.region.hi[0], ScalarTraits<S>::from_int(0)});
        return rs;
    }
    const S one = ScalarTraits<S>::from_int(1);
    const S two = ScalarTraits<S>::from_int(2);
    S R = one / eps;
    if (params.ball_cap) {
        const S cap = ScalarTraits<S>::from_double(*params.ball_cap);
        if (cmp(cap, R, tol) < 0) R = cap;
    }
    const S margin = R + ScalarTraits<S>::from_int(3) * eps + one;
    rs.validity = ps.region.shrunk(margin);
    if (rs.validity.empty(tol)) return rs;
    const S mu0 = nearest_to_origin(base.xs, tol);
    const S window = R + two * eps + one;
    const double Wd = to_double(window);

    std::vector<std::optional<PComponent<S>>> found(base.xs.size());
    for (std::size_t k = 0; k < base.xs.size(); ++k) {
        const S s = base.xs[k] - mu0;
        if (!rs.validity.contains({s}, tol)) continue;
        // Mismatches of Λ − s against Λ on [−W, W], exact.
        std::vector<S> mm;
        {
            const double sd = to_double(s);
            auto [a0, a1] = base.range(sd - Wd - 1e-9, sd + Wd + 1e-9);
            auto [b0, b1] = base.range(-Wd - 1e-9, Wd + 1e-9);
            while (a0 < a1 || b0 < b1) {
                if (b0 >= b1) {
                    mm.push_back(base.xs[a0++] - s);
                    continue;
                }
                if (a0 >= a1) {
                    mm.push_back(base.xs[b0++]);
                    continue;
                }
                const S av = base.xs[a0] - s;
                const int c = cmp(av, base.xs[b0], tol);
                if (c == 0) {
                    ++a0;
                    ++b0;
                } else if (c < 0) {
                    mm.push_back(av);
                    ++a0;
                } else {
                    mm.push_back(base.xs[b0++]);
                }
            }
        }
        // Gaps (m_i + R, m_{i+1} − R); nullopt ends are infinite.
        std::optional<S> up, down;
        bool any = false;
        for (std::size_t i = 0; i <= mm.size(); ++i) {
            std::optional<S> glo, ghi;
            if (i > 0) glo = mm[i - 1] + R;
            if (i < mm.size()) ghi = mm[i] - R;
            if (glo && ghi && cmp(*glo, *ghi, tol) >= 0) continue;
            const bool lo_ok = !glo || cmp(*glo, eps, tol) < 0;
            const bool hi_ok = !ghi || cmp(*ghi, -eps, tol) > 0;
            if (lo_ok && hi_ok) any = true;
            if (lo_ok) {
                const S cand = ghi ? *ghi + eps : two * eps;
                if (!up || cmp(cand, *up, tol) > 0) up = cand;
            }
            if (hi_ok) {
                const S cand = glo ? *glo - eps : -two * eps;
                if (!down || cmp(cand, *down, tol) < 0) down = cand;
            }
        }
        if (!any) continue;
        S dp = *up;
        S dm = *down;
        if (cmp(dp, two * eps, tol) > 0) dp = two * eps;
        if (cmp(dm, -two * eps, tol) < 0) dm = -two * eps;
        found[k] = PComponent<S>{s + dm, s + dp, s};
    }
    for (auto& f : found) {
        if (!f) continue;
        if (!rs.components.empty() && cmp(f->lo, rs.components.back().hi, tol) < 0) {
            if (cmp(f->hi, rs.components.back().hi, tol) > 0) rs.components.back().hi = f->hi;
            continue;
        }
        rs.components.push_back(*f);
    }
    return rs;
}

struct AdditivityOptions {
    std::size_t max_witnesses = 8;
    /// Witnesses re-checked by a direct distance evaluation, per ladder entry.
    std::size_t verify_witnesses = 2;
};

/// Searches the descending δ ladder for P_δ − P_δ ⊆ P_ε on P_ε's validity.
/// Differences of components are handled as intervals, so a PASS covers every
/// pair of return times, not just the seeds.
template <Scalar S>
Verdict<S> check_additivity(const PointSet<S>& ps, const S& eps, const std::vector<S>& ladder,
                            const MetricParams& params, const AdditivityOptions& opts = {}) {
    const double tol = ps.tol();
    Verdict<S> v;
    v.check = "additivity";
    const auto pe = p_epsilon(ps, eps, params);
    const auto pe_set = pe.as_intervals();
    const auto pe_dense = relative_denseness(pe);
    v.validity = pe.validity;
    if (pe_dense.bounded) v.covering_radius = pe_dense.radius;
    else v.notes.push_back("P_ε is not relatively dense on the sampled region");
    v.notes.push_back("PASS is exact on the sampled data; FAIL means no ladder entry passed");
    if (pe.validity.empty(tol)) {
        v.notes.push_back("validity empty: region too small for ε");
        return v;
    }
    const S two = ScalarTraits<S>::from_int(2);
    const auto base = Patch1D<S>::from(ps);
    for (const auto& delta : ladder) {
        CandidateReport<S> c;
        c.parameter = delta;
        const auto pd = p_epsilon(ps, delta, params);
        const auto dense = relative_denseness(pd);
        c.times = pd.components.size();
        c.relatively_dense = dense.bounded;
        if (dense.bounded) c.covering_radius = dense.radius;
        std::size_t kept = 0;
        for (const auto& c1 : pd.components) {
            for (const auto& c2 : pd.components) {
                const auto diff = Interval<S>::open(c1.lo - c2.hi, c1.hi - c2.lo);
                if (cmp(diff.lo, pe.validity.lo[0], tol) < 0 || cmp(diff.hi, pe.validity.hi[0], tol) > 0) continue;
                ++c.tested_pairs;
                const auto x = pe_set.uncovered_point(diff);
                if (!x) continue;
                ++c.violations;
                if (kept >= opts.max_witnesses) continue;
                // t1 − t2 = x with t1 in c1 and t2 in c2.
                S lo = c2.lo, hi = c2.hi;
                if (cmp(c1.lo - *x, lo, tol) > 0) lo = c1.lo - *x;
                if (cmp(c1.hi - *x, hi, tol) < 0) hi = c1.hi - *x;
                const S t2 = (lo + hi) / two;
                Witness<S> w;
                w.t1 = {*x + t2};
                w.t2 = {t2};
                w.note = "δ=" + ScalarTraits<S>::format(delta) + ": t1 - t2 not in P_ε";
                if (kept < opts.verify_witnesses) {
                    try {
                        w.value = pattern_distance(base.shifted(*x), base, params);
                    } catch (const Error&) {
                    }
                }
                v.witnesses.push_back(std::move(w));
                ++kept;
            }
        }
        c.passed = pe_dense.bounded && dense.bounded && c.violations == 0 && c.tested_pairs > 0;
        if (c.passed && !v.pass) {
            v.pass = true;
            v.selected = delta;
        }
        v.candidates.push_back(std::move(c));
    }
    return v;
}

/// Compares P_ε with Λ_K + U on the shared validity, shrunk so that no
/// interval centred outside it can reach inside. U is an interval around 0;
/// a single point U = {0} compares Λ_K with the closure of P_ε instead.
template <Scalar S>
Verdict<S> sandwich_check(const PointSet<S>& ps, const S& eps, const S& K_half, const Interval<S>& U,
                          const MetricParams& params) {
    const double tol = ps.tol();
    Verdict<S> v;
    v.check = "sandwich";
    const auto pe = p_epsilon(ps, eps, params);
    const auto lk = lambda_K(ps, K_half);
    const S two = ScalarTraits<S>::from_int(2);
    S reach = abs_value(U.lo, tol);
    if (cmp(abs_value(U.hi, tol), reach, tol) > 0) reach = abs_value(U.hi, tol);
    const S guard = reach + two * two * eps;
    v.validity = pe.validity.intersect(lk.validity, tol).shrunk(guard);
    if (v.validity.empty(tol)) {
        v.notes.push_back("validity empty");
        return v;
    }
    const S lo = v.validity.lo[0];
    const S hi = v.validity.hi[0];
    const bool degenerate = cmp(U.lo, U.hi, tol) == 0;
    std::vector<Interval<S>> shifted;
    for (const auto& t : lk.times) shifted.push_back(degenerate ? Interval<S>::closed(t[0], t[0]) : U.shifted(t[0]));
    const IntervalSet<S> lku(std::move(shifted), tol);
    const IntervalSet<S> p = degenerate ? pe.as_intervals().closure() : pe.as_intervals();
    const auto lku_v = lku.clipped(lo, hi);
    const auto p_v = p.clipped(lo, hi);

    auto record = [&](const std::string& name, const IntervalSet<S>& small, const IntervalSet<S>& big) {
        bool ok = true;
        for (const auto& c : small.components()) {
            if (auto x = big.uncovered_point(c)) {
                ok = false;
                Witness<S> w;
                w.t1 = {*x};
                w.note = name + ": point outside the right-hand side";
                v.witnesses.push_back(std::move(w));
                break;
            }
        }
        v.parts.emplace_back(name, ok);
        return ok;
    };
    const bool forward = record("P_eps in Lambda_K+U", p_v, lku_v);
    const bool backward = record("Lambda_K+U in P_eps", lku_v, p_v);
    v.pass = forward && backward;
    return v;
}

template <Scalar S>
struct SandwichChoice {
    bool found = false;
    S K{};
    S U{};
    S eps{};
};

/// First (K, U) from the ladders with P_ε ⊆ Λ_K + U, U = (−u, u).
template <Scalar S>
SandwichChoice<S> sandwich_search_KU(const PointSet<S>& ps, const S& eps, const std::vector<S>& Ks,
                                     const std::vector<S>& Us, const MetricParams& params) {
    SandwichChoice<S> out;
    out.eps = eps;
    for (const auto& k : Ks) {
        for (const auto& u : Us) {
            const auto v = sandwich_check(ps, eps, k, Interval<S>::open(-u, u), params);
            if (!v.validity.empty(ps.tol()) && !v.parts.empty() && v.parts[0].second) {
                out.found = true;
                out.K = k;
                out.U = u;
                return out;
            }
        }
    }
    return out;
}

/// First ε from the ladder with Λ_K + U ⊆ P_ε, U = (−u, u).
template <Scalar S>
SandwichChoice<S> sandwich_search_eps(const PointSet<S>& ps, const S& K, const S& u, const std::vector<S>& eps_ladder,
                                      const MetricParams& params) {
    SandwichChoice<S> out;
    out.K = K;
    out.U = u;
    for (const auto& e : eps_ladder) {
        const auto v = sandwich_check(ps, e, K, Interval<S>::open(-u, u), params);
        if (!v.validity.empty(ps.tol()) && v.parts.size() > 1 && v.parts[1].second) {
            out.found = true;
            out.eps = e;
            return out;
        }
    }
    return out;
}

}  // namespace meyerlab
