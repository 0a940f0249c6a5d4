#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace meyerlab {

/// Interval of R with independent open/closed ends.
template <Scalar S>
struct Interval {
    S lo{};
    S hi{};
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(const S& a, const S& b) { return Interval{a, b, false, false}; }
    static Interval closed(const S& a, const S& b) { return Interval{a, b, true, true}; }

    bool empty(double tol) const {
        const int c = cmp(lo, hi, tol);
        return c > 0 || (c == 0 && !(lo_closed && hi_closed));
    }
    bool contains(const S& x, double tol) const {
        const int l = cmp(x, lo, tol);
        const int h = cmp(x, hi, tol);
        return (l > 0 || (l == 0 && lo_closed)) && (h < 0 || (h == 0 && hi_closed));
    }
    Interval shifted(const S& t) const { return Interval{lo + t, hi + t, lo_closed, hi_closed}; }
    Interval closure() const { return Interval{lo, hi, true, true}; }

    std::string to_string() const {
        return std::string(lo_closed ? "[" : "(") + ScalarTraits<S>::format(lo) + ", " + ScalarTraits<S>::format(hi) +
               (hi_closed ? "]" : ")");
    }
};

/// Sorted union of intervals, merged into connected components.
template <Scalar S>
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(std::vector<Interval<S>> parts, double tol) : tol_(tol) {
        for (auto& p : parts) {
            if (!p.empty(tol_)) parts_.push_back(std::move(p));
        }
        normalize();
    }

    const std::vector<Interval<S>>& components() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    bool contains(const S& x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [this](const S& v, const Interval<S>& c) { return cmp(v, c.lo, tol_) < 0; });
        if (it == parts_.begin()) return false;
        return (it - 1)->contains(x, tol_);
    }

    /// A point of `a` outside the set, if any.
    std::optional<S> uncovered_point(const Interval<S>& a) const {
        if (a.empty(tol_)) return std::nullopt;
        const S two = ScalarTraits<S>::from_int(2);
        S cur = a.lo;
        bool need_cur = a.lo_closed;  // whether cur itself still needs cover
        auto finished = [&] {
            const int c = cmp(cur, a.hi, tol_);
            return c > 0 || (c == 0 && (!a.hi_closed || !need_cur));
        };
        // Components are disjoint and sorted, so their upper ends are sorted too.
        auto first = std::lower_bound(parts_.begin(), parts_.end(), a.lo,
                                      [this](const Interval<S>& c, const S& v) { return cmp(c.hi, v, tol_) < 0; });
        for (auto it = first; it != parts_.end(); ++it) {
            const auto& b = *it;
            const int hc = cmp(b.hi, cur, tol_);
            if (need_cur ? (hc < 0 || (hc == 0 && !b.hi_closed)) : hc <= 0) continue;
            const int lc = cmp(b.lo, cur, tol_);
            const bool covers_start = need_cur ? (lc < 0 || (lc == 0 && b.lo_closed)) : lc <= 0;
            if (!covers_start) {
                if (need_cur) return cur;
                const S end = cmp(b.lo, a.hi, tol_) < 0 ? b.lo : a.hi;
                return (cur + end) / two;
            }
            cur = b.hi;
            need_cur = !b.hi_closed;
            if (finished()) return std::nullopt;
        }
        if (need_cur) return cur;
        return (cur + a.hi) / two;
    }

    bool includes(const Interval<S>& a) const { return !uncovered_point(a).has_value(); }

    bool includes(const IntervalSet& other) const {
        for (const auto& c : other.parts_) {
            if (!includes(c)) return false;
        }
        return true;
    }

    /// Intersection with a closed interval [lo, hi].
    IntervalSet clipped(const S& lo, const S& hi) const {
        std::vector<Interval<S>> out;
        for (auto c : parts_) {
            if (cmp(c.lo, lo, tol_) < 0) {
                c.lo = lo;
                c.lo_closed = true;
            }
            if (cmp(c.hi, hi, tol_) > 0) {
                c.hi = hi;
                c.hi_closed = true;
            }
            out.push_back(c);
        }
        return IntervalSet(std::move(out), tol_);
    }

    IntervalSet closure() const {
        std::vector<Interval<S>> out;
        for (const auto& c : parts_) out.push_back(c.closure());
        return IntervalSet(std::move(out), tol_);
    }

private:
    void normalize() {
        const double t = tol_;
        std::sort(parts_.begin(), parts_.end(), [t](const Interval<S>& x, const Interval<S>& y) {
            const int c = cmp(x.lo, y.lo, t);
            if (c != 0) return c < 0;
            return x.lo_closed && !y.lo_closed;
        });
        std::vector<Interval<S>> merged;
        for (const auto& p : parts_) {
            if (!merged.empty()) {
                auto& cur = merged.back();
                const int c = cmp(p.lo, cur.hi, t);
                if (c < 0 || (c == 0 && (cur.hi_closed || p.lo_closed))) {
                    const int h = cmp(p.hi, cur.hi, t);
                    if (h > 0) {
                        cur.hi = p.hi;
                        cur.hi_closed = p.hi_closed;
                    } else if (h == 0) {
                        cur.hi_closed = cur.hi_closed || p.hi_closed;
                    }
                    continue;
                }
            }
            merged.push_back(p);
        }
        parts_ = std::move(merged);
    }

    double tol_ = 0.0;
    std::vector<Interval<S>> parts_;
};

}  // namespace meyerlab
