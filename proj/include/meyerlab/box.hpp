#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace meyerlab {

template <class S>
using Point = std::vector<S>;

/// Lexicographic comparison; -1, 0, 1.
template <Scalar S>
int lex_compare(const Point<S>& a, const Point<S>& b, double tol) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        const int c = cmp(a[i], b[i], tol);
        if (c != 0) return c;
    }
    return (a.size() > b.size()) - (a.size() < b.size());
}

template <Scalar S>
Point<S> operator+(const Point<S>& a, const Point<S>& b) {
    Point<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

template <Scalar S>
Point<S> operator-(const Point<S>& a, const Point<S>& b) {
    Point<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

template <Scalar S>
S max_norm(const Point<S>& a, double tol) {
    S best = ScalarTraits<S>::from_int(0);
    for (const auto& x : a) {
        const S v = abs_value(x, tol);
        if (cmp(v, best, tol) > 0) best = v;
    }
    return best;
}

/// Closed axis-aligned box. Empty when lo > hi on some axis.
template <Scalar S>
struct Box {
    Point<S> lo;
    Point<S> hi;

    static Box centered(std::size_t dim, const S& half_width) {
        return Box{Point<S>(dim, -half_width), Point<S>(dim, half_width)};
    }
    static Box interval(const S& a, const S& b) { return Box{{a}, {b}}; }

    std::size_t dim() const { return lo.size(); }

    bool empty(double tol) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (cmp(lo[i], hi[i], tol) > 0) return true;
        }
        return false;
    }

    /// Closed containment; in float mode points within tol of a face count as inside.
    bool contains(const Point<S>& p, double tol) const {
        if (p.size() != lo.size()) throw Error(ErrorKind::DimensionMismatch, "point and box dimensions differ");
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (cmp(p[i], lo[i], tol) < 0 || cmp(p[i], hi[i], tol) > 0) return false;
        }
        return true;
    }

    /// Shrinks every face inwards by r (grows when r is negative).
    Box shrunk(const S& r) const {
        Box out = *this;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            out.lo[i] = lo[i] + r;
            out.hi[i] = hi[i] - r;
        }
        return out;
    }

    Box translated(const Point<S>& v) const { return Box{lo + v, hi + v}; }

    Box intersect(const Box& o, double tol) const {
        Box out = *this;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (cmp(o.lo[i], out.lo[i], tol) > 0) out.lo[i] = o.lo[i];
            if (cmp(o.hi[i], out.hi[i], tol) < 0) out.hi[i] = o.hi[i];
        }
        return out;
    }

    /// Smallest half-width over axes; negative for empty boxes.
    double min_half_width() const {
        double w = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double h = (to_double(hi[i]) - to_double(lo[i])) / 2;
            if (i == 0 || h < w) w = h;
        }
        return w;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (i) out += "x";
            out += "[" + ScalarTraits<S>::format(lo[i]) + ", " + ScalarTraits<S>::format(hi[i]) + "]";
        }
        return out;
    }

    friend bool operator==(const Box&, const Box&) = default;
};

}  // namespace meyerlab
