#pragma once
/*!
 * \file scheme.hpp
 * \brief Cut-and-project schemes H x G with a lattice given by basis rows.
 *
 * Coordinates of a lattice point are ordered internal first, then physical:
 * the row vector c * basis equals (x*, x) for integer coefficients c.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "box.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace meyerlab {

template <Scalar S>
struct LatticePoint {
    std::vector<std::int64_t> coeffs;
    Point<S> internal;
    Point<S> physical;
};

struct SchemeOptions {
    double density_eta = 0.05;
    double density_internal_half = 1.0;
    double density_physical_half = 50.0;
    double injectivity_half = 10.0;
    double star_search_half = 100.0;
    /// Upper bound on enumerated coefficient tuples before BoxTooLarge.
    std::uint64_t enumeration_cap = 50'000'000;
};

struct ProbeReport {
    std::size_t injectivity_points = 0;
    std::size_t density_points = 0;
    std::size_t density_cells = 0;
    double density_eta = 0;
};

template <Scalar S>
class Scheme {
public:
    std::size_t d = 1;
    std::size_t m = 0;
    Matrix<S> basis;
    Matrix<S> basis_inverse;
    Mode mode;
    SchemeOptions options;
    ProbeReport probes;

    std::size_t rank() const { return d + m; }
    double tol() const { return mode.tol(); }

    LatticePoint<S> point(const std::vector<std::int64_t>& c) const {
        std::vector<S> cs;
        cs.reserve(c.size());
        for (auto v : c) cs.push_back(ScalarTraits<S>::from_int(v));
        const auto x = row_times(cs, basis);
        LatticePoint<S> p;
        p.coeffs = c;
        p.internal.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
        p.physical.assign(x.begin() + static_cast<std::ptrdiff_t>(m), x.end());
        return p;
    }
};

namespace detail {

inline double inflate(double v) { return 1e-7 * (1.0 + std::abs(v)); }

template <Scalar S>
Matrix<double> to_double_matrix(const Matrix<S>& a) {
    Matrix<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& v : a[i]) out[i].push_back(to_double(v));
    }
    return out;
}

}  // namespace detail

/// Lattice points with internal coordinate in `internal_box` and physical
/// coordinate in `physical_box` (both closed), sorted by physical coordinate.
template <Scalar S>
std::vector<LatticePoint<S>> lattice_points_in_box(const Scheme<S>& scheme, const Box<S>& internal_box,
                                                   const Box<S>& physical_box) {
    const std::size_t n = scheme.rank();
    const double tol = scheme.tol();
    if (internal_box.dim() != scheme.m || physical_box.dim() != scheme.d) {
        throw Error(ErrorKind::DimensionMismatch, "box dimensions do not match the scheme");
    }
    std::vector<LatticePoint<S>> out;
    if (internal_box.empty(tol) || physical_box.empty(tol)) return out;

    Box<S> full{internal_box.lo, internal_box.hi};
    full.lo.insert(full.lo.end(), physical_box.lo.begin(), physical_box.lo.end());
    full.hi.insert(full.hi.end(), physical_box.hi.begin(), physical_box.hi.end());
    std::vector<double> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = to_double(full.lo[j]) - tol;
        hi[j] = to_double(full.hi[j]) + tol;
        lo[j] -= detail::inflate(lo[j]);
        hi[j] += detail::inflate(hi[j]);
    }
    const auto B = detail::to_double_matrix(scheme.basis);
    const auto Binv = detail::to_double_matrix(scheme.basis_inverse);

    // Coefficient ranges: c_i = sum_j x_j Binv[j][i] over the box.
    std::vector<std::int64_t> cmin(n), cmax(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0, b = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = Binv[j][i];
            a += std::min(w * lo[j], w * hi[j]);
            b += std::max(w * lo[j], w * hi[j]);
        }
        a -= detail::inflate(a);
        b += detail::inflate(b);
        if (std::abs(a) > 9e15 || std::abs(b) > 9e15) {
            throw Error(ErrorKind::BoxTooLarge, "coefficient range exceeds 64-bit enumeration");
        }
        cmin[i] = static_cast<std::int64_t>(std::ceil(a));
        cmax[i] = static_cast<std::int64_t>(std::floor(b));
        if (cmin[i] > cmax[i]) return out;
    }
    double outer = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) outer *= static_cast<double>(cmax[i] - cmin[i] + 1);
    if (outer > static_cast<double>(scheme.options.enumeration_cap)) {
        throw Error(ErrorKind::BoxTooLarge, "enumeration needs " + std::to_string(static_cast<long long>(outer)) +
                                                " coefficient tuples, cap is " +
                                                std::to_string(scheme.options.enumeration_cap));
    }

    std::vector<std::int64_t> c(cmin.begin(), cmin.end());
    const std::size_t last = n - 1;
    std::vector<double> partial(n);
    while (true) {
        // Position without the last coefficient, then the admissible range of the last one.
        std::fill(partial.begin(), partial.end(), 0.0);
        for (std::size_t i = 0; i < last; ++i) {
            for (std::size_t j = 0; j < n; ++j) partial[j] += static_cast<double>(c[i]) * B[i][j];
        }
        double a = static_cast<double>(cmin[last]);
        double b = static_cast<double>(cmax[last]);
        for (std::size_t j = 0; j < n && a <= b; ++j) {
            const double w = B[last][j];
            if (std::abs(w) < 1e-300) {
                if (partial[j] < lo[j] - detail::inflate(partial[j]) || partial[j] > hi[j] + detail::inflate(partial[j])) {
                    a = 1;
                    b = 0;
                }
                continue;
            }
            double l = (lo[j] - partial[j]) / w;
            double h = (hi[j] - partial[j]) / w;
            if (l > h) std::swap(l, h);
            a = std::max(a, l - detail::inflate(l));
            b = std::min(b, h + detail::inflate(h));
        }
        if (a <= b) {
            for (auto k = static_cast<std::int64_t>(std::ceil(a)); k <= static_cast<std::int64_t>(std::floor(b)); ++k) {
                c[last] = k;
                auto p = scheme.point(c);
                if (internal_box.contains(p.internal, tol) && physical_box.contains(p.physical, tol)) {
                    out.push_back(std::move(p));
                    if (out.size() > scheme.options.enumeration_cap) {
                        throw Error(ErrorKind::BoxTooLarge, "enumeration result exceeds cap");
                    }
                }
            }
        }
        // Odometer over the first n-1 coefficients.
        std::size_t i = 0;
        for (; i < last; ++i) {
            if (c[i] < cmax[i]) {
                ++c[i];
                break;
            }
            c[i] = cmin[i];
        }
        if (i == last) break;
    }
    std::sort(out.begin(), out.end(), [tol](const LatticePoint<S>& x, const LatticePoint<S>& y) {
        const int k = lex_compare(x.physical, y.physical, tol);
        if (k != 0) return k < 0;
        return lex_compare(x.internal, y.internal, tol) < 0;
    });
    return out;
}

namespace detail {

template <Scalar S>
void check_density(Scheme<S>& s) {
    if (s.m == 0) return;
    const auto& o = s.options;
    const auto ih = ScalarTraits<S>::from_double(o.density_internal_half);
    const auto ph = ScalarTraits<S>::from_double(o.density_physical_half);
    const auto pts = lattice_points_in_box(s, Box<S>::centered(s.m, ih), Box<S>::centered(s.d, ph));
    const double eta = o.density_eta;
    const auto per_axis = static_cast<std::size_t>(std::ceil(2 * o.density_internal_half / eta));
    std::size_t cells = 1;
    for (std::size_t i = 0; i < s.m; ++i) {
        cells *= per_axis;
        if (cells > 50'000'000) throw Error(ErrorKind::BoxTooLarge, "density probe grid too fine");
    }
    std::vector<char> hit(cells, 0);
    for (const auto& p : pts) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < s.m; ++i) {
            const double x = to_double(p.internal[i]) + o.density_internal_half;
            auto k = static_cast<std::int64_t>(std::floor(x / eta));
            k = std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(per_axis) - 1);
            idx = idx * per_axis + static_cast<std::size_t>(k);
        }
        hit[idx] = 1;
    }
    const auto missing = std::count(hit.begin(), hit.end(), 0);
    s.probes.density_points = pts.size();
    s.probes.density_cells = cells;
    s.probes.density_eta = eta;
    if (missing > 0) {
        throw Error(ErrorKind::DensityFailure,
                    std::to_string(missing) + " of " + std::to_string(cells) + " internal cells of width " +
                        ScalarTraits<double>::format(eta) + " contain no lattice star (" +
                        std::to_string(pts.size()) + " probe points)");
    }
}

template <Scalar S>
void check_injectivity(Scheme<S>& s) {
    const auto h = ScalarTraits<S>::from_double(s.options.injectivity_half);
    const auto pts = lattice_points_in_box(s, Box<S>::centered(s.m, h), Box<S>::centered(s.d, h));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (lex_compare(pts[i - 1].physical, pts[i].physical, s.tol()) == 0) {
            std::string c1, c2;
            for (auto v : pts[i - 1].coeffs) c1 += std::to_string(v) + " ";
            for (auto v : pts[i].coeffs) c2 += std::to_string(v) + " ";
            throw Error(ErrorKind::InjectivityFailure,
                        "lattice points with coefficients (" + c1 + ") and (" + c2 + ") share a physical projection");
        }
    }
    s.probes.injectivity_points = pts.size();
}

}  // namespace detail

/// Validates and returns a scheme. Checks run in the order: invertibility,
/// density of the internal projection, injectivity of the physical projection.
template <Scalar S>
Scheme<S> build_scheme(const Matrix<S>& basis, std::size_t d, std::size_t m, const Mode& mode,
                       const SchemeOptions& options = {}) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "physical dimension must be positive");
    if (ScalarTraits<S>::exact != mode.is_exact()) {
        throw Error(ErrorKind::InvalidArgument, "scalar type does not match mode " + mode.to_string());
    }
    const std::size_t n = d + m;
    if (basis.size() != n) throw Error(ErrorKind::DimensionMismatch, "basis must have d+m rows");
    for (const auto& row : basis) {
        if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "basis must be square");
        if constexpr (ScalarTraits<S>::exact) {
            for (const auto& v : row) {
                if (!v.is_rational() && v.radicand() != mode.D) {
                    throw Error(ErrorKind::InvalidArgument, "basis entry " + v.to_string() + " is not in Q(√" +
                                                                std::to_string(mode.D) + ")");
                }
            }
        }
    }
    Scheme<S> s;
    s.d = d;
    s.m = m;
    s.basis = basis;
    s.mode = mode;
    s.options = options;
    if (ScalarTraits<S>::sign(determinant(basis, mode.tol()), mode.tol()) == 0) {
        throw Error(ErrorKind::SingularBasis, "basis determinant is zero");
    }
    s.basis_inverse = inverse(basis, mode.tol());
    detail::check_density(s);
    detail::check_injectivity(s);
    return s;
}

/// Internal coordinate t* of the lattice point over physical point t.
template <Scalar S>
Point<S> star_map(const Scheme<S>& scheme, const Point<S>& t) {
    if (t.size() != scheme.d) throw Error(ErrorKind::DimensionMismatch, "physical point has wrong dimension");
    auto describe = [&] {
        std::string out = "(";
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + ScalarTraits<S>::format(t[i]);
        return out + ")";
    };
    const std::size_t n = scheme.rank();
    if constexpr (ScalarTraits<S>::exact) {
        // Integer c with sum_i c_i B[i][m+j] = t_j; split every equation into
        // rational and √D parts.
        Matrix<Rational> a;
        std::vector<Rational> b;
        for (std::size_t j = 0; j < scheme.d; ++j) {
            std::vector<Rational> ra(n), ia(n);
            for (std::size_t i = 0; i < n; ++i) {
                ra[i] = scheme.basis[i][scheme.m + j].rational_part();
                ia[i] = scheme.basis[i][scheme.m + j].irrational_part();
            }
            if (!t[j].is_rational() && t[j].radicand() != scheme.mode.D) {
                throw Error(ErrorKind::NotALatticeProjection, describe() + " lies outside Q(√" +
                                                                  std::to_string(scheme.mode.D) + ")");
            }
            a.push_back(ra);
            b.push_back(t[j].rational_part());
            a.push_back(ia);
            b.push_back(t[j].irrational_part());
        }
        const auto sol = solve_rational(a, b);
        if (sol.status == RationalSolve::Status::Inconsistent) {
            throw Error(ErrorKind::NotALatticeProjection, describe() + " is not a projection of the lattice");
        }
        if (sol.status == RationalSolve::Status::Unique) {
            std::vector<std::int64_t> c;
            for (const auto& v : sol.x) {
                if (!v.is_integer()) {
                    throw Error(ErrorKind::NotALatticeProjection,
                                describe() + " has non-integer lattice coefficient " + v.to_string());
                }
                c.push_back(v.num());
            }
            return scheme.point(c).internal;
        }
    }
    const auto h = ScalarTraits<S>::from_double(scheme.options.star_search_half);
    const auto pts = lattice_points_in_box(scheme, Box<S>::centered(scheme.m, h), Box<S>{t, t});
    if (pts.empty()) {
        throw Error(ErrorKind::NotALatticeProjection,
                    describe() + " has no lattice point within internal radius " +
                        ScalarTraits<double>::format(scheme.options.star_search_half));
    }
    return pts.front().internal;
}

template <Scalar S>
S golden_value();
template <>
inline QuadraticNumber golden_value<QuadraticNumber>() {
    return golden();
}
template <>
inline double golden_value<double>() {
    return (1.0 + std::sqrt(5.0)) / 2.0;
}

template <Scalar S>
Mode default_mode() {
    if constexpr (ScalarTraits<S>::exact) {
        return Mode::exact(5);
    } else {
        return Mode::floating();
    }
}

/// Rows (1, 1) and (τ′, τ): the lattice point (a, b) sits at a + bτ with star a + bτ′.
template <Scalar S>
Scheme<S> fibonacci_scheme(const SchemeOptions& options = {}) {
    const S one = ScalarTraits<S>::from_int(1);
    const S tau = golden_value<S>();
    const S taup = one - tau;
    return build_scheme<S>({{one, one}, {taup, tau}}, 1, 1, default_mode<S>(), options);
}

/// Γ = Z in G = R with no internal space.
template <Scalar S>
Scheme<S> integer_scheme(const SchemeOptions& options = {}) {
    return build_scheme<S>({{ScalarTraits<S>::from_int(1)}}, 1, 0, default_mode<S>(), options);
}

}  // namespace meyerlab
