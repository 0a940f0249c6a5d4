#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace meyerlab {

template <class S>
using Matrix = std::vector<std::vector<S>>;

namespace detail {

// Row pivot: first nonzero entry for exact scalars, largest magnitude otherwise.
template <Scalar S>
std::optional<std::size_t> pick_pivot(const Matrix<S>& a, std::size_t col, std::size_t from, double tol) {
    std::optional<std::size_t> best;
    double best_mag = 0;
    for (std::size_t r = from; r < a.size(); ++r) {
        if (ScalarTraits<S>::sign(a[r][col], tol) == 0) continue;
        if constexpr (ScalarTraits<S>::exact) return r;
        const double mag = std::abs(to_double(a[r][col]));
        if (!best || mag > best_mag) {
            best = r;
            best_mag = mag;
        }
    }
    return best;
}

}  // namespace detail

template <Scalar S>
S determinant(Matrix<S> a, double tol) {
    const std::size_t n = a.size();
    S det = ScalarTraits<S>::from_int(1);
    for (std::size_t c = 0; c < n; ++c) {
        auto p = detail::pick_pivot(a, c, c, tol);
        if (!p) return ScalarTraits<S>::from_int(0);
        if (*p != c) {
            std::swap(a[*p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (ScalarTraits<S>::sign(a[r][c], 0.0) == 0) continue;
            const S f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
        }
    }
    return det;
}

/// Inverse by Gauss-Jordan; throws SingularBasis when no pivot exists.
template <Scalar S>
Matrix<S> inverse(Matrix<S> a, double tol) {
    const std::size_t n = a.size();
    Matrix<S> inv(n, std::vector<S>(n, ScalarTraits<S>::from_int(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = ScalarTraits<S>::from_int(1);
    for (std::size_t c = 0; c < n; ++c) {
        auto p = detail::pick_pivot(a, c, c, tol);
        if (!p) throw Error(ErrorKind::SingularBasis, "matrix is singular");
        std::swap(a[*p], a[c]);
        std::swap(inv[*p], inv[c]);
        const S piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] = a[c][k] / piv;
            inv[c][k] = inv[c][k] / piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || ScalarTraits<S>::sign(a[r][c], 0.0) == 0) continue;
            const S f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] = a[r][k] - f * a[c][k];
                inv[r][k] = inv[r][k] - f * inv[c][k];
            }
        }
    }
    return inv;
}

/// Row vector times matrix.
template <Scalar S>
std::vector<S> row_times(const std::vector<S>& v, const Matrix<S>& a) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    std::vector<S> out(cols, ScalarTraits<S>::from_int(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (ScalarTraits<S>::sign(v[i], 0.0) == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) out[j] = out[j] + v[i] * a[i][j];
    }
    return out;
}

/// Outcome of solving a rational linear system A x = b.
struct RationalSolve {
    enum class Status { Unique, Inconsistent, Underdetermined };
    Status status = Status::Inconsistent;
    std::vector<Rational> x;
};

/// Gaussian elimination over Q for an overdetermined or square system.
inline RationalSolve solve_rational(Matrix<Rational> a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    RationalSolve out;
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) return out;
    }
    if (r < cols) {
        out.status = RationalSolve::Status::Underdetermined;
        return out;
    }
    out.status = RationalSolve::Status::Unique;
    out.x.assign(cols, Rational{});
    for (std::size_t i = 0; i < r; ++i) out.x[pivot_cols[i]] = b[i] / a[i][pivot_cols[i]];
    return out;
}

}  // namespace meyerlab
