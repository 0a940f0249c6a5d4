#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "meyerlab/scalar.hpp"
#include "meyerlab/scheme.hpp"
#include "meyerlab/window.hpp"
#include "meyerlab/modelset.hpp"

namespace testing_support {

using meyerlab::QuadraticNumber;
using meyerlab::Rational;
using Q = QuadraticNumber;

inline Q q(std::int64_t a, std::int64_t b = 0, std::int64_t den = 1) { return Q(Rational(a, den), Rational(b, den), 5); }
inline Q qr(std::int64_t n, std::int64_t d) { return Q(Rational(n, d), Rational(0), 5); }
inline Q tau() { return meyerlab::golden(); }
inline Q tau_conj() { return meyerlab::golden_conjugate(); }

inline meyerlab::Window<Q> window(const Q& a, const Q& b, bool lo_closed = true, bool hi_closed = true) {
    return meyerlab::interval_window<Q>(a, b, lo_closed, hi_closed);
}
/// [−τ/2, τ/2]: no lattice point has its star on the boundary.
inline meyerlab::Window<Q> centered_window() { return window(-tau() / q(2), tau() / q(2)); }
/// [0, τ): repetitive, with 0 on the boundary.
inline meyerlab::Window<Q> half_open_window() { return window(q(0), tau(), true, false); }

inline meyerlab::Box<Q> region(std::int64_t lo, std::int64_t hi) { return meyerlab::Box<Q>::interval(q(lo), q(hi)); }

inline meyerlab::PointSet<Q> fib_set(const meyerlab::Window<Q>& w, std::int64_t lo, std::int64_t hi) {
    static const auto scheme = meyerlab::fibonacci_scheme<Q>();
    return meyerlab::generate(scheme, w, region(lo, hi));
}

/// Brute-force model set: every (a, b) with |a|, |b| ≤ n, kept when a + bτ' ∈ W and a + bτ ∈ [lo, hi].
inline std::vector<Q> brute_fibonacci(const meyerlab::Window<Q>& w, std::int64_t lo, std::int64_t hi, std::int64_t n) {
    std::vector<Q> out;
    for (std::int64_t a = -n; a <= n; ++a) {
        for (std::int64_t b = -n; b <= n; ++b) {
            const Q x = q(a) + q(b) * tau();
            const Q xs = q(a) + q(b) * tau_conj();
            if (x < q(lo) || x > q(hi)) continue;
            if (w.contains({xs})) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testing_support
