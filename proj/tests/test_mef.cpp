#include <gtest/gtest.h>

#include <random>

#include "meyerlab/mef.hpp"
#include "support.hpp"

using namespace meyerlab;
using namespace testing_support;

namespace {

const MetricParams params{};
const std::vector<Q> eps_ladder{qr(1, 10), qr(1, 20), qr(1, 40), qr(1, 80)};

Q random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-60, 60), d(1, 12);
    return Q(Rational(c(rng), d(rng)), Rational(c(rng), d(rng)), 5);
}

Q abs_q(const Q& x) { return x.sign() < 0 ? -x : x; }

}  // namespace

TEST(Torus, EmbeddingIsAMorphism) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const Q a = random_q(rng), b = random_q(rng);
        const auto lhs = torus_embed(tm, {a + b});
        const auto rhs = torus_add(tm, torus_embed(tm, {a}), torus_embed(tm, {b}));
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(torus_dist(tm, lhs, rhs), q(0));
    }
}

TEST(Torus, LatticePointsMapToTheirStar) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    for (std::int64_t a = -30; a <= 30; ++a) {
        for (std::int64_t b = -30; b <= 30; ++b) {
            const auto p = s.point({a, b});
            const Q st = abs_q(p.internal[0]);
            if (st >= qr(1, 2)) continue;
            // A nearer lattice translate would need |z|·|z*| < 1 for a nonzero lattice point z.
            EXPECT_EQ(torus_norm(tm, p.physical), st) << a << "," << b;
        }
    }
}

TEST(Torus, ContinuousAlongThePhysicalLine) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const Q a = random_q(rng), b = random_q(rng);
        EXPECT_LE(torus_dist(tm, torus_embed(tm, {a}), torus_embed(tm, {b})), abs_q(a - b));
    }
    EXPECT_EQ(torus_norm(tm, {qr(1, 10)}), qr(1, 10));
}

TEST(Torus, FloatModeWithinTolerance) {
    const auto s = fibonacci_scheme<double>();
    const TorusMap<double> tm(s);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        const auto lhs = torus_embed(tm, {a + b});
        const auto rhs = torus_add(tm, torus_embed(tm, {a}), torus_embed(tm, {b}));
        EXPECT_LT(torus_dist(tm, lhs, rhs), 1e-8);
    }
}

TEST(Kernel, FibonacciKernelIsTrivial) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    for (const auto& w : {centered_window(), half_open_window()}) {
        const auto rep = kernel_check(fib_set(w, -600, 600), tm, eps_ladder, params);
        EXPECT_TRUE(rep.verdict.pass) << w.to_string();
        EXPECT_EQ(rep.kernel, std::vector<Q>{q(0)});
        for (std::size_t k = 1; k < rep.bounds.size(); ++k) EXPECT_LE(rep.bounds[k], rep.bounds[k - 1]);
        for (const auto& [t, d] : rep.grid_survivors) EXPECT_LE(d, rep.bounds.back() + 0.2);
    }
}

TEST(Kernel, IntegersKernelIsEverything) {
    const auto s = integer_scheme<Q>();
    const TorusMap<Q> tm(s);
    const auto rep = kernel_check(integer_patch<Q>(-300, 300), tm, eps_ladder, params);
    EXPECT_TRUE(rep.verdict.pass);
    EXPECT_EQ(rep.kernel.size(), rep.survivors.size());
    for (const auto& t : rep.kernel) EXPECT_TRUE(t.is_rational() && t.rational_part().is_integer());
    for (double b : rep.bounds) EXPECT_EQ(b, 0.0);
}

// Non-singular windows sit strictly below singular ones after the first ladder point.
TEST(Correlation, ForwardModulusOrdersWindows) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    const auto good = aa_correlation(fib_set(centered_window(), -600, 600), tm, params);
    const auto bad = aa_correlation(fib_set(half_open_window(), -600, 600), tm, params);
    ASSERT_EQ(good.forward.size(), 4u);
    for (std::size_t k = 1; k < good.forward.size(); ++k) EXPECT_LT(good.forward[k], bad.forward[k]);
    for (std::size_t k = 1; k < good.forward.size(); ++k) EXPECT_LE(good.forward[k], good.forward[k - 1]);
    for (std::size_t k = 1; k < good.reverse.size(); ++k) EXPECT_LE(good.reverse[k], good.reverse[k - 1]);
    for (std::size_t i = 1; i < good.samples.size(); ++i) EXPECT_LE(good.samples[i - 1].t, good.samples[i].t);
}

TEST(Correlation, Deterministic) {
    const auto s = fibonacci_scheme<Q>();
    const TorusMap<Q> tm(s);
    const auto ps = fib_set(centered_window(), -400, 400);
    const auto a = aa_correlation(ps, tm, params);
    const auto b = aa_correlation(ps, tm, params);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].t, b.samples[i].t);
        EXPECT_EQ(a.samples[i].pattern, b.samples[i].pattern);
    }
    EXPECT_EQ(a.forward, b.forward);
}

TEST(Veech, NonSingularShrinksSingularStalls) {
    const auto good = veech_fiber_estimate(fib_set(centered_window(), -1500, 1500), eps_ladder, 20.0, params);
    const auto bad = veech_fiber_estimate(fib_set(half_open_window(), -1500, 1500), eps_ladder, 20.0, params);
    ASSERT_EQ(good.size(), 4u);
    for (std::size_t k = 1; k < good.size(); ++k) EXPECT_LT(good[k].diameter, good[k - 1].diameter);
    EXPECT_LT(good.back().diameter, 0.05);
    for (const auto& l : bad) EXPECT_GT(l.diameter, 0.1);
}
