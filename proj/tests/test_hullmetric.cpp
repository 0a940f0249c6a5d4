#include <gtest/gtest.h>

#include <random>

#include "meyerlab/hullmetric.hpp"
#include "support.hpp"

using namespace meyerlab;
using namespace testing_support;

namespace {

const MetricParams params{};

Patch1D<Q> patch(const PointSet<Q>& ps) { return Patch1D<Q>::from(ps); }

double dist_shift(const Patch1D<Q>& base, const Q& t) { return pattern_distance(base.shifted(t), base, params); }

}  // namespace

TEST(Metric, IntegerShiftClosedForm) {
    const auto z = patch(integer_patch<Q>(-100, 100));
    for (int k : {1, 2, 3}) {
        const double d = dist_shift(z, qr(k, 10));
        EXPECT_NEAR(d, k / 20.0, params.pitch) << k;
        EXPECT_GE(d, k / 20.0 - 1e-12);
    }
    EXPECT_EQ(dist_shift(z, q(0)), 0.0);
    EXPECT_EQ(dist_shift(z, q(7)), 0.0);
}

TEST(Metric, SymmetricAndMatchesGridOracle) {
    const auto ps = patch(fib_set(centered_window(), -200, 200));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> n(-4000, 4000);
    for (int i = 0; i < 25; ++i) {
        const Q s = qr(n(rng), 1000);
        const auto a = ps.shifted(s);
        const double ab = pattern_distance(a, ps, params);
        const double ba = pattern_distance(ps, a, params);
        EXPECT_NEAR(ab, ba, params.pitch) << s.to_string();
        EXPECT_NEAR(ab, pattern_distance_grid(a, ps, params, 1e-3), 2e-3) << s.to_string();
    }
}

TEST(Metric, TriangleInequalityOnShifts) {
    const auto ps = patch(fib_set(centered_window(), -200, 200));
    const std::vector<Q> shifts{qr(1, 20), tau() - q(1), q(1), qr(-3, 10), tau()};
    for (const auto& s : shifts) {
        for (const auto& t : shifts) {
            const double st = pattern_distance(ps.shifted(s), ps.shifted(t), params);
            EXPECT_LE(st, dist_shift(ps, s) + dist_shift(ps, t) + 2 * params.pitch);
        }
    }
}

TEST(Metric, InvalidParametersAndShortPatches) {
    MetricParams bad;
    bad.pitch = 1.0;
    EXPECT_THROW(bad.validate(), Error);
    const auto tiny = patch(integer_patch<Q>(-3, 3));
    try {
        pattern_distance(tiny.shifted(qr(1, 10)), tiny, params);
        FAIL() << "expected InsufficientRegion";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientRegion);
    }
}

TEST(PEps, IntegerComponentsClosedForm) {
    const auto rs = p_epsilon(integer_patch<Q>(-100, 100), qr(1, 10), params);
    ASSERT_FALSE(rs.components.empty());
    for (const auto& c : rs.components) {
        const Q n = c.seed;
        EXPECT_TRUE(n.is_rational() && n.rational_part().is_integer());
        EXPECT_EQ(c.lo, n - qr(1, 5));
        EXPECT_EQ(c.hi, n + qr(1, 5));
    }
}

// t ∈ P_ε exactly when d(Λ − t, Λ) < ε, away from the bisection pitch.
TEST(PEps, AgreesWithDirectDistance) {
    const auto ps = fib_set(centered_window(), -300, 300);
    const auto base = patch(ps);
    const Q eps = qr(1, 10);
    const auto rs = p_epsilon(ps, eps, params);
    const auto set = rs.as_intervals();
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> n(-40000, 40000);
    int near_edge = 0;
    for (int i = 0; i < 200; ++i) {
        const Q t = qr(n(rng), 1000);
        const double d = dist_shift(base, t);
        if (std::abs(d - 0.1) < 3 * params.pitch) {
            ++near_edge;
            continue;
        }
        EXPECT_EQ(set.contains(t), d < 0.1) << t.to_string() << " d=" << d;
    }
    EXPECT_LT(near_edge, 20);
    for (const auto& c : rs.components) EXPECT_LT(dist_shift(base, c.seed), 0.1);
}

TEST(PEps, MonotoneInEpsAndContainsZero) {
    const auto ps = fib_set(centered_window(), -400, 400);
    const std::vector<Q> ladder{qr(1, 80), qr(1, 40), qr(1, 20), qr(1, 10)};
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const auto rs = p_epsilon(ps, ladder[i], params);
        EXPECT_TRUE(rs.as_intervals().contains(q(0)));
        if (i == 0) continue;
        const auto smaller = p_epsilon(ps, ladder[i - 1], params).as_intervals();
        const auto bigger = rs.as_intervals().clipped(rs.validity.lo[0], rs.validity.hi[0]);
        const auto clipped = smaller.clipped(rs.validity.lo[0], rs.validity.hi[0]);
        EXPECT_TRUE(bigger.includes(clipped));
    }
}

TEST(Additivity, PassImpliesDifferencesReturn) {
    const auto ps = fib_set(centered_window(), -1500, 1500);
    const Q eps = qr(1, 20);
    const auto v = check_additivity(ps, eps, {qr(1, 40), qr(1, 80), qr(1, 160)}, params);
    ASSERT_TRUE(v.pass);
    const auto pd = p_epsilon(ps, *v.selected, params);
    const auto base = patch(ps);
    std::size_t checked = 0;
    const std::size_t stride = std::max<std::size_t>(1, pd.components.size() / 15);
    for (std::size_t i = 0; i < pd.components.size(); i += stride) {
        for (std::size_t j = 0; j < pd.components.size(); j += stride) {
            const Q t = pd.components[i].seed - pd.components[j].seed;
            if (t < v.validity.lo[0] || t > v.validity.hi[0]) continue;
            EXPECT_LT(dist_shift(base, t), 0.05 + params.pitch) << t.to_string();
            ++checked;
        }
    }
    EXPECT_GT(checked, 50u);
}

TEST(Additivity, SingularWindowFailsWithVerifiedWitnesses) {
    const auto ps = fib_set(half_open_window(), -1500, 1500);
    const auto v = check_additivity(ps, qr(1, 20), {qr(1, 40), qr(1, 80), qr(1, 160)}, params);
    EXPECT_FALSE(v.pass);
    ASSERT_FALSE(v.witnesses.empty());
    for (const auto& w : v.witnesses) {
        if (w.value) {
            EXPECT_GE(*w.value, 0.05);
        }
    }
    for (const auto& c : v.candidates) EXPECT_GT(c.violations, 0u);
}

TEST(Sandwich, IntegersBothInclusions) {
    const auto v = sandwich_check(integer_patch<Q>(-100, 100), qr(1, 10), qr(3, 2), Interval<Q>::open(qr(-1, 5), qr(1, 5)), params);
    EXPECT_TRUE(v.pass);
    ASSERT_EQ(v.parts.size(), 2u);
    EXPECT_TRUE(v.parts[0].second);
    EXPECT_TRUE(v.parts[1].second);
    // A U that is too small breaks the first inclusion.
    const auto narrow = sandwich_check(integer_patch<Q>(-100, 100), qr(1, 10), qr(3, 2), Interval<Q>::open(qr(-1, 10), qr(1, 10)), params);
    EXPECT_FALSE(narrow.pass);
    EXPECT_FALSE(narrow.witnesses.empty());
}
