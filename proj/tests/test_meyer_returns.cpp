#include <gtest/gtest.h>

#include <set>

#include "meyerlab/meyer.hpp"
#include "meyerlab/returns.hpp"
#include "support.hpp"

using namespace meyerlab;
using namespace testing_support;

namespace {

/// Brute Λ_K: every difference t of two points in the validity box whose shifted K-patch equals the K-patch.
std::vector<Q> brute_lambda_K(const PointSet<Q>& ps, const Q& h) {
    const auto xs = ps.coords();
    std::vector<Q> patch;
    for (const auto& x : xs) {
        if (x >= -h && x <= h) patch.push_back(x);
    }
    const Q vlo = ps.region.lo[0] + h, vhi = ps.region.hi[0] - h;
    std::set<Q> out;
    for (const auto& a : xs) {
        for (const auto& b : xs) {
            const Q t = a - b;
            if (t < vlo || t > vhi || out.count(t)) continue;
            std::vector<Q> moved;
            for (const auto& x : xs) {
                if (x >= t - h && x <= t + h) moved.push_back(x - t);
            }
            if (moved == patch) out.insert(t);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Q> times_of(const ReturnSet<Q>& rs) {
    std::vector<Q> out;
    for (const auto& t : rs.times) out.push_back(t[0]);
    return out;
}

}  // namespace

TEST(Meyer, IntegersHaveTrivialCover) {
    const auto z = integer_patch<Q>(-50, 50);
    const auto rep = meyer_cover(z, 8);
    ASSERT_TRUE(rep.cover.has_value());
    EXPECT_EQ(rep.cover->size(), 1u);
    EXPECT_EQ(rep.r_packing, qr(1, 2));
    EXPECT_EQ(rep.r_covering, qr(1, 2));
}

// Every difference x − y landing well inside the region is λ + f for some λ ∈ Λ and f ∈ F.
TEST(Meyer, CoverIsSound) {
    const auto ps = fib_set(window(q(-1), tau() - q(1)), 0, 400);
    const auto rep = meyer_cover(ps, 64);
    ASSERT_TRUE(rep.cover.has_value());
    const auto xs = ps.coords();
    std::size_t checked = 0;
    for (const auto& x : xs) {
        for (const auto& y : xs) {
            const Q diff = x - y;
            if (diff < q(30) || diff > q(370)) continue;
            bool covered = false;
            for (const auto& f : *rep.cover) covered = covered || ps.contains({diff - f[0]});
            EXPECT_TRUE(covered) << diff.to_string();
            ++checked;
        }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(Meyer, CoverSaturatesAndControlExceedsBudget) {
    const auto w = window(q(-1), tau() - q(1));
    const auto a = meyer_cover(fib_set(w, 0, 200), 64);
    const auto b = meyer_cover(fib_set(w, 0, 400), 64);
    ASSERT_TRUE(a.cover && b.cover);
    EXPECT_EQ(a.cover->size(), b.cover->size());
    EXPECT_FALSE(meyer_cover(harmonic_perturbed_integers<Q>(200), 64).cover.has_value());
}

TEST(Meyer, PackingCoveringFibonacci) {
    const auto pc = packing_covering(fib_set(window(q(-1), tau() - q(1)), 0, 400));
    EXPECT_EQ(pc.r_packing, qr(1, 2));
    EXPECT_EQ(pc.r_covering, tau() / q(2));
    EXPECT_THROW(packing_covering(integer_patch<Q>(0, 0)), Error);
}

TEST(LambdaK, MatchesBruteForce) {
    for (const auto& w : {centered_window(), half_open_window()}) {
        const auto ps = fib_set(w, -120, 120);
        for (const Q& h : {q(1), q(2), qr(7, 2)}) {
            EXPECT_EQ(times_of(lambda_K(ps, h)), brute_lambda_K(ps, h)) << w.to_string() << " h=" << h.to_string();
        }
    }
}

TEST(LambdaK, AntiMonotoneInK) {
    const auto ps = fib_set(centered_window(), -600, 600);
    const std::vector<Q> ladder{q(1), q(2), q(5), q(10), q(20)};
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        const auto small = lambda_K(ps, ladder[i - 1]);
        const auto big = lambda_K(ps, ladder[i]);
        for (const auto& t : big.times) EXPECT_TRUE(small.contains_time(t)) << t[0].to_string();
    }
}

TEST(LambdaK, NegativeKIsVacuousAndContainsZero) {
    const auto ps = fib_set(centered_window(), -100, 100);
    EXPECT_TRUE(lambda_K(ps, q(-1)).vacuous);
    EXPECT_TRUE(lambda_K(ps, q(3)).contains_time({q(0)}));
}

TEST(LambdaK, GridFallbackWhenKMissesTheSet) {
    const std::vector<Q> xs{q(-3), q(3), q(9)};
    const auto ps = points_1d<Q>(xs, q(-10), q(10), Mode::exact(5), {"t", "", false});
    ReturnOptions opts;
    opts.grid_pitch = 0.5;
    const auto rs = lambda_K(ps, q(1), opts);
    EXPECT_TRUE(rs.grid_fallback);
    EXPECT_TRUE(rs.contains_time({q(0)}));
    EXPECT_FALSE(rs.contains_time({q(3)}));
}

TEST(Denseness, DefectIntegersAreUnbounded) {
    std::vector<Q> xs;
    for (int k = -100; k <= 100; ++k) {
        if (k != 0) xs.push_back(q(k));
    }
    const auto ps = points_1d<Q>(xs, q(-100), q(100), Mode::exact(5), {"t", "Z minus 0", false});
    EXPECT_FALSE(relative_denseness(lambda_K(ps, q(2))).bounded);
    const auto z = integer_patch<Q>(-100, 100);
    const auto d = relative_denseness(lambda_K(z, q(2)));
    EXPECT_TRUE(d.bounded);
    EXPECT_EQ(d.radius, qr(1, 2));
}

// A passing check means every difference of Λ_{K'} times lies in Λ_K.
TEST(Schlottmann, PassImpliesInclusion) {
    const auto ps = fib_set(centered_window(), -500, 500);
    const auto v = check_schlottmann(ps, q(2), {q(2), q(5), q(10), q(20), q(50)});
    ASSERT_TRUE(v.pass);
    ASSERT_TRUE(v.selected.has_value());
    const auto base = lambda_K(ps, q(2));
    const auto sel = lambda_K(ps, *v.selected);
    for (const auto& a : sel.times) {
        for (const auto& b : sel.times) {
            const Point<Q> t = a - b;
            if (!base.validity.contains(t, 0.0)) continue;
            EXPECT_TRUE(base.contains_time(t)) << t[0].to_string();
        }
    }
}

TEST(Schlottmann, SingularWindowFailsWithWitnesses) {
    const auto ps = fib_set(half_open_window(), -500, 500);
    const auto v = check_schlottmann(ps, q(2), {q(2), q(5), q(10), q(20), q(50)});
    EXPECT_FALSE(v.pass);
    ASSERT_FALSE(v.witnesses.empty());
    const auto base = lambda_K(ps, q(2));
    for (const auto& w : v.witnesses) EXPECT_FALSE(base.contains_time(w.t1 - w.t2));
    for (const auto& c : v.candidates) EXPECT_FALSE(c.passed);
}

TEST(Schlottmann, IntegersPassAtFirstEntry) {
    const auto v = check_schlottmann(integer_patch<Q>(-200, 200), q(2), {q(2), q(5)});
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(*v.selected, q(2));
}
