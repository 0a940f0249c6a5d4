#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>

#include "meyerlab/modelset.hpp"
#include "meyerlab/pointset_io.hpp"
#include "support.hpp"

using namespace meyerlab;
using namespace testing_support;

namespace {

std::vector<Q> coords(const PointSet<Q>& ps) { return ps.coords(); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Unsupported;
}

}  // namespace

TEST(Generate, MatchesBruteForceLoop) {
    for (const auto& w : {window(q(-1), tau() - q(1)), centered_window(), half_open_window(), window(q(0), tau())}) {
        EXPECT_EQ(coords(fib_set(w, -40, 60)), brute_fibonacci(w, -40, 60, 120)) << w.to_string();
    }
}

TEST(Generate, FibonacciGapsAndWord) {
    const auto ps = fib_set(window(q(-1), tau() - q(1)), 0, 400);
    EXPECT_EQ(gap_set(ps), (std::vector<Q>{q(1), tau()}));
    const auto word = gap_word(ps, tau(), q(1));
    EXPECT_GE(match_word_up_to_edges(word, fibonacci_word_oracle(word.size() + 40)), 0);
}

TEST(Generate, FibonacciWordOracleIsSubstitutionFixedPoint) {
    const auto w = fibonacci_word_oracle(200);
    ASSERT_GE(w.size(), 200u);
    std::string image;
    for (char c : w.substr(0, 100)) image += (c == 'L') ? "LS" : "L";
    EXPECT_EQ(w.substr(0, image.size()), image);
}

TEST(Generate, MonotoneInTheWindow) {
    const auto small = fib_set(window(q(0), q(1)), -100, 100);
    const auto big = fib_set(window(qr(-1, 2), tau()), -100, 100);
    for (const auto& p : small.points) EXPECT_TRUE(big.contains(p));
}

// Shifting the window by g* shifts the model set by g.
TEST(Generate, LatticeEquivariance) {
    const auto s = fibonacci_scheme<Q>();
    const auto w = centered_window();
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-3, 2}, {5, -3}}) {
        const auto g = s.point({a, b});
        const auto shifted = generate(s, w.translated(g.internal), region(-50, 50).translated(g.physical));
        const auto base = translated(generate(s, w, region(-50, 50)), g.physical);
        EXPECT_EQ(shifted.points, base.points);
    }
}

TEST(Generate, IntegerLatticeAndEmptyRegion) {
    const auto s = integer_scheme<Q>();
    const auto z = generate(s, Window<Q>(0, {}), region(-5, 5));
    EXPECT_EQ(z.size(), 11u);
    EXPECT_EQ(z.source.kind, "lattice");
    const auto none = generate(fibonacci_scheme<Q>(), centered_window(), Box<Q>::interval(qr(1, 10), qr(2, 10)));
    EXPECT_EQ(none.size(), 0u);
}

TEST(PointSetIo, ExactRoundTrip) {
    const auto ps = fib_set(centered_window(), -30, 30);
    const auto text = format_pointset(ps, "abc");
    const auto back = parse_pointset<Q>(text);
    EXPECT_EQ(back.points, ps.points);
    EXPECT_EQ(back.region, ps.region);
    EXPECT_EQ(back.mode, ps.mode);
    EXPECT_EQ(format_pointset(back, "abc"), text);
}

TEST(PointSetIo, FloatRoundTripAndFiles) {
    const auto s = fibonacci_scheme<double>();
    const auto ps = generate(s, interval_window<double>(-0.8, 0.8, true, true, s.tol()), Box<double>::interval(-40, 40));
    const auto path = (std::filesystem::temp_directory_path() / "meyerlab_rt.tsv").string();
    save_pointset(ps, path);
    const auto back = load_pointset<double>(path);
    std::remove(path.c_str());
    EXPECT_EQ(back.points, ps.points);
    EXPECT_EQ(kind_of([&] { load_pointset<double>("/nonexistent/x.tsv"); }), ErrorKind::IoError);
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>(format_pointset(ps)); }), ErrorKind::ParseError);
}

TEST(PointSetIo, RejectsBadInput) {
    const std::string head = "# meyerlab pointset v1; d=1; mode=exact:D=5; region=[0|10]\n";
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>(head + "1\n2\n1\n"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>(head + "1\t2\n"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>(head + "11\n"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>("1\n2\n"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { parse_pointset<Q>(head + "x\n"); }), ErrorKind::ParseError);
}

TEST(PointSetIo, UnsortedInputIsResorted) {
    const std::string text = "# meyerlab pointset v1; d=1; mode=exact:D=5; region=[0|10]\n3\n1/2+1/2√5\n1\n";
    const auto ps = parse_pointset<Q>(text);
    EXPECT_TRUE(ps.source.resorted);
    EXPECT_EQ(ps.coords(), (std::vector<Q>{q(1), tau(), q(3)}));
    EXPECT_NE(format_pointset(ps).find("resorted=1"), std::string::npos);
}

TEST(PointSet, ConstructionChecks) {
    const Mode m = Mode::exact(5);
    EXPECT_EQ(kind_of([&] { points_1d<Q>({q(1), q(1)}, q(0), q(5), m, {"t", "", false}); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { points_1d<Q>({q(9)}, q(0), q(5), m, {"t", "", false}); }), ErrorKind::InvalidArgument);
    const auto ps = points_1d<Q>({q(2), q(1)}, q(0), q(5), m, {"t", "", false});
    EXPECT_TRUE(ps.source.resorted);
    EXPECT_TRUE(ps.contains({q(2)}));
    EXPECT_FALSE(ps.contains({q(3)}));
}
