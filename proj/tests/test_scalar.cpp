#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "meyerlab/linalg.hpp"
#include "meyerlab/scalar.hpp"
#include "support.hpp"

using namespace meyerlab;
using testing_support::q;
using testing_support::Q;
using testing_support::tau;
using testing_support::tau_conj;

TEST(Rational, NormalizesSignAndGcd) {
    const Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, -7), Rational(0));
    EXPECT_THROW(Rational(1, 0), Error);
}

TEST(Rational, ArithmeticMatchesLongDouble) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
    for (int i = 0; i < 500; ++i) {
        const Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        const long double xd = x.to_double(), yd = y.to_double();
        EXPECT_NEAR((x + y).to_double(), xd + yd, 1e-12);
        EXPECT_NEAR((x - y).to_double(), xd - yd, 1e-12);
        EXPECT_NEAR((x * y).to_double(), xd * yd, 1e-12);
        if (!y.is_zero()) {
            EXPECT_NEAR((x / y).to_double(), xd / yd, 1e-9);
        }
        EXPECT_EQ(x < y, xd < yd);
        EXPECT_EQ(x.floor(), static_cast<std::int64_t>(std::floor(xd)));
    }
}

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
    EXPECT_EQ(Rational::parse("-1.5e-2"), Rational(-3, 200));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_THROW(Rational::parse("abc"), Error);
    EXPECT_THROW(Rational::parse("1/0"), Error);
}

TEST(Rational, OverflowIsReported) {
    const Rational big(std::numeric_limits<std::int64_t>::max());
    try {
        (void)(big * big);
        FAIL() << "expected overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ArithmeticOverflow);
    }
}

TEST(QuadraticNumber, FieldOperationsMatchDoubles) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-20, 20), d(1, 9);
    for (int D : {2, 3, 5}) {
        for (int i = 0; i < 300; ++i) {
            const QuadraticNumber x(Rational(c(rng), d(rng)), Rational(c(rng), d(rng)), D);
            const QuadraticNumber y(Rational(c(rng), d(rng)), Rational(c(rng), d(rng)), D);
            EXPECT_NEAR((x + y).to_double(), x.to_double() + y.to_double(), 1e-9);
            EXPECT_NEAR((x * y).to_double(), x.to_double() * y.to_double(), 1e-8);
            if (x.sign() != 0) {
                EXPECT_EQ(x / x, QuadraticNumber(Rational(1), Rational(0), D));
                EXPECT_EQ(y * x / x, y);
            }
            EXPECT_EQ((x * y).conjugate(), x.conjugate() * y.conjugate());
            EXPECT_EQ(x.norm(), (x * x.conjugate()).rational_part());
        }
    }
}

// τ'^n = F_{n-1} + F_n τ' has sign (−1)^n and magnitude far below double resolution of its parts.
TEST(QuadraticNumber, ExactSignOfTinyFibonacciResidues) {
    std::int64_t f0 = 0, f1 = 1;  // F_{n-1}, F_n
    for (int n = 1; n <= 60; ++n) {
        const Q v = q(f0) + q(f1) * tau_conj();
        EXPECT_EQ(v.sign(), n % 2 == 0 ? 1 : -1) << "n=" << n;
        EXPECT_EQ(v > q(0), n % 2 == 0);
        const std::int64_t f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
}

TEST(QuadraticNumber, StringRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-40, 40), d(1, 12);
    for (int i = 0; i < 300; ++i) {
        const Q x(Rational(c(rng), d(rng)), Rational(c(rng), d(rng)), 5);
        EXPECT_EQ(Q::parse(x.to_string(), 5), x) << x.to_string();
    }
    EXPECT_EQ(Q::parse("1/2+1/2sqrt5", 5), tau());
    EXPECT_EQ(tau().to_string(), "1/2+1/2√5");
    EXPECT_THROW(Q::parse("1+√3", 5), Error);
}

TEST(QuadraticNumber, FloorAgreesWithDouble) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-100, 100), d(1, 7);
    for (int i = 0; i < 300; ++i) {
        const Q x(Rational(c(rng), d(rng)), Rational(c(rng), d(rng)), 5);
        EXPECT_EQ(x.floor(), static_cast<std::int64_t>(std::floor(x.to_double())));
    }
    EXPECT_EQ((q(3) * tau()).floor(), 4);
}

TEST(Mode, OnlySupportedRadicands) {
    EXPECT_NO_THROW(Mode::exact(2));
    EXPECT_THROW(Mode::exact(7), Error);
    EXPECT_EQ(Mode::exact(5).to_string(), "exact:D=5");
    EXPECT_EQ(Mode::exact(5).tol(), 0.0);
    EXPECT_DOUBLE_EQ(Mode::floating(1e-6).tol(), 1e-6);
}

TEST(FloatScalar, ComparisonUsesTolerance) {
    EXPECT_EQ(cmp(1.0, 1.0 + 1e-12, 1e-9), 0);
    EXPECT_EQ(cmp(1.0, 1.1, 1e-9), -1);
    EXPECT_EQ(ScalarTraits<double>::parse("1/4", Mode::floating(1e-9)), 0.25);
}

TEST(Linalg, InverseTimesMatrixIsIdentity) {
    const Matrix<Q> b{{q(1), q(1)}, {tau_conj(), tau()}};
    const auto inv = inverse(b, 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Q> e(2, q(0));
        e[i] = q(1);
        EXPECT_EQ(row_times(row_times(e, b), inv), e);
    }
    EXPECT_EQ(determinant(b, 0.0), tau() - tau_conj());
    EXPECT_THROW(inverse(Matrix<Q>{{q(1), q(2)}, {q(2), q(4)}}, 0.0), Error);
}

TEST(Linalg, RationalSolveClassifiesSystems) {
    const auto unique = solve_rational({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}}, {Rational(3), Rational(1)});
    ASSERT_EQ(unique.status, RationalSolve::Status::Unique);
    EXPECT_EQ(unique.x, (std::vector<Rational>{Rational(2), Rational(1)}));
    EXPECT_EQ(solve_rational({{Rational(1), Rational(1)}, {Rational(2), Rational(2)}}, {Rational(1), Rational(3)}).status,
              RationalSolve::Status::Inconsistent);
}
