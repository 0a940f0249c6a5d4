#pragma once
/*!
 * \file scalar.hpp
 * \brief Coordinate scalars: exact elements of Q(√D) and tolerance-compared doubles.
 *
 * Algorithms in this library are templated on a scalar type `S` and talk to it
 * only through `ScalarTraits<S>`. Two models exist:
 *
 *  - `QuadraticNumber`: a + b√D with a, b rationals (64-bit numerator and
 *    denominator, overflow is detected and raised, never wrapped). All
 *    comparisons are exact; a floating-point filter decides easy cases.
 *  - `double`: every sign test is taken relative to a caller-supplied
 *    tolerance.
 */

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <system_error>

#include "errors.hpp"

namespace meyerlab {

namespace detail {

inline std::int64_t narrow_checked(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < -static_cast<__int128>(INT64_MAX)) {
        throw Error(ErrorKind::ArithmeticOverflow, "rational component exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Normalized fraction num/den with den > 0 and gcd(num, den) = 1.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        if (x.den_ == y.den_) return from128(static_cast<__int128>(x.num_) + y.num_, x.den_);
        return from128(static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_,
                       static_cast<__int128>(x.den_) * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        if (x.num_ == 0 || y.num_ == 0) return Rational{};
        return from128(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw Error(ErrorKind::InvalidArgument, "rational division by zero");
        return from128(static_cast<__int128>(x.num_) * y.den_, static_cast<__int128>(x.den_) * y.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        const __int128 l = static_cast<__int128>(x.num_) * y.den_;
        const __int128 r = static_cast<__int128>(y.num_) * x.den_;
        return l <=> r;
    }

    /// Largest integer not above the value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0)) --q;
        return q;
    }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p", "p/q", and decimals with optional exponent ("-1.25e-3").
    static Rational parse(std::string_view text);

    /// Exact value of the shortest decimal that round-trips to `x`
    /// (0.05 becomes 1/20, not the binary expansion).
    static Rational from_double_decimal(double x) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), x);
        return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }

private:
    static Rational from128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num_ = detail::narrow_checked(n);
        r.den_ = detail::narrow_checked(d);
        return r;
    }
    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
        *this = from128(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) return fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t n = 0, d = 0;
        auto a = text.substr(0, slash);
        auto b = text.substr(slash + 1);
        if (!a.empty() && a.front() == '+') a.remove_prefix(1);
        auto r1 = std::from_chars(a.data(), a.data() + a.size(), n);
        auto r2 = std::from_chars(b.data(), b.data() + b.size(), d);
        if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
            r2.ptr != b.data() + b.size() || d == 0) {
            return fail();
        }
        return Rational(n, d);
    }
    // Decimal: [sign] digits [. digits] [e [sign] digits]
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    __int128 mantissa = 0;
    int exponent = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            any_digit = true;
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > static_cast<__int128>(INT64_MAX)) {
                throw Error(ErrorKind::ArithmeticOverflow, "decimal '" + std::string(text) + "' too long");
            }
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return fail();
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return fail();
        ++i;
        int e = 0;
        auto rest = text.substr(i);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto r = std::from_chars(rest.data(), rest.data() + rest.size(), e);
        if (r.ec != std::errc{} || r.ptr != rest.data() + rest.size()) return fail();
        exponent += e;
    }
    if (negative) mantissa = -mantissa;
    if (exponent > 18 || exponent < -18) {
        throw Error(ErrorKind::ArithmeticOverflow, "decimal exponent out of range in '" + std::string(text) + "'");
    }
    __int128 scale = 1;
    for (int k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) scale *= 10;
    if (exponent >= 0) return from128(mantissa * scale, 1);
    return from128(mantissa, scale);
}

/// a + b√D. D is 0 for numbers that never met an irrational part; mixing two
/// different nonzero D values is an error.
class QuadraticNumber {
public:
    QuadraticNumber() = default;
    QuadraticNumber(std::int64_t v) : a_(v) {}  // NOLINT(implicit)
    QuadraticNumber(Rational a) : a_(a) {}       // NOLINT(implicit)
    QuadraticNumber(Rational a, Rational b, int D) : a_(a), b_(b), D_(b.is_zero() ? D : D) {
        if (!b_.is_zero() && D_ <= 1) throw Error(ErrorKind::InvalidArgument, "irrational part needs D > 1");
    }

    const Rational& rational_part() const { return a_; }
    const Rational& irrational_part() const { return b_; }
    int radicand() const { return D_; }
    bool is_rational() const { return b_.is_zero(); }

    double to_double() const {
        if (b_.is_zero()) return a_.to_double();
        return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(D_));
    }

    QuadraticNumber conjugate() const { return QuadraticNumber(a_, -b_, D_); }
    /// a² − D b², the field norm.
    Rational norm() const { return a_ * a_ - Rational(D_) * b_ * b_; }

    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
        return make(x.a_ + y.a_, x.b_ + y.b_, combine(x, y));
    }
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
        return make(x.a_ - y.a_, x.b_ - y.b_, combine(x, y));
    }
    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
        const int D = combine(x, y);
        if (x.b_.is_zero()) return make(x.a_ * y.a_, x.a_ * y.b_, D);
        if (y.b_.is_zero()) return make(x.a_ * y.a_, x.b_ * y.a_, D);
        return make(x.a_ * y.a_ + Rational(D) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, D);
    }
    friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
        if (y.b_.is_zero()) {
            if (y.a_.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
            return make(x.a_ / y.a_, x.b_ / y.a_, x.D_);
        }
        const Rational n = y.norm();
        const QuadraticNumber num = x * y.conjugate();
        return make(num.a_ / n, num.b_ / n, num.D_);
    }
    QuadraticNumber operator-() const { return make(-a_, -b_, D_); }
    QuadraticNumber& operator+=(const QuadraticNumber& o) { return *this = *this + o; }
    QuadraticNumber& operator-=(const QuadraticNumber& o) { return *this = *this - o; }
    QuadraticNumber& operator*=(const QuadraticNumber& o) { return *this = *this * o; }

    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.D_ == y.D_);
    }

    /// Exact sign of a + b√D.
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // Opposite signs: compare a² with D b².
        const double approx = to_double();
        const double scale = std::abs(a_.to_double()) + std::abs(b_.to_double()) * 3.0;
        if (std::abs(approx) > 1e-12 * scale) return approx > 0 ? 1 : -1;
        // |a| vs |b|√D as X = |p|·s vs Y = |r|·q, squared in 128 bits when small enough.
        const __int128 X = static_cast<__int128>(a_.num() < 0 ? -a_.num() : a_.num()) * b_.den();
        const __int128 Y = static_cast<__int128>(b_.num() < 0 ? -b_.num() : b_.num()) * a_.den();
        constexpr __int128 limit = static_cast<__int128>(1) << 62;
        if (X < limit && Y < limit) {
            const auto ux = static_cast<unsigned __int128>(X), uy = static_cast<unsigned __int128>(Y);
            return ux * ux > static_cast<unsigned __int128>(D_) * uy * uy ? sa : sb;
        }
        const Rational lhs = a_ * a_;
        const Rational rhs = Rational(D_) * b_ * b_;
        // a² > D b² means |a| dominates.
        return lhs > rhs ? sa : sb;
    }

    friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
        const double dx = x.to_double();
        const double dy = y.to_double();
        const double gap = dx - dy;
        if (std::abs(gap) > 1e-9 * (1.0 + std::abs(dx) + std::abs(dy))) {
            return gap > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (x == y) return std::strong_ordering::equal;
        return (x - y).sign() <=> 0;
    }

    /// Largest integer not above the value.
    std::int64_t floor() const {
        if (b_.is_zero()) return a_.floor();
        auto k = static_cast<std::int64_t>(std::floor(to_double()));
        while ((*this - QuadraticNumber(k)).sign() < 0) --k;
        while ((*this - QuadraticNumber(k + 1)).sign() >= 0) ++k;
        return k;
    }

    std::string to_string() const;
    /// Inverse of to_string: "p/q", decimals, "b√D", "a+b√D", "a-b√D";
    /// "sqrt" is accepted in place of "√". `D` is used when the text has a
    /// radical without an explicit radicand check.
    static QuadraticNumber parse(std::string_view text, int D);

private:
    static QuadraticNumber make(Rational a, Rational b, int D) {
        QuadraticNumber q;
        q.a_ = a;
        q.b_ = b;
        q.D_ = D;
        return q;
    }
    static int combine(const QuadraticNumber& x, const QuadraticNumber& y) {
        if (x.D_ == y.D_) return x.D_;
        if (x.b_.is_zero() && (y.D_ != 0 || x.D_ == 0)) return y.D_ ? y.D_ : x.D_;
        if (y.b_.is_zero()) return x.D_ ? x.D_ : y.D_;
        if (x.D_ == 0) return y.D_;
        if (y.D_ == 0) return x.D_;
        throw Error(ErrorKind::InvalidArgument,
                    "mixing Q(√" + std::to_string(x.D_) + ") with Q(√" + std::to_string(y.D_) + ")");
    }

    Rational a_;
    Rational b_;
    int D_ = 0;
};

inline std::string QuadraticNumber::to_string() const {
    if (b_.is_zero()) return a_.to_string();
    const std::string radical = "√" + std::to_string(D_);
    auto coefficient = [](const Rational& r) {
        // "1√5" reads poorly; drop a unit coefficient.
        if (r == Rational(1)) return std::string();
        return r.to_string();
    };
    if (a_.is_zero()) {
        if (b_ == Rational(-1)) return "-" + radical;
        return coefficient(b_) + radical;
    }
    std::string out = a_.to_string();
    if (b_.sign() > 0) {
        out += "+" + coefficient(b_) + radical;
    } else {
        out += "-" + coefficient(-b_) + radical;
    }
    return out;
}

inline QuadraticNumber QuadraticNumber::parse(std::string_view text, int D) {
    std::string s(text);
    // Normalize the radical marker.
    for (std::string marker : {std::string("√"), std::string("sqrt")}) {
        for (auto pos = s.find(marker); pos != std::string::npos; pos = s.find(marker)) {
            s.replace(pos, marker.size(), "r");
        }
    }
    const auto r = s.find('r');
    if (r == std::string::npos) return QuadraticNumber(Rational::parse(s));

    std::string radicand = s.substr(r + 1);
    int parsedD = 0;
    auto res = std::from_chars(radicand.data(), radicand.data() + radicand.size(), parsedD);
    if (res.ec != std::errc{} || res.ptr != radicand.data() + radicand.size() || parsedD <= 1) {
        throw Error(ErrorKind::ParseError, "bad radicand in '" + std::string(text) + "'");
    }
    if (D != 0 && parsedD != D) {
        throw Error(ErrorKind::ParseError,
                    "radicand " + std::to_string(parsedD) + " does not match mode D=" + std::to_string(D));
    }
    // Split "a±b" before the radical at the last sign that is not an exponent sign.
    const std::string head = s.substr(0, r);
    std::size_t split = std::string::npos;
    for (std::size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' && head[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    Rational a;
    std::string bpart = head;
    if (split != std::string::npos) {
        a = Rational::parse(head.substr(0, split));
        bpart = head.substr(split);
    }
    Rational b;
    if (bpart.empty() || bpart == "+") {
        b = Rational(1);
    } else if (bpart == "-") {
        b = Rational(-1);
    } else {
        b = Rational::parse(bpart.front() == '+' ? bpart.substr(1) : bpart);
    }
    return QuadraticNumber(a, b, parsedD);
}

/// Arithmetic mode of a scheme: exact Q(√D) or doubles with one global tolerance.
struct Mode {
    enum class Kind { Exact, Float };
    Kind kind = Kind::Exact;
    int D = 5;
    double tolerance = 1e-9;

    static Mode exact(int D) {
        if (D != 2 && D != 3 && D != 5) {
            throw Error(ErrorKind::InvalidArgument, "exact mode supports D in {2, 3, 5}, got " + std::to_string(D));
        }
        return Mode{Kind::Exact, D, 0.0};
    }
    static Mode floating(double tolerance = 1e-9) {
        if (!(tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "float tolerance must be positive");
        return Mode{Kind::Float, 0, tolerance};
    }
    bool is_exact() const { return kind == Kind::Exact; }
    /// Tolerance used by sign tests; 0 in exact mode.
    double tol() const { return is_exact() ? 0.0 : tolerance; }
    std::string to_string() const {
        if (is_exact()) return "exact:D=" + std::to_string(D);
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), tolerance);
        return "float:tol=" + std::string(buf, res.ptr);
    }
    friend bool operator==(const Mode&, const Mode&) = default;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<QuadraticNumber> {
    static constexpr bool exact = true;
    static int sign(const QuadraticNumber& x, double /*tol*/) { return x.sign(); }
    static int compare(const QuadraticNumber& x, const QuadraticNumber& y, double /*tol*/) {
        const auto c = x <=> y;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    static bool equal(const QuadraticNumber& x, const QuadraticNumber& y, double /*tol*/) { return x == y; }
    static double to_double(const QuadraticNumber& x) { return x.to_double(); }
    static QuadraticNumber from_int(std::int64_t v) { return QuadraticNumber(v); }
    static QuadraticNumber from_rational(const Rational& r) { return QuadraticNumber(r); }
    /// Shortest-decimal conversion, so ladder values such as 0.05 stay small rationals.
    static QuadraticNumber from_double(double v) { return QuadraticNumber(Rational::from_double_decimal(v)); }
    static std::int64_t floor(const QuadraticNumber& x, double /*tol*/) { return x.floor(); }
    static std::string format(const QuadraticNumber& x) { return x.to_string(); }
    static QuadraticNumber parse(std::string_view text, const Mode& mode) {
        return QuadraticNumber::parse(text, mode.is_exact() ? mode.D : 0);
    }
    /// True when the value is an integer (exactly).
    static bool integral(const QuadraticNumber& x, double /*tol*/, std::int64_t& out) {
        if (!x.is_rational() || !x.rational_part().is_integer()) return false;
        out = x.rational_part().num();
        return true;
    }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static int sign(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
    static int compare(double x, double y, double tol) { return sign(x - y, tol); }
    static bool equal(double x, double y, double tol) { return std::abs(x - y) <= tol; }
    static double to_double(double x) { return x; }
    static double from_int(std::int64_t v) { return static_cast<double>(v); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double from_double(double v) { return v; }
    static std::int64_t floor(double x, double tol) { return static_cast<std::int64_t>(std::floor(x + tol)); }
    static std::string format(double x) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), x);
        return std::string(buf, res.ptr);
    }
    static double parse(std::string_view text, const Mode& /*mode*/) {
        std::string s(text);
        if (s.find('/') != std::string::npos || s.find("√") != std::string::npos ||
            s.find("sqrt") != std::string::npos) {
            return QuadraticNumber::parse(s, 0).to_double();
        }
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw Error(ErrorKind::ParseError, "bad float '" + s + "'");
        }
        return v;
    }
    static bool integral(double x, double tol, std::int64_t& out) {
        const double r = std::round(x);
        if (std::abs(x - r) > tol) return false;
        out = static_cast<std::int64_t>(r);
        return true;
    }
};

template <class S>
concept Scalar = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { ScalarTraits<S>::sign(a, 0.0) } -> std::convertible_to<int>;
    { ScalarTraits<S>::to_double(a) } -> std::convertible_to<double>;
};

/// Small helpers so algorithm code reads naturally.
template <Scalar S>
inline double to_double(const S& x) {
    return ScalarTraits<S>::to_double(x);
}
template <Scalar S>
inline int cmp(const S& x, const S& y, double tol) {
    return ScalarTraits<S>::compare(x, y, tol);
}
template <Scalar S>
inline S abs_value(const S& x, double tol) {
    return ScalarTraits<S>::sign(x, tol) < 0 ? -x : x;
}

/// The golden ratio (1+√5)/2 and its conjugate, used throughout tests and presets.
inline QuadraticNumber golden() { return QuadraticNumber(Rational(1, 2), Rational(1, 2), 5); }
inline QuadraticNumber golden_conjugate() { return QuadraticNumber(Rational(1, 2), Rational(-1, 2), 5); }

}  // namespace meyerlab
