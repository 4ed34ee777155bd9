/**
 * Arithmetic substrate for all geometric code: an exact rational backend
 * (GMP via boost::multiprecision) and an opt-in double backend whose
 * equality and sign tests route through a relative-tolerance policy.
 *
 * Geometry code never compares scalars with raw operators when a decision
 * depends on it; it calls cmp()/sign()/eq() so both backends behave.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include "lagset/errors.hpp"

namespace lagset {

// expression templates off: every operator (and abs) yields the plain
// number type, which keeps Eigen and our template helpers deducible
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/**
 * Double-precision scalar with a relative comparison tolerance. Two values
 * compare equal when |a-b| <= eps * max(1, |a|, |b|). The tolerance is a
 * process-wide setting (default 1e-9).
 */
struct FloatScalar {
    double v = 0.0;

    FloatScalar() = default;
    FloatScalar(double x) : v(x) {}
    FloatScalar(int x) : v(x) {}
    FloatScalar(long x) : v(static_cast<double>(x)) {}

    static double& relative_tolerance() {
        static double eps = 1e-9;
        return eps;
    }

    friend FloatScalar operator+(FloatScalar a, FloatScalar b) { return {a.v + b.v}; }
    friend FloatScalar operator-(FloatScalar a, FloatScalar b) { return {a.v - b.v}; }
    friend FloatScalar operator*(FloatScalar a, FloatScalar b) { return {a.v * b.v}; }
    friend FloatScalar operator/(FloatScalar a, FloatScalar b) { return {a.v / b.v}; }
    FloatScalar operator-() const { return {-v}; }
    FloatScalar& operator+=(FloatScalar o) { v += o.v; return *this; }
    FloatScalar& operator-=(FloatScalar o) { v -= o.v; return *this; }
    FloatScalar& operator*=(FloatScalar o) { v *= o.v; return *this; }
    FloatScalar& operator/=(FloatScalar o) { v /= o.v; return *this; }

    friend int compare(FloatScalar a, FloatScalar b) {
        const double eps = relative_tolerance();
        const double scale = std::max({1.0, std::fabs(a.v), std::fabs(b.v)});
        const double d = a.v - b.v;
        if (std::fabs(d) <= eps * scale) return 0;
        return d < 0 ? -1 : 1;
    }

    friend bool operator==(FloatScalar a, FloatScalar b) { return compare(a, b) == 0; }
    friend bool operator!=(FloatScalar a, FloatScalar b) { return compare(a, b) != 0; }
    friend bool operator<(FloatScalar a, FloatScalar b) { return compare(a, b) < 0; }
    friend bool operator<=(FloatScalar a, FloatScalar b) { return compare(a, b) <= 0; }
    friend bool operator>(FloatScalar a, FloatScalar b) { return compare(a, b) > 0; }
    friend bool operator>=(FloatScalar a, FloatScalar b) { return compare(a, b) >= 0; }

    friend FloatScalar abs(FloatScalar a) { return {std::fabs(a.v)}; }
    friend std::ostream& operator<<(std::ostream& os, FloatScalar a) { return os << a.v; }
};

// namespace-scope redeclaration of the hidden friend so qualified lookup
// (ScalarOps) can name it
int compare(FloatScalar a, FloatScalar b);

}  // namespace lagset

// must precede the first concrete use of Matrix<FloatScalar> below
namespace Eigen {

template <>
struct NumTraits<lagset::FloatScalar> : GenericNumTraits<lagset::FloatScalar> {
    typedef lagset::FloatScalar Real;
    typedef lagset::FloatScalar NonInteger;
    typedef lagset::FloatScalar Nested;
    typedef double Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 1,
        MulCost = 1
    };
    static inline Real epsilon() { return {std::numeric_limits<double>::epsilon()}; }
    static inline Real dummy_precision() { return {1e-12}; }
    static inline int digits10() { return std::numeric_limits<double>::digits10; }
};

}  // namespace Eigen

namespace lagset {

namespace detail {

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    const std::size_t sign = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (sign == s.size()) throw std::invalid_argument("bad number '" + s + "'");
    for (std::size_t j = sign; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad number '" + s + "'");
    // strip leading zeros: the string constructor would read "025" as octal
    const std::size_t nz = s.find_first_not_of('0', sign);
    const std::string digits = nz == std::string::npos ? "0" : s.substr(nz);
    return BigInt(s[0] == '-' && digits != "0" ? "-" + digits : digits);
}

// Accepts "p/q", "p" and plain decimals like "-0.25" (converted exactly).
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);  // (num,den) ctor canonicalizes, string ctor does not
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        BigInt num = parse_bigint(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_bigint(text), BigInt(1));
}

inline std::string shortest_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static int compare(const Rational& a, const Rational& b) {
        return a < b ? -1 : (a > b ? 1 : 0);
    }
    static Rational parse(const std::string& s) { return detail::parse_rational(s); }
    static std::string str(const Rational& a) { return a.str(); }
    static const char* backend_name() { return "exact"; }
};

template <>
struct ScalarOps<FloatScalar> {
    static constexpr bool exact = false;
    static int compare(FloatScalar a, FloatScalar b) { return ::lagset::compare(a, b); }
    static FloatScalar parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash != std::string::npos)
            return {std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1))};
        return {std::stod(s)};
    }
    static std::string str(FloatScalar a) { return detail::shortest_double(a.v); }
    static const char* backend_name() { return "float"; }
};

template <class S>
int cmp(const S& a, const S& b) { return ScalarOps<S>::compare(a, b); }

template <class S>
int sign(const S& a) { return ScalarOps<S>::compare(a, S(0)); }

template <class S> bool eq(const S& a, const S& b) { return cmp(a, b) == 0; }
template <class S> bool lt(const S& a, const S& b) { return cmp(a, b) < 0; }
template <class S> bool le(const S& a, const S& b) { return cmp(a, b) <= 0; }
template <class S> bool is_zero(const S& a) { return sign(a) == 0; }

template <class S>
S parse_scalar(const std::string& s) { return ScalarOps<S>::parse(s); }

template <class S>
std::string scalar_str(const S& a) { return ScalarOps<S>::str(a); }

template <class S>
bool vec_eq(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!eq(a(i), b(i))) return false;
    return true;
}

template <class S>
bool is_zero_vec(const Vec<S>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

namespace detail {

// Positive factor that maps v to canonical form. Exact: clear denominators,
// divide by the gcd of the integer coordinates. Float: scale to unit inf-norm.
inline Rational canonical_direction_scale(const Vec<Rational>& v) {
    BigInt den_lcm = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        den_lcm = lcm(den_lcm, denominator(v(i)));
    BigInt num_gcd = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Rational scaled = v(i) * den_lcm;
        num_gcd = gcd(num_gcd, numerator(scaled));
    }
    if (num_gcd < 0) num_gcd = -num_gcd;
    return Rational(den_lcm, num_gcd);
}

inline FloatScalar canonical_direction_scale(const Vec<FloatScalar>& v) {
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        max_abs = std::max(max_abs, std::fabs(v(i).v));
    return {1.0 / max_abs};
}

}  // namespace detail

/**
 * Scales v in place to canonical form (positive multiple; integer
 * coordinates with gcd 1 on the exact backend) and returns the factor
 * applied, so callers can rescale an associated support offset.
 * Throws ZeroDirection when v = 0.
 */
template <class S>
S canonicalize_direction_inplace(Vec<S>& v) {
    if (is_zero_vec(v)) throw ZeroDirection();
    S alpha = detail::canonical_direction_scale(v);
    v *= alpha;
    return alpha;
}

template <class S>
Vec<S> canonical_direction(Vec<S> v) {
    canonicalize_direction_inplace(v);
    return v;
}

}  // namespace lagset
