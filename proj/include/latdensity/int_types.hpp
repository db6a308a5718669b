#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace latd {

// Exact arbitrary-precision integer and rational scalars.  cpp_rational is
// always stored reduced with positive denominator, which is exactly the
// invariant the rest of the library assumes.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Overflow-checked int64 used by enumeration fast paths.  Semantics mirror
// Int (truncated division); any overflow throws std::overflow_error so a
// caller can redo the computation with Int.
struct CheckedI64 {
    std::int64_t v = 0;

    CheckedI64() = default;
    CheckedI64(int x) : v(x) {}
    CheckedI64(std::int64_t x) : v(x) {}

    friend CheckedI64 operator+(CheckedI64 a, CheckedI64 b) {
        CheckedI64 r;
        if (__builtin_add_overflow(a.v, b.v, &r.v)) throw std::overflow_error("i64 add");
        return r;
    }
    friend CheckedI64 operator-(CheckedI64 a, CheckedI64 b) {
        CheckedI64 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw std::overflow_error("i64 sub");
        return r;
    }
    friend CheckedI64 operator*(CheckedI64 a, CheckedI64 b) {
        CheckedI64 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw std::overflow_error("i64 mul");
        return r;
    }
    friend CheckedI64 operator/(CheckedI64 a, CheckedI64 b) {
        if (b.v == 0) throw std::domain_error("i64 div by zero");
        if (a.v == INT64_MIN && b.v == -1) throw std::overflow_error("i64 div");
        return CheckedI64(a.v / b.v);
    }
    friend CheckedI64 operator%(CheckedI64 a, CheckedI64 b) {
        if (b.v == 0) throw std::domain_error("i64 mod by zero");
        if (a.v == INT64_MIN && b.v == -1) return CheckedI64(0);
        return CheckedI64(a.v % b.v);
    }
    CheckedI64 operator-() const {
        if (v == INT64_MIN) throw std::overflow_error("i64 neg");
        return CheckedI64(-v);
    }
    CheckedI64& operator+=(CheckedI64 b) { return *this = *this + b; }
    CheckedI64& operator-=(CheckedI64 b) { return *this = *this - b; }
    CheckedI64& operator*=(CheckedI64 b) { return *this = *this * b; }

    friend bool operator==(CheckedI64 a, CheckedI64 b) { return a.v == b.v; }
    friend auto operator<=>(CheckedI64 a, CheckedI64 b) { return a.v <=> b.v; }
};

inline Int int_abs(const Int& a) { return boost::multiprecision::abs(a); }
inline std::int64_t int_abs(std::int64_t a) { return a < 0 ? -a : a; }
inline CheckedI64 int_abs(CheckedI64 a) { return a.v < 0 ? -a : a; }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline CheckedI64 int_gcd(CheckedI64 a, CheckedI64 b) {
    std::int64_t x = int_abs(a.v), y = int_abs(b.v);
    while (y != 0) { std::int64_t t = x % y; x = y; y = t; }
    return CheckedI64(x);
}

inline int sign_of(const Int& a) { return a.sign(); }
inline int sign_of(CheckedI64 a) { return a.v < 0 ? -1 : (a.v > 0 ? 1 : 0); }

// Floor/ceil division for positive divisors (range arithmetic on lattices).
template <typename T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    if (a % b != T(0) && ((a < T(0)) != (b < T(0)))) q -= T(1);
    return q;
}
template <typename T>
T ceil_div(const T& a, const T& b) {
    T q = a / b;
    if (a % b != T(0) && ((a < T(0)) == (b < T(0)))) q += T(1);
    return q;
}

// Extended gcd: returns g = gcd(a, b) >= 0 and Bezout pair with p*a + q*b = g.
template <typename T>
struct ExtGcd {
    T g, p, q;
};
template <typename T>
ExtGcd<T> ext_gcd(T a, T b) {
    T p0(1), q0(0), p1(0), q1(1);
    while (b != T(0)) {
        T quot = a / b;
        T t = a - quot * b;
        a = b; b = t;
        t = p0 - quot * p1; p0 = p1; p1 = t;
        t = q0 - quot * q1; q0 = q1; q1 = t;
    }
    if (a < T(0)) { a = -a; p0 = -p0; q0 = -q0; }
    return {a, p0, q0};
}

inline std::int64_t to_i64(const Int& a) {
    if (a > Int(INT64_MAX) || a < Int(INT64_MIN)) throw std::overflow_error("Int does not fit int64");
    return a.convert_to<std::int64_t>();
}

inline std::string to_string(const Int& a) { return a.str(); }
inline std::string to_string(const Rational& q) { return q.str(); }

inline Int pow_int(Int base, unsigned e) {
    Int r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

} // namespace latd
