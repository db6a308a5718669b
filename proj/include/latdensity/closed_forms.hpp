#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace latd {

// zeta(s) with a guaranteed enclosure: partial sum plus the integral tail
// bracket 1/((s-1)(N+1)^{s-1}) <= tail <= 1/((s-1)N^{s-1}).
struct ZetaValue {
    int s = 0;
    double value = 0;
    double error_bound = 0;
};

namespace detail {

inline ZetaValue zeta_uncached(int s, double tol) {
    ZetaValue out;
    out.s = s;
    std::int64_t n = 16;
    double partial = 0;
    std::int64_t summed = 0;
    for (;;) {
        for (std::int64_t i = summed + 1; i <= n; ++i) partial += std::pow(static_cast<double>(i), -s);
        summed = n;
        const double tail_hi = 1.0 / ((s - 1) * std::pow(static_cast<double>(n), s - 1));
        const double tail_lo = 1.0 / ((s - 1) * std::pow(static_cast<double>(n) + 1.0, s - 1));
        const double half = (tail_hi - tail_lo) / 2;
        if (half <= tol * 0.5 || n >= (1 << 24)) {
            out.value = partial + (tail_hi + tail_lo) / 2;
            // pad for the floating-point summation itself
            out.error_bound = half + 1e-13 * partial;
            return out;
        }
        n *= 2;
    }
}

} // namespace detail

inline ZetaValue zeta(int s, double tol = 1e-10) {
    if (s < 2) throw std::domain_error("zeta: argument must be an integer >= 2");
    if (!(tol > 0)) throw std::domain_error("zeta: tolerance must be positive");
    static std::map<int, ZetaValue> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(s);
    if (it != cache.end() && it->second.error_bound <= tol) return it->second;
    ZetaValue v = detail::zeta_uncached(s, tol);
    cache[s] = v;
    return v;
}

// Closed-form limit densities and bounds.  Every value carries a propagated
// error bound so comparisons against measured densities can use intervals.
struct ClosedForm {
    enum class Kind { unimodular, equation_sat, qm_law, system_bounds };
    Kind kind;
    int m = 0, k = 0, n = 0;
    std::optional<double> value;
    double value_error = 0;
    std::optional<double> lower;
    double lower_error = 0;
    std::optional<double> upper;
    double upper_error = 0;
    std::string note;
};

namespace detail {

struct Interval {
    double lo = 0, hi = 0;
    static Interval of(const ZetaValue& z) { return {z.value - z.error_bound, z.value + z.error_bound}; }
    Interval operator*(const Interval& o) const { return {lo * o.lo, hi * o.hi}; }  // positive operands
    Interval reciprocal() const { return {1.0 / hi, 1.0 / lo}; }
    Interval operator/(const Interval& o) const { return *this * o.reciprocal(); }
    Interval pow(int e) const {
        Interval r{1, 1};
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }
    double mid() const { return (lo + hi) / 2; }
    double half() const { return (hi - lo) / 2 + 1e-14; }
};

} // namespace detail

// Density of n x k matrices with greatest divisor 1: the reciprocal zeta
// product for k > n, exactly zero for square shapes.
inline ClosedForm unimodular_density(int n, int k) {
    if (n < 1 || k < n) throw std::domain_error("unimodular_density: need k >= n >= 1");
    ClosedForm cf;
    cf.kind = ClosedForm::Kind::unimodular;
    cf.n = n;
    cf.k = k;
    if (k == n) {
        cf.value = 0.0;
        cf.note = "square unimodular matrices have density zero";
        return cf;
    }
    detail::Interval prod{1, 1};
    for (int j = k - n + 1; j <= k; ++j) prod = prod * detail::Interval::of(zeta(j));
    const auto inv = prod.reciprocal();
    cf.value = inv.mid();
    cf.value_error = inv.half();
    return cf;
}

// Density of solvable single equations in k variables over Z^m:
// zeta(k+m)/zeta(k) for k >= 2, zero for k = 1.
inline ClosedForm equation_sat_density(int m, int k) {
    if (m < 1 || k < 1) throw std::domain_error("equation_sat_density: need m, k >= 1");
    ClosedForm cf;
    cf.kind = ClosedForm::Kind::equation_sat;
    cf.m = m;
    cf.k = k;
    if (k == 1) {
        cf.value = 0.0;
        cf.note = "single-variable equations are negligibly solvable";
        return cf;
    }
    const auto ratio = detail::Interval::of(zeta(k + m)) / detail::Interval::of(zeta(k));
    cf.value = ratio.mid();
    cf.value_error = ratio.half();
    return cf;
}

// Zero-one law for solvability over Q^m: density one iff n <= k.
inline ClosedForm qm_density_law(int m, int k, int n) {
    if (m < 1 || k < 1 || n < 1) throw std::domain_error("qm_density_law: need m, k, n >= 1");
    ClosedForm cf;
    cf.kind = ClosedForm::Kind::qm_law;
    cf.m = m;
    cf.k = k;
    cf.n = n;
    cf.value = (n <= k) ? 1.0 : 0.0;
    cf.note = (n <= k) ? "solvability over Q^m is generic"
                       : "solvability over Q^m is negligible; so is solvability over Z^m";
    return cf;
}

// Interval bracketing the asymptotic densities of solvable systems:
// unimodular density from below (k > n), n-th power of the equation density
// from above (k >= n); both require n > 1.
inline ClosedForm system_density_bounds(int m, int k, int n) {
    if (n <= 1) throw std::domain_error("system_density_bounds: bounds require n > 1");
    if (m < 1 || k < n) throw std::domain_error("system_density_bounds: need m >= 1 and k >= n");
    ClosedForm cf;
    cf.kind = ClosedForm::Kind::system_bounds;
    cf.m = m;
    cf.k = k;
    cf.n = n;
    if (k > n) {
        const auto lo = unimodular_density(n, k);
        cf.lower = lo.value;
        cf.lower_error = lo.value_error;
    }
    const auto eq = detail::Interval::of(zeta(k + m)) / detail::Interval::of(zeta(k));
    const auto up = eq.pow(n);
    cf.upper = up.mid();
    cf.upper_error = up.half();
    return cf;
}

} // namespace latd
