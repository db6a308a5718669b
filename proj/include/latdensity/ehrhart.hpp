#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latdensity/lattice.hpp"
#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"

namespace latd {

// Counting quasipolynomial: degree-d polynomial coefficients per residue
// class of t modulo the period.  rows[j][i] is the coefficient of t^i on
// the class t ≡ j.
struct QuasiPolynomial {
    int degree = 0;
    int period = 1;
    std::vector<std::vector<Rational>> rows;

    Rational evaluate(const Int& t) const {
        const Int jj = t % period;
        const auto& row = rows[jj.convert_to<std::size_t>()];
        Rational acc = 0;
        for (int i = degree; i >= 0; --i) acc = acc * Rational(t) + row[static_cast<std::size_t>(i)];
        return acc;
    }
    const Rational& leading_coefficient() const { return rows.front()[static_cast<std::size_t>(degree)]; }
};

// Numerator coefficients of the counting series over (1 - z^p)^{d+1},
// indexed values[i*period + j] for basis element binom(t+d-i, d) on residue j.
struct HVector {
    int period = 1;
    int degree = 0;
    std::vector<Int> values;
};

// Signed Stirling numbers of the first kind, s(n, k) for 0 <= k <= n <= n_max.
struct StirlingTable {
    int n_max = 0;
    std::vector<std::vector<Int>> values;

    static StirlingTable build(int n_max) {
        StirlingTable t;
        t.n_max = n_max;
        t.values.assign(static_cast<std::size_t>(n_max) + 1, {});
        t.values[0] = {Int(1)};
        for (int n = 1; n <= n_max; ++n) {
            auto& row = t.values[static_cast<std::size_t>(n)];
            row.assign(static_cast<std::size_t>(n) + 1, Int(0));
            const auto& prev = t.values[static_cast<std::size_t>(n) - 1];
            for (int k = 0; k <= n; ++k) {
                // s(n, k) = s(n-1, k-1) - (n-1) * s(n-1, k)
                Int v = 0;
                if (k > 0) v += prev[static_cast<std::size_t>(k) - 1];
                if (k <= n - 1) v -= Int(n - 1) * prev[static_cast<std::size_t>(k)];
                row[static_cast<std::size_t>(k)] = v;
            }
        }
        return t;
    }

    const Int& operator()(int n, int k) const {
        if (n < 0 || k < 0 || k > n || n > n_max) throw std::out_of_range("stirling index out of range");
        return values[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
};

inline Int stirling_first(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::out_of_range("stirling_first: need 0 <= k <= n");
    return StirlingTable::build(n)(n, k);
}

// Monomial coefficients of t -> binom(t + shift, d), exact rationals.
inline std::vector<Rational> binomial_poly(int d, int shift) {
    if (d < 0) throw std::domain_error("binomial_poly: degree must be nonnegative");
    std::vector<Int> num{Int(1)};  // product of (t + shift - i)
    Int dfact = 1;
    for (int i = 0; i < d; ++i) {
        const Int c = shift - i;
        std::vector<Int> next(num.size() + 1, Int(0));
        for (std::size_t j = 0; j < num.size(); ++j) {
            next[j + 1] += num[j];
            next[j] += c * num[j];
        }
        num = std::move(next);
        dfact *= i + 1;
    }
    std::vector<Rational> out(num.size());
    for (std::size_t j = 0; j < num.size(); ++j) out[j] = Rational(num[j], dfact);
    return out;
}

namespace detail {

// Exact polynomial fit of degree d through the points (t_i, y_i).
inline std::vector<Rational> fit_polynomial(const std::vector<Int>& ts, const std::vector<Int>& ys) {
    const int d = static_cast<int>(ts.size()) - 1;
    RatMatrix vand(d + 1, d + 1), rhs(d + 1, 1);
    for (int i = 0; i <= d; ++i) {
        Rational p = 1;
        for (int j = 0; j <= d; ++j) {
            vand(i, j) = p;
            p *= Rational(ts[static_cast<std::size_t>(i)]);
        }
        rhs(i, 0) = Rational(ys[static_cast<std::size_t>(i)]);
    }
    auto sol = rational_solve(vand, rhs);
    if (!sol) throw std::logic_error("fit_polynomial: singular Vandermonde system");
    std::vector<Rational> out(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) out[static_cast<std::size_t>(i)] = (*sol)(i, 0);
    return out;
}

} // namespace detail

// Reconstruct the counting quasipolynomial of a full-rank sublattice against
// dilated cubes: sample exact counts on each residue class modulo d(L),
// solve the interpolation systems, validate on spare sample points, then
// minimize the period by merging identical residue rows.
inline QuasiPolynomial ehrhart_interpolate(const Sublattice& L) {
    if (L.rank != L.ambient_dim)
        throw not_full_rank_error("ehrhart_interpolate: lattice must have full rank");
    const int d = L.ambient_dim;
    const std::int64_t p0 = to_i64(L.det);
    const std::int64_t t_top = p0 * (d + 2) - 1;  // fitting plus one validation round
    const std::vector<Int> counts = count_points_up_to(L, t_top);

    QuasiPolynomial q;
    q.degree = d;
    q.period = static_cast<int>(p0);
    q.rows.resize(static_cast<std::size_t>(p0));
    for (std::int64_t j = 0; j < p0; ++j) {
        std::vector<Int> ts, ys;
        for (int i = 0; i <= d; ++i) {
            const std::int64_t t = j + i * p0;
            ts.emplace_back(t);
            ys.push_back(counts[static_cast<std::size_t>(t)]);
        }
        q.rows[static_cast<std::size_t>(j)] = detail::fit_polynomial(ts, ys);
    }
    for (std::int64_t t = 0; t <= t_top; ++t)
        if (q.evaluate(Int(t)) != Rational(counts[static_cast<std::size_t>(t)]))
            throw std::logic_error("ehrhart_interpolate: validation failed");

    // leading coefficient must be the normalized cube volume 2^n / d(L)
    const Rational want_leading(pow_int(2, static_cast<unsigned>(d)), L.det);
    for (const auto& row : q.rows)
        if (row[static_cast<std::size_t>(d)] != want_leading)
            throw std::logic_error("ehrhart_interpolate: wrong leading coefficient");

    for (int cand = 1; cand < q.period; ++cand) {
        if (q.period % cand != 0) continue;
        bool periodic = true;
        for (int j = 0; j + cand < q.period && periodic; ++j)
            periodic = (q.rows[static_cast<std::size_t>(j)] ==
                        q.rows[static_cast<std::size_t>(j + cand)]);
        if (periodic) {
            q.rows.resize(static_cast<std::size_t>(cand));
            q.period = cand;
            break;
        }
    }
    return q;
}

namespace detail {

// Per-residue counting polynomial in the dilation-quotient variable:
// g_j(u) = L(p*u + j), obtained by substituting t = p*u + j into the stored
// residue row.  This is the variable in which the counting series numerator
// expands over the binomial basis; in the raw dilation variable neither
// integrality of the numerator nor the Stirling coefficient bound survives.
inline std::vector<Rational> residue_poly_in_quotient(const QuasiPolynomial& q, int period, int j) {
    const int d = q.degree;
    const auto& row = q.rows[static_cast<std::size_t>(j % q.period)];
    std::vector<Rational> g(static_cast<std::size_t>(d) + 1, Rational(0));
    std::vector<Rational> power{Rational(1)};  // (p*u + j)^i, iteratively
    for (int i = 0; i <= d; ++i) {
        for (std::size_t e = 0; e < power.size(); ++e) g[e] += row[static_cast<std::size_t>(i)] * power[e];
        if (i == d) break;
        std::vector<Rational> next(power.size() + 1, Rational(0));
        for (std::size_t e = 0; e < power.size(); ++e) {
            next[e] += Rational(j) * power[e];
            next[e + 1] += Rational(period) * power[e];
        }
        power = std::move(next);
    }
    return g;
}

} // namespace detail

// Counting series numerator coefficients over (1 - z^p)^{d+1}: on each
// residue class j the quotient-variable polynomial g_j(u) = L(p*u + j) is
// expanded in the binomial basis {binom(u+d-i, d)}_{i=0..d}; entry
// values[i*p + j] is the coefficient h_{ip+j}.  The requested period must be
// a multiple of the quasipolynomial's own period.
inline HVector h_vector(const QuasiPolynomial& q, int period) {
    if (period <= 0 || period % q.period != 0)
        throw std::domain_error("h_vector: period must be a positive multiple of the quasipolynomial period");
    const int d = q.degree;
    RatMatrix basis(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        const auto poly = binomial_poly(d, d - i);
        for (int row = 0; row <= d; ++row) basis(row, i) = poly[static_cast<std::size_t>(row)];
    }
    HVector h;
    h.period = period;
    h.degree = d;
    h.values.assign(static_cast<std::size_t>(d + 1) * period, Int(0));
    for (int j = 0; j < period; ++j) {
        const auto g = detail::residue_poly_in_quotient(q, period, j);
        RatMatrix rhs(d + 1, 1);
        for (int i = 0; i <= d; ++i) rhs(i, 0) = g[static_cast<std::size_t>(i)];
        auto sol = rational_solve(basis, rhs);
        if (!sol) throw std::logic_error("h_vector: binomial basis is singular");
        for (int i = 0; i <= d; ++i) {
            const Rational& hi = (*sol)(i, 0);
            if (denominator(hi) != 1)
                throw non_integral_h_error("h_vector: non-integral coefficient (upstream bug)");
            h.values[static_cast<std::size_t>(i) * period + j] = numerator(hi);
        }
    }
    return h;
}

// |c_r| <= |s(d+1, r+1)| * c_d for r = 1..d-1 on every residue class, with
// the coefficients taken in the quotient variable (see above).
inline bool coefficient_bound_check(const QuasiPolynomial& q) {
    const int d = q.degree;
    const StirlingTable st = StirlingTable::build(d + 1);
    for (int j = 0; j < q.period; ++j) {
        const auto g = detail::residue_poly_in_quotient(q, q.period, j);
        const Rational& cd = g[static_cast<std::size_t>(d)];
        for (int r = 1; r <= d - 1; ++r) {
            const Rational bound = Rational(int_abs(st(d + 1, r + 1))) * cd;
            if (boost::multiprecision::abs(g[static_cast<std::size_t>(r)]) > bound) return false;
        }
    }
    return true;
}

} // namespace latd
