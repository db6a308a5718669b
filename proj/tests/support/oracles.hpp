#pragma once

// Independent reference implementations used only to cross-check the library:
// brute-force enumerations and alternative algebraic routes.  Nothing here
// shares code with the paths under test.

#include <vector>

#include "latdensity/int_types.hpp"
#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"
#include "latdensity/rng.hpp"
#include "latdensity/solvability.hpp"

namespace oracle {

using latd::Int;
using latd::IntMatrix;
using latd::Rational;

// gcd of all s x s minors by explicit enumeration of row/column subsets.
inline Int minor_gcd_enumerated(const IntMatrix& a, int s) {
    std::vector<int> rows(s), cols(s);
    Int g = 0;
    auto det_of = [&](const std::vector<int>& ri, const std::vector<int>& ci) {
        IntMatrix sub(s, s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) sub(i, j) = a(ri[i], ci[j]);
        return latd::determinant(sub);
    };
    std::vector<std::vector<int>> row_sets, col_sets;
    auto gen_sets = [](int total, int pick, std::vector<std::vector<int>>& out) {
        std::vector<int> cur(pick);
        auto rec = [&](auto&& self, int start, int depth) -> void {
            if (depth == pick) { out.push_back(cur); return; }
            for (int i = start; i <= total - (pick - depth); ++i) {
                cur[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        rec(rec, 0, 0);
    };
    gen_sets(a.rows(), s, row_sets);
    gen_sets(a.cols(), s, col_sets);
    for (const auto& ri : row_sets)
        for (const auto& ci : col_sets) g = latd::int_gcd(g, det_of(ri, ci));
    return latd::int_abs(g);
}

// Membership of a column vector in the column lattice of A, via the Smith
// decomposition (independent of the Hermite-form route used by the library).
inline bool in_column_lattice_smith(const latd::SmithForm& sf, const IntMatrix& b_col) {
    IntMatrix ub = sf.u * b_col;
    const int s = static_cast<int>(sf.diag.size());
    for (int i = 0; i < ub.rows(); ++i) {
        if (i < s) {
            if (ub(i, 0) % sf.diag[i] != 0) return false;
        } else if (ub(i, 0) != 0) {
            return false;
        }
    }
    return true;
}

inline bool in_column_lattice_smith(const IntMatrix& a, const IntMatrix& b_col) {
    return in_column_lattice_smith(latd::smith_normal_form(a), b_col);
}

// Count lattice points of the column lattice of A inside [-r, r]^n by
// scanning every cube point.  Usable only for tiny r and n.
inline Int cube_scan_count(const IntMatrix& a, std::int64_t r) {
    const int n = a.rows();
    auto sf = latd::smith_normal_form(a);
    IntMatrix v(n, 1);
    Int total = 0;
    std::vector<std::int64_t> coord(n, -r);
    while (true) {
        for (int i = 0; i < n; ++i) v(i, 0) = coord[i];
        if (in_column_lattice_smith(sf, v)) ++total;
        int lvl = n - 1;
        while (lvl >= 0 && coord[lvl] == r) { coord[lvl] = -r; --lvl; }
        if (lvl < 0) break;
        ++coord[lvl];
    }
    return total;
}

// Counting series numerator over (1 - z^p)^{d+1}, straight from the series
// definition: N_s = sum_i (-1)^i binom(d+1, i) counts[s - p*i].
inline std::vector<Int> series_numerator(const std::vector<Int>& counts, int p, int d) {
    std::vector<Int> binom(static_cast<std::size_t>(d) + 2, Int(0));
    binom[0] = 1;
    for (int n = 1; n <= d + 1; ++n)
        for (int k = n; k >= 1; --k) binom[static_cast<std::size_t>(k)] += binom[static_cast<std::size_t>(k) - 1];
    std::vector<Int> numerator(static_cast<std::size_t>(p) * (d + 1), Int(0));
    for (std::size_t s = 0; s < numerator.size(); ++s) {
        Int acc = 0;
        for (int i = 0; i <= d + 1; ++i) {
            const std::int64_t idx = static_cast<std::int64_t>(s) - static_cast<std::int64_t>(p) * i;
            if (idx < 0) break;
            const Int term = binom[static_cast<std::size_t>(i)] * counts[static_cast<std::size_t>(idx)];
            acc += (i % 2 == 0) ? term : -term;
        }
        numerator[s] = acc;
    }
    return numerator;
}

// Coefficients of the falling factorial x(x-1)...(x-n+1) in the monomial
// basis; reference for Stirling numbers of the first kind.
inline std::vector<Int> falling_factorial_coeffs(int n) {
    std::vector<Int> c{1};
    for (int i = 0; i < n; ++i) {
        std::vector<Int> next(c.size() + 1, Int(0));
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= Int(i) * c[j];
        }
        c = std::move(next);
    }
    return c;
}

// Density numerators by the direct loop over every system (A, B) in the
// ball, deciding each one with the public solvers.  The library's per-block
// decomposition must reproduce these numbers exactly.
struct DirectDensity {
    Int sat_z = 0;
    Int sat_q = 0;
    Int sat_z_fullrank = 0;
    Int systems = 0;
};

inline DirectDensity direct_density_loop(int m, int k, int n, std::int64_t r) {
    DirectDensity out;
    const Int base = 2 * Int(r) + 1;
    const Int a_total = latd::pow_int(base, static_cast<unsigned>(n * k));
    const Int b_total = latd::pow_int(base, static_cast<unsigned>(n * m));
    const std::int64_t a_count = a_total.convert_to<std::int64_t>();
    const std::int64_t b_count = b_total.convert_to<std::int64_t>();
    const std::int64_t b64 = 2 * r + 1;
    for (std::int64_t ac = 0; ac < a_count; ++ac) {
        IntMatrix a(n, k);
        std::int64_t rest = ac;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) {
                a(i, j) = rest % b64 - r;
                rest /= b64;
            }
        const bool full_rank = latd::rank(a) == n;
        for (std::int64_t bc = 0; bc < b_count; ++bc) {
            IntMatrix b(n, m);
            std::int64_t brest = bc;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) {
                    b(i, j) = brest % b64 - r;
                    brest /= b64;
                }
            latd::LinearSystem sys(a, b);
            const bool z = latd::solvable_over_Z(sys).solvable;
            const bool q = latd::solvable_over_Q(sys).solvable;
            if (z) ++out.sat_z;
            if (q) ++out.sat_q;
            if (z && full_rank) ++out.sat_z_fullrank;
            ++out.systems;
        }
    }
    return out;
}

// Deterministic random matrix with entries uniform in [lo, hi].
inline IntMatrix random_matrix(latd::SplitMix64& rng, int rows, int cols, std::int64_t lo, std::int64_t hi) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = lo + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    return m;
}

inline bool is_unimodular(const IntMatrix& u) {
    const Int d = latd::determinant(u);
    return d == 1 || d == -1;
}

} // namespace oracle
