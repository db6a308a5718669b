#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"

namespace latd {

// Column lattice of an integer matrix, held in staircase (Hermite) basis.
// det is the index of the lattice in Z^n, defined when the rank is full.
struct Sublattice {
    HermiteForm basis;
    int ambient_dim = 0;
    int rank = 0;
    Int det = 0;
};

inline Sublattice sublattice_from_columns(const IntMatrix& a) {
    Sublattice L;
    L.basis = hermite_normal_form(a);
    L.ambient_dim = a.rows();
    L.rank = L.basis.rank;
    if (L.rank == L.ambient_dim) {
        L.det = 1;
        for (int j = 0; j < L.rank; ++j) L.det *= L.basis.h(L.basis.pivot_rows[j], j);
    }
    return L;
}

inline bool lattice_member(const Sublattice& L, const IntMatrix& v) {
    return staircase_solve(L.basis.h, L.basis.pivot_rows, v).has_value();
}

namespace detail {

inline std::int64_t to_hist_index(const Int& v) { return to_i64(v); }
inline std::int64_t to_hist_index(CheckedI64 v) { return v.v; }

// Range of y with |partial + c*y| <= r intersected into [lo, hi]; returns
// false when a c == 0 constraint is infeasible.
template <typename T>
bool intersect_interval(const T& partial, const T& c, const T& r, T& lo, T& hi) {
    if (c == T(0)) return int_abs(partial) <= r;
    const T low_num = T(-r - partial), high_num = T(r - partial);
    if (c > T(0)) {
        lo = std::max(lo, ceil_div(low_num, c));
        hi = std::min(hi, floor_div(high_num, c));
    } else {
        lo = std::max(lo, ceil_div(high_num, c));
        hi = std::min(hi, floor_div(low_num, c));
    }
    return true;
}

// Recursive descent over the staircase basis.  Level j fixes the basis
// coefficient y_j; the rows between pivot j and pivot j+1 depend on no later
// coefficient, so they prune early, and the last level is closed per
// interval rather than per point.
template <typename T>
void count_points_rec(const Matrix<T>& h, const std::vector<int>& pivots, const T& r,
                      std::vector<T>& partial, int level, T& total) {
    const int n = h.rows(), s = h.cols();
    const int p = pivots[level];
    const int nxt = (level + 1 < s) ? pivots[level + 1] : n;
    const bool last = (level + 1 == s);
    const T low_num = T(-r - partial[p]), high_num = T(r - partial[p]);
    T lo = ceil_div(low_num, h(p, level));
    T hi = floor_div(high_num, h(p, level));
    const int guard = last ? n : nxt;
    for (int i = p + 1; i < guard; ++i)
        if (!intersect_interval(partial[i], h(i, level), r, lo, hi)) return;
    if (hi < lo) return;
    if (last) {
        total += hi - lo + T(1);
        return;
    }
    for (int i = nxt; i < n; ++i) partial[i] += lo * h(i, level);
    T y = lo;
    while (true) {
        count_points_rec(h, pivots, r, partial, level + 1, total);
        if (y == hi) break;
        y += T(1);
        for (int i = nxt; i < n; ++i) partial[i] += h(i, level);
    }
    for (int i = nxt; i < n; ++i) partial[i] -= y * h(i, level);
}

template <typename T>
T count_points_kernel(const Matrix<T>& h, const std::vector<int>& pivots, const T& r) {
    if (r < T(0)) return T(0);
    if (h.cols() == 0) return T(1);
    std::vector<T> partial(h.rows(), T(0));
    T total(0);
    count_points_rec(h, pivots, r, partial, 0, total);
    return total;
}

// Same descent bucketed by uniform norm: hist[w] += number of lattice points
// of norm exactly w, for all w <= r.
template <typename T>
void norm_histogram_rec(const Matrix<T>& h, const std::vector<int>& pivots, const T& r,
                        std::vector<T>& partial, int level, const T& norm_above,
                        std::vector<std::int64_t>& hist) {
    const int n = h.rows(), s = h.cols();
    const int p = pivots[level];
    const int nxt = (level + 1 < s) ? pivots[level + 1] : n;
    const bool last = (level + 1 == s);
    const int stop = last ? n : nxt;
    const T low_num = T(-r - partial[p]), high_num = T(r - partial[p]);
    T lo = ceil_div(low_num, h(p, level));
    T hi = floor_div(high_num, h(p, level));
    for (int i = p + 1; i < stop; ++i)
        if (!intersect_interval(partial[i], h(i, level), r, lo, hi)) return;
    if (hi < lo) return;
    for (int i = nxt; i < n; ++i) partial[i] += lo * h(i, level);
    T y = lo;
    while (true) {
        T norm = norm_above;
        for (int i = p; i < stop; ++i) {
            const T v = int_abs(partial[i] + y * h(i, level));
            if (v > norm) norm = v;
        }
        if (last) {
            hist[static_cast<std::size_t>(to_hist_index(norm))] += 1;
        } else {
            norm_histogram_rec(h, pivots, r, partial, level + 1, norm, hist);
        }
        if (y == hi) break;
        y += T(1);
        for (int i = nxt; i < n; ++i) partial[i] += h(i, level);
    }
    for (int i = nxt; i < n; ++i) partial[i] -= y * h(i, level);
}

inline std::optional<Matrix<CheckedI64>> try_cast_i64(const IntMatrix& m) {
    Matrix<CheckedI64> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) > Int(INT64_MAX) || m(i, j) < Int(INT64_MIN)) return std::nullopt;
            out(i, j) = CheckedI64(m(i, j).convert_to<std::int64_t>());
        }
    return out;
}

} // namespace detail

// Closed form for the one-dimensional lattice gZ.
inline Int count_points_fastpath_dim1(const Int& g, const Int& r) {
    if (g < 1) throw std::domain_error("count_points_fastpath_dim1: g must be positive");
    if (r < 0) return 0;
    return 2 * (r / g) + 1;
}

// Exact number of points of L inside the closed cube [-r, r]^n.  Rank
// deficient lattices are counted as the low-rank point sets they are.
inline Int count_points(const Sublattice& L, const Int& r) {
    if (r < 0) throw std::domain_error("count_points: radius must be nonnegative");
    if (L.rank == 0) return 1;
    if (L.ambient_dim == 1) return count_points_fastpath_dim1(L.basis.h(0, 0), r);
    if (r <= Int(INT64_MAX)) {
        if (auto h64 = detail::try_cast_i64(L.basis.h)) {
            try {
                const CheckedI64 total = detail::count_points_kernel<CheckedI64>(
                    *h64, L.basis.pivot_rows, CheckedI64(r.convert_to<std::int64_t>()));
                return Int(total.v);
            } catch (const std::overflow_error&) {
                // redo with arbitrary precision
            }
        }
    }
    return detail::count_points_kernel<Int>(L.basis.h, L.basis.pivot_rows, r);
}

// Counts for every radius 0..t_max in one pass: result[t] = |L ∩ [-t, t]^n|.
inline std::vector<Int> count_points_up_to(const Sublattice& L, std::int64_t t_max) {
    if (t_max < 0) throw std::domain_error("count_points_up_to: radius must be nonnegative");
    std::vector<Int> cumulative(static_cast<std::size_t>(t_max) + 1);
    if (L.rank == 0) {
        for (auto& c : cumulative) c = 1;
        return cumulative;
    }
    std::vector<std::int64_t> hist(static_cast<std::size_t>(t_max) + 1, 0);
    bool done = false;
    if (auto h64 = detail::try_cast_i64(L.basis.h)) {
        try {
            std::vector<CheckedI64> partial(L.ambient_dim, CheckedI64(0));
            detail::norm_histogram_rec(*h64, L.basis.pivot_rows, CheckedI64(t_max), partial, 0,
                                       CheckedI64(0), hist);
            done = true;
        } catch (const std::overflow_error&) {
            std::fill(hist.begin(), hist.end(), 0);
        }
    }
    if (!done) {
        std::vector<Int> partial(L.ambient_dim, Int(0));
        detail::norm_histogram_rec(L.basis.h, L.basis.pivot_rows, Int(t_max), partial, 0, Int(0), hist);
    }
    Int running = 0;
    for (std::size_t t = 0; t < hist.size(); ++t) {
        running += hist[t];
        cumulative[t] = running;
    }
    return cumulative;
}

} // namespace latd
