#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latdensity/errors.hpp"
#include "latdensity/matrix.hpp"

namespace latd {

// Column-style Hermite normal form.  H holds the first `rank` columns of
// A*U: a staircase basis of the column lattice with pivot rows strictly
// increasing, positive pivots, and every entry of a pivot row left of its
// pivot reduced into [0, pivot).
template <typename T>
struct HermiteFormT {
    Matrix<T> h;                  // rows(A) x rank
    Matrix<T> u;                  // cols(A) x cols(A), unimodular, A*U = (H | 0)
    std::vector<int> pivot_rows;  // strictly increasing, size == rank
    int rank = 0;
};
using HermiteForm = HermiteFormT<Int>;

template <typename T>
HermiteFormT<T> hermite_normal_form(const Matrix<T>& a) {
    const int n = a.rows(), k = a.cols();
    Matrix<T> w = a;
    Matrix<T> u = Matrix<T>::identity(k);
    std::vector<int> pivots;
    int nc = 0;  // next pivot column
    for (int row = 0; row < n && nc < k; ++row) {
        for (int j = nc + 1; j < k; ++j) {
            if (w(row, j) == T(0)) continue;
            if (w(row, nc) == T(0)) {
                w.swap_cols(nc, j);
                u.swap_cols(nc, j);
                continue;
            }
            if (w(row, j) % w(row, nc) == T(0)) {
                const T q = w(row, j) / w(row, nc);
                for (int i = row; i < n; ++i) w(i, j) -= q * w(i, nc);
                for (int i = 0; i < k; ++i) u(i, j) -= q * u(i, nc);
                continue;
            }
            const T av = w(row, nc), bv = w(row, j);
            auto [g, p, q] = ext_gcd(av, bv);
            const T ag = av / g, bg = bv / g;
            for (int i = row; i < n; ++i) {
                const T x = w(i, nc), y = w(i, j);
                w(i, nc) = p * x + q * y;
                w(i, j) = ag * y - bg * x;
            }
            for (int i = 0; i < k; ++i) {
                const T x = u(i, nc), y = u(i, j);
                u(i, nc) = p * x + q * y;
                u(i, j) = ag * y - bg * x;
            }
        }
        if (w(row, nc) == T(0)) continue;
        if (w(row, nc) < T(0)) {
            for (int i = row; i < n; ++i) w(i, nc) = -w(i, nc);
            for (int i = 0; i < k; ++i) u(i, nc) = -u(i, nc);
        }
        for (int c = 0; c < nc; ++c) {
            const T q = floor_div(w(row, c), w(row, nc));
            if (q == T(0)) continue;
            for (int i = row; i < n; ++i) w(i, c) -= q * w(i, nc);
            for (int i = 0; i < k; ++i) u(i, c) -= q * u(i, nc);
        }
        pivots.push_back(row);
        ++nc;
    }
    HermiteFormT<T> out;
    out.rank = nc;
    out.pivot_rows = std::move(pivots);
    out.h = Matrix<T>(n, nc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < nc; ++j) out.h(i, j) = w(i, j);
    out.u = std::move(u);
    return out;
}

// Fraction-free (Bareiss) elimination; exact over Int, also instantiable
// with CheckedI64 on the enumeration fast paths.
template <typename T>
int rank_of(Matrix<T> m) {
    const int rows = m.rows(), cols = m.cols();
    int r = 0;
    T prev(1);
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, c) != T(0)) { p = i; break; }
        if (p < 0) continue;
        if (p != r) m.swap_rows(p, r);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
            m(i, c) = T(0);
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

template <typename T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols()) throw shape_error("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return T(1);
    T prev(1);
    bool neg = false;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (m(i, c) != T(0)) { p = i; break; }
        if (p < 0) return T(0);
        if (p != c) { m.swap_rows(p, c); neg = !neg; }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(c, c) - m(i, c) * m(c, j)) / prev;
            m(i, c) = T(0);
        }
        prev = m(c, c);
    }
    return neg ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

inline int rank(const IntMatrix& a) { return rank_of(a); }

// Smith normal form U*A*V = D with the invariant-factor divisibility chain.
template <typename T>
struct SmithFormT {
    Matrix<T> u;          // rows x rows, unimodular
    Matrix<T> v;          // cols x cols, unimodular
    std::vector<T> diag;  // d_1 | d_2 | ... | d_s, all positive
};
using SmithForm = SmithFormT<Int>;

namespace detail {

template <typename T>
bool snf_clear_step(Matrix<T>& d, Matrix<T>& u, Matrix<T>& v, int t) {
    const int n = d.rows(), k = d.cols();
    bool touched = false;
    for (int i = t + 1; i < n; ++i) {
        if (d(i, t) == T(0)) continue;
        touched = true;
        if (d(i, t) % d(t, t) == T(0)) {
            const T q = d(i, t) / d(t, t);
            for (int j = 0; j < k; ++j) d(i, j) -= q * d(t, j);
            for (int j = 0; j < n; ++j) u(i, j) -= q * u(t, j);
            continue;
        }
        auto [g, p, q] = ext_gcd(d(t, t), d(i, t));
        const T ag = d(t, t) / g, bg = d(i, t) / g;
        for (int j = 0; j < k; ++j) {
            const T x = d(t, j), y = d(i, j);
            d(t, j) = p * x + q * y;
            d(i, j) = ag * y - bg * x;
        }
        for (int j = 0; j < n; ++j) {
            const T x = u(t, j), y = u(i, j);
            u(t, j) = p * x + q * y;
            u(i, j) = ag * y - bg * x;
        }
    }
    for (int j = t + 1; j < k; ++j) {
        if (d(t, j) == T(0)) continue;
        touched = true;
        if (d(t, j) % d(t, t) == T(0)) {
            const T q = d(t, j) / d(t, t);
            for (int i = 0; i < n; ++i) d(i, j) -= q * d(i, t);
            for (int i = 0; i < k; ++i) v(i, j) -= q * v(i, t);
            continue;
        }
        auto [g, p, q] = ext_gcd(d(t, t), d(t, j));
        const T ag = d(t, t) / g, bg = d(t, j) / g;
        for (int i = 0; i < n; ++i) {
            const T x = d(i, t), y = d(i, j);
            d(i, t) = p * x + q * y;
            d(i, j) = ag * y - bg * x;
        }
        for (int i = 0; i < k; ++i) {
            const T x = v(i, t), y = v(i, j);
            v(i, t) = p * x + q * y;
            v(i, j) = ag * y - bg * x;
        }
    }
    return touched;
}

} // namespace detail

template <typename T>
SmithFormT<T> smith_normal_form(const Matrix<T>& a) {
    const int n = a.rows(), k = a.cols();
    Matrix<T> d = a;
    Matrix<T> u = Matrix<T>::identity(n);
    Matrix<T> v = Matrix<T>::identity(k);
    const int steps = std::min(n, k);
    for (int t = 0; t < steps; ++t) {
        // move a nonzero entry of the trailing block to (t, t)
        int pi = -1, pj = -1;
        for (int i = t; i < n && pi < 0; ++i)
            for (int j = t; j < k; ++j)
                if (d(i, j) != T(0)) { pi = i; pj = j; break; }
        if (pi < 0) break;
        if (pi != t) { d.swap_rows(pi, t); u.swap_rows(pi, t); }
        if (pj != t) { d.swap_cols(pj, t); v.swap_cols(pj, t); }

        while (detail::snf_clear_step(d, u, v, t)) {}

        // enforce d_t | everything below-right; a violating entry is pulled
        // into row t and the clearing loop rerun
        bool redo = true;
        while (redo) {
            redo = false;
            for (int i = t + 1; i < n && !redo; ++i)
                for (int j = t + 1; j < k; ++j)
                    if (d(i, j) % d(t, t) != T(0)) {
                        for (int c = 0; c < k; ++c) d(t, c) += d(i, c);
                        for (int c = 0; c < n; ++c) u(t, c) += u(i, c);
                        while (detail::snf_clear_step(d, u, v, t)) {}
                        redo = true;
                        break;
                    }
        }
        if (d(t, t) < T(0)) {
            for (int j = 0; j < k; ++j) d(t, j) = -d(t, j);
            for (int j = 0; j < n; ++j) u(t, j) = -u(t, j);
        }
    }
    SmithFormT<T> out;
    out.u = std::move(u);
    out.v = std::move(v);
    for (int t = 0; t < steps; ++t)
        if (d(t, t) != T(0)) out.diag.push_back(d(t, t));

    // exact reconstruction check: U*A*V must equal diag
    Matrix<T> recon = out.u * a * out.v;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            const T want = (i == j && i < static_cast<int>(out.diag.size())) ? out.diag[i] : T(0);
            if (recon(i, j) != want) throw std::logic_error("smith_normal_form: U*A*V != D");
        }
    for (std::size_t i = 1; i < out.diag.size(); ++i)
        if (out.diag[i] % out.diag[i - 1] != T(0))
            throw std::logic_error("smith_normal_form: divisibility chain broken");
    return out;
}

// Greatest divisor of a full-rank matrix: gcd of all maximal-size minors,
// computed as the product of invariant factors (equivalently HNF pivots).
template <typename T>
T maximal_minor_gcd(const Matrix<T>& a) {
    const int n = a.rows(), k = a.cols();
    const int s = std::min(n, k);
    auto hf = hermite_normal_form(n <= k ? a : a.transpose());
    if (hf.rank != s) throw not_full_rank_error("maximal_minor_gcd: matrix is rank-deficient");
    T g(1);
    for (int j = 0; j < hf.rank; ++j) g *= hf.h(hf.pivot_rows[j], j);
    return g;
}

// Basis of the integer kernel {x : A*x = 0} as matrix columns; the kernel of
// an integer matrix is saturated by construction.
template <typename T>
Matrix<T> kernel_basis(const Matrix<T>& a) {
    auto hf = hermite_normal_form(a);
    const int k = a.cols();
    Matrix<T> out(k, k - hf.rank);
    for (int j = hf.rank; j < k; ++j)
        for (int i = 0; i < k; ++i) out(i, j - hf.rank) = hf.u(i, j);
    return out;
}

// Saturation of the column lattice: {v in Z^n : q*v in H_A for some q >= 1},
// i.e. the rational column span intersected with Z^n.  Computed as the
// kernel of the kernel of A^T.
template <typename T>
HermiteFormT<T> saturation(const Matrix<T>& a) {
    const int n = a.rows();
    auto hf = hermite_normal_form(a);
    if (hf.rank == n) return hermite_normal_form(Matrix<T>::identity(n));
    if (hf.rank == 0) return hermite_normal_form(Matrix<T>(n, 0));
    Matrix<T> ortho = kernel_basis(a.transpose());  // n x (n - rank)
    Matrix<T> gen = kernel_basis(ortho.transpose());  // n x rank
    return hermite_normal_form(gen);
}

// Solve H*y = b for a staircase basis H (as produced by
// hermite_normal_form).  The coefficient vector is unique when it exists;
// returns nothing when b lies outside the spanned lattice.
template <typename T>
std::optional<std::vector<T>> staircase_solve(const Matrix<T>& h,
                                              const std::vector<int>& pivot_rows,
                                              const Matrix<T>& b_col) {
    if (b_col.rows() != h.rows() || b_col.cols() != 1) throw shape_error("staircase_solve: bad rhs shape");
    const int n = h.rows(), s = h.cols();
    std::vector<T> residual(n);
    for (int i = 0; i < n; ++i) residual[i] = b_col(i, 0);
    std::vector<T> y(s, T(0));
    for (int j = 0; j < s; ++j) {
        const int p = pivot_rows[j];
        const T& pivot = h(p, j);
        if (residual[p] % pivot != T(0)) return std::nullopt;
        y[j] = residual[p] / pivot;
        if (y[j] != T(0))
            for (int i = p; i < n; ++i) residual[i] -= y[j] * h(i, j);
    }
    for (int i = 0; i < n; ++i)
        if (residual[i] != T(0)) return std::nullopt;
    return y;
}

// Reduced row echelon solve over the rationals; returns the solution with
// all free variables set to zero, or nothing if the system is inconsistent.
inline std::optional<RatMatrix> rational_solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw shape_error("rational_solve: row count mismatch");
    const int n = a.rows(), k = a.cols(), m = b.cols();
    RatMatrix w = augment(a, b);
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < k && r < n; ++c) {
        int p = -1;
        for (int i = r; i < n; ++i)
            if (w(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r) w.swap_rows(p, r);
        const Rational inv = w(r, c);
        for (int j = c; j < k + m; ++j) w(r, j) /= inv;
        for (int i = 0; i < n; ++i) {
            if (i == r || w(i, c) == 0) continue;
            const Rational f = w(i, c);
            for (int j = c; j < k + m; ++j) w(i, j) -= f * w(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (w(i, k + j) != 0) return std::nullopt;
    RatMatrix x(k, m);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j) x(pivot_col[i], j) = w(i, k + j);
    return x;
}

} // namespace latd
