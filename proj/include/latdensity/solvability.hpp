#pragma once

#include <optional>
#include <vector>

#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"

namespace latd {

// A*X = B with A the n x k coefficient block and B the n x m right-hand
// block (one column per coordinate of the target group).
struct LinearSystem {
    IntMatrix a;
    IntMatrix b;

    LinearSystem(IntMatrix a_, IntMatrix b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a.rows() != b.rows()) throw shape_error("linear system: A and B row counts differ");
    }
};

// Result of a solvability query over a ring Scalar (Int or Rational).  When
// solvable, `witness` satisfies A*witness = B exactly; when unsolvable over
// the integers, `certificate` is a rational row vector v with v*A integral
// and v*B_i non-integral for some column i.
template <typename Scalar>
struct SolveOutcome {
    bool solvable = false;
    std::optional<Matrix<Scalar>> witness;
    std::optional<std::vector<Rational>> certificate;
};

template <typename Scalar>
bool verify_witness(const LinearSystem& sys, const Matrix<Scalar>& x) {
    if (x.rows() != sys.a.cols() || x.cols() != sys.b.cols())
        throw shape_error("verify_witness: X must be k x m");
    const Matrix<Scalar> lhs = sys.a.template cast<Scalar>() * x;
    return lhs == sys.b.template cast<Scalar>();
}

namespace detail {

// Certificate candidates come from the Smith decomposition U*A*V = D: row i
// of U scaled by 1/d_i has integral product with A, and rows past the rank
// have zero product with A.  A failing row is scaled so that its pairing
// with the offending right-hand column is non-integral.
inline std::optional<std::vector<Rational>> certificate_from_smith(const SmithForm& sf,
                                                                   const IntMatrix& b,
                                                                   bool rank_rows_only = false) {
    const int n = b.rows(), m = b.cols();
    const int s = static_cast<int>(sf.diag.size());
    const IntMatrix ub = sf.u * b;
    for (int col = 0; col < m; ++col) {
        for (int i = 0; i < n; ++i) {
            Rational scale;
            if (i < s) {
                if (rank_rows_only || ub(i, col) % sf.diag[i] == 0) continue;
                scale = Rational(1, sf.diag[i]);
            } else {
                if (ub(i, col) == 0) continue;
                scale = Rational(1, 2 * int_abs(ub(i, col)));
            }
            std::vector<Rational> v(n);
            for (int j = 0; j < n; ++j) v[j] = Rational(sf.u(i, j)) * scale;
            for (const auto& x : v) {
                if (x == 0) continue;
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
            return v;
        }
    }
    return std::nullopt;
}

} // namespace detail

// Kronecker-Capelli: solvable over the rationals iff appending any column of
// B leaves the rank of A unchanged.  The witness sets free variables to zero.
inline SolveOutcome<Rational> solvable_over_Q(const LinearSystem& sys) {
    SolveOutcome<Rational> out;
    auto x = rational_solve(sys.a.cast<Rational>(), sys.b.cast<Rational>());
    if (x) {
        out.solvable = true;
        out.witness = std::move(*x);
        return out;
    }
    out.solvable = false;
    // rank failure: a row vector annihilating A but pairing non-integrally
    // (in fact non-zero) with some right-hand column
    out.certificate = detail::certificate_from_smith(smith_normal_form(sys.a), sys.b, true);
    return out;
}

// Membership of every right-hand column in the column lattice H_A, via the
// Hermite basis; the integral witness is assembled column by column from the
// unique staircase coefficients mapped back through U.
inline SolveOutcome<Int> solvable_over_Z(const LinearSystem& sys) {
    SolveOutcome<Int> out;
    const auto hf = hermite_normal_form(sys.a);
    const int k = sys.a.cols(), m = sys.b.cols();
    IntMatrix x(k, m);
    for (int col = 0; col < m; ++col) {
        auto y = staircase_solve(hf.h, hf.pivot_rows, sys.b.column(col));
        if (!y) {
            out.solvable = false;
            out.certificate = detail::certificate_from_smith(smith_normal_form(sys.a), sys.b);
            return out;
        }
        for (int i = 0; i < k; ++i) {
            Int acc = 0;
            for (int j = 0; j < hf.rank; ++j) acc += hf.u(i, j) * (*y)[j];
            x(i, col) = acc;
        }
    }
    out.solvable = true;
    out.witness = std::move(x);
    return out;
}

// Smith's criterion: for rank(A) = n the system is solvable over the
// integers iff A and every augmented (A|B_i) have equal greatest divisors.
inline bool solvable_over_Z_smith(const LinearSystem& sys) {
    const int n = sys.a.rows();
    if (rank(sys.a) != n) throw not_full_rank_error("smith criterion requires rank(A) = n");
    const Int ga = maximal_minor_gcd(sys.a);
    for (int col = 0; col < sys.b.cols(); ++col) {
        if (maximal_minor_gcd(augment(sys.a, sys.b.column(col))) != ga) return false;
    }
    return true;
}

// Van der Waerden-style certificate of integral unsolvability; nothing when
// the system is solvable over the integers.  Deterministic: columns of B in
// order, Smith rows in ascending order, first failure returned.
inline std::optional<std::vector<Rational>> dual_certificate(const LinearSystem& sys) {
    return detail::certificate_from_smith(smith_normal_form(sys.a), sys.b);
}

} // namespace latd
