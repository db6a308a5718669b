#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "latdensity/closed_forms.hpp"
#include "latdensity/errors.hpp"
#include "latdensity/lattice.hpp"
#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"
#include "latdensity/rng.hpp"
#include "latdensity/solvability.hpp"

namespace latd {

enum class TargetSet { sat_z, sat_q, full_rank, unimodular, rank_eq_s };

// m: group rank, k: variables, n: equations, r: ball radius.  Systems live
// in a ball of (2r+1)^{n(k+m)} points, coefficient blocks alone in
// (2r+1)^{nk}.
struct BallSpec {
    int m = 1;
    int k = 1;
    int n = 1;
    std::int64_t r = 1;
};

struct DensityPoint {
    std::int64_t r = 0;
    Int numerator = 0;
    Int denominator = 1;
    Rational ratio = 0;
    double ratio_f = 0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<std::int64_t> sample_count;
};

enum class DensityMode { exact, monte_carlo };

struct DensitySeries {
    BallSpec spec;
    TargetSet set = TargetSet::sat_z;
    int rank_s = -1;
    DensityMode mode = DensityMode::exact;
    std::vector<DensityPoint> points;
};

struct GcdSumResult {
    int m = 0, k = 0, n = 0;
    std::int64_t r = 0;
    Rational value;       // F_{m,k,n}(r)
    Rational normalized;  // F / (2r)^{nk}
};

struct EnumOptions {
    std::int64_t budget = 100'000'000;  // enumerated coefficient blocks
    int threads = 1;
    bool prune_orbits = true;
    std::function<void(std::int64_t, std::int64_t)> progress;  // (done, total) tasks
};

inline std::int64_t default_budget_from_env(std::int64_t fallback = 100'000'000) {
    if (const char* env = std::getenv("LATDENSITY_BUDGET")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

namespace detail {

// ----- per-coefficient-block statistics ------------------------------------

struct StatRequest {
    int n = 1, k = 1, m = 1;
    std::int64_t r = 0;
    bool want_rank = false;
    bool want_gcd = false;   // greatest-divisor histogram over full-rank blocks
    bool want_satz = false;  // sum of L_A(r)^m
    bool want_satq = false;  // sum of |sat(H_A) ∩ ball|^m
    bool want_det = false;   // determinant histogram (square, unpruned only)
};

struct Accumulators {
    Int satz_all = 0;
    Int satz_fullrank = 0;
    Int satq_all = 0;
    std::vector<Int> rank_count;
    std::map<Int, Int> gcd_hist;
    std::map<Int, Int> det_hist;

    void merge(const Accumulators& o) {
        satz_all += o.satz_all;
        satz_fullrank += o.satz_fullrank;
        satq_all += o.satq_all;
        if (rank_count.size() < o.rank_count.size()) rank_count.resize(o.rank_count.size());
        for (std::size_t i = 0; i < o.rank_count.size(); ++i) rank_count[i] += o.rank_count[i];
        for (const auto& [key, cnt] : o.gcd_hist) gcd_hist[key] += cnt;
        for (const auto& [key, cnt] : o.det_hist) det_hist[key] += cnt;
    }
};

template <typename T>
Int to_int_scalar(const T& v) {
    return Int(v);
}
inline Int to_int_scalar(const CheckedI64& v) { return Int(v.v); }

// Everything the engine needs from one coefficient block.  The Hermite form
// delivers rank, greatest divisor (pivot product) and the counting basis in
// one sweep.
template <typename T>
void eval_block(const Matrix<T>& a, const Int& weight, const StatRequest& req, Accumulators& acc) {
    const auto hf = hermite_normal_form(a);
    const int rank = hf.rank;
    if (req.want_rank) {
        if (acc.rank_count.size() <= static_cast<std::size_t>(rank))
            acc.rank_count.resize(static_cast<std::size_t>(rank) + 1);
        acc.rank_count[static_cast<std::size_t>(rank)] += weight;
    }
    if ((req.want_gcd || req.want_satz) && rank == req.n) {
        if (req.want_gcd) {
            T pivot_product(1);
            for (int j = 0; j < rank; ++j) pivot_product *= hf.h(hf.pivot_rows[j], j);
            acc.gcd_hist[to_int_scalar(pivot_product)] += weight;
        }
    }
    if (req.want_satz) {
        const T cnt = count_points_kernel(hf.h, hf.pivot_rows, T(req.r));
        const Int lm = pow_int(to_int_scalar(cnt), static_cast<unsigned>(req.m));
        acc.satz_all += weight * lm;
        if (rank == req.n) acc.satz_fullrank += weight * lm;
    }
    if (req.want_satq) {
        Int cnt;
        if (rank == 0) {
            cnt = 1;
        } else if (rank == req.n) {
            cnt = pow_int(2 * Int(req.r) + 1, static_cast<unsigned>(req.n));
        } else if (rank == 1) {
            // saturation of a rank-1 lattice: the primitive vector on its line
            Matrix<T> gen(a.rows(), 1);
            T content(0);
            for (int i = 0; i < a.rows(); ++i) {
                gen(i, 0) = hf.h(i, 0);
                content = int_gcd(content, gen(i, 0));
            }
            for (int i = 0; i < a.rows(); ++i) gen(i, 0) = gen(i, 0) / content;
            const auto sat_hf = hermite_normal_form(gen);
            cnt = to_int_scalar(count_points_kernel(sat_hf.h, sat_hf.pivot_rows, T(req.r)));
        } else {
            const auto sat = saturation(a);
            cnt = to_int_scalar(count_points_kernel(sat.h, sat.pivot_rows, T(req.r)));
        }
        acc.satq_all += weight * pow_int(cnt, static_cast<unsigned>(req.m));
    }
    if (req.want_det) {
        acc.det_hist[to_int_scalar(determinant(a))] += weight;
    }
}

// ----- enumeration drivers --------------------------------------------------

// Sign-canonical columns: zero or first nonzero entry positive, listed in a
// fixed lexicographic order.
inline std::vector<std::vector<std::int64_t>> canonical_columns(int n, std::int64_t r) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(static_cast<std::size_t>(n), -r);
    for (;;) {
        int first_nonzero = -1;
        for (int i = 0; i < n; ++i)
            if (cur[static_cast<std::size_t>(i)] != 0) { first_nonzero = i; break; }
        if (first_nonzero < 0 || cur[static_cast<std::size_t>(first_nonzero)] > 0) out.push_back(cur);
        int lvl = n - 1;
        while (lvl >= 0 && cur[static_cast<std::size_t>(lvl)] == r) { cur[static_cast<std::size_t>(lvl)] = -r; --lvl; }
        if (lvl < 0) break;
        ++cur[static_cast<std::size_t>(lvl)];
    }
    return out;
}

inline Int binomial_int(const Int& n, int k) {
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

inline Int factorial_int(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Deterministic task-parallel map-reduce.  All accumulator merges are exact
// integer sums, so the result is identical for every thread count.
template <typename TaskFn>
Accumulators run_tasks(std::int64_t n_tasks, const EnumOptions& opts, TaskFn&& task) {
    const int threads = std::max(1, std::min(opts.threads, 256));
    std::vector<Accumulators> per_worker(static_cast<std::size_t>(threads));
    std::atomic<std::int64_t> next{0};
    std::atomic<std::int64_t> done{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&](int worker) {
        try {
            for (;;) {
                const std::int64_t t = next.fetch_add(1);
                if (t >= n_tasks) break;
                task(t, per_worker[static_cast<std::size_t>(worker)]);
                const std::int64_t d = done.fetch_add(1) + 1;
                if (opts.progress && worker == 0 && (d % 64 == 0 || d == n_tasks))
                    opts.progress(d, n_tasks);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    Accumulators total;
    for (const auto& acc : per_worker) total.merge(acc);
    return total;
}

// Work through every coefficient block in the ball (optionally up to column
// sign/permutation orbits, with exact orbit weights) and fold the requested
// statistics.  Each task first tries the overflow-checked int64 kernels and
// redoes itself in arbitrary precision if anything overflows.
inline Accumulators enumerate_blocks(const StatRequest& req, const EnumOptions& opts, bool pruned) {
    const int n = req.n, k = req.k;
    const std::int64_t r = req.r;
    const Int base = 2 * Int(r) + 1;

    if (pruned && req.want_det) throw std::logic_error("determinant histogram requires unpruned enumeration");

    if (pruned) {
        const Int m_count = (pow_int(base, static_cast<unsigned>(n)) - 1) / 2 + 1;
        const Int orbit_count = binomial_int(m_count + (k - 1), k);
        if (orbit_count > opts.budget)
            throw budget_exceeded_error("orbit enumeration of " + orbit_count.str() +
                                        " column multisets exceeds the budget of " +
                                        std::to_string(opts.budget) + "; consider Monte Carlo mode");
        if (m_count > Int(1) << 22)
            throw budget_exceeded_error("canonical column table too large; raise the radius budget via "
                                        "unpruned mode or use Monte Carlo mode");
        const auto cols = canonical_columns(n, r);
        const auto m_total = static_cast<std::int64_t>(cols.size());
        const Int kfact = factorial_int(k);

        auto run_task = [&](auto scalar_tag, std::int64_t first, Accumulators& acc) {
            using T = decltype(scalar_tag);
            Matrix<T> a(n, k);
            std::vector<std::int64_t> idx(static_cast<std::size_t>(k), 0);
            idx[0] = first;
            auto fill_col = [&](int col, std::int64_t which) {
                for (int i = 0; i < n; ++i)
                    a(i, col) = T(cols[static_cast<std::size_t>(which)][static_cast<std::size_t>(i)]);
            };
            fill_col(0, first);
            auto rec = [&](auto&& self, int col) -> void {
                if (col == k) {
                    // orbit weight: arrangements of the multiset times a sign
                    // choice per nonzero column occurrence
                    Int weight = kfact;
                    int run = 1, nonzero = 0;
                    for (int c = 0; c < k; ++c) {
                        if (c > 0 && idx[static_cast<std::size_t>(c)] == idx[static_cast<std::size_t>(c) - 1]) {
                            ++run;
                            weight /= run;
                        } else {
                            run = 1;
                        }
                        if (idx[static_cast<std::size_t>(c)] != 0) ++nonzero;  // index 0 is the zero column
                        (void)nonzero;
                    }
                    int nz = 0;
                    for (int c = 0; c < k; ++c) {
                        bool zero = true;
                        for (int i = 0; i < n; ++i)
                            if (cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])][static_cast<std::size_t>(i)] != 0) {
                                zero = false;
                                break;
                            }
                        if (!zero) ++nz;
                    }
                    weight *= pow_int(2, static_cast<unsigned>(nz));
                    eval_block(a, weight, req, acc);
                    return;
                }
                for (std::int64_t j = idx[static_cast<std::size_t>(col) - 1]; j < m_total; ++j) {
                    idx[static_cast<std::size_t>(col)] = j;
                    fill_col(col, j);
                    self(self, col + 1);
                }
            };
            rec(rec, 1);
        };

        return run_tasks(m_total, opts, [&](std::int64_t t, Accumulators& acc) {
            try {
                Accumulators local;
                run_task(CheckedI64{}, t, local);
                acc.merge(local);
            } catch (const std::overflow_error&) {
                Accumulators local;
                run_task(Int{}, t, local);
                acc.merge(local);
            }
        });
    }

    const Int ball = pow_int(base, static_cast<unsigned>(n * k));
    if (ball > opts.budget)
        throw budget_exceeded_error("exhaustive enumeration of " + ball.str() +
                                    " coefficient blocks exceeds the budget of " +
                                    std::to_string(opts.budget) + "; consider Monte Carlo mode");
    const auto total = ball.convert_to<std::int64_t>();
    const std::int64_t block = 4096;
    const std::int64_t n_tasks = (total + block - 1) / block;
    const std::int64_t b64 = 2 * r + 1;

    auto run_range = [&](auto scalar_tag, std::int64_t lo, std::int64_t hi, Accumulators& acc) {
        using T = decltype(scalar_tag);
        Matrix<T> a(n, k);
        for (std::int64_t code = lo; code < hi; ++code) {
            std::int64_t rest = code;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < k; ++j) {
                    a(i, j) = T(rest % b64 - r);
                    rest /= b64;
                }
            eval_block(a, Int(1), req, acc);
        }
    };

    return run_tasks(n_tasks, opts, [&](std::int64_t t, Accumulators& acc) {
        const std::int64_t lo = t * block;
        const std::int64_t hi = std::min(total, lo + block);
        try {
            Accumulators local;
            run_range(CheckedI64{}, lo, hi, local);
            acc.merge(local);
        } catch (const std::overflow_error&) {
            Accumulators local;
            run_range(Int{}, lo, hi, local);
            acc.merge(local);
        }
    });
}

inline void require_positive_spec(const BallSpec& spec) {
    if (spec.m < 1 || spec.k < 1 || spec.n < 1 || spec.r < 0)
        throw std::domain_error("ball spec entries must be positive (radius nonnegative)");
}

} // namespace detail

// Exact density of the target set in its ball.  SAT sets enumerate only the
// coefficient block and weight each block by its count of solvable
// right-hand sides, which is |H_A ∩ ball|^m (or the saturation count for
// rational solvability); matrix sets count blocks directly.
inline DensityPoint exact_density(const BallSpec& spec, TargetSet set, const EnumOptions& opts = {},
                                  int rank_s = -1) {
    detail::require_positive_spec(spec);
    detail::StatRequest req;
    req.n = spec.n;
    req.k = spec.k;
    req.m = spec.m;
    req.r = spec.r;
    const Int base = 2 * Int(spec.r) + 1;
    DensityPoint pt;
    pt.r = spec.r;
    switch (set) {
        case TargetSet::sat_z: {
            req.want_satz = true;
            const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
            pt.numerator = acc.satz_all;
            pt.denominator = pow_int(base, static_cast<unsigned>(spec.n * (spec.k + spec.m)));
            break;
        }
        case TargetSet::sat_q: {
            req.want_satq = true;
            const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
            pt.numerator = acc.satq_all;
            pt.denominator = pow_int(base, static_cast<unsigned>(spec.n * (spec.k + spec.m)));
            break;
        }
        case TargetSet::full_rank: {
            req.want_rank = true;
            const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
            const int full = std::min(spec.n, spec.k);
            pt.numerator = static_cast<std::size_t>(full) < acc.rank_count.size()
                               ? acc.rank_count[static_cast<std::size_t>(full)]
                               : Int(0);
            pt.denominator = pow_int(base, static_cast<unsigned>(spec.n * spec.k));
            break;
        }
        case TargetSet::unimodular: {
            if (spec.n > spec.k)
                throw std::domain_error("unimodular density requires n <= k");
            req.want_gcd = true;
            const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
            const auto it = acc.gcd_hist.find(Int(1));
            pt.numerator = it == acc.gcd_hist.end() ? Int(0) : it->second;
            pt.denominator = pow_int(base, static_cast<unsigned>(spec.n * spec.k));
            break;
        }
        case TargetSet::rank_eq_s: {
            if (rank_s < 0 || rank_s > std::min(spec.n, spec.k))
                throw std::domain_error("rank_eq_s requires 0 <= s <= min(n, k)");
            req.want_rank = true;
            const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
            pt.numerator = static_cast<std::size_t>(rank_s) < acc.rank_count.size()
                               ? acc.rank_count[static_cast<std::size_t>(rank_s)]
                               : Int(0);
            pt.denominator = pow_int(base, static_cast<unsigned>(spec.n * spec.k));
            break;
        }
    }
    pt.ratio = Rational(pt.numerator, pt.denominator);
    pt.ratio_f = pt.ratio.convert_to<double>();
    return pt;
}

// Monte Carlo estimate with a 95% Wilson interval.  Entries are uniform in
// [-r, r], streams are keyed by (seed, sample index): the estimate is
// reproducible and independent of evaluation order and thread count.
inline DensityPoint mc_density(const BallSpec& spec, TargetSet set, std::int64_t samples,
                               std::uint64_t seed, const EnumOptions& opts = {}, int rank_s = -1) {
    detail::require_positive_spec(spec);
    if (samples < 100) throw std::domain_error("mc_density: need at least 100 samples");
    if (set == TargetSet::unimodular && spec.n > spec.k)
        throw std::domain_error("unimodular density requires n <= k");
    if (set == TargetSet::rank_eq_s && (rank_s < 0 || rank_s > std::min(spec.n, spec.k)))
        throw std::domain_error("rank_eq_s requires 0 <= s <= min(n, k)");

    const bool needs_rhs = (set == TargetSet::sat_z || set == TargetSet::sat_q);
    auto is_hit = [&](SplitMix64& rng) -> bool {
        IntMatrix a(spec.n, spec.k);
        for (int i = 0; i < spec.n; ++i)
            for (int j = 0; j < spec.k; ++j) a(i, j) = rng.next_symmetric(spec.r);
        if (needs_rhs) {
            IntMatrix b(spec.n, spec.m);
            for (int i = 0; i < spec.n; ++i)
                for (int j = 0; j < spec.m; ++j) b(i, j) = rng.next_symmetric(spec.r);
            LinearSystem sys(std::move(a), std::move(b));
            return set == TargetSet::sat_z ? solvable_over_Z(sys).solvable : solvable_over_Q(sys).solvable;
        }
        const auto hf = hermite_normal_form(a);
        switch (set) {
            case TargetSet::full_rank:
                return hf.rank == std::min(spec.n, spec.k);
            case TargetSet::unimodular: {
                if (hf.rank != spec.n) return false;
                Int g = 1;
                for (int j = 0; j < hf.rank; ++j) g *= hf.h(hf.pivot_rows[j], j);
                return g == 1;
            }
            case TargetSet::rank_eq_s:
                return hf.rank == rank_s;
            default:
                return false;
        }
    };

    const std::int64_t block = 1024;
    const std::int64_t n_tasks = (samples + block - 1) / block;
    std::atomic<std::int64_t> hits{0};
    const int threads = std::max(1, opts.threads);
    std::atomic<std::int64_t> next{0};
    auto work = [&]() {
        std::int64_t local = 0;
        for (;;) {
            const std::int64_t t = next.fetch_add(1);
            if (t >= n_tasks) break;
            const std::int64_t lo = t * block, hi = std::min(samples, lo + block);
            for (std::int64_t i = lo; i < hi; ++i) {
                auto rng = keyed_stream(seed, static_cast<std::uint64_t>(i));
                if (is_hit(rng)) ++local;
            }
        }
        hits.fetch_add(local);
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    DensityPoint pt;
    pt.r = spec.r;
    pt.numerator = hits.load();
    pt.denominator = samples;
    pt.ratio = Rational(pt.numerator, pt.denominator);
    pt.ratio_f = pt.ratio.convert_to<double>();
    const auto [lo, hi] = wilson_interval(hits.load(), samples);
    pt.ci_low = lo;
    pt.ci_high = hi;
    pt.sample_count = samples;
    return pt;
}

// F_{m,k,n}(r): sum of gcd(A)^{-m} over full-rank coefficient blocks in the
// ball, assembled exactly from the greatest-divisor histogram.
inline GcdSumResult gcd_sum_F(int m, int k, int n, std::int64_t r, const EnumOptions& opts = {}) {
    if (n > k) throw std::domain_error("gcd_sum_F requires n <= k");
    detail::require_positive_spec({m, k, n, r});
    detail::StatRequest req;
    req.n = n;
    req.k = k;
    req.m = m;
    req.r = r;
    req.want_gcd = true;
    const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
    GcdSumResult out;
    out.m = m;
    out.k = k;
    out.n = n;
    out.r = r;
    for (const auto& [g, cnt] : acc.gcd_hist) out.value += Rational(cnt, pow_int(g, static_cast<unsigned>(m)));
    out.normalized = out.value / Rational(pow_int(2 * Int(r), static_cast<unsigned>(n * k)));
    return out;
}

// S_{m,k,n}(r): number of solvable systems in the ball whose coefficient
// block has full rank.
inline Int structured_sum_S(int m, int k, int n, std::int64_t r, const EnumOptions& opts = {}) {
    if (n > k) throw std::domain_error("structured_sum_S requires n <= k");
    detail::require_positive_spec({m, k, n, r});
    detail::StatRequest req;
    req.n = n;
    req.k = k;
    req.m = m;
    req.r = r;
    req.want_satz = true;
    return detail::enumerate_blocks(req, opts, opts.prune_orbits).satz_fullrank;
}

// One row per radius comparing the measured solvable-system density against
// the normalized gcd sum.
struct GcdDensityRow {
    std::int64_t r = 0;
    Rational f_value;
    Rational f_normalized;
    Rational rho_all;       // every coefficient block counted
    Rational rho_fullrank;  // full-rank blocks only
    Rational gap_all;
    Rational gap_fullrank;
};

inline std::vector<GcdDensityRow> gcd_sum_vs_density_report(int m, int k, int n,
                                                            const std::vector<std::int64_t>& radii,
                                                            const EnumOptions& opts = {}) {
    if (n > k) throw std::domain_error("gcd_sum_vs_density_report requires n <= k");
    std::vector<GcdDensityRow> rows;
    for (const auto r : radii) {
        detail::StatRequest req;
        req.n = n;
        req.k = k;
        req.m = m;
        req.r = r;
        req.want_gcd = true;
        req.want_satz = true;
        const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
        GcdDensityRow row;
        row.r = r;
        for (const auto& [g, cnt] : acc.gcd_hist)
            row.f_value += Rational(cnt, pow_int(g, static_cast<unsigned>(m)));
        row.f_normalized = row.f_value / Rational(pow_int(2 * Int(r), static_cast<unsigned>(n * k)));
        const Int ball = pow_int(2 * Int(r) + 1, static_cast<unsigned>(n * (k + m)));
        row.rho_all = Rational(acc.satz_all, ball);
        row.rho_fullrank = Rational(acc.satz_fullrank, ball);
        row.gap_all = boost::multiprecision::abs(row.rho_all - row.f_normalized);
        row.gap_fullrank = boost::multiprecision::abs(row.rho_fullrank - row.f_normalized);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Exact counts of coefficient blocks by rank.
inline std::map<int, Int> rank_histogram(int n, int k, std::int64_t r, const EnumOptions& opts = {}) {
    detail::require_positive_spec({1, k, n, r});
    detail::StatRequest req;
    req.n = n;
    req.k = k;
    req.r = r;
    req.want_rank = true;
    const auto acc = detail::enumerate_blocks(req, opts, opts.prune_orbits);
    std::map<int, Int> out;
    for (int s = 0; s <= std::min(n, k); ++s)
        out[s] = static_cast<std::size_t>(s) < acc.rank_count.size()
                     ? acc.rank_count[static_cast<std::size_t>(s)]
                     : Int(0);
    return out;
}

// Exact counts of square blocks by determinant value (unpruned: determinant
// signs are not orbit invariants).
inline std::map<Int, Int> det_histogram(int n, std::int64_t r, const EnumOptions& opts = {}) {
    detail::require_positive_spec({1, n, n, r});
    detail::StatRequest req;
    req.n = n;
    req.k = n;
    req.r = r;
    req.want_det = true;
    return detail::enumerate_blocks(req, opts, false).det_hist;
}

// Growth probe for F_{1,n,n}(r) against r^{n^2-n} ln r.  Purely
// observational: the underlying statement is an open conjecture, so the rows
// report ratios and the caller draws conclusions.
struct ConjectureRow {
    std::int64_t r = 0;
    Rational f_value;
    double f_float = 0;
    double normalizer = 0;
    double ratio = 0;
};

struct ConjectureReport {
    int n = 0;
    std::vector<ConjectureRow> rows;
    double min_ratio = 0;
    double max_ratio = 0;
};

inline ConjectureReport conjecture_probe(int n, const std::vector<std::int64_t>& radii,
                                         const EnumOptions& opts = {}) {
    if (n < 2) throw std::domain_error("conjecture_probe requires n >= 2");
    ConjectureReport report;
    report.n = n;
    for (const auto r : radii) {
        if (r < 2) throw std::domain_error("conjecture_probe requires radii >= 2 (ln r must be positive)");
        const auto f = gcd_sum_F(1, n, n, r, opts);
        ConjectureRow row;
        row.r = r;
        row.f_value = f.value;
        row.f_float = f.value.convert_to<double>();
        row.normalizer = std::pow(static_cast<double>(r), n * n - n) * std::log(static_cast<double>(r));
        row.ratio = row.f_float / row.normalizer;
        report.rows.push_back(std::move(row));
    }
    report.min_ratio = report.rows.front().ratio;
    report.max_ratio = report.rows.front().ratio;
    for (const auto& row : report.rows) {
        report.min_ratio = std::min(report.min_ratio, row.ratio);
        report.max_ratio = std::max(report.max_ratio, row.ratio);
    }
    return report;
}

// Closed-form targets for a density series, where the theory provides one.
struct TargetInterval {
    std::optional<double> low;
    std::optional<double> high;
};

inline TargetInterval closed_form_target(const BallSpec& spec, TargetSet set, int rank_s = -1) {
    TargetInterval t;
    switch (set) {
        case TargetSet::sat_z:
            if (spec.n == 1) {
                const auto cf = equation_sat_density(spec.m, spec.k);
                t.low = *cf.value - cf.value_error;
                t.high = *cf.value + cf.value_error;
            } else if (spec.n > spec.k) {
                t.low = t.high = 0.0;
            } else if (spec.n > 1 && spec.k >= spec.n) {
                const auto cf = system_density_bounds(spec.m, spec.k, spec.n);
                if (cf.lower) t.low = *cf.lower - cf.lower_error;
                if (cf.upper) t.high = *cf.upper + cf.upper_error;
            }
            break;
        case TargetSet::sat_q: {
            const auto cf = qm_density_law(spec.m, spec.k, spec.n);
            t.low = t.high = *cf.value;
            break;
        }
        case TargetSet::full_rank:
            t.low = t.high = 1.0;
            break;
        case TargetSet::unimodular:
            if (spec.n <= spec.k) {
                const auto cf = unimodular_density(spec.n, spec.k);
                t.low = *cf.value - cf.value_error;
                t.high = *cf.value + cf.value_error;
            }
            break;
        case TargetSet::rank_eq_s:
            t.low = t.high = (rank_s == std::min(spec.n, spec.k)) ? 1.0 : 0.0;
            break;
    }
    return t;
}

} // namespace latd
