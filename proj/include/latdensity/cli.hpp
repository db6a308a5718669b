#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latdensity/density.hpp"
#include "latdensity/ehrhart.hpp"
#include "latdensity/io.hpp"
#include "latdensity/solvability.hpp"
#include "latdensity/version.hpp"

namespace latd::cli {

using nlohmann::json;

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt_rational(const Rational& q) {
    return denominator(q) == 1 ? numerator(q).str() : q.str();
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

// Tabular results plus their JSON rendering; every command produces one.
struct TableData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json results = json::array();
    json summary;  // null unless the command has grid-level aggregates
};

struct CommonOpts {
    std::string format = "csv";
    std::string out_dir = "runs";
    bool no_persist = false;
    int threads = 1;
    std::int64_t budget = 0;  // 0: use LATDENSITY_BUDGET or the default
};

namespace detail {

inline void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "output format for stdout")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out-dir", c.out_dir, "directory for run records");
    cmd->add_flag("--no-persist", c.no_persist, "do not write runs/<run_id>/");
    cmd->add_option("--threads", c.threads, "worker threads for enumeration")->check(CLI::Range(1, 256));
    cmd->add_option("--budget", c.budget, "enumeration budget (overrides LATDENSITY_BUDGET)");
}

inline EnumOptions enum_options(const CommonOpts& c, std::ostream& err) {
    EnumOptions opts;
    opts.budget = c.budget > 0 ? c.budget : default_budget_from_env();
    opts.threads = c.threads;
    opts.progress = [&err, last = std::chrono::steady_clock::now()](std::int64_t done,
                                                                    std::int64_t total) mutable {
        const auto now = std::chrono::steady_clock::now();
        if (done == total || now - last > std::chrono::seconds(1)) {
            last = now;
            err << "progress: " << done << "/" << total << " tasks\n";
        }
    };
    return opts;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

inline std::string make_run_id(const std::string& command, const json& params) {
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%08llx",
                  static_cast<unsigned long long>(fnv1a(command + params.dump()) & 0xffffffffull));
    return utc_timestamp() + "-" + hash;
}

inline void write_csv(std::ostream& out, const TableData& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_quote(row[i]);
        }
        out << '\n';
    }
}

// stdout envelope; deliberately contains no timestamps so that reruns are
// byte-identical
inline json envelope(const std::string& command, const json& params, const TableData& table) {
    json env;
    env["command"] = command;
    env["version"] = kVersion;
    env["params"] = params;
    env["results"] = table.results;
    if (!table.summary.is_null()) env["summary"] = table.summary;
    return env;
}

inline void emit(std::ostream& out, const std::string& format, const std::string& command,
                 const json& params, const TableData& table) {
    if (format == "json") {
        out << envelope(command, params, table).dump(2) << '\n';
    } else {
        write_csv(out, table);
    }
}

inline void persist(const CommonOpts& common, const std::string& command, const json& params,
                    const TableData& table, std::int64_t wall_ms, std::ostream& err) {
    if (common.no_persist) return;
    const std::string run_id = make_run_id(command, params);
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(common.out_dir) / run_id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        err << "warning: cannot create " << dir.string() << ": " << ec.message() << "\n";
        return;
    }
    json record = envelope(command, params, table);
    record["run_id"] = run_id;
    record["wall_time_ms"] = wall_ms;
    std::ofstream rec(dir / "record.json");
    rec << record.dump(2) << '\n';
    std::ofstream csv(dir / "results.csv");
    write_csv(csv, table);
    err << "run record: " << (dir / "record.json").string() << "\n";
}

inline IntMatrix load_matrix(const std::string& file, const std::string& inline_text,
                             const std::string& which) {
    if (!file.empty() && !inline_text.empty())
        throw parse_error(which + ": give either a file or an inline matrix, not both");
    if (!file.empty()) return parse_matrix_file(file);
    if (!inline_text.empty()) return parse_matrix_inline(inline_text);
    throw parse_error(which + ": matrix required (--" + which + " FILE or --inline-" + which + " \"...\")");
}

inline std::string witness_to_string(const IntMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += ' ';
            s += m(i, j).str();
        }
    }
    return s;
}

inline std::string witness_to_string(const RatMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += ' ';
            s += fmt_rational(m(i, j));
        }
    }
    return s;
}

inline std::string certificate_to_string(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += fmt_rational(v[i]);
    }
    return s;
}

inline std::vector<std::int64_t> radii_from_options(const std::string& radii_text, std::int64_t single_r,
                                                    bool has_single) {
    if (!radii_text.empty() && has_single)
        throw parse_error("give either --radii or --r, not both");
    if (!radii_text.empty()) return parse_radii(radii_text);
    if (has_single) {
        if (single_r < 0) throw parse_error("--r must be nonnegative");
        return {single_r};
    }
    throw parse_error("a radius is required (--r INT or --radii START..STOP..STEP)");
}

} // namespace detail

// ----- commands -------------------------------------------------------------

inline TableData run_solve(const IntMatrix& a, const IntMatrix& b, const std::string& ring) {
    LinearSystem sys(a, b);
    const auto z = solvable_over_Z(sys);
    const auto q = solvable_over_Q(sys);
    std::optional<bool> smith;
    if (rank(sys.a) == sys.a.rows()) smith = solvable_over_Z_smith(sys);
    const bool agree = (!smith || *smith == z.solvable) && (!z.solvable || q.solvable);

    const bool over_z = (ring == "Z");
    const bool solvable = over_z ? z.solvable : q.solvable;
    std::string witness, certificate;
    if (over_z) {
        if (z.witness) witness = detail::witness_to_string(*z.witness);
        if (z.certificate) certificate = detail::certificate_to_string(*z.certificate);
    } else {
        if (q.witness) witness = detail::witness_to_string(*q.witness);
        if (q.certificate) certificate = detail::certificate_to_string(*q.certificate);
    }

    TableData table;
    table.header = {"ring",          "solvable",       "witness",     "certificate",
                    "hnf_verdict",   "smith_verdict",  "kc_verdict",  "criteria_agree"};
    table.rows.push_back({ring, solvable ? "true" : "false", witness, certificate,
                          z.solvable ? "true" : "false",
                          smith ? (*smith ? "true" : "false") : "n/a",
                          q.solvable ? "true" : "false", agree ? "true" : "false"});
    json row;
    row["ring"] = ring;
    row["solvable"] = solvable;
    row["witness"] = witness.empty() ? json() : json(witness);
    row["certificate"] = certificate.empty() ? json() : json(certificate);
    row["verdicts"] = {{"hnf", z.solvable}, {"kronecker_capelli", q.solvable}};
    row["verdicts"]["smith"] = smith ? json(*smith) : json();
    row["criteria_agree"] = agree;
    table.results.push_back(row);
    return table;
}

inline TableData run_density(const BallSpec& base_spec, TargetSet set, int rank_s,
                             const std::vector<std::int64_t>& radii, DensityMode mode,
                             std::int64_t samples, std::uint64_t seed, const EnumOptions& opts) {
    TableData table;
    table.header = {"r",     "set",   "m",        "k",           "n",         "mode",
                    "samples", "seed", "numerator", "denominator", "ratio",     "ci_low",
                    "ci_high", "target_low", "target_high"};
    const char* set_name = set == TargetSet::sat_z        ? "sat-z"
                           : set == TargetSet::sat_q      ? "sat-q"
                           : set == TargetSet::full_rank  ? "full-rank"
                           : set == TargetSet::unimodular ? "unimodular"
                                                          : "rank-eq-s";
    for (const auto r : radii) {
        BallSpec spec = base_spec;
        spec.r = r;
        const DensityPoint pt = mode == DensityMode::exact
                                    ? exact_density(spec, set, opts, rank_s)
                                    : mc_density(spec, set, samples, seed, opts, rank_s);
        const auto target = closed_form_target(spec, set, rank_s);
        std::vector<std::string> row;
        row.push_back(std::to_string(r));
        row.push_back(set_name);
        row.push_back(std::to_string(spec.m));
        row.push_back(std::to_string(spec.k));
        row.push_back(std::to_string(spec.n));
        row.push_back(mode == DensityMode::exact ? "exact" : "mc");
        row.push_back(pt.sample_count ? std::to_string(*pt.sample_count) : "");
        row.push_back(mode == DensityMode::monte_carlo ? std::to_string(seed) : "");
        row.push_back(pt.numerator.str());
        row.push_back(pt.denominator.str());
        row.push_back(fmt_double(pt.ratio_f));
        row.push_back(pt.ci_low ? fmt_double(*pt.ci_low) : "");
        row.push_back(pt.ci_high ? fmt_double(*pt.ci_high) : "");
        row.push_back(target.low ? fmt_double(*target.low) : "");
        row.push_back(target.high ? fmt_double(*target.high) : "");
        table.rows.push_back(row);

        json jrow;
        jrow["r"] = r;
        jrow["set"] = set_name;
        jrow["m"] = spec.m;
        jrow["k"] = spec.k;
        jrow["n"] = spec.n;
        jrow["mode"] = mode == DensityMode::exact ? "exact" : "mc";
        jrow["samples"] = pt.sample_count ? json(*pt.sample_count) : json();
        jrow["seed"] = mode == DensityMode::monte_carlo ? json(static_cast<std::int64_t>(seed)) : json();
        jrow["numerator"] = pt.numerator.str();
        jrow["denominator"] = pt.denominator.str();
        jrow["ratio"] = pt.ratio_f;
        jrow["ratio_exact"] = fmt_rational(pt.ratio);
        jrow["ci_low"] = pt.ci_low ? json(*pt.ci_low) : json();
        jrow["ci_high"] = pt.ci_high ? json(*pt.ci_high) : json();
        jrow["target_low"] = target.low ? json(*target.low) : json();
        jrow["target_high"] = target.high ? json(*target.high) : json();
        table.results.push_back(jrow);
    }
    return table;
}

inline TableData run_ehrhart(const IntMatrix& a, std::int64_t t_max, std::ostream& err) {
    const Sublattice L = sublattice_from_columns(a);
    const QuasiPolynomial q = ehrhart_interpolate(L);  // throws for rank-deficient input
    const int period_full = static_cast<int>(to_i64(L.det));
    const HVector h = h_vector(q, period_full);
    const bool bound_ok = coefficient_bound_check(q);
    const Rational want_leading(pow_int(2, static_cast<unsigned>(L.ambient_dim)), L.det);
    const bool leading_ok = q.leading_coefficient() == want_leading;
    if (t_max <= 0) t_max = 3 * static_cast<std::int64_t>(q.period) * (q.degree + 1);
    const auto counts = count_points_up_to(L, t_max);

    TableData table;
    table.header = {"t", "quasipolynomial_value", "direct_count", "match"};
    bool all_match = true;
    for (std::int64_t t = 0; t <= t_max; ++t) {
        const Rational value = q.evaluate(Int(t));
        const Int& direct = counts[static_cast<std::size_t>(t)];
        const bool match = value == Rational(direct);
        all_match = all_match && match;
        table.rows.push_back({std::to_string(t), fmt_rational(value), direct.str(), match ? "true" : "false"});
        json jrow;
        jrow["t"] = t;
        jrow["quasipolynomial_value"] = fmt_rational(value);
        jrow["direct_count"] = direct.str();
        jrow["match"] = match;
        table.results.push_back(jrow);
    }

    json summary;
    summary["period"] = q.period;
    summary["degree"] = q.degree;
    json rows = json::array();
    for (const auto& row : q.rows) {
        json jr = json::array();
        for (const auto& c : row) jr.push_back(fmt_rational(c));
        rows.push_back(jr);
    }
    summary["residue_rows"] = rows;
    json hv = json::array();
    for (const auto& v : h.values) hv.push_back(v.str());
    summary["h_vector"] = {{"period", h.period}, {"degree", h.degree}, {"values", hv}};
    summary["leading_coefficient"] = fmt_rational(q.leading_coefficient());
    summary["leading_matches_volume"] = leading_ok;
    summary["coefficient_bound_ok"] = bound_ok;
    summary["verification_ok"] = all_match;
    table.summary = summary;

    err << "period " << q.period << ", degree " << q.degree << "\n";
    for (int j = 0; j < q.period; ++j) {
        err << "  residue " << j << ":";
        for (int i = q.degree; i >= 0; --i)
            err << " " << fmt_rational(q.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                << (i ? "*t^" + std::to_string(i) + " +" : "");
        err << "\n";
    }
    err << "leading coefficient " << fmt_rational(q.leading_coefficient())
        << (leading_ok ? " (= 2^n / gcd)" : " (MISMATCH)") << "\n";
    err << "coefficient bound " << (bound_ok ? "holds" : "VIOLATED") << "\n";
    return table;
}

inline TableData run_gcdsum(int m, int k, int n, const std::vector<std::int64_t>& radii,
                            const EnumOptions& opts) {
    const auto rows = gcd_sum_vs_density_report(m, k, n, radii, opts);
    TableData table;
    table.header = {"r",      "m",        "k",       "n",
                    "f_value", "f_normalized", "rho_satz_all", "rho_satz_fullrank",
                    "gap_all", "gap_fullrank"};
    for (const auto& row : rows) {
        table.rows.push_back({std::to_string(row.r), std::to_string(m), std::to_string(k),
                              std::to_string(n), fmt_rational(row.f_value),
                              fmt_double(row.f_normalized.convert_to<double>()),
                              fmt_double(row.rho_all.convert_to<double>()),
                              fmt_double(row.rho_fullrank.convert_to<double>()),
                              fmt_double(row.gap_all.convert_to<double>()),
                              fmt_double(row.gap_fullrank.convert_to<double>())});
        json jrow;
        jrow["r"] = row.r;
        jrow["m"] = m;
        jrow["k"] = k;
        jrow["n"] = n;
        jrow["f_value"] = fmt_rational(row.f_value);
        jrow["f_normalized"] = row.f_normalized.convert_to<double>();
        jrow["f_normalized_exact"] = fmt_rational(row.f_normalized);
        jrow["rho_satz_all"] = row.rho_all.convert_to<double>();
        jrow["rho_satz_all_exact"] = fmt_rational(row.rho_all);
        jrow["rho_satz_fullrank"] = row.rho_fullrank.convert_to<double>();
        jrow["rho_satz_fullrank_exact"] = fmt_rational(row.rho_fullrank);
        jrow["gap_all"] = row.gap_all.convert_to<double>();
        jrow["gap_fullrank"] = row.gap_fullrank.convert_to<double>();
        table.results.push_back(jrow);
    }
    return table;
}

inline TableData run_conjecture(int n, const std::vector<std::int64_t>& radii, const EnumOptions& opts,
                                std::ostream& err) {
    const auto report = conjecture_probe(n, radii, opts);
    TableData table;
    table.header = {"r", "n", "f_value", "f_float", "normalizer", "ratio"};
    for (const auto& row : report.rows) {
        table.rows.push_back({std::to_string(row.r), std::to_string(n), fmt_rational(row.f_value),
                              fmt_double(row.f_float), fmt_double(row.normalizer),
                              fmt_double(row.ratio)});
        json jrow;
        jrow["r"] = row.r;
        jrow["n"] = n;
        jrow["f_value"] = fmt_rational(row.f_value);
        jrow["f_float"] = row.f_float;
        jrow["normalizer"] = row.normalizer;
        jrow["ratio"] = row.ratio;
        table.results.push_back(jrow);
    }
    table.summary = {{"min_ratio", report.min_ratio}, {"max_ratio", report.max_ratio}};
    err << "normalized ratio range over the grid: [" << fmt_double(report.min_ratio) << ", "
        << fmt_double(report.max_ratio) << "]\n";
    return table;
}

// ----- driver ---------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact solvability and asymptotic density experiments for linear systems over Z^m"};
    app.name("latdensity");
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "decide AX = B over Z or Q");
    CommonOpts solve_common;
    std::string a_file, a_inline, b_file, b_inline, ring = "Z";
    solve->add_option("--a", a_file, "coefficient matrix file");
    solve->add_option("--inline-a", a_inline, "coefficient matrix, rows separated by ';'");
    solve->add_option("--b", b_file, "right-hand side file");
    solve->add_option("--inline-b", b_inline, "right-hand side, rows separated by ';'");
    solve->add_option("--ring", ring, "target ring")->check(CLI::IsMember({"Z", "Q"}));
    detail::add_common(solve, solve_common);

    // density
    auto* density = app.add_subcommand("density", "measure set densities in coefficient balls");
    CommonOpts density_common;
    int d_m = 1, d_k = 1, d_n = 1, d_s = -1;
    std::string d_set, d_radii, d_mode = "exact";
    std::int64_t d_r = -1, d_samples = 100000;
    std::int64_t d_seed = 0;
    density->add_option("--m", d_m, "group rank")->check(CLI::PositiveNumber);
    density->add_option("--k", d_k, "variables")->check(CLI::PositiveNumber);
    density->add_option("--n", d_n, "equations")->check(CLI::PositiveNumber);
    density->add_option("--set", d_set, "target set")
        ->required()
        ->check(CLI::IsMember({"sat-z", "sat-q", "full-rank", "unimodular", "rank-eq-s"}));
    density->add_option("--s", d_s, "rank for --set rank-eq-s");
    auto* d_radii_opt = density->add_option("--radii", d_radii, "radius grid START..STOP..STEP");
    auto* d_r_opt = density->add_option("--r", d_r, "single radius");
    density->add_option("--mode", d_mode, "exact enumeration or Monte Carlo")
        ->check(CLI::IsMember({"exact", "mc"}));
    density->add_option("--samples", d_samples, "Monte Carlo sample count");
    density->add_option("--seed", d_seed, "Monte Carlo seed");
    detail::add_common(density, density_common);

    // ehrhart
    auto* ehrhart = app.add_subcommand("ehrhart", "counting quasipolynomial of a column lattice");
    CommonOpts ehrhart_common;
    std::string e_a_file, e_a_inline;
    std::int64_t e_tmax = 0;
    ehrhart->add_option("--a", e_a_file, "generating matrix file");
    ehrhart->add_option("--inline-a", e_a_inline, "generating matrix, rows separated by ';'");
    ehrhart->add_option("--t-max", e_tmax, "verification table upper bound (default 3p(d+1))");
    detail::add_common(ehrhart, ehrhart_common);

    // gcdsum
    auto* gcdsum = app.add_subcommand("gcdsum", "inverse greatest-divisor sums vs. density");
    CommonOpts gcdsum_common;
    int g_m = 1, g_k = 1, g_n = 1;
    std::string g_radii;
    std::int64_t g_r = -1;
    gcdsum->add_option("--m", g_m, "group rank")->check(CLI::PositiveNumber);
    gcdsum->add_option("--k", g_k, "variables")->check(CLI::PositiveNumber);
    gcdsum->add_option("--n", g_n, "equations")->check(CLI::PositiveNumber);
    auto* g_radii_opt = gcdsum->add_option("--radii", g_radii, "radius grid START..STOP..STEP");
    auto* g_r_opt = gcdsum->add_option("--r", g_r, "single radius");
    detail::add_common(gcdsum, gcdsum_common);

    // conjecture
    auto* conjecture = app.add_subcommand("conjecture", "growth probe for square-system gcd sums");
    CommonOpts conjecture_common;
    int c_n = 2;
    std::string c_radii;
    std::int64_t c_r = -1;
    conjecture->add_option("--n", c_n, "matrix size")->check(CLI::PositiveNumber);
    auto* c_radii_opt = conjecture->add_option("--radii", c_radii, "radius grid START..STOP..STEP");
    auto* c_r_opt = conjecture->add_option("--r", c_r, "single radius");
    detail::add_common(conjecture, conjecture_common);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    auto wall_ms = [&]() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     started)
            .count();
    };

    try {
        if (solve->parsed()) {
            const IntMatrix a = detail::load_matrix(a_file, a_inline, "a");
            const IntMatrix b = detail::load_matrix(b_file, b_inline, "b");
            json params = {{"ring", ring}, {"a", detail::witness_to_string(a)},
                           {"b", detail::witness_to_string(b)}};
            const TableData table = run_solve(a, b, ring);
            detail::emit(out, solve_common.format, "solve", params, table);
            detail::persist(solve_common, "solve", params, table, wall_ms(), err);
            return 0;
        }
        if (density->parsed()) {
            const TargetSet set = d_set == "sat-z"        ? TargetSet::sat_z
                                  : d_set == "sat-q"      ? TargetSet::sat_q
                                  : d_set == "full-rank"  ? TargetSet::full_rank
                                  : d_set == "unimodular" ? TargetSet::unimodular
                                                          : TargetSet::rank_eq_s;
            const auto radii = detail::radii_from_options(d_radii, d_r, d_r_opt->count() > 0);
            (void)d_radii_opt;
            const DensityMode mode = d_mode == "mc" ? DensityMode::monte_carlo : DensityMode::exact;
            json params = {{"m", d_m},       {"k", d_k},           {"n", d_n},
                           {"set", d_set},   {"mode", d_mode},     {"radii", json(radii)},
                           {"threads", density_common.threads}};
            if (set == TargetSet::rank_eq_s) params["s"] = d_s;
            if (mode == DensityMode::monte_carlo) {
                params["samples"] = d_samples;
                params["seed"] = d_seed;
            }
            const TableData table =
                run_density({d_m, d_k, d_n, 0}, set, d_s, radii, mode, d_samples,
                            static_cast<std::uint64_t>(d_seed), detail::enum_options(density_common, err));
            detail::emit(out, density_common.format, "density", params, table);
            detail::persist(density_common, "density", params, table, wall_ms(), err);
            return 0;
        }
        if (ehrhart->parsed()) {
            const IntMatrix a = detail::load_matrix(e_a_file, e_a_inline, "a");
            json params = {{"a", detail::witness_to_string(a)}, {"t_max", e_tmax}};
            const TableData table = run_ehrhart(a, e_tmax, err);
            detail::emit(out, ehrhart_common.format, "ehrhart", params, table);
            detail::persist(ehrhart_common, "ehrhart", params, table, wall_ms(), err);
            return 0;
        }
        if (gcdsum->parsed()) {
            const auto radii = detail::radii_from_options(g_radii, g_r, g_r_opt->count() > 0);
            (void)g_radii_opt;
            json params = {{"m", g_m}, {"k", g_k}, {"n", g_n}, {"radii", json(radii)},
                           {"threads", gcdsum_common.threads}};
            const TableData table =
                run_gcdsum(g_m, g_k, g_n, radii, detail::enum_options(gcdsum_common, err));
            detail::emit(out, gcdsum_common.format, "gcdsum", params, table);
            detail::persist(gcdsum_common, "gcdsum", params, table, wall_ms(), err);
            return 0;
        }
        if (conjecture->parsed()) {
            const auto radii = detail::radii_from_options(c_radii, c_r, c_r_opt->count() > 0);
            (void)c_radii_opt;
            json params = {{"n", c_n}, {"radii", json(radii)}, {"threads", conjecture_common.threads}};
            const TableData table =
                run_conjecture(c_n, radii, detail::enum_options(conjecture_common, err), err);
            detail::emit(out, conjecture_common.format, "conjecture", params, table);
            detail::persist(conjecture_common, "conjecture", params, table, wall_ms(), err);
            return 0;
        }
    } catch (const budget_exceeded_error& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        err << "parse error";
        if (e.line > 0) err << " (line " << e.line << (e.column > 0 ? ", column " + std::to_string(e.column) : "") << ")";
        err << ": " << e.what() << "\n";
        return 4;
    } catch (const not_full_rank_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const shape_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace latd::cli
