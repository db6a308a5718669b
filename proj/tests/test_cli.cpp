#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latdensity/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = latd::cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// structural check against the shipped schema file
void check_against_schema(const json& doc) {
    const json schema = json::parse(slurp(fs::path(__FILE__).parent_path().parent_path() /
                                          "schema/latdensity-output.schema.json"));
    for (const auto& req : schema.at("required")) REQUIRE(doc.contains(req.get<std::string>()));
    const auto& props = schema.at("properties");
    for (const auto& [key, value] : doc.items()) {
        REQUIRE(props.contains(key));  // additionalProperties: false
        const std::string want = props.at(key).at("type").get<std::string>();
        if (want == "object") CHECK(value.is_object());
        if (want == "array") CHECK(value.is_array());
        if (want == "string") CHECK(value.is_string());
        if (want == "integer") CHECK(value.is_number_integer());
    }
    if (props.at("command").contains("enum")) {
        bool found = false;
        for (const auto& e : props.at("command").at("enum"))
            found = found || e.get<std::string>() == doc.at("command").get<std::string>();
        CHECK(found);
    }
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("latd-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("solve command, stated cases") {
    const auto unsat = cli({"solve", "--ring", "Z", "--inline-a", "2", "--inline-b", "3", "--no-persist"});
    CHECK(unsat.code == 0);
    const auto rows = lines_of(unsat.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] ==
          "ring,solvable,witness,certificate,hnf_verdict,smith_verdict,kc_verdict,criteria_agree");
    CHECK(rows[1] == "Z,false,,1/2,false,false,true,true");

    const auto sat_q = cli({"solve", "--ring", "Q", "--inline-a", "2", "--inline-b", "3",
                            "--no-persist", "--format", "json"});
    CHECK(sat_q.code == 0);
    const json doc = json::parse(sat_q.out);
    check_against_schema(doc);
    CHECK(doc.at("results").at(0).at("solvable") == true);
    CHECK(doc.at("results").at(0).at("witness") == "3/2");

    const auto missing = cli({"solve", "--ring", "Z", "--a", "/nonexistent/file.mat", "--inline-b", "3",
                              "--no-persist"});
    CHECK(missing.code == 4);
    CHECK(missing.err.find("parse error") != std::string::npos);
}

TEST_CASE("solve reads the matrix file format") {
    TempDir tmp;
    {
        std::ofstream a(tmp.path / "a.mat");
        a << "2 2\n2 0\n0 3\n";
        std::ofstream b(tmp.path / "b.mat");
        b << "2 1\n4\n9\n";
    }
    const auto res = cli({"solve", "--ring", "Z", "--a", (tmp.path / "a.mat").string(), "--b",
                          (tmp.path / "b.mat").string(), "--no-persist"});
    CHECK(res.code == 0);
    CHECK(lines_of(res.out)[1] == "Z,true,2; 3,,true,true,true,true");

    {
        std::ofstream bad(tmp.path / "bad.mat");
        bad << "2 2\n1 x\n0 1\n";
    }
    const auto err = cli({"solve", "--ring", "Z", "--a", (tmp.path / "bad.mat").string(), "--inline-b",
                          "1; 2", "--no-persist"});
    CHECK(err.code == 4);
    CHECK(err.err.find("line 2") != std::string::npos);
}

TEST_CASE("density command emits stable CSV with targets") {
    const auto res = cli({"density", "--m", "1", "--k", "2", "--n", "1", "--set", "sat-z", "--radii",
                          "5..25..5", "--mode", "exact", "--no-persist"});
    CHECK(res.code == 0);
    const auto rows = lines_of(res.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] ==
          "r,set,m,k,n,mode,samples,seed,numerator,denominator,ratio,ci_low,ci_high,target_low,"
          "target_high");
    CHECK(rows[1].find("5,sat-z,1,2,1,exact") == 0);
    CHECK(rows[1].find("0.7307") != std::string::npos);  // closed-form target column
}

TEST_CASE("density JSON validates against the shipped schema") {
    const auto res = cli({"density", "--m", "1", "--k", "1", "--n", "1", "--set", "sat-z", "--r", "3",
                          "--mode", "exact", "--no-persist", "--format", "json"});
    CHECK(res.code == 0);
    const json doc = json::parse(res.out);
    check_against_schema(doc);
    CHECK(doc.at("command") == "density");
    CHECK(doc.at("results").size() == 1);
    CHECK(doc.at("results").at(0).at("numerator").is_string());
}

TEST_CASE("seeded Monte Carlo runs are byte-identical across repeats and thread counts") {
    const std::vector<std::string> base{"density", "--m", "1", "--k", "2", "--n", "1", "--set",
                                        "unimodular", "--r", "500", "--mode", "mc", "--samples",
                                        "5000", "--seed", "11", "--no-persist"};
    auto with_threads = [&](const std::string& t) {
        auto args = base;
        args.push_back("--threads");
        args.push_back(t);
        return cli(args);
    };
    const auto a = with_threads("1");
    const auto b = with_threads("1");
    const auto c = with_threads("4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("exact runs are byte-identical across thread counts") {
    auto run = [&](const std::string& t) {
        return cli({"density", "--m", "1", "--k", "2", "--n", "1", "--set", "sat-z", "--r", "9",
                    "--mode", "exact", "--threads", t, "--no-persist"});
    };
    CHECK(run("1").out == run("3").out);
}

TEST_CASE("run records persist results and replay identically") {
    TempDir tmp;
    auto run = [&]() {
        return cli({"density", "--m", "1", "--k", "1", "--n", "1", "--set", "sat-z", "--r", "4",
                    "--mode", "exact", "--out-dir", tmp.path.string()});
    };
    const auto first = run();
    CHECK(first.code == 0);
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(tmp.path)) dirs.push_back(entry.path());
    REQUIRE(dirs.size() == 1);
    CHECK(fs::exists(dirs[0] / "record.json"));
    CHECK(fs::exists(dirs[0] / "results.csv"));
    CHECK(slurp(dirs[0] / "results.csv") == first.out);

    const json record = json::parse(slurp(dirs[0] / "record.json"));
    check_against_schema(record);
    CHECK(record.contains("run_id"));
    CHECK(record.contains("wall_time_ms"));

    const auto second = run();
    CHECK(second.out == first.out);
    std::vector<fs::path> dirs2;
    for (const auto& entry : fs::directory_iterator(tmp.path)) dirs2.push_back(entry.path());
    for (const auto& d : dirs2) CHECK(slurp(d / "results.csv") == first.out);
}

TEST_CASE("ehrhart command") {
    const auto res = cli({"ehrhart", "--inline-a", "2 0; 0 1", "--no-persist", "--format", "json"});
    CHECK(res.code == 0);
    const json doc = json::parse(res.out);
    check_against_schema(doc);
    CHECK(doc.at("summary").at("period") == 2);
    CHECK(doc.at("summary").at("leading_matches_volume") == true);
    CHECK(doc.at("summary").at("coefficient_bound_ok") == true);
    CHECK(doc.at("summary").at("verification_ok") == true);
    CHECK(doc.at("summary").at("residue_rows").at(0) == json::array({"1", "3", "2"}));

    const auto id = cli({"ehrhart", "--inline-a", "1 0; 0 1", "--no-persist"});
    CHECK(id.code == 0);
    CHECK(lines_of(id.out)[0] == "t,quasipolynomial_value,direct_count,match");

    const auto deficient = cli({"ehrhart", "--inline-a", "1 2; 2 4", "--no-persist"});
    CHECK(deficient.code == 2);
    CHECK(deficient.err.find("full rank") != std::string::npos);
}

TEST_CASE("gcdsum and conjecture commands") {
    const auto g = cli({"gcdsum", "--m", "1", "--k", "1", "--n", "1", "--r", "2", "--no-persist"});
    CHECK(g.code == 0);
    const auto rows = lines_of(g.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] ==
          "r,m,k,n,f_value,f_normalized,rho_satz_all,rho_satz_fullrank,gap_all,gap_fullrank");
    CHECK(rows[1].find("2,1,1,1,3,0.75") == 0);  // F_{1,1,1}(2) = 3

    const auto bad = cli({"gcdsum", "--m", "1", "--k", "1", "--n", "2", "--r", "2", "--no-persist"});
    CHECK(bad.code == 2);

    const auto c = cli({"conjecture", "--n", "2", "--radii", "2..4..2", "--no-persist", "--format",
                        "json"});
    CHECK(c.code == 0);
    const json doc = json::parse(c.out);
    check_against_schema(doc);
    REQUIRE(doc.at("results").size() == 2);
    CHECK(doc.at("results").at(0).contains("ratio"));
    CHECK(doc.at("summary").contains("min_ratio"));
    CHECK(doc.at("summary").contains("max_ratio"));
}

TEST_CASE("exit codes") {
    CHECK(cli({"density", "--set", "nonsense", "--r", "1", "--no-persist"}).code == 2);     // usage
    CHECK(cli({"frobnicate"}).code == 2);                                                   // usage
    CHECK(cli({"density", "--m", "1", "--k", "2", "--n", "1", "--set", "sat-z", "--r", "50",
               "--budget", "100", "--no-persist"})
              .code == 3);                                                                  // budget
    CHECK(cli({"density", "--m", "1", "--k", "2", "--n", "1", "--set", "sat-z", "--radii",
               "5..1..1", "--no-persist"})
              .code == 4);                                                                  // parse
    CHECK(cli({"solve", "--ring", "Z", "--inline-a", "2 f", "--inline-b", "3", "--no-persist"}).code ==
          4);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("radii grids") {
    CHECK(latd::parse_radii("5..25..5") == std::vector<std::int64_t>{5, 10, 15, 20, 25});
    CHECK(latd::parse_radii("7") == std::vector<std::int64_t>{7});
    CHECK(latd::parse_radii("3..4..10") == std::vector<std::int64_t>{3});
    CHECK_THROWS_AS(latd::parse_radii("5..x..1"), latd::parse_error);
    CHECK_THROWS_AS(latd::parse_radii("5..1..1"), latd::parse_error);
    CHECK_THROWS_AS(latd::parse_radii("banana"), latd::parse_error);
}
