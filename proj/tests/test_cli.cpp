// Behavior of the installed command-line surface: exit codes, determinism,
// and the file formats it reads and writes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalsurv/fixtures.hpp"
#include "causalsurv/law_io.hpp"

using namespace causalsurv;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("causalsurv_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::vector<std::string>& args) {
    std::string cmd = std::string("'") + CAUSALSURV_CLI_PATH + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_json(const std::string& path, const nlohmann::json& j) { write_file(path, j.dump()); }

}  // namespace

TEST_CASE("simulate is deterministic and respects the law support") {
    TempDir dir;
    const std::string law = dir.file("w1.json");
    save_law(world_no_censoring(), law);
    const nlohmann::json cfg = {{"law", {{"path", law}}}, {"n", 4}, {"seed", 5}};
    write_json(dir.file("cfg.json"), cfg);

    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--out", dir.file("a.csv")}) == 0);
    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--out", dir.file("b.csv")}) == 0);
    CHECK(read_file(dir.file("a.csv")) == read_file(dir.file("b.csv")));

    const auto records = load_records_csv(dir.file("a.csv"));
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        const bool treated = r == ObservedRecord{"l0", 1, 1, 2};
        const bool control = r == ObservedRecord{"l0", 0, 1, 1};
        CHECK((treated || control));
    }

    // a different seed via the flag changes the draw stream
    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--seed", "99", "--out",
                 dir.file("c.csv")}) == 0);
    CHECK(read_file(dir.file("a.csv")) != read_file(dir.file("c.csv")));
}

TEST_CASE("simulate rejects invalid configs with a usage exit") {
    TempDir dir;
    const std::string law = dir.file("w1.json");
    save_law(world_no_censoring(), law);
    write_json(dir.file("bad.json"), {{"law", {{"path", law}}}, {"n", 0}});
    CHECK(run({"simulate", "--config", dir.file("bad.json"), "--out", dir.file("x.csv")}) == 2);
    write_json(dir.file("nolaw.json"), {{"n", 3}});
    CHECK(run({"simulate", "--config", dir.file("nolaw.json"), "--out", dir.file("x.csv")}) == 2);
    CHECK(run({"simulate", "--config", dir.file("missing.json"), "--out", dir.file("x.csv")}) ==
          2);
    CHECK(run({"bogus-subcommand"}) == 2);
}

TEST_CASE("simulate writes one file per replicate") {
    TempDir dir;
    const std::string law = dir.file("w2.json");
    save_law(world_uniform_censoring(), law);
    write_json(dir.file("cfg.json"),
               {{"law", {{"path", law}}}, {"n", 3}, {"seed", 8}, {"replicates", 2}});
    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--out", dir.file("rep")}) == 0);
    CHECK(fs::exists(dir.file("rep.1.csv")));
    CHECK(fs::exists(dir.file("rep.2.csv")));
    CHECK(read_file(dir.file("rep.1.csv")) != read_file(dir.file("rep.2.csv")));
}

TEST_CASE("estimate reports and rejects malformed rows by line") {
    TempDir dir;
    const std::string law = dir.file("w2.json");
    save_law(world_uniform_censoring(), law);
    write_json(dir.file("cfg.json"), {{"law", {{"path", law}}},
                                      {"tau", 3},
                                      {"t", {2}},
                                      {"a", {1}},
                                      {"methods", {"ipw", "aipw-onestep", "gcomp-corrected"}},
                                      {"n", 500},
                                      {"seed", 21}});
    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--out", dir.file("s.csv")}) == 0);
    REQUIRE(run({"estimate", "--config", dir.file("cfg.json"), dir.file("s.csv"), "--out",
                 dir.file("r.json")}) == 0);
    const nlohmann::json report = nlohmann::json::parse(read_file(dir.file("r.json")));
    CHECK(report.at("reports").size() == 3);
    CHECK(report.at("curves").size() >= 1);
    for (const auto& rep : report.at("reports")) {
        CHECK(rep.at("n").get<int>() == 500);
        CHECK(rep.at("ci_low").get<double>() <= rep.at("point").get<double>());
        // the survival probability at 2 in this world is one half
        CHECK(std::abs(rep.at("point").get<double>() - 0.5) <=
              4.0 * rep.at("se").get<double>());
    }

    // determinism of the whole pipeline
    REQUIRE(run({"estimate", "--config", dir.file("cfg.json"), dir.file("s.csv"), "--out",
                 dir.file("r2.json")}) == 0);
    CHECK(read_file(dir.file("r.json")) == read_file(dir.file("r2.json")));

    write_file(dir.file("bad.csv"), "l,a,delta,x\nl0,1,1,2\nl0,7,1,2\n");
    CHECK(run({"estimate", "--config", dir.file("cfg.json"), dir.file("bad.csv")}) == 2);
}

TEST_CASE("estimate emits the survival difference when both arms are requested") {
    TempDir dir;
    const std::string law = dir.file("w1.json");
    save_law(world_no_censoring(), law);
    write_json(dir.file("cfg.json"), {{"law", {{"path", law}}},
                                      {"tau", 3},
                                      {"t", {1}},
                                      {"a", {0, 1}},
                                      {"methods", {"aipw-onestep"}},
                                      {"n", 200},
                                      {"seed", 3}});
    REQUIRE(run({"simulate", "--config", dir.file("cfg.json"), "--out", dir.file("s.csv")}) == 0);
    REQUIRE(run({"estimate", "--config", dir.file("cfg.json"), dir.file("s.csv"), "--out",
                 dir.file("r.json")}) == 0);
    const nlohmann::json report = nlohmann::json::parse(read_file(dir.file("r.json")));
    REQUIRE(report.at("contrasts").size() == 1);
    const auto& c = report.at("contrasts")[0];
    CHECK(c.at("estimand").get<std::string>() == "survival-difference");
    // survival past 1 is certain under treatment and impossible under control
    CHECK(c.at("point").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("car-check judges laws and emits witnesses") {
    TempDir dir;
    const std::string law = dir.file("w2.json");
    save_law(world_uniform_censoring(), law);
    REQUIRE(run({"car-check", law, "--out", dir.file("r.json")}) == 0);
    const nlohmann::json r = nlohmann::json::parse(read_file(dir.file("r.json")));
    CHECK(r.at("car").get<bool>());
    CHECK(r.at("scar").get<bool>());
    CHECK(r.at("routes_agree").get<bool>());

    // anticipating censoring breaks both notions
    LawDocument dep;
    dep.tau = 3;
    dep.law = make_law({{"l0", 1, 2, 2, 1, 1, 0.5}, {"l0", 1, 3, 3, 2, 2, 0.5}});
    save_law(dep, dir.file("dep.json"));
    REQUIRE(run({"car-check", dir.file("dep.json"), "--out", dir.file("rd.json")}) == 0);
    const nlohmann::json rd = nlohmann::json::parse(read_file(dir.file("rd.json")));
    CHECK_FALSE(rd.at("car").get<bool>());
    CHECK_FALSE(rd.at("scar").get<bool>());

    REQUIRE(run({"car-check", law, "--witness", "scar-not-car", "--seed", "11", "--out",
                 dir.file("w.json")}) == 0);
    const nlohmann::json w = nlohmann::json::parse(read_file(dir.file("w.json")));
    REQUIRE(w.at("witness_found").get<bool>());
    const LawDocument witness = law_from_json(w.at("witness"));
    CHECK(witness.law.total_mass() == doctest::Approx(1.0));
}

TEST_CASE("verify fails under a zero tolerance and the payload replays") {
    TempDir dir;
    write_json(dir.file("strict.json"), {{"tolerance", 0.0}, {"cases", 40}, {"laws", 4}});
    CHECK(run({"verify", "--config", dir.file("strict.json"), "--out", dir.file("r.json")}) == 1);
    const nlohmann::json r = nlohmann::json::parse(read_file(dir.file("r.json")));
    CHECK_FALSE(r.at("all_passed").get<bool>());

    nlohmann::json payload;
    for (const auto& suite : r.at("suites")) {
        if (!suite.at("passed").get<bool>()) {
            payload = suite.at("counterexample");
            break;
        }
    }
    REQUIRE_FALSE(payload.is_null());
    CHECK(payload.contains("seed"));
    CHECK(payload.contains("case"));
    write_json(dir.file("payload.json"), payload);
    CHECK(run({"verify", "--replay", dir.file("payload.json")}) == 1);

    // small clean run exits zero
    write_json(dir.file("ok.json"), {{"cases", 10}, {"laws", 2}});
    CHECK(run({"verify", "--config", dir.file("ok.json"), "--out", dir.file("ok_out.json")}) ==
          0);
}
