#include <doctest.h>

#include "resonf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace resonf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

// Runs the library entry point in-process.
Run run_args(std::vector<std::string> args)
{
    args.insert(args.begin(), "resonf");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    Run r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("resonf_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kGeneric = "30,30;2,-10;-34,31;7,40";

struct CacheDir {
    CacheDir() { setenv("RESONF_CATALOG_DIR", scratch("cache").c_str(), 1); }
} cache_dir;

}  // namespace

TEST_CASE("config defaults and validation")
{
    auto c = parse_config_json(R"({"n":2,"q":1,"S":[[1,0],[0,1]]})");
    finalize_config(c);
    CHECK(c.window == 10);
    CHECK(c.m == 2);
    auto d = parse_config_json(R"({"n":2,"S":[[1,0],[0,1],[1,0]]})");
    CHECK_THROWS_WITH_AS(finalize_config(d), "duplicate site: v1 = v3", InputError);
    CHECK_THROWS_AS(parse_config_json(R"({"n":2,"S":[[1,0],[0,1,2]]})").sites_set(), InputError);
    CHECK_THROWS_WITH_AS(parse_config_json(R"({"n":2,"S":[[1,"a"]]})"), "config field 'S[0]': expected an integer vector",
                         InputError);
    try {
        parse_config_json("{\"n\":2,\n \"q\": }");
        FAIL("expected a parse error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("flag parsing helpers")
{
    CHECK(parse_sites("1,2; -3,4") == std::vector<IVec>{{1, 2}, {-3, 4}});
    CHECK(parse_rationals("1, 3/2") == QVec{1, mpq_class(3, 2)});
    CHECK(parse_ints("-1,-1,0") == IVec{-1, -1, 0});
    CHECK_THROWS_AS(parse_sites("1,x"), InputError);
}

TEST_CASE("large integers are written as strings")
{
    CHECK(int_json(mpz_class("9007199254740992")).is_number());
    CHECK(int_json(mpz_class("9007199254740993")).is_string());
    CHECK(int_json(mpz_class("-12345678901234567890")).get<std::string>() == "-12345678901234567890");
    CHECK(rational_json(mpq_class(3, 4)) == "3/4");
}

TEST_CASE("unknown subcommand and bad input exit with 2")
{
    CHECK(run_args({"frobnicate"}).code == kInputError);
    CHECK(run_args({}).code == kInputError);
    CHECK(run_args({"audit", "--sites", "1,0;1,0", "--out", "-"}).code == kInputError);
    CHECK(run_args({"audit", "--out", "-"}).code == kInputError);
    CHECK(run_args({"catalog", "--n", "x"}).code == kInputError);
}

TEST_CASE("audit on generic sites passes and reports a histogram")
{
    auto dir = scratch("audit");
    auto r = run_args({"audit", "--sites", kGeneric, "--window", "50", "--out", dir.string()});
    CHECK(r.code == kPass);
    auto j = json::parse(slurp(dir / "audit.json"));
    CHECK(j["schema"] == "resonf/v1/audit");
    CHECK(j["catalog_version"] == catalog_version());
    CHECK(j["config_hash"].get<std::string>().size() == 16);
    CHECK(j["pass"] == true);
    CHECK_FALSE(j["size_audit"]["histogram"].empty());
}

TEST_CASE("check-genericity on collinear sites reports a co8 witness")
{
    auto r = run_args({"check-genericity", "--sites", "1,0;2,0;3,0", "--out", "-"});
    CHECK(r.code == kViolations);
    auto j = json::parse(r.out);
    bool co8 = false;
    for (const auto& v : j["genericity"]["constraints"])
        if (v["name"] == "co8") {
            co8 = v["pass"] == false && !v["violations"].empty();
        }
    CHECK(co8);
}

TEST_CASE("reports are byte-stable")
{
    auto a = run_args({"build-graph", "--sites", kGeneric, "--window", "30", "--out", "-"});
    auto b = run_args({"build-graph", "--sites", kGeneric, "--window", "30", "--out", "-", "--jobs", "1"});
    CHECK(a.code == kPass);
    CHECK(a.out == b.out);
    auto c = run_args({"build-graph", "--sites", kGeneric, "--window", "31", "--out", "-"});
    CHECK(json::parse(a.out)["config_hash"] != json::parse(c.out)["config_hash"]);
}

TEST_CASE("spectrum takes s values and squares them")
{
    auto r = run_args({"spectrum", "--edge=-1,-1", "--q", "1", "--xi", "1,14", "--out", "-"});
    CHECK(r.code == kPass);
    auto j = json::parse(r.out);
    CHECK(j["spectra"][0]["spectrum"]["all_real_distinct"] == true);
    auto c = run_args({"spectrum", "--edge=-1,-1", "--xi", "1,1", "--out", "-"});
    CHECK(json::parse(c.out)["spectra"][0]["spectrum"]["complex_count"] == 2);
    CHECK(run_args({"spectrum", "--edge=-1,-1", "--out", "-"}).code == kInputError);
}

TEST_CASE("config file and catalog cache")
{
    auto dir = scratch("cfg");
    {
        std::ofstream f(dir / "run.json");
        f << R"({"n":1,"q":1})";
    }
    auto r = run_args({"catalog", "--config", (dir / "run.json").string(), "--out", dir.string()});
    CHECK(r.code == kPass);
    CHECK(fs::exists(fs::path(std::getenv("RESONF_CATALOG_DIR")) / "catalog_n1_q1.json"));
    auto j = json::parse(slurp(dir / "catalog.json"));
    CHECK(j["catalog"]["n"] == 1);
    // a second run reads the cache and reports the same catalog
    auto again = load_or_build_catalog(1, 1);
    CHECK(to_json(again) == j["catalog"]);
}

TEST_CASE("other subcommands")
{
    CHECK(run_args({"stability-region", "--q", "1", "--m", "3", "--out", "-"}).code == kPass);
    CHECK(run_args({"normal-form", "--edge=1,-1,0", "--out", "-"}).code == kPass);
    CHECK(run_args({"normal-form", "--sites", kGeneric, "--window", "30", "--out", "-"}).code == kPass);
    CHECK(run_args({"realize", "--sites", kGeneric, "--out", "-"}).code == kPass);
    auto s = run_args({"arithmetic-search", "--m", "2", "--radius", "5", "--out", "-"});
    CHECK(s.code == kPass);
    CHECK(json::parse(s.out)["reverify"]["pass"] == true);
}

TEST_CASE("the installed binary honours the exit codes")
{
    const char* bin = std::getenv("RESONF_CLI");
    if (!bin) {
        MESSAGE("RESONF_CLI not set, skipping binary check");
        return;
    }
    auto sys = [&](const std::string& args) {
        int st = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(st);
    };
    CHECK(sys("no-such-command") == 2);
    CHECK(sys(std::string("audit --sites '") + kGeneric + "' --window 40 --out -") == 0);
    CHECK(sys("check-genericity --sites '1,0;2,0;3,0' --out -") == 1);
}
