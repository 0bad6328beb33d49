#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string cli = QLMWKB_CLI_PATH;

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + cli + " " + args +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

// fresh scratch directory per test case
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::path("cli_scratch") / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string sub(const std::string& leaf) const { return (dir / leaf).string(); }
};

}  // namespace

TEST_CASE("expand is deterministic and writes a trailing manifest") {
    Scratch s("expand");
    CHECK(run("expand --target wkb --order 8 --out " + s.sub("a")) == 0);
    CHECK(run("expand --target wkb --order 8 --out " + s.sub("b")) == 0);

    const std::string series = slurp(s.dir / "a" / "series.txt");
    CHECK(series == slurp(s.dir / "b" / "series.txt"));
    CHECK(series.find("order 0: (1 i) k") != std::string::npos);
    CHECK(series.find("order 7:") != std::string::npos);

    const json man = slurp_json(s.dir / "a" / "manifest.json");
    CHECK(man.at("command") == "expand");
    CHECK(man.at("config_echo").at("order") == 8);
    const auto& artifacts = man.at("artifact_paths");
    REQUIRE(artifacts.size() == 2);
    CHECK(artifacts.at(0).get<std::string>().find("series.txt") != std::string::npos);
    CHECK(artifacts.at(1).get<std::string>().find("manifest.json") != std::string::npos);
    CHECK(std::regex_match(man.at("timestamp").get<std::string>(),
                           std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
    CHECK(!man.at("engine_version").get<std::string>().empty());
}

TEST_CASE("order caps govern every expansion entry point") {
    Scratch s("caps");
    CHECK(run("expand --target wkb --order 13 --out " + s.sub("x")) == 2);
    CHECK(run("expand --target qlm --iterate 1 --order 11 --out " + s.sub("x")) == 2);
    CHECK(run("expand --target wkb --order 8 --out " + s.sub("x"),
              "QLMWKB_MAX_ORDER=6") == 2);
    CHECK(run("expand --target wkb --order 8 --out " + s.sub("ok"),
              "QLMWKB_MAX_ORDER=8") == 0);
    CHECK(run("expand --target wkb --order 4 --out " + s.sub("x"),
              "QLMWKB_MAX_ORDER=frog") == 2);
}

TEST_CASE("compare reports the doubling law of the matched prefix") {
    Scratch s("compare");
    const int expected[4] = {1, 2, 4, 8};
    for (int p = 0; p < 4; ++p) {
        const std::string out = s.sub("p" + std::to_string(p));
        CHECK(run("compare --iterate " + std::to_string(p) + " --order 8 --out " + out) == 0);
        const json doc = slurp_json(fs::path(out) / "compare.json");
        CHECK(doc.at("match_prefix") == expected[p]);
        CHECK(doc.at("expected_prefix") == expected[p]);
        for (int m = 0; m < 8; ++m) {
            CHECK(doc.at("per_order").at(m).at("equal") == (m < expected[p]));
        }
    }
}

TEST_CASE("solve records the grid, iterates, and sup gaps") {
    Scratch s("solve");
    const std::string out = s.sub("run.json");
    CHECK(run("solve --potential ho1d --energy 2.5 --iterates 3 --z-min 4 "
              "--grid-points 1201 --out " + out) == 0);

    const json doc = slurp_json(out);
    CHECK(doc.at("config").at("z_max") == doctest::Approx(40.0));
    CHECK(doc.at("config").at("potential") == "ho1d");
    REQUIRE(doc.at("grid").size() == 1201);
    CHECK(doc.at("grid").at(0) == doctest::Approx(4.0));
    REQUIRE(doc.at("samples").size() == 4);
    const json& last = doc.at("samples").at(3);
    CHECK(last.at("iterate") == 3);
    // imposed outer boundary value ik(z_max) for E = 5/2
    CHECK(last.at("re").back().get<double>() ==
          doctest::Approx(-std::sqrt(397.5)).epsilon(1e-3));
    REQUIRE(doc.at("sup_diffs").size() == 3);
    CHECK(doc.at("sup_diffs").at(2).get<double>() < doc.at("sup_diffs").at(1).get<double>());

    const json man = slurp_json(s.dir / "manifest.json");
    CHECK(man.at("command") == "solve");
    CHECK(man.at("artifact_paths").at(0).get<std::string>().find("run.json") !=
          std::string::npos);
}

TEST_CASE("spectrum emits wide and long tables plus a json view") {
    Scratch s("spectrum");
    const std::string base = "spectrum --potential hulthen --param lambda=2 --param a=1 "
                             "--levels 2 --out ";
    CHECK(run(base + s.sub("csv")) == 0);
    const std::string wide = slurp(s.dir / "csv" / "table.csv");
    CHECK(wide.find("n,E_exact,E_wkb,E_qlm,abs_err_qlm,abs_err_wkb") == 0);
    CHECK(wide.find("0,-1.125,-7.03125,-1.125,0,5.90625") != std::string::npos);
    const std::string longform = slurp(s.dir / "csv" / "levels.csv");
    CHECK(longform.find("n,method,energy,status") == 0);
    CHECK(longform.find("0,qlm,-1.125,ok") != std::string::npos);
    CHECK(longform.find("1,qlm,0,no_bound_state") != std::string::npos);
    CHECK(longform.find("2,qlm,-0.347222222222222,no_bound_state") != std::string::npos);

    CHECK(run(base + s.sub("js") + " --format json") == 0);
    const json doc = slurp_json(s.dir / "js" / "spectrum.json");
    CHECK(doc.at("bound_state_count") == 1);
    CHECK(doc.at("provenance").at("qlm") == "closed-form");
    CHECK(doc.at("rows").size() == 3);  // levels is the highest index, inclusive

    // barrier-window wells route through the implicit relation
    CHECK(run("spectrum --potential eckart1d --param A=0 --param B=3 --param a=1 "
              "--levels 2 --format json --out " + s.sub("eck")) == 0);
    const json eck = slurp_json(s.dir / "eck" / "spectrum.json");
    CHECK(eck.at("provenance").at("qlm") == "implicit-relation-bisection");
    CHECK(eck.at("rows").size() == 3);
    CHECK(eck.at("rows").at(0).at("qlm").at("energy").get<double>() ==
          doctest::Approx(-0.5).epsilon(1e-10));

    // levels 0 keeps the ground state only
    CHECK(run("spectrum --potential morse --param A=1 --param B=1 --param a=1 "
              "--levels 0 --format json --out " + s.sub("m0")) == 0);
    CHECK(slurp_json(s.dir / "m0" / "spectrum.json").at("rows").size() == 1);
}

TEST_CASE("config file fills defaults and explicit flags win") {
    Scratch s("config");
    std::ofstream(s.dir / "cfg.json") << R"({"order": 4, "target": "wkb"})" << "\n";
    CHECK(run("expand --config " + s.sub("cfg.json") + " --out " + s.sub("a")) == 0);
    const std::string low = slurp(s.dir / "a" / "series.txt");
    CHECK(low.find("order 3:") != std::string::npos);
    CHECK(low.find("order 4:") == std::string::npos);

    CHECK(run("expand --config " + s.sub("cfg.json") + " --order 6 --out " + s.sub("b")) == 0);
    CHECK(slurp(s.dir / "b" / "series.txt").find("order 5:") != std::string::npos);

    std::ofstream(s.dir / "pot.json") << R"({"param": {"lambda": 2, "a": 1}})" << "\n";
    CHECK(run("spectrum --potential hulthen --config " + s.sub("pot.json") +
              " --levels 1 --out " + s.sub("c")) == 0);
    CHECK(slurp(s.dir / "c" / "table.csv").find("-1.125") != std::string::npos);

    std::ofstream(s.dir / "list.json") << "[1, 2]" << "\n";
    CHECK(run("expand --config " + s.sub("list.json") + " --out " + s.sub("d")) == 2);
}

TEST_CASE("verify gates on the built-in criteria") {
    Scratch s("verify");
    CHECK(run("verify --suite formal --out " + s.sub("ok")) == 0);
    const json doc = slurp_json(s.dir / "ok" / "verify.json");
    CHECK(doc.at("all_passed") == true);
    CHECK(doc.at("criteria").size() == 4);

    // a doctored fixture must flip the gate
    const fs::path fx = s.dir / "fixtures";
    fs::create_directories(fx);
    for (const auto& e : fs::directory_iterator(QLMWKB_FIXTURE_SRC)) {
        fs::copy_file(e.path(), fx / e.path().filename());
    }
    std::string golden = slurp(fx / "wkb_series.txt");
    const std::string from = "(-1/2) k^-1 k1";
    const auto at = golden.find(from);
    REQUIRE(at != std::string::npos);
    golden.replace(at, from.size(), "(-1/3) k^-1 k1");
    std::ofstream(fx / "wkb_series.txt") << golden;
    CHECK(run("verify --suite formal --out " + s.sub("bad"),
              "QLMWKB_FIXTURE_DIR=" + fs::absolute(fx).string()) == 1);
}

TEST_CASE("usage failures exit with the usage code") {
    Scratch s("usage");
    CHECK(run("solve --potential ho1d --iterates 2 --out " + s.sub("x")) == 2);
    CHECK(run("spectrum --potential nosuch --out " + s.sub("x")) == 2);
    CHECK(run("spectrum --potential hulthen --param lambda=2 --param a=1 --format yaml "
              "--out " + s.sub("x")) == 2);
    CHECK(run("nosuchcommand") == 2);
    CHECK(run("expand --target qlm --order 6 --out " + s.sub("x")) == 2);
    CHECK(run("spectrum --potential hulthen --param lambda --out " + s.sub("x")) == 2);
}
