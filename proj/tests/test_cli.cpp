#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "exciton/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = exciton::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

std::vector<std::vector<std::string>> parse_csv(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("hc-spectrum csv") {
    const auto r = cli({"hc-spectrum", "--radius", "1e-3", "--levels", "6"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"radius", "index", "k", "parity", "alpha", "energy"});
    CHECK(rows[2] == std::vector<std::string>{"0.001", "2", "1", "odd", "1", "-0.5"});
    // 17 significant digits
    CHECK(rows[1][5] == "-38.17188748535952");
    CHECK(std::stod(rows[1][4]) == doctest::Approx(0.11444931156394547).epsilon(1e-15));
}

TEST_CASE("determinism") {
    const std::vector<std::string> args{"heff-spectrum", "--radii", "0.2,0.1", "--levels", "3", "--grid-L", "10",
                                        "--format", "json"};
    CHECK(cli(args).out == cli(args).out);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"hc-spectrum", "--levels", "0"}).code == 2);
    CHECK(cli({"hc-spectrum", "--radius", "-1"}).code == 2);
    CHECK(cli({"hc-spectrum", "--bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"hc-spectrum", "--format", "xml"}).code == 2);
    CHECK(cli({"veff-table", "--x-step", "0"}).code == 2);
    CHECK(cli({"hc-spectrum", "--config", "does_not_exist.conf"}).code == 2);
    const auto r = cli({"veff-table", "--radius"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("config file with flag override") {
    const std::string path = temp_path("run.conf");
    {
        std::ofstream f(path);
        f << "# sweep settings\nradius = 0.2\nlevels = 2\nformat = json\n";
    }
    const auto a = cli({"hc-spectrum", "--config", path});
    CHECK(a.code == 0);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["command"] == "hc-spectrum");
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["radius"].get<double>() == 0.2);

    const auto b = cli({"hc-spectrum", "--config", path, "--levels", "4", "--format", "csv"});
    CHECK(b.code == 0);
    CHECK(parse_csv(b.out).size() == 5);

    {
        std::ofstream f(path);
        f << "radius = 0.2\nunknown-key = 3\n";
    }
    CHECK(cli({"hc-spectrum", "--config", path}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("veff-table") {
    const auto r = cli({"veff-table", "--radius", "1"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"x", "v_eff", "y_comparison", "difference"});
    bool found = false;
    for (const auto& row : rows) {
        if (row[0] != "10") continue;
        found = true;
        // the tail decays like x^-3: 9.6e-4 at x = 10
        CHECK(std::stod(row[3]) > 0.0);
        CHECK(std::stod(row[3]) < 1e-3);
    }
    CHECK(found);

    // homogeneity: the r = 2 table at 2x is the r = 1 table at x, halved
    const auto a = parse_csv(cli({"veff-table", "--radius", "1", "--x-min", "0.5", "--x-max", "4"}).out);
    const auto b = parse_csv(cli({"veff-table", "--radius", "2", "--x-min", "1", "--x-max", "8", "--x-step", "1"}).out);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(std::stod(b[i][1]) == doctest::Approx(0.5 * std::stod(a[i][1])).epsilon(1e-13));
}

TEST_CASE("full-spectrum and converge") {
    const auto f = cli({"full-spectrum", "--radius", "0.2", "--mode-cut", "1", "--levels", "2", "--grid-L", "8",
                        "--grid-n", "400"});
    CHECK(f.code == 0);
    CHECK(parse_csv(f.out)[0] ==
          std::vector<std::string>{"radius", "mode_cut", "grid_L", "grid_n", "index", "parity", "energy"});

    const auto one = cli({"converge", "--radius", "0.2", "--levels", "1", "--mode-cut", "1", "--grid-L", "8",
                          "--grid-n", "400"});
    CHECK(one.code == 0);
    CHECK(one.out.find("n/a") != std::string::npos);

    const std::string out = temp_path("converge.json");
    const auto js = cli({"converge", "--radii", "0.3,0.2", "--levels", "2", "--mode-cut", "1", "--grid-L", "8",
                         "--grid-n", "400", "--format", "json", "--out", out});
    CHECK(js.code == 0);
    CHECK(js.out.empty());
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["radii"].size() == 2);
    CHECK(j["verdicts"].size() == 2);
    std::remove(out.c_str());

    CHECK(cli({"converge", "--radii", "0.1,0.2"}).code == 2);
}

TEST_CASE("validate") {
    const auto l = cli({"validate", "--list"});
    CHECK(l.code == 0);
    CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 10);

    const auto ok = cli({"validate", "--criterion", "1", "--criterion", "2"});
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("PASS  1", 0) == 0);

    // fault isolation: a tampered digamma breaks the digamma criteria only
    const auto bad = cli({"validate", "--criterion", "1", "--criterion", "10", "--inject-digamma-bias", "1e-6"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("PASS  1") != std::string::npos);
    CHECK(bad.out.find("FAIL 10") != std::string::npos);
    // the hook is reset afterwards
    CHECK(cli({"validate", "--criterion", "10"}).code == 0);

    CHECK(cli({"validate", "--criterion", "42"}).code == 2);
}

}  // TEST_SUITE
