#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "primepairs/reports.hpp"
#include "oracles.hpp"

using namespace primepairs;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("run_twin_scan small report", "[reports]") {
    RunConfig cfg;
    cfg.command = Command::twin_scan;
    cfg.p_max = 13;
    cfg.threads = 1;
    std::ostringstream out;
    run_twin_scan(cfg, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    REQUIRE(lines[0] == "p_n,low,high,candidates,twins_found,prediction,ratio");
    const double corr = 1.12292 * 1.12292;
    const double pred7 = (5.0 - 2.0) / 5.0 * 3.0 / corr;
    char row[96];
    std::snprintf(row, sizeof row, "7,25,49,3,2,%.6g,%.6g", pred7, 2.0 / pred7);
    REQUIRE(lines[1] == row);
    REQUIRE(lines[2].rfind("11,81,121,6,2,", 0) == 0);
    REQUIRE(lines[3].rfind("13,121,169,7,2,", 0) == 0);
}

TEST_CASE("run_twin_scan header only below the first window", "[reports]") {
    RunConfig cfg;
    cfg.command = Command::twin_scan;
    cfg.p_max = 5;
    cfg.threads = 1;
    std::ostringstream out;
    run_twin_scan(cfg, out);
    REQUIRE(out.str() == "p_n,low,high,candidates,twins_found,prediction,ratio\n");
}

TEST_CASE("run_twin_scan refuses over-budget requests", "[reports]") {
    RunConfig cfg;
    cfg.p_max = 300001;
    std::ostringstream out;
    REQUIRE_THROWS_WITH(run_twin_scan(cfg, out),
                        Catch::Matchers::ContainsSubstring("budget"));
    REQUIRE(out.str().empty());
}

TEST_CASE("run_predict small report", "[reports]") {
    RunConfig cfg;
    cfg.command = Command::predict;
    cfg.p_max = 13;
    std::ostringstream out;
    run_predict(cfg, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    REQUIRE(lines[0] == "p_n,product_pminus2_over_p,candidates,correction,prediction");
    const double corr = 1.12292 * 1.12292;
    char row[96];
    std::snprintf(row, sizeof row, "7,0.6,3,%.6g,%.6g", corr, 0.6 * 3.0 / corr);
    REQUIRE(lines[1] == row);
    REQUIRE(lines[2].rfind("11,0.428571,6,", 0) == 0);
    REQUIRE(lines[3].rfind("13,0.350649,7,", 0) == 0);

    RunConfig over;
    over.p_max = kPredictBudgetPMax + 1;
    std::ostringstream sink;
    REQUIRE_THROWS_AS(run_predict(over, sink), BudgetExceeded);
}

TEST_CASE("run_polignac small report", "[reports]") {
    RunConfig cfg;
    cfg.command = Command::polignac;
    cfg.low_index = 3;    // p_3 = 5
    cfg.high_index = 25;  // p_25 = 97
    cfg.m_max = 10;
    cfg.extra_ms = {30};
    cfg.threads = 1;
    std::ostringstream out;
    run_polignac(cfg, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 1 + 6 + 4);
    REQUIRE(lines[0] == "m,pairs_m,occurrence_ratio,expected_ratio,quotient");
    for (std::size_t i = 1; i <= 6; ++i) {
        const u64 m = i <= 5 ? 2 * i : 30;
        const u64 pairs = oracles::count_pairs(5, 97, m);
        CAPTURE(i, m);
        REQUIRE(lines[i].rfind(std::to_string(m) + ',' + std::to_string(pairs) + ',', 0) == 0);
    }
    REQUIRE(lines[7].rfind("# min ", 0) == 0);
    REQUIRE(lines[8].rfind("# max ", 0) == 0);
    REQUIRE(lines[9].rfind("# mean ", 0) == 0);
    REQUIRE(lines[10].rfind("# std ", 0) == 0);

    RunConfig four = cfg;
    four.threads = 4;
    std::ostringstream out4;
    run_polignac(four, out4);
    REQUIRE(out4.str() == out.str());
}

TEST_CASE("run_polignac validation", "[reports]") {
    std::ostringstream sink;
    RunConfig bad;
    bad.command = Command::polignac;
    bad.low_index = 2;
    bad.high_index = 25;
    REQUIRE_THROWS_AS(run_polignac(bad, sink), std::invalid_argument);

    RunConfig over;
    over.command = Command::polignac;
    over.low_index = 3;
    over.high_index = kPolignacBudgetHighIndex + 1;
    REQUIRE_THROWS_AS(run_polignac(over, sink), BudgetExceeded);
}

TEST_CASE("run_estimate grids", "[reports]") {
    RunConfig small;
    small.command = Command::estimate;
    small.low_index = 10;
    small.high_index = 20;
    std::ostringstream out;
    run_estimate(small, out);
    auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 12);
    REQUIRE(lines[0] == "n,p_n_estimate,product_estimate,candidates_estimate,predicted_twins");
    REQUIRE(lines[1].rfind("10,", 0) == 0);
    REQUIRE(lines[11].rfind("20,", 0) == 0);

    RunConfig big;
    big.command = Command::estimate;
    big.low_index = 1000;
    big.high_index = 10000000;
    std::ostringstream bout;
    run_estimate(big, bout);
    lines = lines_of(bout.str());
    REQUIRE(lines.size() == 101);
    REQUIRE(lines[1].rfind("1000,", 0) == 0);
    REQUIRE(lines[100].rfind("10000000,", 0) == 0);
    // The predicted counts are strictly increasing along the grid.
    double prev = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto last_comma = lines[i].rfind(',');
        const double v = std::stod(lines[i].substr(last_comma + 1));
        REQUIRE(v > prev);
        prev = v;
    }

    RunConfig bad;
    bad.command = Command::estimate;
    bad.low_index = 5;
    bad.high_index = 20;
    std::ostringstream sink;
    REQUIRE_THROWS_AS(run_estimate(bad, sink), std::invalid_argument);
}

TEST_CASE("run_command writes files and reports failures", "[reports]") {
    RunConfig cfg;
    cfg.command = Command::estimate;
    cfg.low_index = 10;
    cfg.high_index = 20;
    cfg.out_path = "/tmp/primepairs_test_estimate.csv";
    run_command(cfg);
    std::ifstream in(cfg.out_path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    std::ostringstream direct;
    run_estimate(cfg, direct);
    REQUIRE(content.str() == direct.str());
    std::remove(cfg.out_path.c_str());

    RunConfig bad = cfg;
    bad.out_path = "/nonexistent-dir/primepairs.csv";
    REQUIRE_THROWS_AS(run_command(bad), std::runtime_error);
}
