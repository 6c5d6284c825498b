#include <cstring>

#include "doctest.h"
#include "exciton/report.hpp"
#include "json.hpp"

using namespace exciton;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || std::memcmp(&a, &b, sizeof a) == 0; }

const SpectrumReport& small_report() {
    static const SpectrumReport rep = convergence_report({0.2, 0.1}, 3, GridPolicy{10.0, 800}, 1, 2);
    return rep;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("gap_trend") {
    CHECK(gap_trend({3.0, 2.0, 2.0, 1.0}) == Trend::NonIncreasing);
    CHECK(gap_trend({3.0, 2.0, 2.5}) == Trend::Increasing);
    CHECK(gap_trend({3.0}) == Trend::NotApplicable);
    CHECK(gap_trend({std::nan(""), 1.0}) == Trend::NotApplicable);
    CHECK(gap_trend({2.0, std::nan(""), 1.0}) == Trend::NonIncreasing);
    for (Trend t : {Trend::NonIncreasing, Trend::Increasing, Trend::NotApplicable})
        CHECK(trend_from_string(to_string(t)) == t);
}

TEST_CASE("grid policy") {
    const Radius r(0.1);
    CHECK(grid_1d(r, {}).size() == default_grid(r).size());
    const auto g = grid_1d(r, {20.0, 0});
    CHECK(g.half_length() == 20.0);
    CHECK(g.spacing() == doctest::Approx(default_grid(r).spacing()).epsilon(1e-3));
    CHECK(grid_2d(r, {0.0, 77}).size() == 77);
    CHECK_THROWS_AS(grid_1d(r, {-1.0, 0}), DomainError);
}

TEST_CASE("convergence report content") {
    const auto& rep = small_report();
    REQUIRE(rep.records.size() == 2);
    CHECK(rep.records[0].radius == 0.2);
    CHECK(rep.records[1].radius == 0.1);
    for (const auto& rec : rep.records) {
        REQUIRE(rec.rows.size() == 3);
        CHECK(rec.rows[0].parity == Parity::Even);
        for (const auto& row : rec.rows) {
            if (row.parity == Parity::Odd) CHECK(row.hc == -0.5 / 1.0);
            CHECK(row.gap_eff_c == doctest::Approx(std::abs(row.heff - row.hc)));
        }
        CHECK(rec.full.front().energy <= rec.heff.front().energy + 1e-12);
    }
    REQUIRE(rep.verdicts.size() == 3);
    CHECK(rep.verdicts[0].level == 1);
}

TEST_CASE("json round trip is lossless") {
    const auto& rep = small_report();
    const std::string text = report_to_json(rep);
    const auto back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    REQUIRE(back.records.size() == rep.records.size());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const auto &a = rep.records[i], &b = back.records[i];
        CHECK(same(a.radius, b.radius));
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t j = 0; j < a.rows.size(); ++j) {
            CHECK(same(a.rows[j].hc, b.rows[j].hc));
            CHECK(same(a.rows[j].heff, b.rows[j].heff));
            CHECK(same(a.rows[j].full, b.rows[j].full));
            CHECK(same(a.rows[j].gap_full_c, b.rows[j].gap_full_c));
        }
        for (std::size_t j = 0; j < a.hc.size(); ++j) CHECK(same(a.hc[j].alpha, b.hc[j].alpha));
    }
    // parses as plain JSON with the documented top-level fields
    const auto j = nlohmann::json::parse(text);
    CHECK(j.contains("levels"));
    CHECK(j.contains("mode_cut"));
    CHECK(j.contains("radii"));
    CHECK(j.contains("verdicts"));
    CHECK_THROWS_AS(report_from_json("{not json"), DomainError);
    CHECK_THROWS_AS(report_from_json("{\"levels\": 1}"), DomainError);
}

TEST_CASE("csv layout") {
    const std::string csv = report_to_csv(small_report());
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "radius,level,parity,hc_energy,heff_energy,full_energy,gap_eff_c,gap_full_eff,gap_full_c,"
          "trend_eff_c,trend_full_eff,trend_full_c");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
}

TEST_CASE("sweep validation") {
    CHECK_THROWS_AS(convergence_report({0.1, 0.2}, 1, {}, 1), DomainError);
    CHECK_THROWS_AS(convergence_report({}, 1, {}, 1), DomainError);
    CHECK_THROWS_AS(convergence_report({0.1}, 0, {}, 1), DomainError);
    const auto single = convergence_report({0.2}, 1, GridPolicy{8.0, 400}, 1);
    CHECK(single.verdicts.at(0).eff_c == Trend::NotApplicable);
}

TEST_CASE("thread count does not change the result") {
    const auto a = convergence_report({0.3, 0.2, 0.15}, 2, GridPolicy{8.0, 400}, 1, 1);
    const auto b = convergence_report({0.3, 0.2, 0.15}, 2, GridPolicy{8.0, 400}, 1, 3);
    CHECK(report_to_json(a) == report_to_json(b));
}

}  // TEST_SUITE
