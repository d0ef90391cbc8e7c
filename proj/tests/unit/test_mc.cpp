#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lmindep/error.hpp"
#include "lmindep/mc.hpp"

using namespace lmindep;
using namespace lmindep::mc;
using spectral::KernelKind;
using test::StatisticKind;

namespace {

McConfig small_config() {
    McConfig cfg;
    cfg.n = 64;
    cfg.reps = 100;
    cfg.seed = 17;
    return cfg;
}

void check_report_bounds(const McReport& r) {
    for (const auto& [key, st] : r.cells) {
        CHECK(st.rejection_pct >= 0.0);
        CHECK(st.rejection_pct <= 100.0);
        CHECK(st.se_pct == doctest::Approx(mc_standard_error_pct(st.rejection_pct, st.valid_reps)));
    }
}

}  // namespace

TEST_CASE("standard error formula") {
    CHECK(mc_standard_error_pct(5.0, 5000) == doctest::Approx(100.0 * std::sqrt(0.05 * 0.95 / 5000)));
    CHECK(mc_standard_error_pct(0.0, 100) == 0.0);
}

TEST_CASE("configuration validation") {
    auto cfg = small_config();
    cfg.reps = 99;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config();
    cfg.levels = {1.5};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config();
    cfg.alternative = 2;
    CHECK_THROWS_AS((void)run_size_experiment(cfg), Error);
    CHECK(small_config().bandwidths() == std::vector<std::size_t>{6, 10, 15});
    CHECK(small_config().effective_far_order() == 3);
}

TEST_CASE("smoke run, determinism across threads, and critical values") {
    auto cfg = small_config();
    const auto scores = collect_scores(cfg);
    CHECK(scores.scores.size() == 2 * 3 * 3);
    for (const auto& [key, v] : scores.scores) CHECK(v.size() == 100);

    const auto size = size_report(cfg, scores);
    CHECK(size.cells.size() == 2 * 3 * 3 * 2);
    check_report_bounds(size);

    cfg.threads = 3;
    const auto threaded = collect_scores(cfg);
    CHECK(threaded.scores == scores.scores);
    cfg.threads = 1;

    const auto cv = critical_values_from(cfg, scores);
    for (const auto& [key, q] : cv.quantiles) {
        if (key.level != 0.05) continue;
        CellKey k10 = key;
        k10.level = 0.10;
        CHECK(q >= cv.quantiles.at(k10));
    }

    // power at the null on its own critical values recovers the nominal level
    const auto self = power_report(cfg, scores, cv);
    for (const auto& [key, st] : self.cells) {
        const double nominal = 100.0 * key.level;
        CHECK(std::abs(st.rejection_pct - nominal) <= 2.0 * mc_standard_error_pct(nominal, st.valid_reps) + 1e-9);
    }

    auto other = cfg;
    other.n = 128;
    CHECK_THROWS_AS((void)power_report(other, scores, cv), Error);
}

TEST_CASE("known-density null quantile approaches the normal one") {
    McConfig cfg;
    cfg.model = sim::DataModel::custom({0.0, sim::CoreKind::Ar1, 0.0}, {0.0, sim::CoreKind::Ar1, 0.0});
    cfg.n = 512;
    cfg.reps = 5000;
    cfg.seed = 3;
    cfg.kernels = {KernelKind::Bartlett};
    cfg.bandwidth_exponents = {0.3};
    cfg.statistics = {StatisticKind::KnownDensity};
    cfg.levels = {0.05};
    const auto cv = empirical_critical_values(cfg);
    REQUIRE(cv.quantiles.size() == 1);
    CHECK(std::abs(cv.quantiles.begin()->second - 1.6448536269514722) <= 0.35);
}

TEST_CASE("table emission and CSV round trip") {
    SUBCASE("empty report renders as gaps") {
        const auto t = emit_table({}, TableLayout::Table1);
        CHECK(t.text.find("--") != std::string::npos);
        CHECK(parse_report_csv(t.csv).empty());
    }
    SUBCASE("Table 1 layout has 12 rows of 6 cells per panel") {
        auto cfg = small_config();
        cfg.reps = 100;
        const auto r = run_size_experiment(cfg);
        const auto t = emit_table({r}, TableLayout::Table1);
        std::size_t data_rows = 0;
        std::istringstream in(t.text);
        for (std::string line; std::getline(in, line);)
            if (line.rfind("   64 ", 0) == 0 || line.rfind("  128 ", 0) == 0) ++data_rows;
        CHECK(data_rows == 24);

        const auto cells = parse_report_csv(t.csv);
        CHECK(cells.size() == r.cells.size());
        for (const auto& c : cells) {
            REQUIRE(r.cells.count(c.key) == 1);
            const auto& st = r.cells.at(c.key);
            CHECK(c.stats.rejection_pct == st.rejection_pct);
            CHECK(c.stats.se_pct == st.se_pct);
            CHECK(c.stats.valid_reps == st.valid_reps);
            CHECK(c.n == 64);
            CHECK(c.table == 1);
        }
    }
    SUBCASE("malformed CSV") {
        CHECK_THROWS_AS((void)parse_report_csv("table,model\n1,ar1\n"), Error);
    }
}

TEST_CASE("published reference values") {
    const CellKey k{StatisticKind::ParametricWhittle, KernelKind::Tukey, 20, 0.05};
    CHECK(published_value(TableLayout::Table1, sim::ModelKind::Model7, 128, k).value() == doctest::Approx(6.70));
    const CellKey g{StatisticKind::FarWhittle, KernelKind::Bartlett, 20, 0.05};
    CHECK(published_value(TableLayout::Table1, sim::ModelKind::Model8, 128, g).value() == doctest::Approx(5.38));
    const CellKey t{StatisticKind::ParametricWhittle, KernelKind::Bartlett, 6, 0.05};
    CHECK(published_value(TableLayout::Table1, sim::ModelKind::Model7, 64, t).value() == doctest::Approx(8.68));
    CHECK(published_value(TableLayout::Table2, sim::ModelKind::Model7, 128,
                          {StatisticKind::ParametricWhittle, KernelKind::Bartlett, 7, 0.05}).value() == doctest::Approx(99.14));
    CHECK(published_value(TableLayout::Table4, sim::ModelKind::Model7, 64,
                          {StatisticKind::ParametricWhittle, KernelKind::Parzen, 6, 0.05}).value() == doctest::Approx(6.74));
    CHECK_FALSE(published_value(TableLayout::Table1, sim::ModelKind::Model7, 100, k).has_value());
}
