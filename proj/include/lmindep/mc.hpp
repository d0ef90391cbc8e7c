#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lmindep/indep_test.hpp"
#include "lmindep/simulate.hpp"
#include "lmindep/spectral.hpp"

namespace lmindep::mc {

struct McConfig {
    sim::DataModel model = sim::DataModel::model7();
    std::size_t n = 128;
    std::size_t reps = 5000;
    std::vector<spectral::KernelKind> kernels{spectral::KernelKind::Bartlett, spectral::KernelKind::Tukey,
                                              spectral::KernelKind::Parzen};
    std::vector<double> bandwidth_exponents{0.2, 0.3, 0.4};
    std::vector<test::StatisticKind> statistics{test::StatisticKind::ParametricWhittle, test::StatisticKind::FarWhittle};
    std::vector<double> levels{0.05, 0.10};
    int alternative = 0;
    std::uint64_t seed = 1;
    sim::InnovationDist innovation_dist = sim::InnovationDist::GaussianUnit;
    std::optional<std::size_t> far_order;  ///< defaults to choose_far_order(n)
    std::size_t threads = 1;
    sim::SimConfig sim;

    void validate() const;
    [[nodiscard]] std::vector<std::size_t> bandwidths() const;
    [[nodiscard]] std::size_t effective_far_order() const;
};

/// (statistic, kernel, bandwidth) identifies one column of standardized scores.
struct ScoreKey {
    test::StatisticKind statistic;
    spectral::KernelKind kernel;
    std::size_t bandwidth;

    auto operator<=>(const ScoreKey&) const = default;
};

struct CellKey {
    test::StatisticKind statistic;
    spectral::KernelKind kernel;
    std::size_t bandwidth;
    double level;

    auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
    double rejection_pct = 0.0;
    double se_pct = 0.0;
    std::size_t valid_reps = 0;
};

/// Standardized scores per replication; NaN marks a replication lost to a degenerate or failed fit.
struct ScoreSet {
    std::map<ScoreKey, std::vector<double>> scores;
    std::map<test::StatisticKind, std::size_t> nonconverged;
    std::map<test::StatisticKind, std::size_t> failed;
    double wall_seconds = 0.0;
};

struct McReport {
    sim::ModelKind model = sim::ModelKind::Model7;
    std::size_t n = 0;
    int alternative = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::size_t critval_reps = 0;  ///< 0 for size experiments
    std::map<CellKey, CellStats> cells;
    std::map<test::StatisticKind, std::size_t> nonconverged;
    std::map<test::StatisticKind, std::size_t> failed;
    double wall_seconds = 0.0;
};

struct CriticalValueTable {
    std::map<CellKey, double> quantiles;
    sim::ModelKind model = sim::ModelKind::Model7;
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

/// 100 sqrt(a (1 - a) / reps) with a the observed relative frequency.
[[nodiscard]] double mc_standard_error_pct(double rejection_pct, std::size_t reps);

/// Simulates every replication and evaluates each configured statistic on it.
[[nodiscard]] ScoreSet collect_scores(const McConfig& cfg);

[[nodiscard]] McReport run_size_experiment(const McConfig& cfg);
[[nodiscard]] McReport size_report(const McConfig& cfg, const ScoreSet& scores);

[[nodiscard]] CriticalValueTable empirical_critical_values(const McConfig& cfg);
[[nodiscard]] CriticalValueTable critical_values_from(const McConfig& cfg, const ScoreSet& null_scores);

/// Size-adjusted power: rejection when the score exceeds the empirical null quantile.
[[nodiscard]] McReport run_power_experiment(const McConfig& cfg, const CriticalValueTable& critvals);
[[nodiscard]] McReport power_report(const McConfig& cfg, const ScoreSet& scores, const CriticalValueTable& critvals);

enum class TableLayout { Table1 = 1, Table2 = 2, Table3 = 3, Table4 = 4 };

struct EmittedTable {
    std::string text;
    std::string csv;
};

/// Paper-style layout (panel per model; rows n x B_n x level; columns BAR/TUK/PAR per statistic).
/// Cells absent from `reports` print as "--".
[[nodiscard]] EmittedTable emit_table(const std::vector<McReport>& reports, TableLayout layout);

struct CsvCell {
    int table = 0;
    sim::ModelKind model = sim::ModelKind::Model7;
    std::size_t n = 0;
    CellKey key{};
    CellStats stats;
};

[[nodiscard]] std::string report_csv(const std::vector<McReport>& reports, TableLayout layout);
[[nodiscard]] std::vector<CsvCell> parse_report_csv(const std::string& csv);

/// Reference values printed in the published tables, keyed by (model, n, cell). Used for comparison output.
[[nodiscard]] std::optional<double> published_value(TableLayout layout, sim::ModelKind model, std::size_t n,
                                                    const CellKey& key);

}  // namespace lmindep::mc
