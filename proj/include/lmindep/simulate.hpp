#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "lmindep/farima.hpp"

namespace lmindep::sim {

/// Engine for one independent stream, derived from (seed, replication, stream tag).
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t replication, std::uint64_t stream);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Per-replication seed: a SplitMix64 mix of the base seed and the replication index.
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t replication) noexcept;

enum class InnovationDist { GaussianUnit, StudentT5Standardized };

[[nodiscard]] std::string_view dist_name(InnovationDist d) noexcept;  // "gauss", "t5"
[[nodiscard]] InnovationDist parse_dist(std::string_view name);

/// rho(j) = Corr(u_{t-j}, v_t) for j >= 0, finitely supported.
using CrossCorrMap = std::map<int, double>;

struct InnovationSpec {
    InnovationDist dist = InnovationDist::GaussianUnit;
    CrossCorrMap cross_corr;
    std::uint64_t seed = 0;
};

struct Innovations {
    std::vector<double> u;
    std::vector<double> v;
};

/// u iid unit variance; v_t = sum_j rho(j) u_{t-j} + sqrt(1 - sum rho^2) e_t with e independent of u.
[[nodiscard]] Innovations gen_innovations(std::size_t n_total, const InnovationSpec& spec);

/// Cross-correlation maps of the three alternatives; 0 gives the empty (null) map.
[[nodiscard]] CrossCorrMap alternative_corr(int which);

enum class CoreKind { Ar1, Ma1 };

/// (1-B)^d X_t = core_t, core an AR(1) or MA(1) filter of the innovations.
struct BranchModel {
    double d = 0.0;
    CoreKind core = CoreKind::Ar1;
    double coef = 0.0;

    [[nodiscard]] farima::FarimaParams as_farima() const;
};

enum class ModelKind { Model7, Model8, Custom };

struct DataModel {
    ModelKind kind = ModelKind::Model7;
    std::array<BranchModel, 2> branches;

    /// (1-B)^0.2 (1-0.5B) X1 = u, (1-B)^0.4 (1-0.5B) X2 = v.
    [[nodiscard]] static DataModel model7();
    /// (1-B)^-0.2 X1 = (1+0.5B) u, (1-B)^-0.4 X2 = (1+0.5B) v.
    [[nodiscard]] static DataModel model8();
    [[nodiscard]] static DataModel custom(BranchModel b1, BranchModel b2);
};

[[nodiscard]] std::string_view model_name(ModelKind k) noexcept;  // "ar1", "ma1", "custom"
[[nodiscard]] DataModel parse_model(std::string_view name);

/// Burn-in bookkeeping: innovations on t = -burn_in..n, the first `discard` core values are
/// dropped, and the fractional filter uses `filter_lags` lags.
struct SimConfig {
    std::size_t burn_in = 4000;
    std::size_t discard = 1000;
    std::size_t filter_lags = 3000;
};

struct SimPath {
    std::vector<double> x1;
    std::vector<double> x2;
    DataModel model;
    InnovationSpec innovations;
};

[[nodiscard]] SimPath simulate_pair(const DataModel& model, std::size_t n, const InnovationSpec& innovations,
                                    const SimConfig& cfg = {});

/// Core series followed by the truncated fractional filter; exposed for single-branch use.
[[nodiscard]] std::vector<double> filter_branch(const BranchModel& branch, std::span<const double> innovations,
                                                std::size_t n, const SimConfig& cfg = {});

}  // namespace lmindep::sim
