#include "lmindep/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lmindep/error.hpp"

namespace lmindep::sim {

namespace {

constexpr std::uint64_t kStreamU = 0;
constexpr std::uint64_t kStreamE = 1;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<double> draw(std::size_t count, InnovationDist dist, std::mt19937_64& eng) {
    std::vector<double> out(count);
    if (dist == InnovationDist::GaussianUnit) {
        std::normal_distribution<double> nd(0.0, 1.0);
        for (auto& v : out) v = nd(eng);
    } else {
        std::student_t_distribution<double> td(5.0);
        const double scale = std::sqrt(3.0 / 5.0);
        for (auto& v : out) v = scale * td(eng);
    }
    return out;
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t replication, std::uint64_t stream) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(replication + 0x632BE59BD9B4E019ULL));
    const std::uint64_t c = splitmix64(b ^ splitmix64(stream + 0x8CB92BA72F3D8DD7ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t replication) noexcept {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(replication ^ 0xD1B54A32D192ED03ULL));
}

std::string_view dist_name(InnovationDist d) noexcept {
    return d == InnovationDist::GaussianUnit ? "gauss" : "t5";
}

InnovationDist parse_dist(std::string_view name) {
    if (name == "gauss" || name == "gaussian") return InnovationDist::GaussianUnit;
    if (name == "t5") return InnovationDist::StudentT5Standardized;
    fail(ErrorKind::Configuration, "unknown innovation distribution '" + std::string(name) + "'");
}

Innovations gen_innovations(std::size_t n_total, const InnovationSpec& spec) {
    if (n_total == 0) fail(ErrorKind::InvalidSpec, "innovation length must be positive");
    double sum_sq = 0.0;
    int max_lag = 0;
    for (const auto& [lag, rho] : spec.cross_corr) {
        if (lag < 0) fail(ErrorKind::InvalidSpec, "cross-correlation lags must be nonnegative");
        if (!(std::abs(rho) < 1.0)) fail(ErrorKind::InvalidSpec, "cross-correlations must lie in (-1, 1)");
        sum_sq += rho * rho;
        max_lag = std::max(max_lag, lag);
    }
    if (!(sum_sq < 1.0)) fail(ErrorKind::InvalidSpec, "sum of squared cross-correlations must be below 1");

    StreamRng ru(spec.seed, 0, kStreamU);
    StreamRng re(spec.seed, 0, kStreamE);
    const std::size_t lead = static_cast<std::size_t>(max_lag);
    auto u_ext = draw(n_total + lead, spec.dist, ru.engine());
    auto e = draw(n_total, spec.dist, re.engine());

    Innovations out;
    out.u.assign(u_ext.begin() + static_cast<std::ptrdiff_t>(lead), u_ext.end());
    if (spec.cross_corr.empty()) {
        out.v = std::move(e);
        return out;
    }
    const double noise = std::sqrt(1.0 - sum_sq);
    out.v.resize(n_total);
    for (std::size_t t = 0; t < n_total; ++t) {
        double acc = noise * e[t];
        for (const auto& [lag, rho] : spec.cross_corr) acc += rho * u_ext[t + lead - static_cast<std::size_t>(lag)];
        out.v[t] = acc;
    }
    return out;
}

CrossCorrMap alternative_corr(int which) {
    switch (which) {
        case 0: return {};
        case 1: return {{0, 0.05}};
        case 2: {
            CrossCorrMap m{{0, 0.05}};
            for (int j = 1; j <= 8; ++j) {
                const double pj = 3.14159265358979323846 * j;
                m[j] = std::sin(0.05 * pj) / pj;
            }
            return m;
        }
        case 3: return {{3, 0.05}};
        default: fail(ErrorKind::Configuration, "alternative must be 0, 1, 2 or 3");
    }
}

farima::FarimaParams BranchModel::as_farima() const {
    return {core == CoreKind::Ar1 ? farima::FarimaVariant::Ar1 : farima::FarimaVariant::Ma1, d, coef};
}

DataModel DataModel::model7() {
    return {ModelKind::Model7, {BranchModel{0.2, CoreKind::Ar1, 0.5}, BranchModel{0.4, CoreKind::Ar1, 0.5}}};
}

DataModel DataModel::model8() {
    return {ModelKind::Model8, {BranchModel{-0.2, CoreKind::Ma1, 0.5}, BranchModel{-0.4, CoreKind::Ma1, 0.5}}};
}

DataModel DataModel::custom(BranchModel b1, BranchModel b2) { return {ModelKind::Custom, {b1, b2}}; }

std::string_view model_name(ModelKind k) noexcept {
    switch (k) {
        case ModelKind::Model7: return "ar1";
        case ModelKind::Model8: return "ma1";
        case ModelKind::Custom: return "custom";
    }
    return "?";
}

DataModel parse_model(std::string_view name) {
    if (name == "ar1" || name == "model7" || name == "7") return DataModel::model7();
    if (name == "ma1" || name == "model8" || name == "8") return DataModel::model8();
    fail(ErrorKind::Configuration, "unknown data model '" + std::string(name) + "' (expected ar1 or ma1)");
}

std::vector<double> filter_branch(const BranchModel& branch, std::span<const double> innovations, std::size_t n,
                                  const SimConfig& cfg) {
    const std::size_t total = cfg.burn_in + 1 + n;  // t = -burn_in..n
    if (innovations.size() != total) fail(ErrorKind::InvalidInput, "innovation length does not match the timeline");
    if (cfg.discard + cfg.filter_lags > cfg.burn_in + 1)
        fail(ErrorKind::Configuration, "burn-in too short for the discard and filter lengths");

    std::vector<double> core(total);
    if (branch.core == CoreKind::Ar1) {
        double prev = 0.0;
        for (std::size_t i = 0; i < total; ++i) prev = core[i] = branch.coef * prev + innovations[i];
    } else {
        double prev = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            core[i] = innovations[i] + branch.coef * prev;
            prev = innovations[i];
        }
    }

    std::vector<double> out(n);
    if (branch.d == 0.0) {
        std::copy_n(core.begin() + static_cast<std::ptrdiff_t>(cfg.burn_in + 1), n, out.begin());
        return out;
    }
    // X = (1-B)^{-d} core, truncated after filter_lags lags; only core values from index `discard` on are read.
    const auto psi = farima::frac_diff_coeffs(-branch.d, cfg.filter_lags).coeffs;
    for (std::size_t t = 1; t <= n; ++t) {
        const std::size_t i = cfg.burn_in + t;
        double acc = 0.0;
        for (std::size_t j = 0; j <= cfg.filter_lags; ++j) acc += psi[j] * core[i - j];
        out[t - 1] = acc;
    }
    return out;
}

SimPath simulate_pair(const DataModel& model, std::size_t n, const InnovationSpec& innovations, const SimConfig& cfg) {
    if (n < 8 || n > 1024) fail(ErrorKind::Configuration, "simulated length must lie in [8, 1024]");
    const auto inn = gen_innovations(cfg.burn_in + 1 + n, innovations);
    SimPath path;
    path.x1 = filter_branch(model.branches[0], inn.u, n, cfg);
    path.x2 = filter_branch(model.branches[1], inn.v, n, cfg);
    path.model = model;
    path.innovations = innovations;
    return path;
}

}  // namespace lmindep::sim
