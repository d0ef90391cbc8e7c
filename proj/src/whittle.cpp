#include "lmindep/whittle.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "lmindep/error.hpp"
#include "lmindep/nelder_mead.hpp"
#include "lmindep/spectral.hpp"

namespace lmindep::whittle {

using farima::DensityGrid;
using farima::FarimaParams;
using farima::FarimaVariant;
using farima::FarParams;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoefBound = 0.99;
constexpr double kStabilityRadius = 1.01;
constexpr double kStartStep = 0.25;
constexpr double kMemoryStarts[] = {-0.25, 0.0, 0.25};

double to_bounded(double z, double bound) { return bound * std::tanh(z); }
double from_bounded(double x, double bound) { return std::atanh(x / bound); }

FarimaParams farima_from(const std::vector<double>& z, FarimaVariant variant) {
    return FarimaParams{variant, to_bounded(z[0], farima::kMemoryBound), to_bounded(z[1], kCoefBound)};
}

FarParams far_from(const std::vector<double>& z) {
    FarParams p;
    p.d = to_bounded(z[0], farima::kMemoryBound);
    p.a.assign(z.begin() + 1, z.end());
    return p;
}

std::span<const double> nonzero_freqs(std::span<const double> full) { return full.subspan(1); }

void check_periodogram(std::span<const double> periodogram, std::size_t min_n) {
    if (periodogram.size() < min_n)
        fail(ErrorKind::InvalidInput, "Whittle fit needs at least " + std::to_string(min_n) + " observations");
    const auto tail = nonzero_freqs(periodogram);
    if (std::accumulate(tail.begin(), tail.end(), 0.0) <= 0.0)
        fail(ErrorKind::DegenerateInput, "periodogram vanishes at all nonzero frequencies (constant series)");
}

template <typename Params, typename Decode>
WhittleFit run_fit(std::span<const double> periodogram, std::size_t dim, std::size_t grid_order, Decode decode,
                   const FitOptions& opts) {
    const std::size_t n = periodogram.size();
    const DensityGrid grid(n, grid_order);
    const auto tail = nonzero_freqs(periodogram);
    std::vector<double> log_f(n - 1);

    auto objective = [&](const std::vector<double>& z) {
        const Params p = decode(z);
        if constexpr (std::is_same_v<Params, FarParams>) {
            if (!farima::ar_polynomial_is_stable(p.a, kStabilityRadius)) return kInf;
        }
        if (!grid.log_density(p, log_f)) return kInf;
        return whittle_objective(log_f, tail);
    };

    optim::NelderMeadOptions nm;
    nm.max_evaluations = opts.max_evaluations;
    nm.x_tolerance = opts.x_tolerance;
    nm.f_tolerance = opts.f_tolerance;
    nm.initial_step = kStartStep;

    optim::NelderMeadResult best;
    best.value = kInf;
    std::size_t total_iterations = 0;
    for (double d0 : kMemoryStarts) {
        std::vector<double> start(dim, 0.0);
        start[0] = from_bounded(d0, farima::kMemoryBound);
        auto r = optim::nelder_mead(objective, start, nm);
        total_iterations += r.iterations;
        if (r.value < best.value) best = std::move(r);
    }
    if (!std::isfinite(best.value)) fail(ErrorKind::SingularModel, "Whittle objective not finite at any start");

    WhittleFit fit;
    const Params p = decode(best.x);
    grid.log_density(p, log_f);
    double sigma2 = 0.0;
    fit.objective = whittle_objective(log_f, tail, &sigma2);
    fit.sigma2 = sigma2;
    fit.params = p;
    fit.converged = best.converged;
    fit.iterations = total_iterations;
    return fit;
}

}  // namespace

double WhittleFit::d() const {
    return std::visit([](const auto& p) { return p.d; }, params);
}

std::vector<double> WhittleFit::density_on_grid(std::size_t n) const {
    return std::visit(
        [n](const auto& p) {
            std::size_t order = 1;
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, FarParams>) order = std::max<std::size_t>(1, p.order());
            return DensityGrid(n, order).density(p);
        },
        params);
}

double whittle_objective(std::span<const double> log_f, std::span<const double> periodogram, double* sigma2_out) {
    const std::size_t m = log_f.size();
    if (m == 0 || periodogram.size() != m) fail(ErrorKind::InvalidInput, "objective inputs must have equal nonzero length");
    double ratio = 0.0;
    double log_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (!std::isfinite(log_f[j])) return kInf;
        ratio += periodogram[j] * std::exp(-log_f[j]);
        log_sum += log_f[j];
    }
    const double mm = static_cast<double>(m);
    const double sigma2 = ratio / mm;
    if (sigma2_out) *sigma2_out = sigma2;
    const double q = std::log(sigma2) + log_sum / mm;
    return std::isnan(q) ? kInf : q;
}

double whittle_objective(const FarimaParams& p, std::span<const double> full_periodogram) {
    const DensityGrid grid(full_periodogram.size(), 1);
    std::vector<double> log_f(grid.size());
    if (!grid.log_density(p, log_f)) return kInf;
    return whittle_objective(log_f, nonzero_freqs(full_periodogram));
}

double whittle_objective(const FarParams& p, std::span<const double> full_periodogram) {
    const DensityGrid grid(full_periodogram.size(), std::max<std::size_t>(1, p.order()));
    std::vector<double> log_f(grid.size());
    if (!grid.log_density(p, log_f)) return kInf;
    return whittle_objective(log_f, nonzero_freqs(full_periodogram));
}

WhittleFit fit_whittle_farima_periodogram(std::span<const double> periodogram, FarimaVariant variant,
                                          const FitOptions& opts) {
    check_periodogram(periodogram, 32);
    return run_fit<FarimaParams>(
        periodogram, 2, 1, [variant](const std::vector<double>& z) { return farima_from(z, variant); }, opts);
}

WhittleFit fit_whittle_far_periodogram(std::span<const double> periodogram, std::size_t p, const FitOptions& opts) {
    check_periodogram(periodogram, 32);
    if (4 * (p + 1) >= periodogram.size())
        fail(ErrorKind::Configuration, "FAR order too large for the sample size (need p + 1 < n/4)");
    return run_fit<FarParams>(periodogram, p + 1, std::max<std::size_t>(1, p), far_from, opts);
}

WhittleFit fit_whittle_farima(std::span<const double> series, FarimaVariant variant, const FitOptions& opts) {
    if (series.size() < 32) fail(ErrorKind::InvalidInput, "Whittle fit needs at least 32 observations");
    return fit_whittle_farima_periodogram(spectral::periodogram(series), variant, opts);
}

WhittleFit fit_whittle_far(std::span<const double> series, std::size_t p, const FitOptions& opts) {
    if (series.size() < 32) fail(ErrorKind::InvalidInput, "Whittle fit needs at least 32 observations");
    return fit_whittle_far_periodogram(spectral::periodogram(series), p, opts);
}

std::size_t choose_far_order(std::size_t n) {
    if (n == 64) return 3;
    if (n == 128) return 5;
    return static_cast<std::size_t>(std::lround(1.2 * std::log(static_cast<double>(n))));
}

}  // namespace lmindep::whittle
