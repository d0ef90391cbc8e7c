#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lmindep/farima.hpp"

namespace lmindep::whittle {

/// Estimated spectral model for one series. `params` holds the FARIMA or FAR estimate.
struct WhittleFit {
    std::variant<farima::FarimaParams, farima::FarParams> params;
    double sigma2 = 0.0;     ///< profiled innovation variance
    double objective = 0.0;  ///< profiled Whittle objective at the estimate
    bool converged = false;
    std::size_t iterations = 0;

    [[nodiscard]] double d() const;
    /// Unit-variance density on lambda_j, j = 1..n-1.
    [[nodiscard]] std::vector<double> density_on_grid(std::size_t n) const;
};

/// Profiled objective log sigma2(shape) + mean log f*(lambda_j), lower is better.
/// `log_f` and `periodogram` are indexed j = 1..n-1 (length n-1).
/// Returns +inf when any density value is non-finite.
[[nodiscard]] double whittle_objective(std::span<const double> log_f, std::span<const double> periodogram,
                                       double* sigma2_out = nullptr);

/// Convenience form evaluating the objective for a parameter record on the full periodogram (j = 0..n-1).
[[nodiscard]] double whittle_objective(const farima::FarimaParams& p, std::span<const double> full_periodogram);
[[nodiscard]] double whittle_objective(const farima::FarParams& p, std::span<const double> full_periodogram);

struct FitOptions {
    std::size_t max_evaluations = 4000;
    double x_tolerance = 1e-9;
    double f_tolerance = 1e-13;
};

[[nodiscard]] WhittleFit fit_whittle_farima(std::span<const double> series, farima::FarimaVariant variant,
                                            const FitOptions& opts = {});
[[nodiscard]] WhittleFit fit_whittle_far(std::span<const double> series, std::size_t p, const FitOptions& opts = {});

/// Same fits from a precomputed periodogram (j = 0..n-1), avoiding a second DFT.
[[nodiscard]] WhittleFit fit_whittle_farima_periodogram(std::span<const double> periodogram,
                                                        farima::FarimaVariant variant, const FitOptions& opts = {});
[[nodiscard]] WhittleFit fit_whittle_far_periodogram(std::span<const double> periodogram, std::size_t p,
                                                     const FitOptions& opts = {});

/// 3 for n = 64, 5 for n = 128, otherwise round(1.2 log n).
[[nodiscard]] std::size_t choose_far_order(std::size_t n);

}  // namespace lmindep::whittle
