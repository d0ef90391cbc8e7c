#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lmindep::farima {

/// Bound on |d| used by the optimizers.
inline constexpr double kMemoryBound = 0.49;

enum class FarimaVariant { Ar1, Ma1 };  // FARIMA(1,d,0), FARIMA(0,d,1)

/// FARIMA(1,d,0) with AR coefficient phi, or FARIMA(0,d,1) with MA coefficient psi.
struct FarimaParams {
    FarimaVariant variant = FarimaVariant::Ar1;
    double d = 0.0;
    double coef = 0.0;  ///< phi for Ar1, psi for Ma1

    void validate() const;
};

/// FAR(p,d): (1-B)^d (1 + a_1 B + ... + a_p B^p) X_t = e_t.
struct FarParams {
    double d = 0.0;
    std::vector<double> a;

    [[nodiscard]] std::size_t order() const noexcept { return a.size(); }
    void validate() const;
};

/// Coefficients pi_0..pi_m of (1-B)^delta.
struct FracDiffFilter {
    double exponent = 0.0;
    std::vector<double> coeffs;

    [[nodiscard]] std::size_t length() const noexcept { return coeffs.size() - 1; }
};

[[nodiscard]] FracDiffFilter frac_diff_coeffs(double delta, std::size_t m);

/// Unit innovation variance spectral densities. lambda = 0 is rejected when d >= 0.
[[nodiscard]] double farima_spectral_density(const FarimaParams& p, double lambda);
[[nodiscard]] double far_spectral_density(const FarParams& p, double lambda);

[[nodiscard]] FarParams to_far(const FarimaParams& p);

/// True when 1 + sum a_j x^j has no zero with |x| <= radius.
[[nodiscard]] bool ar_polynomial_is_stable(std::span<const double> a, double radius = 1.0);

/// Log-density evaluation on lambda_j = 2 pi j / n, j = 1..n-1, with per-grid trig caches.
class DensityGrid {
public:
    DensityGrid(std::size_t n, std::size_t max_order);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_ - 1; }

    /// out[j-1] = log f*(lambda_j). Returns false when any value is non-finite.
    bool log_density(const FarimaParams& p, std::span<double> out) const;
    bool log_density(const FarParams& p, std::span<double> out) const;

    [[nodiscard]] std::vector<double> density(const FarimaParams& p) const;
    [[nodiscard]] std::vector<double> density(const FarParams& p) const;

private:
    std::size_t n_;
    std::size_t max_order_;
    std::vector<double> log_abs_diff_sq_;  // log |1 - e^{i lambda_j}|^2
    std::vector<double> cos_;               // cos(k lambda_j), row-major [j][k], k = 0..max_order
    std::vector<double> sin_;
};

}  // namespace lmindep::farima
