#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace lmindep::spectral {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Two real series of equal length n >= 8 with finite values.
class SeriesPair {
public:
    SeriesPair(std::vector<double> x1, std::vector<double> x2);

    [[nodiscard]] std::span<const double> x1() const noexcept { return x1_; }
    [[nodiscard]] std::span<const double> x2() const noexcept { return x2_; }
    [[nodiscard]] std::size_t n() const noexcept { return x1_.size(); }

private:
    std::vector<double> x1_;
    std::vector<double> x2_;
};

/// DFT values, auto- and cross-periodograms of a pair on lambda_j = 2 pi j / n, j = 0..n-1.
struct PeriodogramSet {
    std::vector<cdouble> w1;
    std::vector<cdouble> w2;
    std::vector<double> i11;
    std::vector<double> i22;
    std::vector<cdouble> i12;
    std::vector<double> freqs;

    [[nodiscard]] std::size_t n() const noexcept { return freqs.size(); }
};

enum class KernelKind { Bartlett, Tukey, Parzen };

/// Lag-window kernel with compact support on [-1, 1].
struct KernelSpec {
    KernelKind kind = KernelKind::Bartlett;

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] std::string_view name() const noexcept;  // "BAR", "TUK", "PAR"
};

[[nodiscard]] KernelSpec parse_kernel(std::string_view name);

struct SpectralConstants {
    double sK;  ///< integral of K^2
    double dK;  ///< integral of K^4
};

[[nodiscard]] SpectralConstants spectral_constants(KernelSpec k) noexcept;

/// Squared lag weights K^2(h/B) for h = -B..B.
class WindowWeights {
public:
    WindowWeights(KernelSpec kernel, std::size_t bandwidth);

    [[nodiscard]] KernelSpec kernel() const noexcept { return kernel_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return bandwidth_; }
    [[nodiscard]] double lag_weight(long h) const noexcept;  ///< K(h/B)
    [[nodiscard]] double squared_lag_weight(long h) const noexcept;
    [[nodiscard]] std::span<const double> squared_lag_weights() const noexcept { return sq_; }

private:
    KernelSpec kernel_;
    std::size_t bandwidth_;
    std::vector<double> sq_;  // index h + B
};

/// w(lambda_j) = (2 pi n)^{-1/2} sum_{t=1..n} z_t e^{i t lambda_j}, j = 0..n-1.
[[nodiscard]] std::vector<cdouble> dft_at_fourier_freqs(std::span<const double> series);

[[nodiscard]] PeriodogramSet periodograms(const SeriesPair& pair);

/// Auto-periodogram |w(lambda_j)|^2 for a single series, j = 0..n-1.
[[nodiscard]] std::vector<double> periodogram(std::span<const double> series);

/// floor(3 n^exponent); throws Configuration when the result is not in [1, n).
[[nodiscard]] std::size_t bandwidth(double exponent, std::size_t n);

/// Unnormalized backward transform: out_h = sum_j in_j e^{i h 2 pi j / n}.
[[nodiscard]] std::vector<cdouble> backward_fft(std::span<const cdouble> in);

/// W(lambda) = (2 pi)^{-1} sum_{|h|<=B} K(h/B) e^{-i h lambda}. Dense evaluation, test oracle only.
[[nodiscard]] double spectral_window(const WindowWeights& w, double lambda);

/// Lambda_n(lambda) = sum_{|h|<=B} K^2(h/B) e^{i h lambda}.
[[nodiscard]] double lambda_n(const WindowWeights& w, double lambda);

struct IdentityCheck {
    double lhs;
    double rhs;
};

/// sum_{l=0}^{n-1} W(lambda_{l-j}) against n / (2 pi).
[[nodiscard]] IdentityCheck window_sum_identity_check(const WindowWeights& w, std::size_t n, std::size_t j);

/// sum_l W(lambda_{l-j}) W(lambda_{l-j'}) against n Lambda_n(lambda_{j-j'}) / (4 pi^2).
[[nodiscard]] IdentityCheck window_product_identity_check(const WindowWeights& w, std::size_t n, std::size_t j,
                                                          std::size_t jp);

[[nodiscard]] inline double fourier_freq(std::size_t j, std::size_t n) noexcept {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

}  // namespace lmindep::spectral
