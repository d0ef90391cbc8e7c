#include "lmindep/farima.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "lmindep/error.hpp"
#include "lmindep/spectral.hpp"

namespace lmindep::farima {

using spectral::kTwoPi;

void FarimaParams::validate() const {
    if (!(std::abs(d) < 0.5)) fail(ErrorKind::InvalidInput, "memory parameter d must lie in (-1/2, 1/2)");
    if (!(std::abs(coef) < 1.0)) fail(ErrorKind::InvalidInput, "ARMA coefficient must satisfy |coef| < 1");
}

void FarParams::validate() const {
    if (!(std::abs(d) < 0.5)) fail(ErrorKind::InvalidInput, "memory parameter d must lie in (-1/2, 1/2)");
    if (!ar_polynomial_is_stable(a)) fail(ErrorKind::SingularModel, "AR polynomial has a zero in the unit disk");
}

FracDiffFilter frac_diff_coeffs(double delta, std::size_t m) {
    if (!(std::abs(delta) <= 1.0)) fail(ErrorKind::InvalidInput, "fractional exponent must satisfy |delta| <= 1");
    FracDiffFilter f;
    f.exponent = delta;
    f.coeffs.resize(m + 1);
    f.coeffs[0] = 1.0;
    for (std::size_t j = 1; j <= m; ++j) {
        const double dj = static_cast<double>(j);
        f.coeffs[j] = f.coeffs[j - 1] * (dj - 1.0 - delta) / dj;
    }
    return f;
}

namespace {

double abs_diff_sq(double lambda, double d) {
    const double h = std::sin(0.5 * std::remainder(lambda, kTwoPi));
    const double s = 4.0 * h * h;
    if (s == 0.0 && d >= 0.0) fail(ErrorKind::Domain, "spectral density evaluated at frequency 0 with d >= 0");
    return s;
}

// |polynomial|^2 below this is treated as a zero on the unit circle.
constexpr double kSingularTol = 1e-24;

}  // namespace

double farima_spectral_density(const FarimaParams& p, double lambda) {
    const double s = abs_diff_sq(lambda, p.d);
    const double c = std::cos(lambda);
    const double memory = s == 0.0 ? 0.0 : std::pow(s, -p.d);
    if (p.variant == FarimaVariant::Ar1) {
        const double ar = 1.0 - 2.0 * p.coef * c + p.coef * p.coef;
        if (ar <= kSingularTol) fail(ErrorKind::SingularModel, "AR(1) polynomial vanishes on the unit circle");
        return memory / (ar * kTwoPi);
    }
    const double ma = 1.0 + 2.0 * p.coef * c + p.coef * p.coef;
    return memory * ma / kTwoPi;
}

double far_spectral_density(const FarParams& p, double lambda) {
    const double s = abs_diff_sq(lambda, p.d);
    std::complex<double> poly = 1.0;
    for (std::size_t j = 0; j < p.a.size(); ++j) poly += p.a[j] * std::polar(1.0, static_cast<double>(j + 1) * lambda);
    const double ar = std::norm(poly);
    if (ar <= kSingularTol) fail(ErrorKind::SingularModel, "AR polynomial vanishes at the evaluation frequency");
    const double memory = s == 0.0 ? 0.0 : std::pow(s, -p.d);
    return memory / (ar * kTwoPi);
}

FarParams to_far(const FarimaParams& p) {
    if (p.variant != FarimaVariant::Ar1) fail(ErrorKind::InvalidInput, "only FARIMA(1,d,0) maps onto FAR(1,d)");
    return FarParams{p.d, {-p.coef}};
}

bool ar_polynomial_is_stable(std::span<const double> a, double radius) {
    // Step-down (Schur-Cohn) recursion on 1 + sum c_j y^j with c_j = a_j radius^j:
    // stable iff every reflection coefficient has modulus < 1.
    const std::size_t p = a.size();
    std::vector<double> phi(p);
    double scale = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
        scale *= radius;
        phi[j] = -a[j] * scale;
        if (!std::isfinite(phi[j])) return false;
    }
    std::vector<double> next(p);
    for (std::size_t k = p; k >= 1; --k) {
        const double kappa = phi[k - 1];
        if (!(std::abs(kappa) < 1.0)) return false;
        const double denom = 1.0 - kappa * kappa;
        for (std::size_t j = 1; j < k; ++j) next[j - 1] = (phi[j - 1] + kappa * phi[k - j - 1]) / denom;
        for (std::size_t j = 1; j < k; ++j) phi[j - 1] = next[j - 1];
    }
    return true;
}

DensityGrid::DensityGrid(std::size_t n, std::size_t max_order)
    : n_(n), max_order_(max_order), log_abs_diff_sq_(n - 1), cos_((n - 1) * (max_order + 1)),
      sin_((n - 1) * (max_order + 1)) {
    if (n < 2) fail(ErrorKind::InvalidInput, "density grid needs n >= 2");
    const std::size_t stride = max_order + 1;
    for (std::size_t j = 1; j < n; ++j) {
        const double lam = spectral::fourier_freq(j, n);
        log_abs_diff_sq_[j - 1] = std::log(4.0) + 2.0 * std::log(std::sin(0.5 * lam));
        for (std::size_t k = 0; k <= max_order; ++k) {
            cos_[(j - 1) * stride + k] = std::cos(static_cast<double>(k) * lam);
            sin_[(j - 1) * stride + k] = std::sin(static_cast<double>(k) * lam);
        }
    }
}

bool DensityGrid::log_density(const FarimaParams& p, std::span<double> out) const {
    const std::size_t stride = max_order_ + 1;
    const double log2pi = std::log(kTwoPi);
    const double sign = p.variant == FarimaVariant::Ar1 ? -1.0 : 1.0;
    const double c2 = p.coef * p.coef;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        const double c = max_order_ >= 1 ? cos_[j * stride + 1] : std::cos(spectral::fourier_freq(j + 1, n_));
        const double core = 1.0 + 2.0 * sign * p.coef * c + c2;
        const double lcore = p.variant == FarimaVariant::Ar1 ? -std::log(core) : std::log(core);
        out[j] = -p.d * log_abs_diff_sq_[j] + lcore - log2pi;
        ok = ok && std::isfinite(out[j]);
    }
    return ok;
}

bool DensityGrid::log_density(const FarParams& p, std::span<double> out) const {
    if (p.order() > max_order_) fail(ErrorKind::InvalidInput, "AR order exceeds density grid capacity");
    const std::size_t stride = max_order_ + 1;
    const double log2pi = std::log(kTwoPi);
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        double re = 1.0;
        double im = 0.0;
        for (std::size_t k = 1; k <= p.order(); ++k) {
            re += p.a[k - 1] * cos_[j * stride + k];
            im += p.a[k - 1] * sin_[j * stride + k];
        }
        out[j] = -p.d * log_abs_diff_sq_[j] - std::log(re * re + im * im) - log2pi;
        ok = ok && std::isfinite(out[j]);
    }
    return ok;
}

std::vector<double> DensityGrid::density(const FarimaParams& p) const {
    std::vector<double> out(size());
    if (!log_density(p, out)) fail(ErrorKind::SingularModel, "spectral density not finite on the Fourier grid");
    for (auto& v : out) v = std::exp(v);
    return out;
}

std::vector<double> DensityGrid::density(const FarParams& p) const {
    std::vector<double> out(size());
    if (!log_density(p, out)) fail(ErrorKind::SingularModel, "spectral density not finite on the Fourier grid");
    for (auto& v : out) v = std::exp(v);
    return out;
}

}  // namespace lmindep::farima
