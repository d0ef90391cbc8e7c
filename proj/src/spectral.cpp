#include "lmindep/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "lmindep/error.hpp"

namespace lmindep::spectral {

namespace {

// fftw planning is not thread-safe; execution with new-array functions is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* data;
};

struct BackwardPlan {
    explicit BackwardPlan(std::size_t n) : buf(n) {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(n), buf.data, buf.data, FFTW_BACKWARD, FFTW_ESTIMATE));
    }
    FftwBuffer buf;
    PlanPtr plan;
};

BackwardPlan& plan_for(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<BackwardPlan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<BackwardPlan>(n);
    return *slot;
}

}  // namespace

SeriesPair::SeriesPair(std::vector<double> x1, std::vector<double> x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
    if (x1_.size() != x2_.size())
        fail(ErrorKind::InvalidInput, "series lengths differ: " + std::to_string(x1_.size()) + " vs " +
                                          std::to_string(x2_.size()));
    if (x1_.size() < 8) fail(ErrorKind::InvalidInput, "series length must be at least 8");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(x1_.begin(), x1_.end(), finite) || !std::all_of(x2_.begin(), x2_.end(), finite))
        fail(ErrorKind::InvalidInput, "series contain non-finite values");
}

double KernelSpec::operator()(double x) const noexcept {
    const double a = std::abs(x);
    if (!(a < 1.0)) return 0.0;
    switch (kind) {
        case KernelKind::Bartlett:
            return 1.0 - a;
        case KernelKind::Tukey:
            return 0.5 * (1.0 + std::cos(kPi * a));
        case KernelKind::Parzen:
            if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
            return 2.0 * (1.0 - a) * (1.0 - a) * (1.0 - a);
    }
    return 0.0;
}

std::string_view KernelSpec::name() const noexcept {
    switch (kind) {
        case KernelKind::Bartlett: return "BAR";
        case KernelKind::Tukey: return "TUK";
        case KernelKind::Parzen: return "PAR";
    }
    return "?";
}

KernelSpec parse_kernel(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "bar" || s == "bartlett") return {KernelKind::Bartlett};
    if (s == "tuk" || s == "tukey") return {KernelKind::Tukey};
    if (s == "par" || s == "parzen") return {KernelKind::Parzen};
    fail(ErrorKind::Configuration, "unknown kernel '" + std::string(name) + "'");
}

SpectralConstants spectral_constants(KernelSpec k) noexcept {
    switch (k.kind) {
        case KernelKind::Bartlett: return {2.0 / 3.0, 2.0 / 5.0};
        case KernelKind::Tukey: return {3.0 / 4.0, 35.0 / 64.0};
        case KernelKind::Parzen: return {151.0 / 280.0, 122559.0 / 320320.0};
    }
    return {0.0, 0.0};
}

WindowWeights::WindowWeights(KernelSpec kernel, std::size_t bandwidth)
    : kernel_(kernel), bandwidth_(bandwidth), sq_(2 * bandwidth + 1) {
    const long b = static_cast<long>(bandwidth);
    for (long h = -b; h <= b; ++h) {
        const double k = lag_weight(h);
        sq_[static_cast<std::size_t>(h + b)] = k * k;
    }
}

double WindowWeights::lag_weight(long h) const noexcept {
    const long b = static_cast<long>(bandwidth_);
    if (h < -b || h > b) return 0.0;
    if (b == 0) return 1.0;
    return kernel_(static_cast<double>(h) / static_cast<double>(b));
}

double WindowWeights::squared_lag_weight(long h) const noexcept {
    const long b = static_cast<long>(bandwidth_);
    if (h < -b || h > b) return 0.0;
    return sq_[static_cast<std::size_t>(h + b)];
}

std::vector<cdouble> backward_fft(std::span<const cdouble> in) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    auto& p = plan_for(n);
    auto* buf = reinterpret_cast<cdouble*>(p.buf.data);
    std::copy(in.begin(), in.end(), buf);
    fftw_execute(p.plan.get());
    return {buf, buf + n};
}

std::vector<cdouble> dft_at_fourier_freqs(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) fail(ErrorKind::InvalidInput, "DFT needs at least 2 observations");
    if (!std::all_of(series.begin(), series.end(), [](double v) { return std::isfinite(v); }))
        fail(ErrorKind::InvalidInput, "DFT input contains non-finite values");

    std::vector<cdouble> z(series.begin(), series.end());
    auto w = backward_fft(z);
    // The sum starts at t = 1, so each term carries an extra e^{i lambda_j}.
    const double scale = 1.0 / std::sqrt(kTwoPi * static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) w[j] *= std::polar(scale, fourier_freq(j, n));
    return w;
}

std::vector<double> periodogram(std::span<const double> series) {
    const auto w = dft_at_fourier_freqs(series);
    std::vector<double> out(w.size());
    std::transform(w.begin(), w.end(), out.begin(), [](cdouble c) { return std::norm(c); });
    return out;
}

PeriodogramSet periodograms(const SeriesPair& pair) {
    PeriodogramSet ps;
    const std::size_t n = pair.n();
    ps.w1 = dft_at_fourier_freqs(pair.x1());
    ps.w2 = dft_at_fourier_freqs(pair.x2());
    ps.i11.resize(n);
    ps.i22.resize(n);
    ps.i12.resize(n);
    ps.freqs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        ps.i11[j] = std::norm(ps.w1[j]);
        ps.i22[j] = std::norm(ps.w2[j]);
        ps.i12[j] = ps.w1[j] * std::conj(ps.w2[j]);
        ps.freqs[j] = fourier_freq(j, n);
    }
    return ps;
}

std::size_t bandwidth(double exponent, std::size_t n) {
    if (n < 8) fail(ErrorKind::Configuration, "bandwidth rule needs n >= 8");
    if (!std::isfinite(exponent)) fail(ErrorKind::Configuration, "bandwidth exponent must be finite");
    const double raw = std::floor(3.0 * std::pow(static_cast<double>(n), exponent));
    if (raw < 1.0 || raw >= static_cast<double>(n))
        fail(ErrorKind::Configuration, "bandwidth " + std::to_string(raw) + " outside [1, n) for n = " +
                                           std::to_string(n));
    return static_cast<std::size_t>(raw);
}

double spectral_window(const WindowWeights& w, double lambda) {
    // W is real because K is even.
    const long b = static_cast<long>(w.bandwidth());
    double acc = 0.0;
    for (long h = -b; h <= b; ++h) acc += w.lag_weight(h) * std::cos(static_cast<double>(h) * lambda);
    return acc / kTwoPi;
}

double lambda_n(const WindowWeights& w, double lambda) {
    const long b = static_cast<long>(w.bandwidth());
    double acc = 0.0;
    for (long h = -b; h <= b; ++h) acc += w.squared_lag_weight(h) * std::cos(static_cast<double>(h) * lambda);
    return acc;
}

IdentityCheck window_sum_identity_check(const WindowWeights& w, std::size_t n, std::size_t j) {
    double lhs = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        lhs += spectral_window(w, kTwoPi * (static_cast<double>(l) - static_cast<double>(j)) / static_cast<double>(n));
    }
    return {lhs, static_cast<double>(n) / kTwoPi};
}

IdentityCheck window_product_identity_check(const WindowWeights& w, std::size_t n, std::size_t j, std::size_t jp) {
    const double nn = static_cast<double>(n);
    double lhs = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        const double dl = static_cast<double>(l);
        lhs += spectral_window(w, kTwoPi * (dl - static_cast<double>(j)) / nn) *
               spectral_window(w, kTwoPi * (dl - static_cast<double>(jp)) / nn);
    }
    const double rhs =
        nn * lambda_n(w, kTwoPi * (static_cast<double>(j) - static_cast<double>(jp)) / nn) / (kTwoPi * kTwoPi);
    return {lhs, rhs};
}

}  // namespace lmindep::spectral
