#include "lmindep/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lmindep::optim {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts) {
    const std::size_t dim = start.size();
    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return sanitize(objective(x));
    };

    if (dim == 0) {
        res.x = start;
        res.value = eval(start);
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> simplex(dim + 1, start);
    std::vector<double> values(dim + 1);
    values[0] = eval(start);
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += opts.initial_step;
        values[i + 1] = eval(simplex[i + 1]);
        if (!std::isfinite(values[i + 1])) {
            // Try the opposite direction before giving up on this axis.
            simplex[i + 1][i] = start[i] - opts.initial_step;
            values[i + 1] = eval(simplex[i + 1]);
        }
        if (!std::isfinite(values[i + 1])) {
            simplex[i + 1][i] = start[i] + 0.1 * opts.initial_step;
            values[i + 1] = eval(simplex[i + 1]);
        }
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);

    auto point_along = [&](std::vector<double>& out, const std::vector<double>& worst, double coef) {
        for (std::size_t k = 0; k < dim; ++k) out[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        // Stable sort keeps tie-breaking deterministic.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < dim; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
        }
        const double spread = values[worst] - values[best];
        if (std::isfinite(spread) && spread <= opts.f_tolerance && size <= opts.x_tolerance) {
            res.converged = true;
            break;
        }
        if (res.evaluations >= opts.max_evaluations) break;
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);

        point_along(trial, simplex[worst], kReflect);
        const double f_reflect = eval(trial);

        if (f_reflect < values[best]) {
            point_along(trial2, simplex[worst], kExpand);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }

        // Contraction: outside if the reflected point beats the worst, inside otherwise.
        const bool outside = f_reflect < values[worst];
        point_along(trial2, simplex[worst], outside ? kContract : -kContract);
        const double f_contract = eval(trial2);
        if (f_contract < (outside ? f_reflect : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }

        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < dim; ++k)
                simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
            values[i] = eval(simplex[i]);
        }
    }

    const auto it = std::min_element(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(it - values.begin());
    res.x = simplex[idx];
    res.value = values[idx];
    return res;
}

}  // namespace lmindep::optim
