#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lmindep::optim {

struct NelderMeadOptions {
    std::size_t max_evaluations = 4000;
    double f_tolerance = 1e-12;  ///< spread of simplex values
    double x_tolerance = 1e-9;   ///< max vertex distance from the best vertex
    double initial_step = 0.25;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
};

/// Unconstrained simplex search. The objective may return +inf to reject a point;
/// the start point must evaluate finite. Deterministic for a given objective.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

}  // namespace lmindep::optim
