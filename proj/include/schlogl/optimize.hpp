#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace schlogl {

/// Returns f(x) and writes the gradient into grad.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct OptimizeOptions {
    /// Budget in objective evaluations (each one computes cost and gradient).
    int max_iters = 1000;
    double ftol = 1e-9;
    double gtol = 1e-7;
    /// L-BFGS memory.
    int history = 10;
    /// Optional box; empty means unbounded.
    std::vector<double> lower, upper;
    /// Adam step size and moment decays.
    double learning_rate = 0.02;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Adam runs exactly max_iters steps when false.
    bool adam_stop_on_tolerance = false;
};

struct OptimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::string status;
    /// Cost at every evaluation, in order.
    std::vector<double> trace;
};

/// Limited-memory BFGS with projection onto the optional box and a
/// strong-Wolfe line search (Armijo backtracking when the box is active).
OptimizeResult minimize_lbfgsb(const Objective& f, std::vector<double> x0, const OptimizeOptions& opt);

/// Adam descent; returns the best iterate seen.
OptimizeResult minimize_adam(const Objective& f, std::vector<double> x0, const OptimizeOptions& opt);

}  // namespace schlogl
