#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schlogl/circuit.hpp"
#include "schlogl/optimize.hpp"
#include "schlogl/pauli.hpp"

namespace schlogl {

enum class OptimizerKind { QuasiNewtonBounded, Adam };
enum class GradientMode { ParameterShift, CentralDifference };
enum class InitMode { Random, ConstantStateExact };

struct VQDConfig {
    int k = 2;
    /// Deflation weights for levels 0..k-2; empty selects 2 * sum|c_j| for all.
    std::vector<double> betas;
    OptimizerKind optimizer = OptimizerKind::QuasiNewtonBounded;
    int max_iters = 2000;
    GradientMode gradient = GradientMode::ParameterShift;
    std::uint64_t seed = 0;
    InitMode init = InitMode::Random;
    /// Independent random starts per level; the lowest cost wins.
    int restarts = 1;
    double ftol = 1e-9;
    double gtol = 1e-7;
    double learning_rate = 0.02;
};

struct VQDReport {
    std::vector<double> eigenvalue_estimates;
    std::vector<std::vector<double>> optimal_parameters;
    std::vector<StateVector> states;
    /// Cost at every evaluation, per level.
    std::vector<std::vector<double>> iteration_trace;
    std::vector<int> iters_used;
    std::vector<bool> converged;
    /// Level 0 was set to (0, w0) without optimization.
    bool analytic_level0 = false;

    int total_iterations() const;
};

struct VQEResult {
    double value = 0.0;
    std::vector<double> parameters;
    StateVector state{1};
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

double default_beta(const PauliSum& p);

/// Gradient of <psi(theta)|H|psi(theta)>.
std::vector<double> gradient(const PauliSum& p, const Circuit& circuit, std::span<const double> theta,
                             GradientMode mode);

/// Uniform in [-pi, pi], seeded by (seed, level, restart).
std::vector<double> initial_parameters(int n, std::uint64_t seed, int level, int restart = 0);

VQEResult vqe_ground(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg);
VQDReport vqd(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg);
/// Level 0 is the constant state with eigenvalue 0; only level 1 onward is
/// optimized. Refuses operators for which w0 is not a zeromode.
VQDReport vqd_exact0(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg);

std::string report_to_json(const VQDReport& r);
/// Columns level,iteration,cost.
std::string trace_to_csv(const VQDReport& r);

}  // namespace schlogl
