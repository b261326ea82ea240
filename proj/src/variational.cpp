#include "schlogl/variational.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"
#include "schlogl/csv.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/hermitize.hpp"

namespace schlogl {

namespace {

struct Penalty {
    double beta;
    const StateVector* state;
};

// Cost of one VQD level: energy plus overlap penalties against frozen states.
class LevelCost {
public:
    LevelCost(const PauliSum& p, const Circuit& c, std::vector<Penalty> penalties, GradientMode mode)
        : p_(p), c_(c), penalties_(std::move(penalties)), mode_(mode) {}

    double value(std::span<const double> theta) const {
        const StateVector s = c_.run_from_zero(theta);
        double v = expectation(s, p_);
        for (const auto& pen : penalties_) v += pen.beta * fidelity(*pen.state, s);
        return v;
    }

    double operator()(std::span<const double> theta, std::span<double> grad) const {
        std::vector<double> t(theta.begin(), theta.end());
        if (mode_ == GradientMode::ParameterShift) {
            // Every parameter drives one exp(-i t P / 2) rotation, and the
            // cost is a quadratic form in the state, so the +-pi/2 rule is exact.
            constexpr double shift = std::numbers::pi / 2;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const double orig = t[i];
                t[i] = orig + shift;
                const double plus = value(t);
                t[i] = orig - shift;
                const double minus = value(t);
                t[i] = orig;
                grad[i] = 0.5 * (plus - minus);
            }
        } else {
            constexpr double h = 1e-5;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const double orig = t[i];
                t[i] = orig + h;
                const double plus = value(t);
                t[i] = orig - h;
                const double minus = value(t);
                t[i] = orig;
                grad[i] = (plus - minus) / (2 * h);
            }
        }
        return value(theta);
    }

private:
    const PauliSum& p_;
    const Circuit& c_;
    std::vector<Penalty> penalties_;
    GradientMode mode_;
};

struct LevelOutcome {
    double energy;
    std::vector<double> params;
    StateVector state;
    std::vector<double> trace;
    int iters;
    bool converged;
};

LevelOutcome optimize_level(const PauliSum& p, const Circuit& c, std::vector<Penalty> penalties,
                            const VQDConfig& cfg, int level) {
    const LevelCost cost(p, c, std::move(penalties), cfg.gradient);
    OptimizeOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.ftol = cfg.ftol;
    opt.gtol = cfg.gtol;
    opt.learning_rate = cfg.learning_rate;
    opt.adam_stop_on_tolerance = true;
    const Objective obj = [&](std::span<const double> x, std::span<double> g) { return cost(x, g); };

    LevelOutcome best{std::numeric_limits<double>::infinity(), {}, StateVector(c.n_qubits()), {}, 0, false};
    double best_cost = std::numeric_limits<double>::infinity();
    int total_iters = 0;
    std::vector<double> trace;
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
        std::vector<double> x0 = initial_parameters(c.n_params(), cfg.seed, level, r);
        const OptimizeResult res = cfg.optimizer == OptimizerKind::QuasiNewtonBounded
                                       ? minimize_lbfgsb(obj, std::move(x0), opt)
                                       : minimize_adam(obj, std::move(x0), opt);
        total_iters += res.evaluations;
        trace.insert(trace.end(), res.trace.begin(), res.trace.end());
        if (res.f < best_cost) {
            best_cost = res.f;
            best.params = res.x;
            best.converged = res.converged;
        }
    }
    best.state = c.run_from_zero(best.params);
    best.energy = expectation(best.state, p);
    best.trace = std::move(trace);
    best.iters = total_iters;
    return best;
}

std::vector<double> resolve_betas(const PauliSum& p, const VQDConfig& cfg) {
    if (cfg.k < 1) throw DomainError("k must be >= 1");
    if (cfg.max_iters < 1) throw DomainError("max_iters must be >= 1");
    if (cfg.betas.empty()) return std::vector<double>(static_cast<std::size_t>(cfg.k - 1), default_beta(p));
    if (static_cast<int>(cfg.betas.size()) != cfg.k - 1) throw DomainError("betas must have k-1 entries");
    return cfg.betas;
}

void check_ansatz(const PauliSum& p, const AnsatzSpec& ansatz) {
    if (p.n_qubits() != ansatz.n_qubits) throw DomainError("ansatz and operator qubit counts differ");
}

}  // namespace

int VQDReport::total_iterations() const {
    int s = 0;
    for (int i : iters_used) s += i;
    return s;
}

double default_beta(const PauliSum& p) { return 2.0 * p.one_norm(); }

std::vector<double> gradient(const PauliSum& p, const Circuit& circuit, std::span<const double> theta,
                             GradientMode mode) {
    const LevelCost cost(p, circuit, {}, mode);
    std::vector<double> g(theta.size());
    cost(theta, g);
    return g;
}

std::vector<double> initial_parameters(int n, std::uint64_t seed, int level, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(rng);
    return x;
}

VQEResult vqe_ground(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg) {
    check_ansatz(p, ansatz);
    const Circuit c = build_ansatz(ansatz);
    LevelOutcome o = optimize_level(p, c, {}, cfg, 0);
    return {o.energy, std::move(o.params), std::move(o.state), o.iters, o.converged, std::move(o.trace)};
}

VQDReport vqd(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg) {
    check_ansatz(p, ansatz);
    if (cfg.init == InitMode::ConstantStateExact) return vqd_exact0(p, ansatz, cfg);
    const std::vector<double> betas = resolve_betas(p, cfg);
    const Circuit c = build_ansatz(ansatz);
    VQDReport r;
    r.states.reserve(static_cast<std::size_t>(cfg.k));
    for (int level = 0; level < cfg.k; ++level) {
        std::vector<Penalty> pens;
        for (int i = 0; i < level; ++i) pens.push_back({betas[static_cast<std::size_t>(i)], &r.states[static_cast<std::size_t>(i)]});
        LevelOutcome o = optimize_level(p, c, std::move(pens), cfg, level);
        r.eigenvalue_estimates.push_back(o.energy);
        r.optimal_parameters.push_back(std::move(o.params));
        r.states.push_back(std::move(o.state));
        r.iteration_trace.push_back(std::move(o.trace));
        r.iters_used.push_back(o.iters);
        r.converged.push_back(o.converged);
    }
    return r;
}

VQDReport vqd_exact0(const PauliSum& p, const AnsatzSpec& ansatz, const VQDConfig& cfg) {
    check_ansatz(p, ansatz);
    const std::vector<double> betas = resolve_betas(p, cfg);
    const StateVector w0 = constant_state(p.n_qubits());
    const double e0 = expectation(w0, p);
    if (std::abs(e0) > 1e-6) {
        throw DomainError("constant state is not a zeromode of this operator (<w0|H|w0> = " +
                          std::to_string(e0) + ")");
    }
    const Circuit c = build_ansatz(ansatz);
    VQDReport r;
    r.analytic_level0 = true;
    r.states.reserve(static_cast<std::size_t>(cfg.k));
    r.eigenvalue_estimates.push_back(0.0);
    r.optimal_parameters.emplace_back();
    r.states.push_back(w0);
    r.iteration_trace.emplace_back();
    r.iters_used.push_back(0);
    r.converged.push_back(true);
    for (int level = 1; level < cfg.k; ++level) {
        std::vector<Penalty> pens;
        for (int i = 0; i < level; ++i) pens.push_back({betas[static_cast<std::size_t>(i)], &r.states[static_cast<std::size_t>(i)]});
        LevelOutcome o = optimize_level(p, c, std::move(pens), cfg, level);
        r.eigenvalue_estimates.push_back(o.energy);
        r.optimal_parameters.push_back(std::move(o.params));
        r.states.push_back(std::move(o.state));
        r.iteration_trace.push_back(std::move(o.trace));
        r.iters_used.push_back(o.iters);
        r.converged.push_back(o.converged);
    }
    return r;
}

std::string report_to_json(const VQDReport& r) {
    nlohmann::json j;
    j["analytic_level0"] = r.analytic_level0;
    j["total_iterations"] = r.total_iterations();
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < r.eigenvalue_estimates.size(); ++i) {
        levels.push_back({{"level", i},
                          {"eigenvalue", r.eigenvalue_estimates[i]},
                          {"parameters", r.optimal_parameters[i]},
                          {"iterations", r.iters_used[i]},
                          {"converged", static_cast<bool>(r.converged[i])},
                          {"trace", r.iteration_trace[i]}});
    }
    j["levels"] = std::move(levels);
    return j.dump(2);
}

std::string trace_to_csv(const VQDReport& r) {
    std::string out = "level,iteration,cost\n";
    for (std::size_t l = 0; l < r.iteration_trace.size(); ++l) {
        for (std::size_t i = 0; i < r.iteration_trace[l].size(); ++i) {
            out += std::to_string(l) + "," + std::to_string(i + 1) + "," + format_double(r.iteration_trace[l][i]) + "\n";
        }
    }
    return out;
}

}  // namespace schlogl
