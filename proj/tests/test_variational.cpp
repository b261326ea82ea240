#include <random>

#include "doctest.h"
#include "json.hpp"
#include "reference.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/oracle.hpp"
#include "schlogl/variational.hpp"

using namespace schlogl;

namespace {

PauliSum spd_sum(double v, int n_qubits) {
    return decompose(spd_form(build_generator(SchloglSystem::bistable(v, n_trunc_for_qubits(n_qubits)))));
}

double rel_err(double est, double exact) { return std::abs(est - exact) / std::abs(exact); }

}  // namespace

TEST_CASE("lbfgs on rosenbrock") {
    const Objective f = [](std::span<const double> x, std::span<double> g) {
        const double a = 1 - x[0], b = x[1] - x[0] * x[0];
        g[0] = -2 * a - 400 * x[0] * b;
        g[1] = 200 * b;
        return a * a + 100 * b * b;
    };
    OptimizeOptions opt;
    opt.ftol = 0;
    opt.gtol = 1e-9;
    const auto r = minimize_lbfgsb(f, {-1.2, 1.0}, opt);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(int(r.trace.size()) == r.evaluations);
}

TEST_CASE("lbfgs respects the box") {
    const Objective f = [](std::span<const double> x, std::span<double> g) {
        g[0] = 2 * (x[0] - 3);
        return (x[0] - 3) * (x[0] - 3);
    };
    OptimizeOptions opt;
    opt.lower = {-1};
    opt.upper = {1};
    const auto r = minimize_lbfgsb(f, {0.0}, opt);
    CHECK(r.x[0] == doctest::Approx(1.0));
}

TEST_CASE("adam on a quadratic") {
    const Objective f = [](std::span<const double> x, std::span<double> g) {
        g[0] = 2 * (x[0] - 0.5);
        g[1] = 4 * (x[1] + 0.25);
        return (x[0] - 0.5) * (x[0] - 0.5) + 2 * (x[1] + 0.25) * (x[1] + 0.25);
    };
    OptimizeOptions opt;
    opt.max_iters = 3000;
    opt.learning_rate = 0.05;
    const auto r = minimize_adam(f, {2.0, 2.0}, opt);
    CHECK(r.f < 1e-6);
    CHECK(r.evaluations == 3000);
}

TEST_CASE("nan cost is a solver error") {
    const Objective f = [](std::span<const double>, std::span<double> g) {
        g[0] = 0;
        return std::nan("");
    };
    CHECK_THROWS_AS(minimize_lbfgsb(f, {0.0}, {}), SolverError);
}

TEST_CASE("single qubit ground state") {
    const PauliSum p(1, {{1.6, "I"}, {-1.6, "Z"}});
    VQDConfig cfg;
    const auto r = vqe_ground(p, {1, 1, Rotation::RY}, cfg);
    CHECK(std::abs(r.value) < 1e-6);
}

TEST_CASE("identity cost is flat") {
    const PauliSum p(2, {{1.0, "II"}});
    const auto c = build_ansatz({2, 1, Rotation::RY});
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const auto th = initial_parameters(c.n_params(), trial, 0);
        CHECK(expectation(c.run_from_zero(th), p) == doctest::Approx(1.0));
        for (double g : gradient(p, c, th, GradientMode::ParameterShift)) CHECK(std::abs(g) < 1e-14);
    }
}

TEST_CASE("parameter shift agrees with finite differences") {
    std::mt19937_64 rng(41);
    for (int n = 1; n <= 4; ++n) {
        const auto p = decompose(HermitianOperator(ref::random_hermitian(1 << n, rng)));
        const auto c = build_ansatz({n, 2, n % 2 ? Rotation::RY_RZ : Rotation::RY});
        for (int trial = 0; trial < 3; ++trial) {
            auto th = initial_parameters(c.n_params(), 100 + trial, n);
            const auto shift = gradient(p, c, th, GradientMode::ParameterShift);
            const auto cd = gradient(p, c, th, GradientMode::CentralDifference);
            for (int i = 0; i < c.n_params(); ++i) {
                // independent 5-point stencil
                const double h = 1e-3;
                auto e = [&](double d) {
                    auto x = th;
                    x[i] += d;
                    return expectation(c.run_from_zero(x), p);
                };
                const double fd = (-e(2 * h) + 8 * e(h) - 8 * e(-h) + e(-2 * h)) / (12 * h);
                CHECK(std::abs(shift[i] - fd) <= 1e-6);
                CHECK(std::abs(shift[i] - cd[i]) <= 1e-6);
            }
        }
    }
}

TEST_CASE("initial parameters") {
    const auto a = initial_parameters(50, 7, 1);
    CHECK(a == initial_parameters(50, 7, 1));
    CHECK(a != initial_parameters(50, 7, 2));
    CHECK(a != initial_parameters(50, 7, 1, 1));
    for (double x : a) {
        CHECK(x >= -M_PI);
        CHECK(x <= M_PI);
    }
}

TEST_CASE("vqd reproduces the two lowest eigenvalues") {
    for (double v : {1.0, 8.5}) {
        const auto p = spd_sum(v, 2);
        const auto ev = hermitian_eigenvalues(p.to_matrix());
        VQDConfig cfg;
        const auto r = vqd(p, {2, 1, Rotation::RY}, cfg);
        CHECK(std::abs(r.eigenvalue_estimates[0] - ev[0]) < 1e-6);
        CHECK(rel_err(r.eigenvalue_estimates[1], ev[1]) < 1e-4);
        CHECK(r.total_iterations() == r.iters_used[0] + r.iters_used[1]);
        CHECK(std::abs(fidelity(r.states[0], r.states[1])) < 1e-4);
    }
}

TEST_CASE("vqd is deterministic") {
    const auto p = spd_sum(4.0, 2);
    VQDConfig cfg;
    cfg.seed = 9;
    const auto a = vqd(p, {2, 1, Rotation::RY}, cfg);
    const auto b = vqd(p, {2, 1, Rotation::RY}, cfg);
    CHECK(a.iteration_trace == b.iteration_trace);
    CHECK(a.optimal_parameters == b.optimal_parameters);
}

TEST_CASE("vqd-exact0") {
    const auto p = spd_sum(8.5, 2);
    const auto ev = hermitian_eigenvalues(p.to_matrix());
    VQDConfig cfg;
    const auto r = vqd_exact0(p, {2, 1, Rotation::RY}, cfg);
    CHECK(r.analytic_level0);
    CHECK(r.eigenvalue_estimates[0] == 0.0);
    CHECK(r.iters_used[0] == 0);
    CHECK(std::abs(r.eigenvalue_estimates[1] - ev[1]) <= 1e-6 * std::max(1.0, ev[1]));
    std::mt19937_64 rng(2);
    const auto bad = decompose(HermitianOperator(ref::random_hermitian(4, rng)));
    CHECK_THROWS_AS(vqd_exact0(bad, {2, 1, Rotation::RY}, cfg), DomainError);
}

TEST_CASE("adam optimizer option") {
    const PauliSum p(1, {{1.6, "I"}, {-1.6, "Z"}});
    VQDConfig cfg;
    cfg.optimizer = OptimizerKind::Adam;
    cfg.learning_rate = 0.1;
    cfg.max_iters = 1500;
    const auto r = vqe_ground(p, {1, 1, Rotation::RY}, cfg);
    CHECK(std::abs(r.value) < 1e-4);
}

TEST_CASE("report serialization") {
    const auto p = spd_sum(2.0, 2);
    const auto r = vqd(p, {2, 1, Rotation::RY}, VQDConfig{});
    const auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j.at("levels").size() == 2);
    CHECK(j.at("total_iterations") == r.total_iterations());
    const auto csv = trace_to_csv(r);
    CHECK(csv.rfind("level,iteration,cost", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(int(lines) == 1 + r.total_iterations());
}
