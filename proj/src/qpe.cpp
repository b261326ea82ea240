#include "schlogl/qpe.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "schlogl/csv.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/kernels.hpp"

namespace schlogl {

double phase_to_eigenvalue(double phase) {
    double x = -2.0 * std::numbers::pi * phase;
    x = std::remainder(x, 2.0 * std::numbers::pi);
    if (x <= -std::numbers::pi) x += 2.0 * std::numbers::pi;
    return x == 0.0 ? 0.0 : x;
}

void append_inverse_qft(Circuit& c, int first, int n) {
    for (int i = 0; i < n / 2; ++i) c.add_swap(first + i, first + n - 1 - i);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            c.add_cphase(first + k, first + j, -std::numbers::pi / std::ldexp(1.0, j - k));
        }
        c.add_h(first + j);
    }
}

QPEResult qpe_run(const UnitaryOperator& u, const QPEConfig& cfg) {
    const int p = cfg.precision_qubits;
    if (p < 1) throw DomainError("precision_qubits must be >= 1");
    if (!is_power_of_two(static_cast<std::size_t>(u.dim()))) throw DomainError("unitary dimension must be a power of two");
    const int q = log2_exact(static_cast<std::size_t>(u.dim()));
    if (cfg.query_qubits != 0 && cfg.query_qubits != q) {
        throw DomainError("query_qubits must equal log2(dim U) = " + std::to_string(q));
    }
    if (p + q > 24) throw DomainError("QPE register too large");
    if (!cfg.noiseless && cfg.shots < 1) throw DomainError("shots must be >= 1");

    const int n = p + q;
    StateVector s(n);
    std::vector<int> query(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) query[static_cast<std::size_t>(i)] = p + i;
    if (cfg.input_state) {
        if (cfg.input_state->n_qubits() != q) throw DomainError("input state does not match the query register");
        std::vector<cplx> amps(std::size_t{1} << n, cplx(0, 0));
        for (std::size_t i = 0; i < cfg.input_state->size(); ++i) amps[i << p] = (*cfg.input_state)[i];
        s = StateVector(n, std::move(amps));
    } else {
        for (int qq : query) apply_h(s, qq);
    }

    Circuit c(n);
    for (int j = 0; j < p; ++j) c.add_h(j);
    for (int j = 0; j < p; ++j) {
        c.add_controlled_unitary(std::make_shared<const ComplexMatrix>(u.power_of_two(j).entries()), query, {j});
    }
    append_inverse_qft(c, 0, p);
    c.run(s, {});

    QPEResult r;
    r.precision_qubits = p;
    const std::size_t grid = std::size_t{1} << p;
    r.probabilities.assign(grid, 0.0);
    kernels::marginal_low(s.amplitudes(), p, r.probabilities);

    std::vector<double> weight(grid, 0.0);
    double floor = 0.0;
    if (cfg.noiseless) {
        weight = r.probabilities;
        floor = 1.0 / (4.0 * static_cast<double>(grid));
    } else {
        r.shots = cfg.shots;
        std::mt19937_64 rng(cfg.seed);
        std::discrete_distribution<std::uint64_t> dist(r.probabilities.begin(), r.probabilities.end());
        for (std::uint64_t i = 0; i < cfg.shots; ++i) ++r.counts[dist(rng)];
        for (const auto& [k, cnt] : r.counts) weight[k] = static_cast<double>(cnt);
        floor = static_cast<double>(cfg.shots) / (4.0 * static_cast<double>(grid));
    }

    bool found = false;
    double best = 0.0;
    double best_phase = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
        if (weight[k] <= floor) continue;
        const double ph = static_cast<double>(k) / static_cast<double>(grid);
        const double lam = phase_to_eigenvalue(ph);
        if (!found || std::abs(lam) < std::abs(best) || (std::abs(lam) == std::abs(best) && lam > best)) {
            best = lam;
            best_phase = ph;
            found = true;
        }
    }
    if (!found) {
        std::ostringstream os;
        os << "QPE found no phase above the noise floor " << floor << "; histogram:";
        for (std::size_t k = 0; k < grid; ++k) {
            if (weight[k] > 0) os << ' ' << k << ':' << weight[k];
        }
        throw SolverError(os.str());
    }
    r.phase = best_phase;
    r.lambda_schlogl = best;
    r.lambda_unitary = std::exp(cplx(0.0, -best));
    return r;
}

std::string histogram_to_csv(const QPEResult& r) {
    std::string out = "phase,eigenvalue,counts,probability\n";
    const std::size_t grid = r.probabilities.size();
    for (std::size_t k = 0; k < grid; ++k) {
        const double ph = static_cast<double>(k) / static_cast<double>(grid);
        const auto it = r.counts.find(k);
        const std::uint64_t cnt = it == r.counts.end() ? 0 : it->second;
        out += format_double(ph) + "," + format_double(phase_to_eigenvalue(ph)) + "," + std::to_string(cnt) + "," +
               format_double(r.probabilities[k]) + "\n";
    }
    return out;
}

}  // namespace schlogl
