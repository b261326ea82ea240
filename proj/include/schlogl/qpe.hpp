#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schlogl/circuit.hpp"
#include "schlogl/hermitize.hpp"
#include "schlogl/state_vector.hpp"

namespace schlogl {

struct QPEConfig {
    int precision_qubits = 7;
    /// 0 infers log2(dim U).
    int query_qubits = 0;
    std::uint64_t shots = 500000;
    std::uint64_t seed = 0;
    /// Query-register input; uniform superposition when empty.
    std::optional<StateVector> input_state;
    /// Use the exact pre-measurement distribution instead of sampling.
    bool noiseless = false;
};

struct QPEResult {
    int precision_qubits = 0;
    std::uint64_t shots = 0;
    /// Outcome k (phase k / 2^precision) -> counts. Empty in noiseless mode.
    std::map<std::uint64_t, std::uint64_t> counts;
    /// Exact outcome probabilities, length 2^precision.
    std::vector<double> probabilities;
    double phase = 0.0;
    double lambda_schlogl = 0.0;
    cplx lambda_unitary{1.0, 0.0};
};

/// lambda = -2 pi phase folded to (-pi, pi].
double phase_to_eigenvalue(double phase);

/// Inverse QFT on qubits [first, first + n) from H, controlled phases and swaps.
void append_inverse_qft(Circuit& c, int first, int n);

/// Precision qubits are 0..p-1 (qubit j controls U^(2^j)); the query register
/// sits above them.
QPEResult qpe_run(const UnitaryOperator& u, const QPEConfig& cfg);

/// Columns phase,eigenvalue,counts,probability.
std::string histogram_to_csv(const QPEResult& r);

}  // namespace schlogl
