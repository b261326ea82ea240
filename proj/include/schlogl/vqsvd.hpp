#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schlogl/circuit.hpp"
#include "schlogl/qpe.hpp"
#include "schlogl/schlogl_cme.hpp"
#include "schlogl/state_vector.hpp"

namespace schlogl {

struct VQSVDConfig {
    int rank = 8;
    std::vector<double> weights{24, 21, 18, 15, 12, 9, 6, 3};
    double learning_rate = 0.02;
    int iterations = 200;
    /// Number of RY-RZ rotation layers per register (reps = depth - 1).
    int circuit_depth = 55;
    std::uint64_t seed = 0;
};

struct VQSVDResult {
    /// Sorted descending, paired with the states below.
    std::vector<double> singular_values;
    std::vector<StateVector> left;
    std::vector<StateVector> right;
    /// Final weighted objective sum_i w_i Re<psi_i|M|phi_i>.
    double objective = 0.0;
    std::vector<double> objective_trace;
};

AnsatzSpec vqsvd_ansatz(int n_qubits, int circuit_depth);

/// Maximizes sum_i w_i Re<i|A^dagger M B|i> over two RY-RZ ansatz circuits A, B
/// with Adam; the gradient uses the exact +-pi shift of each rotation.
VQSVDResult vqsvd_decompose(const ComplexMatrix& m, const VQSVDConfig& cfg);

struct ZeromodeReport {
    std::vector<double> zeromode;
    std::vector<double> oracle_zeromode;
    double rmsd_vs_oracle = 0.0;
    double qh_expectation = 0.0;
    double lambda_min = 0.0;
    cplx lambda_unitary{1.0, 0.0};
    std::vector<double> singular_values;
    double objective = 0.0;
};

/// Q -> Q_H -> U = exp(-i Q_H) -> QPE for lambda_min -> VQSVD of
/// U - exp(-i lambda_min) I. The right singular vector of the smallest
/// singular value, restricted to the lower block, gives the steady state.
ZeromodeReport steady_state_pipeline(const SchloglSystem& sys, const QPEConfig& qpe_cfg,
                                     const VQSVDConfig& svd_cfg);

std::string zeromode_report_json(const ZeromodeReport& r);
/// Columns state,probability,oracle.
std::string zeromode_to_csv(const ZeromodeReport& r);

}  // namespace schlogl
