#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "schlogl/linalg.hpp"
#include "schlogl/pauli.hpp"
#include "schlogl/state_vector.hpp"

namespace schlogl {

// Single gate applications. Rotation conventions:
//   RY(t) = exp(-i t Y / 2),  RZ(t) = exp(-i t Z / 2).
void apply_ry(StateVector& s, int q, double theta);
void apply_rz(StateVector& s, int q, double theta);
void apply_x(StateVector& s, int q);
void apply_h(StateVector& s, int q);
void apply_cnot(StateVector& s, int control, int target);
/// diag(1, e^{i phi}) on target when control is 1.
void apply_controlled_phase(StateVector& s, int control, int target, double phi);
void apply_swap(StateVector& s, int a, int b);
/// Dense unitary on `targets` (targets[0] = least significant payload bit)
/// conditioned on all `controls`. Throws DomainError if u is not unitary.
void apply_controlled_unitary(StateVector& s, const ComplexMatrix& u, std::span<const int> targets,
                              std::span<const int> controls = {});

enum class GateKind { RY, RZ, X, H, CNOT, CPhase, Swap, ControlledUnitary };

struct GateOp {
    GateKind kind;
    int target = 0;
    int control = -1;
    int param = -1;      // rotation parameter index, -1 for fixed gates
    double angle = 0.0;  // fixed angle (CPhase)
    std::shared_ptr<const ComplexMatrix> unitary = nullptr;
    std::vector<int> targets = {};
    std::vector<int> controls = {};
};

class Circuit {
public:
    explicit Circuit(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    int n_params() const { return n_params_; }
    const std::vector<GateOp>& ops() const { return ops_; }

    /// Parameterized rotations take the next free parameter index.
    int add_ry(int q);
    int add_rz(int q);
    void add_x(int q);
    void add_h(int q);
    void add_cnot(int control, int target);
    void add_cphase(int control, int target, double phi);
    void add_swap(int a, int b);
    void add_controlled_unitary(std::shared_ptr<const ComplexMatrix> u, std::vector<int> targets,
                                std::vector<int> controls);

    void run(StateVector& s, std::span<const double> params) const;
    StateVector run_from_zero(std::span<const double> params) const;

    /// One op per line, e.g. "ry q1 p3" or "cx q0 q1".
    std::string to_text() const;

private:
    void check_qubit(int q) const;

    int n_qubits_;
    int n_params_ = 0;
    std::vector<GateOp> ops_;
};

enum class Rotation { RY, RY_RZ };
enum class Entanglement { Linear };

struct AnsatzSpec {
    int n_qubits = 2;
    int reps = 1;
    Rotation rotation = Rotation::RY;
    Entanglement entanglement = Entanglement::Linear;

    int n_params() const;
};

/// Rotation layer, CNOT chain i -> i+1, repeated `reps` times, then a closing
/// rotation layer.
Circuit build_ansatz(const AnsatzSpec& spec);

/// Exact sum_j c_j <s|P_j|s>.
double expectation(const StateVector& s, const PauliSum& p);

/// Multinomial counts over basis outcomes, keyed by basis index.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s, std::uint64_t shots,
                                              std::uint64_t seed);

}  // namespace schlogl
