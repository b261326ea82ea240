#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schlogl/linalg.hpp"

namespace schlogl {

/// Pure state of n qubits. Basis index bit q is the value of qubit q
/// (qubit 0 is the least significant bit).
class StateVector {
public:
    /// |0...0>
    explicit StateVector(int n_qubits);
    /// Takes ownership of amplitudes; throws unless the L2 norm is 1 within 1e-10.
    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    static StateVector basis(int n_qubits, std::uint64_t index);
    /// Rescales to unit norm before validating.
    static StateVector normalized(int n_qubits, std::vector<cplx> amplitudes);
    static StateVector from_eigen(const ComplexVector& v);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }

    std::span<const cplx> amplitudes() const { return amps_; }
    /// Raw access for gate kernels; callers keep the norm invariant.
    std::span<cplx> mutable_amplitudes() { return amps_; }

    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    std::vector<double> probabilities() const;
    ComplexVector to_eigen() const;

private:
    int n_qubits_;
    std::vector<cplx> amps_;
};

/// <a|b>
cplx overlap(const StateVector& a, const StateVector& b);

/// Phase-insensitive |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace schlogl
