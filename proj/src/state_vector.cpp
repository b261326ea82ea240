#include "schlogl/state_vector.hpp"

#include <cmath>
#include <string>

#include "schlogl/errors.hpp"
#include "schlogl/kernels.hpp"

namespace schlogl {

namespace {

void check_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw DomainError("qubit count " + std::to_string(n_qubits) + " outside [1, 30]");
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw DomainError("amplitude count does not match 2^n_qubits");
    }
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > 1e-10) {
        throw DomainError("state vector norm " + std::to_string(nrm) + " is not 1");
    }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) throw DomainError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::normalized(int n_qubits, std::vector<cplx> amplitudes) {
    double sq = 0.0;
    for (const auto& a : amplitudes) sq += std::norm(a);
    if (!(sq > 0.0)) throw DomainError("cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& a : amplitudes) a *= inv;
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::from_eigen(const ComplexVector& v) {
    const auto n = static_cast<std::size_t>(v.size());
    if (!is_power_of_two(n) || n < 2) throw DomainError("vector length must be a power of two >= 2");
    return StateVector(log2_exact(n), std::vector<cplx>(v.data(), v.data() + v.size()));
}

double StateVector::norm() const {
    return std::sqrt(kernels::squared_norm(amps_));
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

ComplexVector StateVector::to_eigen() const {
    return Eigen::Map<const ComplexVector>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

cplx overlap(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) throw DomainError("overlap: qubit counts differ");
    return kernels::inner_product(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

}  // namespace schlogl
