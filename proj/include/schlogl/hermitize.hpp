#pragma once

#include "schlogl/linalg.hpp"
#include "schlogl/schlogl_cme.hpp"
#include "schlogl/state_vector.hpp"

namespace schlogl {

enum class HermitianKind { BlockEmbedding, SemiPositiveDefinite, General };

/// Dense Hermitian matrix of power-of-two dimension.
class HermitianOperator {
public:
    /// Validates Hermiticity (1e-12 elementwise) and pads with zero rows and
    /// columns up to the next power of two.
    HermitianOperator(ComplexMatrix entries, HermitianKind kind = HermitianKind::General);

    int dim() const { return static_cast<int>(entries_.rows()); }
    int n_qubits() const { return log2_exact(static_cast<std::size_t>(dim())); }
    const ComplexMatrix& entries() const { return entries_; }
    HermitianKind kind() const { return kind_; }

private:
    ComplexMatrix entries_;
    HermitianKind kind_;
};

class UnitaryOperator {
public:
    /// Throws DomainError unless U U^dagger = I within 1e-10 (Frobenius).
    explicit UnitaryOperator(ComplexMatrix entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& entries() const { return entries_; }

    /// U^(2^k) by repeated squaring.
    UnitaryOperator power_of_two(int k) const;

private:
    ComplexMatrix entries_;
};

/// [[0, Q], [Q^T, 0]]
HermitianOperator block_embed(const GeneratorMatrix& q);
/// Q Q^T
HermitianOperator spd_form(const GeneratorMatrix& q);

/// Uniform state with unit L2 norm.
StateVector constant_state(int n_qubits);
/// Uniform vector with entries 1/2^n, as literally displayed in some
/// derivations; not a normalized state.
ComplexVector constant_vector_unnormalized(int n_qubits);

/// exp(-i H) through the eigendecomposition of H.
UnitaryOperator unitary_of(const HermitianOperator& h);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

}  // namespace schlogl
