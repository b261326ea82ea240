#pragma once

#include <string>
#include <vector>

#include "schlogl/hermitize.hpp"
#include "schlogl/kernels.hpp"
#include "schlogl/state_vector.hpp"

namespace schlogl {

/// Pauli string: character k acts on qubit n-1-k, so the leftmost character
/// is the most significant qubit.
struct PauliTerm {
    double coefficient = 0.0;
    std::string string;
};

enum class Ordering { Default, PositiveFirst, Magnitude, Optimized };

Ordering parse_ordering(const std::string& name);
std::string to_string(Ordering o);

class PauliSum {
public:
    PauliSum(int n_qubits, std::vector<PauliTerm> terms, Ordering tag = Ordering::Default);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    Ordering ordering() const { return ordering_; }

    /// Sum of |c_j|, an upper bound on the spectral radius.
    double one_norm() const;
    ComplexMatrix to_matrix() const;

    /// One "COEFF STRING" line per term, coefficients at 17 significant digits.
    std::string to_text() const;
    static PauliSum from_text(const std::string& text);

private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
    Ordering ordering_;
};

/// Canonical index of a string: base-4 number with I=0, X=1, Y=2, Z=3,
/// leftmost character most significant.
std::uint64_t canonical_index(const std::string& s);
std::string string_of_index(std::uint64_t index, int n_qubits);
kernels::PauliMask to_mask(const std::string& s);
ComplexMatrix pauli_matrix(const std::string& s);

/// c_j = tr(P_j H) / 2^n over all 4^n strings in canonical order; terms with
/// |c_j| <= drop_tolerance are omitted.
PauliSum decompose(const HermitianOperator& h, double drop_tolerance = 1e-12);

PauliSum sort_terms(const PauliSum& p, Ordering strategy);
/// First `keep` terms of the current ordering.
PauliSum truncate(const PauliSum& p, int keep);

}  // namespace schlogl
