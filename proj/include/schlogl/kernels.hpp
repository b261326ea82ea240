#pragma once

// Amplitude-level kernels of the statevector simulator.
//
// schlogl::kernels holds the OpenMP versions used by the library;
// schlogl::kernels::serial holds plain loops kept as the reference the
// parallel versions are tested and benchmarked against. Both produce
// bitwise-identical results: element-wise updates are independent, and
// reductions accumulate fixed-size blocks in index order regardless of the
// thread count.

#include <array>
#include <cstdint>
#include <span>

#include "schlogl/linalg.hpp"

namespace schlogl::kernels {

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

/// Pauli string in bitmask form: P|b> = i^{n_y} (-1)^{popcount(b & z)} |b ^ x>.
struct PauliMask {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int n_y = 0;
};

/// Below this many amplitudes the parallel kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 11;
/// Block size of deterministic reductions.
inline constexpr std::size_t kReduceBlock = 256;

void apply_1q(std::span<cplx> amps, const Mat2& m, int target);
void apply_controlled_1q(std::span<cplx> amps, const Mat2& m, int control, int target);
/// Dense unitary on `targets` (targets[0] is the payload's least significant
/// bit), applied where every control qubit is 1.
void apply_controlled_unitary(std::span<cplx> amps, const ComplexMatrix& u,
                              std::span<const int> targets, std::span<const int> controls);

double squared_norm(std::span<const cplx> amps);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
/// <psi|P|psi>
cplx pauli_expectation(std::span<const cplx> psi, const PauliMask& p);
/// trace(P H) for a dense operator H.
cplx pauli_trace(const ComplexMatrix& h, const PauliMask& p);
/// Marginal probabilities of the low `n_low` qubits.
void marginal_low(std::span<const cplx> amps, int n_low, std::span<double> out);

namespace serial {

void apply_1q(std::span<cplx> amps, const Mat2& m, int target);
void apply_controlled_1q(std::span<cplx> amps, const Mat2& m, int control, int target);
void apply_controlled_unitary(std::span<cplx> amps, const ComplexMatrix& u,
                              std::span<const int> targets, std::span<const int> controls);
double squared_norm(std::span<const cplx> amps);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
cplx pauli_expectation(std::span<const cplx> psi, const PauliMask& p);
cplx pauli_trace(const ComplexMatrix& h, const PauliMask& p);
void marginal_low(std::span<const cplx> amps, int n_low, std::span<double> out);

}  // namespace serial

/// i^k for integer k.
inline cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

inline double parity_sign(std::uint64_t v) {
    return (__builtin_popcountll(v) & 1) ? -1.0 : 1.0;
}

/// Inserts a zero bit at position `bit` of `i`.
inline std::uint64_t insert_zero_bit(std::uint64_t i, int bit) {
    const std::uint64_t lo = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | lo;
}

}  // namespace schlogl::kernels
