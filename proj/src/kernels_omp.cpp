// OpenMP kernels. Same arithmetic as kernels_serial.cpp; only the loop
// distribution differs, so results match the reference bit for bit. Small
// states go straight to the serial code: entering a parallel region costs
// more than a gate on a few dozen amplitudes.

#include <algorithm>
#include <vector>

#include "schlogl/kernels.hpp"

namespace schlogl::kernels {

namespace {

template <class T, class F>
T blocked_sum(std::size_t n, F&& term) {
    const std::size_t n_blocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<T> partial(n_blocks, T{});
    const auto nb = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b) {
        T acc{};
        const std::size_t begin = static_cast<std::size_t>(b) * kReduceBlock;
        const std::size_t end = std::min(n, begin + kReduceBlock);
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace

void apply_1q(std::span<cplx> amps, const Mat2& m, int target) {
    if (amps.size() < kParallelThreshold) return serial::apply_1q(amps, m, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t bit = std::uint64_t{1} << target;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(i), target);
        const std::uint64_t i1 = i0 | bit;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_controlled_1q(std::span<cplx> amps, const Mat2& m, int control, int target) {
    if (amps.size() < kParallelThreshold) return serial::apply_controlled_1q(amps, m, control, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t cbit = std::uint64_t{1} << control;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(i), target);
        if (!(i0 & cbit)) continue;
        const std::uint64_t i1 = i0 | tbit;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_controlled_unitary(std::span<cplx> amps, const ComplexMatrix& u,
                              std::span<const int> targets, std::span<const int> controls) {
    if (amps.size() < kParallelThreshold) return serial::apply_controlled_unitary(amps, u, targets, controls);
    const std::size_t k = targets.size();
    const std::size_t block = std::size_t{1} << k;
    std::vector<int> fixed(targets.begin(), targets.end());
    fixed.insert(fixed.end(), controls.begin(), controls.end());
    std::sort(fixed.begin(), fixed.end());
    std::uint64_t control_mask = 0;
    for (int c : controls) control_mask |= std::uint64_t{1} << c;
    std::vector<std::uint64_t> offsets(block, 0);
    for (std::size_t j = 0; j < block; ++j) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((j >> t) & 1) offsets[j] |= std::uint64_t{1} << targets[t];
        }
    }
    const auto n_free = static_cast<std::int64_t>(amps.size() >> fixed.size());
#pragma omp parallel
    {
        std::vector<cplx> in(block), out(block);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n_free; ++r) {
            std::uint64_t base = static_cast<std::uint64_t>(r);
            for (int bit : fixed) base = insert_zero_bit(base, bit);
            base |= control_mask;
            for (std::size_t j = 0; j < block; ++j) in[j] = amps[base | offsets[j]];
            for (std::size_t row = 0; row < block; ++row) {
                cplx acc{0.0, 0.0};
                for (std::size_t col = 0; col < block; ++col) {
                    acc += u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
                           in[col];
                }
                out[row] = acc;
            }
            for (std::size_t j = 0; j < block; ++j) amps[base | offsets[j]] = out[j];
        }
    }
}

double squared_norm(std::span<const cplx> amps) {
    if (amps.size() < kParallelThreshold) return serial::squared_norm(amps);
    return blocked_sum<double>(amps.size(), [&](std::size_t i) { return std::norm(amps[i]); });
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() < kParallelThreshold) return serial::inner_product(a, b);
    return blocked_sum<cplx>(a.size(), [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

cplx pauli_expectation(std::span<const cplx> psi, const PauliMask& p) {
    if (psi.size() < kParallelThreshold) return serial::pauli_expectation(psi, p);
    const cplx phase = i_power(p.n_y);
    const cplx s = blocked_sum<cplx>(psi.size(), [&](std::size_t b) {
        return std::conj(psi[b ^ p.x]) * psi[b] * parity_sign(b & p.z);
    });
    return phase * s;
}

cplx pauli_trace(const ComplexMatrix& h, const PauliMask& p) {
    if (static_cast<std::size_t>(h.rows()) < kParallelThreshold) return serial::pauli_trace(h, p);
    const cplx phase = i_power(p.n_y);
    const auto n = static_cast<std::size_t>(h.rows());
    const cplx s = blocked_sum<cplx>(n, [&](std::size_t c) {
        return h(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ p.x)) *
               parity_sign(c & p.z);
    });
    return phase * s;
}

void marginal_low(std::span<const cplx> amps, int n_low, std::span<double> out) {
    if (amps.size() < kParallelThreshold) return serial::marginal_low(amps, n_low, out);
    const std::size_t low = std::size_t{1} << n_low;
    const std::size_t high = amps.size() / low;
    const auto n_out = static_cast<std::int64_t>(low);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n_out; ++k) {
        double acc = 0.0;
        for (std::size_t h = 0; h < high; ++h) {
            acc += std::norm(amps[(h << n_low) | static_cast<std::size_t>(k)]);
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
}

}  // namespace schlogl::kernels
