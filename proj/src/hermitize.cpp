#include "schlogl/hermitize.hpp"

#include <cmath>

#include "schlogl/errors.hpp"

namespace schlogl {

HermitianOperator::HermitianOperator(ComplexMatrix entries, HermitianKind kind)
    : entries_(std::move(entries)), kind_(kind) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw DomainError("Hermitian operator must be a non-empty square matrix");
    }
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw DomainError("matrix is not Hermitian");
    const auto n = static_cast<std::size_t>(entries_.rows());
    if (!is_power_of_two(n)) {
        const auto padded = static_cast<Eigen::Index>(next_power_of_two(n));
        ComplexMatrix p = ComplexMatrix::Zero(padded, padded);
        p.topLeftCorner(entries_.rows(), entries_.cols()) = entries_;
        entries_ = std::move(p);
    }
}

UnitaryOperator::UnitaryOperator(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw DomainError("unitary must be square");
    if (!is_unitary(entries_)) throw DomainError("matrix is not unitary");
}

UnitaryOperator UnitaryOperator::power_of_two(int k) const {
    ComplexMatrix m = entries_;
    for (int i = 0; i < k; ++i) m = (m * m).eval();
    return UnitaryOperator(std::move(m));
}

HermitianOperator block_embed(const GeneratorMatrix& q) {
    const int d = q.dim();
    ComplexMatrix h = ComplexMatrix::Zero(2 * d, 2 * d);
    h.topRightCorner(d, d) = q.entries().cast<cplx>();
    h.bottomLeftCorner(d, d) = q.entries().transpose().cast<cplx>();
    return {std::move(h), HermitianKind::BlockEmbedding};
}

HermitianOperator spd_form(const GeneratorMatrix& q) {
    RealMatrix s = q.entries() * q.entries().transpose();
    // Rounding can leave the product a few ulps from symmetric.
    s = (0.5 * (s + s.transpose())).eval();
    return {s.cast<cplx>(), HermitianKind::SemiPositiveDefinite};
}

StateVector constant_state(int n_qubits) {
    if (n_qubits < 1) throw DomainError("constant_state needs at least one qubit");
    const std::size_t n = std::size_t{1} << n_qubits;
    return StateVector(n_qubits, std::vector<cplx>(n, cplx(1.0 / std::sqrt(double(n)), 0.0)));
}

ComplexVector constant_vector_unnormalized(int n_qubits) {
    if (n_qubits < 1) throw DomainError("constant_vector_unnormalized needs at least one qubit");
    const Eigen::Index n = Eigen::Index{1} << n_qubits;
    return ComplexVector::Constant(n, cplx(1.0 / double(n), 0.0));
}

UnitaryOperator unitary_of(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.entries());
    if (es.info() != Eigen::Success) throw SolverError("eigendecomposition failed in unitary_of");
    const RealVector& w = es.eigenvalues();
    ComplexVector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(cplx(0.0, -w(i)));
    const ComplexMatrix& v = es.eigenvectors();
    return UnitaryOperator(v * phases.asDiagonal() * v.adjoint());
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    return (u * u.adjoint() - id).norm() <= tol;
}

}  // namespace schlogl
