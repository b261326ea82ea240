#include "schlogl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "schlogl/errors.hpp"

namespace schlogl {

namespace {

constexpr double kNullTol = 1e-8;

std::vector<Eigen::Index> magnitude_order(const ComplexVector& ev) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(ev.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ma = std::abs(ev(a));
        const double mb = std::abs(ev(b));
        if (ma != mb) return ma < mb;
        return ev(a).real() < ev(b).real();
    });
    return idx;
}

// Largest-magnitude entry made real positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (std::abs(v(k)) == 0.0) return;
    v *= std::conj(v(k)) / std::abs(v(k));
}

}  // namespace

SpectralResult diagonalize(const GeneratorMatrix& q) {
    Eigen::EigenSolver<RealMatrix> es(q.entries(), true);
    if (es.info() != Eigen::Success) throw SolverError("eigendecomposition of Q did not converge");
    const ComplexVector ev = es.eigenvalues();
    const ComplexMatrix vecs = es.eigenvectors();
    const auto order = magnitude_order(ev);
    SpectralResult r;
    const Eigen::Index n = ev.size();
    r.right_vectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Index src = order[static_cast<std::size_t>(c)];
        r.eigenvalues.push_back(ev(src));
        r.right_vectors.col(c) = vecs.col(src).normalized();
        fix_phase(r.right_vectors.col(c));
    }
    const ComplexMatrix m = q.entries().cast<cplx>();
    const double scale = std::max(1.0, m.norm());
    double worst = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        const double res = (m * r.right_vectors.col(c) -
                            r.eigenvalues[static_cast<std::size_t>(c)] * r.right_vectors.col(c))
                               .norm();
        worst = std::max(worst, res);
    }
    if (worst > 1e-9 * scale) {
        std::ostringstream os;
        os << "eigendecomposition residual " << worst << " exceeds tolerance";
        throw SolverError(os.str());
    }
    // Rows of V^{-1} are the left vectors.
    // Rows of V^{-1} are the left vectors; left empty when V is singular.
    Eigen::FullPivLU<ComplexMatrix> lu(r.right_vectors);
    if (lu.isInvertible()) r.left_vectors = lu.inverse().adjoint();
    r.singular_values = singular_values(q.entries());
    return r;
}

SpectralResult diagonalize(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.entries());
    if (es.info() != Eigen::Success) throw SolverError("Hermitian eigendecomposition did not converge");
    const ComplexVector ev = es.eigenvalues().cast<cplx>();
    const auto order = magnitude_order(ev);
    SpectralResult r;
    const Eigen::Index n = ev.size();
    r.right_vectors.resize(n, n);
    std::vector<double> sv;
    for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Index src = order[static_cast<std::size_t>(c)];
        r.eigenvalues.push_back(ev(src));
        r.right_vectors.col(c) = es.eigenvectors().col(src);
        fix_phase(r.right_vectors.col(c));
        sv.push_back(std::abs(ev(src).real()));
    }
    r.left_vectors = r.right_vectors;
    std::sort(sv.begin(), sv.end());
    r.singular_values = std::move(sv);
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("Hermitian eigendecomposition did not converge");
    const RealVector& w = es.eigenvalues();
    return {w.data(), w.data() + w.size()};
}

std::vector<double> singular_values(const RealMatrix& m) {
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const RealVector& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Irreducible birth-death chain: the stationary vector satisfies flux balance
// p[n+1] q(n, n+1) = p[n] q(n+1, n) exactly. Summed in log space so deep tails
// keep their relative accuracy instead of sinking into eigensolver noise.
std::optional<std::vector<double>> balanced_zeromode(const GeneratorMatrix& q) {
    const int d = q.dim();
    if (d < 2) return std::nullopt;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            if (std::abs(i - j) > 1 && q(i, j) != 0.0) return std::nullopt;
        }
        if (j + 1 < d && !(q(j + 1, j) > 0.0 && q(j, j + 1) > 0.0)) return std::nullopt;
    }
    std::vector<double> logp(static_cast<std::size_t>(d), 0.0);
    for (int n = 0; n + 1 < d; ++n) {
        logp[static_cast<std::size_t>(n + 1)] = logp[static_cast<std::size_t>(n)] + std::log(q(n + 1, n)) - std::log(q(n, n + 1));
    }
    const double top = *std::max_element(logp.begin(), logp.end());
    std::vector<double> p(logp.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(logp[i] - top);
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= s;
    return p;
}

}  // namespace

std::vector<double> zeromode(const GeneratorMatrix& q) {
    if (auto p = balanced_zeromode(q)) return *p;
    const SpectralResult r = diagonalize(q);
    int n_null = 0;
    for (const cplx& ev : r.eigenvalues) {
        if (std::abs(ev) <= kNullTol) ++n_null;
    }
    if (n_null != 1) {
        throw AmbiguityError("zero eigenspace has dimension " + std::to_string(n_null));
    }
    const ComplexVector v = r.right_vectors.col(0);
    const double total = v.real().sum();
    std::vector<double> p(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double x = v(i).real() / total;
        if (x < -1e-9) throw SolverError("zeromode has a significantly negative entry");
        p[static_cast<std::size_t>(i)] = std::max(x, 0.0);
    }
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= s;
    return p;
}

std::vector<double> propagate(const GeneratorMatrix& q, const std::vector<double>& p0, double t) {
    if (static_cast<int>(p0.size()) != q.dim()) throw DomainError("p0 length does not match Q");
    if (!(t >= 0.0)) throw DomainError("t must be >= 0");
    const SpectralResult r = diagonalize(q);
    if (r.left_vectors.size() == 0) throw SolverError("generator is defective: eigenvectors are not a basis");
    ComplexVector p(q.dim());
    for (int i = 0; i < q.dim(); ++i) p(i) = p0[static_cast<std::size_t>(i)];
    const ComplexVector c = r.left_vectors.adjoint() * p;
    ComplexVector out = ComplexVector::Zero(q.dim());
    for (int k = 0; k < q.dim(); ++k) {
        out += c(k) * std::exp(r.eigenvalues[static_cast<std::size_t>(k)] * t) * r.right_vectors.col(k);
    }
    std::vector<double> res(p0.size());
    double s = 0.0;
    for (int i = 0; i < q.dim(); ++i) s += out(i).real();
    for (int i = 0; i < q.dim(); ++i) res[static_cast<std::size_t>(i)] = out(i).real() / s;
    return res;
}

ComparisonMetrics compare(const std::vector<double>& reference, const std::vector<double>& estimate) {
    if (reference.empty() || reference.size() != estimate.size()) {
        throw DomainError("compare needs two non-empty lists of equal length");
    }
    const double m = static_cast<double>(reference.size());
    const double mean = std::accumulate(reference.begin(), reference.end(), 0.0) / m;
    ComparisonMetrics out;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = estimate[i] - reference[i];
        ss_res += d * d;
        ss_tot += (reference[i] - mean) * (reference[i] - mean);
        out.abs_errors.push_back(std::abs(d));
        out.pct_errors.push_back(reference[i] != 0.0 ? 100.0 * std::abs(d / reference[i])
                                                     : std::numeric_limits<double>::quiet_NaN());
    }
    out.rmsd = std::sqrt(ss_res / m);
    if (ss_tot == 0.0) throw DomainError("R^2 undefined: reference has zero variance");
    out.r_squared = 1.0 - ss_res / ss_tot;
    return out;
}

double transition_timescale(double lambda1) {
    if (lambda1 == 0.0) throw DomainError("transition timescale undefined for lambda1 = 0");
    return 1.0 / std::abs(lambda1);
}

LowSpectrum low_spectrum(const GeneratorMatrix& q) {
    const SpectralResult r = diagonalize(q);
    if (r.eigenvalues.size() < 2) throw DomainError("need at least two states");
    return {r.eigenvalues[0].real(), r.eigenvalues[1].real()};
}

double hermitian_lambda1(const GeneratorMatrix& q) {
    const HermitianOperator s = spd_form(q);
    const std::vector<double> w = hermitian_eigenvalues(s.entries().topLeftCorner(q.dim(), q.dim()));
    return std::sqrt(std::max(w.at(1), 0.0));
}

int count_local_maxima(const std::vector<double>& p) {
    const std::size_t n = p.size();
    if (n == 1) return 1;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || p[i] > p[i - 1];
        const bool right_ok = i + 1 == n || p[i] > p[i + 1];
        if (left_ok && right_ok) ++count;
    }
    return count;
}

}  // namespace schlogl
