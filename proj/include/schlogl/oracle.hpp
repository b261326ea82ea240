#pragma once

#include <vector>

#include "schlogl/hermitize.hpp"
#include "schlogl/linalg.hpp"
#include "schlogl/schlogl_cme.hpp"

namespace schlogl {

/// Full dense spectrum. Eigenvalues are sorted by magnitude, ties by real part.
struct SpectralResult {
    std::vector<cplx> eigenvalues;
    ComplexMatrix right_vectors;  // columns
    ComplexMatrix left_vectors;   // columns, w_i^H M = lambda_i w_i^H; empty if V is singular
    std::vector<double> singular_values;  // ascending
};

struct ComparisonMetrics {
    double rmsd = 0.0;
    double r_squared = 0.0;
    std::vector<double> abs_errors;
    std::vector<double> pct_errors;
};

SpectralResult diagonalize(const GeneratorMatrix& q);
SpectralResult diagonalize(const HermitianOperator& h);

/// Ascending real eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);
/// Ascending singular values.
std::vector<double> singular_values(const RealMatrix& m);

/// Stationary distribution: nonnegative, sums to one.
/// Null vector of Q normalized to sum 1. Irreducible tridiagonal generators
/// use flux balance; anything else goes through the eigensolver.
std::vector<double> zeromode(const GeneratorMatrix& q);

/// P(t) from the eigen-expansion of Q, renormalized to sum one.
std::vector<double> propagate(const GeneratorMatrix& q, const std::vector<double>& p0, double t);

ComparisonMetrics compare(const std::vector<double>& reference, const std::vector<double>& estimate);

/// 1/|lambda1|.
double transition_timescale(double lambda1);

/// The two smallest-magnitude eigenvalues of Q (lambda0 ~ 0, lambda1 < 0).
struct LowSpectrum {
    double lambda0;
    double lambda1;
};
LowSpectrum low_spectrum(const GeneratorMatrix& q);

/// sqrt of the second-smallest eigenvalue of Q Q^T, i.e. the second-smallest
/// singular value of Q.
double hermitian_lambda1(const GeneratorMatrix& q);

/// Number of strict interior local maxima (endpoints count when they exceed
/// their single neighbour).
int count_local_maxima(const std::vector<double>& p);

}  // namespace schlogl
