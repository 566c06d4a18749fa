#pragma once

#include "symstiefel/problem.hpp"

#include <string>
#include <vector>

namespace symstiefel {

/// f(X) = ||X - A||_F^2 with A of size 2n x 2p.
ProblemDef nearest_symplectic(const Matrix& target);

/// f(X) = (1/N) sum_i ||X - X_i||_F^2. Minimizers coincide with those of
/// nearest_symplectic(mean of the samples).
ProblemDef extrinsic_mean(const std::vector<Matrix>& samples);

/// f(X) = tr(X^T A X) over Sp(2p, 2n), A a 2n x 2n symmetric matrix. A is
/// symmetrized on ingestion; a note is attached if its skew part is not
/// negligible.
ProblemDef brockett_trace(const Matrix& a, Index p);

/// Brockett objective for an SPD matrix M; its minimum over Sp(2p, 2n) is
/// twice the sum of the p smallest symplectic eigenvalues of M.
ProblemDef symplectic_eig_smallest(const Matrix& m, Index p);

/// Per-pair symplectic eigenvalue estimates read from P = X^T M X.
struct SymplecticEigenEstimate {
  std::vector<double> values;     ///< (P_jj + P_{p+j,p+j}) / 2, j = 1..p
  double smallest = 0.0;
  double pairing_residual = 0.0;  ///< ||offdiag(P)||_F
};

SymplecticEigenEstimate extract_eigenvalues(const Matrix& m, const Matrix& x);

/// Symplectic eigenvalues d_1 <= ... <= d_n of an SPD matrix, from a dense
/// nonsymmetric eigensolve of J^T M (eigenvalues +-i d_j). Throws
/// std::domain_error if the spectrum leaves the imaginary axis.
std::vector<double> symplectic_eig_oracle(const Matrix& m);

/// Throws std::domain_error unless M is symmetric positive definite.
void require_spd(const Matrix& m, const char* who);

// ---------------------------------------------------------------------------
// Instance generators.
// ---------------------------------------------------------------------------

/// A = Q diag(lambda^{1-i}) Q^T of size 2n x 2n, Q random orthogonal.
Matrix spd_with_decay(Index n, double lambda, std::uint64_t seed);

enum class GalleryMatrix { Lehmer, WilkinsonSquared, CompanionSquared, CentralDifference };

GalleryMatrix gallery_from_string(const std::string& name);
const char* to_string(GalleryMatrix which);

/// Test matrices of order `size`. Indefinite members are returned as M^T M.
Matrix gallery(GalleryMatrix which, Index size);

/// X_i = Y0 expm(J (W_i + W_i^T)), W_i = spread * Gaussian(2p x 2p).
std::vector<Matrix> sample_cloud(const Matrix& center, Index count, double spread,
                                 std::uint64_t seed);

/// Target for the nearest-matrix problem: factor * A / ||A||_2.
Matrix scale_by_spectral_norm(const Matrix& a, double factor = 1.0);
/// A / max|A_ij|.
Matrix normalize_max_abs(const Matrix& a);

/// Relative error between <egrad(X), D> and a central finite difference of
/// f along D, with step h = 1e-6 (1 + ||X||_F) / ||D||_F.
double gradient_check(const ProblemDef& problem, const Matrix& x, const Matrix& direction);

}  // namespace symstiefel
