#pragma once

#include "symstiefel/matkit.hpp"

#include <Eigen/Cholesky>

namespace symstiefel {

/// Sp(2p, 2n): real 2n x 2p matrices X with X^T J_{2n} X = J_{2p}.
struct SymplecticStiefel {
  Index n = 0;
  Index p = 0;

  SymplecticStiefel(Index n_, Index p_);

  /// 4np - p(2p - 1).
  Index dimension() const { return 4 * n * p - p * (2 * p - 1); }
  Index rows() const { return 2 * n; }
  Index cols() const { return 2 * p; }
};

/// Residual below which a point counts as feasible.
inline constexpr double kFeasibilityTol = 1e-8;
/// Relative tangency tolerance, scaled by (1 + ||Z||_F) * max(1, ||X||_F).
inline constexpr double kTangencyTol = 1e-10;
/// Gram matrices X^T X with a larger condition number are reported as drift.
inline constexpr double kGramConditionWarn = 1e12;

/// ||X^T J X - J||_F. X must have even row and column counts.
double feasibility_residual(const Matrix& x);
/// Same, after checking that X is 2n x 2p.
double check_symplectic(const Matrix& x, Index n, Index p);

/// ||Z^T J X + X^T J Z||_F.
double tangency_residual(const Matrix& x, const Matrix& z);
bool is_tangent(const Matrix& x, const Matrix& z);

/// Orthonormalization condition imposed on the complement basis X_perp.
enum class Orthonormalization {
  I,   ///< X_perp orthonormal
  II,  ///< X_perp (X_perp^T J X_perp)^{-1} orthonormal
};

/// Canonical-like metric g_rho under one of the two orthonormalization
/// conditions. Defaults follow the tuned values: rho = 1/2 for (I), 1 for (II).
struct MetricSpec {
  double rho = 0.5;
  Orthonormalization variant = Orthonormalization::I;

  static MetricSpec defaults(Orthonormalization variant);
  void validate() const;
};

const char* to_string(Orthonormalization variant);
Orthonormalization orthonormalization_from_string(const std::string& text);

/// P_X(Y) = X J sym(X^T J^T Y) + (I - X J X^T J^T) Y.
Matrix project_tangent(const Matrix& x, const Matrix& y);
/// X J skew(X^T J^T Y).
Matrix project_normal(const Matrix& x, const Matrix& y);

/// Symmetric S = L R^T + R L^T held in factored form.
struct LowRankSymmetric {
  Matrix left;   ///< L, 2n x 2p
  Matrix right;  ///< R, 2n x 2p

  Matrix dense() const;
};

/// Factors of S_{X,Z} with Z = S J X: L = (I - X J X^T J^T / 2) Z, R = X J.
/// Throws std::invalid_argument if Z is not tangent at X.
LowRankSymmetric tangent_to_s(const Matrix& x, const Matrix& z);

/// Matrix-free application of the metric operator B_X, g_rho(Z1, Z2) =
/// tr(Z1^T B_X Z2). X_perp is never formed.
class MetricOperator {
 public:
  MetricOperator(const Matrix& x, const MetricSpec& spec);

  Matrix apply(const Matrix& y) const;
  double inner(const Matrix& z1, const Matrix& z2) const;

  /// 2-norm condition number of X^T X.
  double gram_condition() const { return gram_condition_; }

 private:
  Matrix x_;
  MetricSpec spec_;
  Eigen::LLT<Matrix> gram_;
  double gram_condition_ = 1.0;
};

double inner(const Matrix& x, const MetricSpec& spec, const Matrix& z1, const Matrix& z2);

/// Riemannian gradient grad f(X) = S_X J X together with the factors the
/// low-rank Cayley step consumes.
struct RiemannianGradient {
  Matrix grad;   ///< 2n x 2p tangent vector
  Matrix p_f;    ///< H_X * egrad
  Matrix e_rho;  ///< (rho / 2) X^T egrad
  double gram_condition = 1.0;
};

/// Assembles H_X egrad ((XJ)^T J X) + X J (H_X egrad)^T J X, keeping the
/// (XJ)^T J X factor explicit.
RiemannianGradient riemannian_gradient(const Matrix& x, const Matrix& egrad,
                                       const MetricSpec& spec);

}  // namespace symstiefel
