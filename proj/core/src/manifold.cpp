#include "symstiefel/manifold.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace symstiefel {

namespace {

void require_even_shape(const Matrix& x, const char* who) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0 || x.cols() > x.rows() || x.size() == 0) {
    throw DimensionError(std::string(who) + ": expected a 2n x 2p matrix with p <= n, got " +
                         shape_string(x));
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(who) + ": shape mismatch " + shape_string(a) + " vs " +
                         shape_string(b));
  }
}

// X^T J^T Y
Matrix xt_jt(const Matrix& x, const Matrix& y) { return x.transpose() * apply_jt_left(y); }

struct GramFactor {
  Eigen::LLT<Matrix> llt;
  double condition = 1.0;
};

GramFactor factor_gram(const Matrix& x) {
  GramFactor g;
  const Matrix gram = x.transpose() * x;
  g.llt.compute(gram);
  if (g.llt.info() != Eigen::Success) {
    throw std::domain_error("X^T X is not positive definite; the point is not symplectic");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  g.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return g;
}

// (I - X (X^T X)^{-1} X^T) Y
Matrix complement_projection(const Matrix& x, const Eigen::LLT<Matrix>& gram, const Matrix& y) {
  return y - x * gram.solve(x.transpose() * y);
}

}  // namespace

SymplecticStiefel::SymplecticStiefel(Index n_, Index p_) : n(n_), p(p_) {
  if (p < 1 || p > n) {
    throw DimensionError("Sp(2p, 2n) requires 1 <= p <= n, got n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
  }
}

double feasibility_residual(const Matrix& x) {
  require_even_shape(x, "feasibility_residual");
  const Matrix xtjx = x.transpose() * apply_j_left(x);
  return (xtjx - poisson_matrix(x.cols() / 2)).norm();
}

double check_symplectic(const Matrix& x, Index n, Index p) {
  if (x.rows() != 2 * n || x.cols() != 2 * p) {
    throw DimensionError("check_symplectic: expected " + std::to_string(2 * n) + "x" +
                         std::to_string(2 * p) + ", got " + shape_string(x));
  }
  return feasibility_residual(x);
}

double tangency_residual(const Matrix& x, const Matrix& z) {
  require_same_shape(x, z, "tangency_residual");
  // Z^T J X + X^T J Z with X^T J Z = -(Z^T J X)^T.
  const Matrix m = z.transpose() * apply_j_left(x);
  return (m - m.transpose()).norm();
}

bool is_tangent(const Matrix& x, const Matrix& z) {
  const double scale = (1.0 + z.norm()) * std::max(1.0, x.norm());
  return tangency_residual(x, z) <= kTangencyTol * scale;
}

MetricSpec MetricSpec::defaults(Orthonormalization variant) {
  return MetricSpec{variant == Orthonormalization::I ? 0.5 : 1.0, variant};
}

void MetricSpec::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("metric parameter rho must be positive and finite");
  }
}

const char* to_string(Orthonormalization variant) {
  return variant == Orthonormalization::I ? "I" : "II";
}

Orthonormalization orthonormalization_from_string(const std::string& text) {
  if (text == "I" || text == "1") return Orthonormalization::I;
  if (text == "II" || text == "2") return Orthonormalization::II;
  throw std::invalid_argument("unknown metric variant '" + text + "' (expected I or II)");
}

Matrix project_normal(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "project_normal");
  return apply_j_right(x) * skew_part(xt_jt(x, y));
}

Matrix project_tangent(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "project_tangent");
  // Y - P_N(Y) equals X J sym(X^T J^T Y) + (I - X J X^T J^T) Y.
  return y - apply_j_right(x) * skew_part(xt_jt(x, y));
}

Matrix LowRankSymmetric::dense() const {
  const Matrix lr = left * right.transpose();
  return lr + lr.transpose();
}

LowRankSymmetric tangent_to_s(const Matrix& x, const Matrix& z) {
  require_same_shape(x, z, "tangent_to_s");
  if (!is_tangent(x, z)) {
    throw std::invalid_argument("tangent_to_s: Z is not tangent at X (residual " +
                                std::to_string(tangency_residual(x, z)) + ")");
  }
  LowRankSymmetric s;
  s.right = apply_j_right(x);
  s.left = z - 0.5 * (s.right * xt_jt(x, z));
  return s;
}

MetricOperator::MetricOperator(const Matrix& x, const MetricSpec& spec) : x_(x), spec_(spec) {
  require_even_shape(x, "MetricOperator");
  spec_.validate();
  GramFactor g = factor_gram(x_);
  gram_ = std::move(g.llt);
  gram_condition_ = g.condition;
}

Matrix MetricOperator::apply(const Matrix& y) const {
  require_same_shape(x_, y, "MetricOperator::apply");
  // (1/rho) J X X^T J^T Y
  Matrix out = (1.0 / spec_.rho) * apply_j_left(Matrix(x_ * xt_jt(x_, y)));
  if (x_.rows() == x_.cols()) return out;  // no complement when p = n
  if (spec_.variant == Orthonormalization::I) {
    // -(J X J X^T J^T - J)^2 Y with T(V) = J (X J X^T J^T V - V).
    const Matrix xj = apply_j_right(x_);
    auto t = [&](const Matrix& v) -> Matrix {
      return apply_j_left(Matrix(xj * xt_jt(x_, v) - v));
    };
    out -= t(t(y));
  } else {
    out += complement_projection(x_, gram_, y);
  }
  return out;
}

double MetricOperator::inner(const Matrix& z1, const Matrix& z2) const {
  return frobenius_inner(z1, apply(z2));
}

double inner(const Matrix& x, const MetricSpec& spec, const Matrix& z1, const Matrix& z2) {
  require_same_shape(x, z1, "inner");
  require_same_shape(x, z2, "inner");
  return MetricOperator(x, spec).inner(z1, z2);
}

RiemannianGradient riemannian_gradient(const Matrix& x, const Matrix& egrad,
                                       const MetricSpec& spec) {
  require_even_shape(x, "riemannian_gradient");
  require_same_shape(x, egrad, "riemannian_gradient");
  spec.validate();

  RiemannianGradient out;
  const double half_rho = 0.5 * spec.rho;
  const Matrix xt_g = x.transpose() * egrad;

  // Second term of H_X egrad, per orthonormalization condition. It vanishes
  // identically when p = n (X is square and invertible).
  Matrix complement;
  if (x.rows() == x.cols()) {
    complement = Matrix::Zero(x.rows(), x.cols());
    out.gram_condition = factor_gram(x).condition;
  } else if (spec.variant == Orthonormalization::I) {
    // J (I - X (X^T X)^{-1} X^T) J^T egrad
    GramFactor g = factor_gram(x);
    out.gram_condition = g.condition;
    complement = apply_j_left(complement_projection(x, g.llt, apply_jt_left(egrad)));
  } else {
    // (I - X J X^T J^T)(I - X J X^T J^T)^T egrad
    const Matrix xj = apply_j_right(x);
    // (I - X J X^T J^T)^T V = V - J X J^T X^T V
    const Matrix v = egrad - apply_j_left(Matrix(x * apply_jt_left(xt_g)));
    complement = v - xj * xt_jt(x, v);
    out.gram_condition = factor_gram(x).condition;
  }
  out.p_f = half_rho * (x * xt_g) + complement;
  out.e_rho = half_rho * xt_g;

  const Matrix jx = apply_j_left(x);
  const Matrix xj = apply_j_right(x);
  // (XJ)^T J X, which is I only in exact arithmetic.
  const Matrix xjt_jx = xj.transpose() * jx;
  out.grad = out.p_f * xjt_jx + xj * (out.p_f.transpose() * jx);
  return out;
}

}  // namespace symstiefel
