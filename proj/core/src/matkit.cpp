#include "symstiefel/matkit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <sstream>

namespace symstiefel {

namespace {

Index half_of(Index count, const char* what) {
  if (count % 2 != 0) {
    throw DimensionError(std::string("J action requires an even ") + what +
                         " count, got " + std::to_string(count));
  }
  return count / 2;
}

}  // namespace

std::string shape_string(const Matrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

Matrix apply_j_left(Index m, const Matrix& a) {
  if (a.rows() != 2 * m) {
    throw DimensionError("apply_j_left: expected " + std::to_string(2 * m) +
                         " rows, got " + shape_string(a));
  }
  Matrix out(a.rows(), a.cols());
  out.topRows(m) = a.bottomRows(m);
  out.bottomRows(m) = -a.topRows(m);
  return out;
}

Matrix apply_j_left(const Matrix& a) {
  return apply_j_left(half_of(a.rows(), "row"), a);
}

Matrix apply_jt_left(const Matrix& a) {
  const Index m = half_of(a.rows(), "row");
  Matrix out(a.rows(), a.cols());
  out.topRows(m) = -a.bottomRows(m);
  out.bottomRows(m) = a.topRows(m);
  return out;
}

Matrix apply_j_right(const Matrix& a) {
  // [A1 A2] [[0, I], [-I, 0]] = [-A2, A1]
  const Index m = half_of(a.cols(), "column");
  Matrix out(a.rows(), a.cols());
  out.leftCols(m) = -a.rightCols(m);
  out.rightCols(m) = a.leftCols(m);
  return out;
}

Matrix apply_jt_right(const Matrix& a) {
  const Index m = half_of(a.cols(), "column");
  Matrix out(a.rows(), a.cols());
  out.leftCols(m) = a.rightCols(m);
  out.rightCols(m) = -a.leftCols(m);
  return out;
}

Matrix poisson_matrix(Index m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

Matrix sym_part(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("sym_part: matrix must be square, got " + shape_string(a));
  }
  return 0.5 * (a + a.transpose());
}

Matrix skew_part(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("skew_part: matrix must be square, got " + shape_string(a));
  }
  return 0.5 * (a - a.transpose());
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("expm: matrix must be square, got " + shape_string(a));
  }
  if (!a.allFinite()) {
    throw NumericRangeError("expm: input contains non-finite entries");
  }
  if (a.size() == 0) return a;
  // ||e^A|| <= e^{||A||}; beyond ~709 the squaring phase may overflow. Let it
  // try and judge by the result, since cancellation can keep e^A finite.
  Matrix out = a.exp();
  if (!out.allFinite()) {
    throw NumericRangeError("expm: result overflowed (||A||_1 = " +
                            std::to_string(a.cwiseAbs().colwise().sum().maxCoeff()) + ")");
  }
  return out;
}

LinearSolve solve_dense(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) {
    throw DimensionError("solve_dense: system matrix must be square, got " + shape_string(a));
  }
  if (b.rows() != a.rows()) {
    throw DimensionError("solve_dense: right-hand side " + shape_string(b) +
                         " does not conform with " + shape_string(a));
  }
  LinearSolve result;
  const double amax = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  if (!a.allFinite() || amax == 0.0) {
    result.singular = true;
    result.condition = std::numeric_limits<double>::infinity();
    return result;
  }
  Eigen::PartialPivLU<Matrix> lu(a);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < kSingularPivotRatio * amax) {
    result.singular = true;
    result.condition = std::numeric_limits<double>::infinity();
    return result;
  }
  result.condition = 1.0 / lu.rcond();
  result.solution = lu.solve(b);
  return result;
}

Matrix canonical_point(Index n, Index p) {
  if (p < 1 || p > n) {
    throw DimensionError("canonical_point: need 1 <= p <= n, got n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
  }
  Matrix x = Matrix::Zero(2 * n, 2 * p);
  for (Index i = 0; i < p; ++i) {
    x(i, i) = 1.0;
    x(n + i, p + i) = 1.0;
  }
  return x;
}

InitStrategy init_strategy_from_int(int strategy) {
  switch (strategy) {
    case 1: return InitStrategy::Canonical;
    case 2: return InitStrategy::LocalExponential;
    case 3: return InitStrategy::AmbientExponential;
    default:
      throw std::invalid_argument("initial-point strategy must be 1, 2 or 3, got " +
                                  std::to_string(strategy));
  }
}

Matrix rand_symplectic(Index n, Index p, InitStrategy strategy, Rng& rng) {
  if (p < 1 || p > n) {
    throw DimensionError("rand_symplectic: need 1 <= p <= n, got n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
  }
  switch (strategy) {
    case InitStrategy::Canonical:
      return canonical_point(n, p);
    case InitStrategy::LocalExponential: {
      const Matrix w = rand_gaussian(2 * p, 2 * p, rng);
      return canonical_point(n, p) * expm(apply_j_left(Matrix(w + w.transpose())));
    }
    case InitStrategy::AmbientExponential: {
      const Matrix w = rand_gaussian(2 * n, 2 * n, rng);
      const Matrix full = expm(apply_j_left(Matrix(w + w.transpose())));
      Matrix x(2 * n, 2 * p);
      x.leftCols(p) = full.leftCols(p);
      x.rightCols(p) = full.middleCols(n, p);
      return x;
    }
  }
  throw std::invalid_argument("rand_symplectic: unknown strategy");
}

Matrix rand_symplectic(Index n, Index p, InitStrategy strategy, std::uint64_t seed) {
  Rng rng(seed);
  return rand_symplectic(n, p, strategy, rng);
}

}  // namespace symstiefel
