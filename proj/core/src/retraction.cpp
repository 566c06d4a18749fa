#include "symstiefel/retraction.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace symstiefel {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(who) + ": shape mismatch " + shape_string(a) + " vs " +
                         shape_string(b));
  }
}

[[noreturn]] void reject(const char* who, double t, double condition) {
  std::ostringstream os;
  os << who << ": step t=" << t << " is outside the retraction domain (condition "
     << condition << ")";
  throw DomainError(os.str(), condition);
}

}  // namespace

const char* to_string(RetractionKind kind) {
  switch (kind) {
    case RetractionKind::QuasiGeodesic: return "qgeo";
    case RetractionKind::CayleyLowRank: return "cayley";
    case RetractionKind::CayleyDense: return "cayley-dense";
  }
  return "?";
}

RetractionKind retraction_from_string(const std::string& text) {
  if (text == "qgeo" || text == "quasi-geodesic") return RetractionKind::QuasiGeodesic;
  if (text == "cayley") return RetractionKind::CayleyLowRank;
  if (text == "cayley-dense") return RetractionKind::CayleyDense;
  throw std::invalid_argument("unknown retraction '" + text +
                              "' (expected qgeo, cayley or cayley-dense)");
}

Matrix retract_qgeo(const Matrix& x, const Matrix& z, double t) {
  require_same_shape(x, z, "retract_qgeo");
  const Index p2 = x.cols();
  const Matrix w = x.transpose() * apply_j_left(z);
  const Matrix jw = apply_j_left(w);
  const Matrix jztjz = apply_j_left(Matrix(z.transpose() * apply_j_left(z)));

  Matrix block(2 * p2, 2 * p2);
  block.topLeftCorner(p2, p2) = -jw;
  block.topRightCorner(p2, p2) = jztjz;
  block.bottomLeftCorner(p2, p2).setIdentity();
  block.bottomRightCorner(p2, p2) = -jw;

  const Matrix e = expm(t * block);
  const Matrix head = x * e.topLeftCorner(p2, p2) + z * e.bottomLeftCorner(p2, p2);
  return head * expm(t * jw);
}

CayleyCurve CayleyCurve::from_gradient(const Matrix& x, const Matrix& p_f) {
  require_same_shape(x, p_f, "CayleyCurve::from_gradient");
  const Index p2 = x.cols();
  const Matrix xj = apply_j_right(x);
  // L = -P_f, R = XJ. The 4p x 4p blocks are formed from U and V directly
  // rather than through X^T J X = J, so rounding drift in X is not amplified.
  CayleyCurve c;
  c.x_ = x;
  c.u_.resize(x.rows(), 2 * p2);
  c.u_.leftCols(p2) = -p_f;
  c.u_.rightCols(p2) = xj;
  Matrix v(x.rows(), 2 * p2);
  v.leftCols(p2) = xj;
  v.rightCols(p2) = -p_f;
  c.inner_ = v.transpose() * apply_jt_left(c.u_);
  c.rhs_ = v.transpose() * apply_j_left(x);
  return c;
}

CayleyCurve CayleyCurve::from_gradient_closed_form(const Matrix& x, const Matrix& p_f,
                                                   const Matrix& e_rho) {
  require_same_shape(x, p_f, "CayleyCurve::from_gradient_closed_form");
  const Index p2 = x.cols();
  if (e_rho.rows() != p2 || e_rho.cols() != p2) {
    throw DimensionError("CayleyCurve::from_gradient_closed_form: E_rho must be " +
                         std::to_string(p2) + "x" + std::to_string(p2));
  }
  CayleyCurve c;
  c.x_ = x;
  c.u_.resize(x.rows(), 2 * p2);
  c.u_.leftCols(p2) = -p_f;
  c.u_.rightCols(p2) = apply_j_right(x);

  // [[E, J^T], [P^T J^T P, -E^T]]
  c.inner_.resize(2 * p2, 2 * p2);
  c.inner_.topLeftCorner(p2, p2) = e_rho;
  c.inner_.topRightCorner(p2, p2) = -poisson_matrix(p2 / 2);
  c.inner_.bottomLeftCorner(p2, p2) = p_f.transpose() * apply_jt_left(p_f);
  c.inner_.bottomRightCorner(p2, p2) = -e_rho.transpose();

  // [I; -E^T J]
  c.rhs_.resize(2 * p2, p2);
  c.rhs_.topRows(p2).setIdentity();
  c.rhs_.bottomRows(p2) = -apply_j_right(Matrix(e_rho.transpose()));
  return c;
}

CayleyCurve CayleyCurve::from_tangent(const Matrix& x, const Matrix& z) {
  const LowRankSymmetric s = tangent_to_s(x, z);
  const Index p2 = x.cols();
  CayleyCurve c;
  c.x_ = x;
  // U = [L R], V = [R L]
  c.u_.resize(x.rows(), 2 * p2);
  c.u_.leftCols(p2) = s.left;
  c.u_.rightCols(p2) = s.right;
  Matrix v(x.rows(), 2 * p2);
  v.leftCols(p2) = s.right;
  v.rightCols(p2) = s.left;
  c.inner_ = v.transpose() * apply_jt_left(c.u_);
  c.rhs_ = v.transpose() * apply_j_left(x);
  return c;
}

Matrix CayleyCurve::at(double t) const {
  if (t == 0.0) return x_;
  const Index k = inner_.rows();
  const Matrix system = Matrix::Identity(k, k) + (0.5 * t) * inner_;
  const LinearSolve solved = solve_dense(system, rhs_);
  if (solved.singular || !(solved.condition <= kCayleyConditionLimit)) {
    reject("CayleyCurve", t, solved.condition);
  }
  Matrix y = x_ + t * (u_ * solved.solution);
  if (!y.allFinite()) reject("CayleyCurve", t, std::numeric_limits<double>::infinity());
  return y;
}

Matrix retract_cayley_lowrank(const Matrix& x, const Matrix& p_f, double t) {
  return CayleyCurve::from_gradient(x, p_f).at(t);
}

Matrix retract_cayley_generic(const Matrix& x, const Matrix& z, double t) {
  require_same_shape(x, z, "retract_cayley_generic");
  return CayleyCurve::from_tangent(x, z).at(t);
}

Matrix retract_cayley_dense(const Matrix& x, const Matrix& z, double t) {
  require_same_shape(x, z, "retract_cayley_dense");
  if (t == 0.0) return x;
  const Matrix sj = apply_j_right(tangent_to_s(x, z).dense());
  const Index m = x.rows();
  const Matrix lhs = Matrix::Identity(m, m) - (0.5 * t) * sj;
  const Matrix rhs = x + (0.5 * t) * (sj * x);
  const LinearSolve solved = solve_dense(lhs, rhs);
  if (solved.singular || !(solved.condition <= kCayleyConditionLimit)) {
    reject("retract_cayley_dense", t, solved.condition);
  }
  return solved.solution;
}

}  // namespace symstiefel
