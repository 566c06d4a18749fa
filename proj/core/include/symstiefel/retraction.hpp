#pragma once

#include "symstiefel/manifold.hpp"

#include <string>

namespace symstiefel {

enum class RetractionKind {
  QuasiGeodesic,
  CayleyLowRank,
  /// O(n^3) reference that forms 2n x 2n matrices; for tests and small n.
  CayleyDense,
};

const char* to_string(RetractionKind kind);
RetractionKind retraction_from_string(const std::string& text);

/// The retraction is undefined at the requested step: the Cayley system
/// I - (t/2) S J is singular or too ill-conditioned to trust.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Systems whose condition estimate exceeds this are rejected as singular.
inline constexpr double kCayleyConditionLimit = 1e12;

/// Quasi-geodesic through X with initial velocity Z, evaluated at t:
/// [X, Z] expm(t [[-JW, J Z^T J Z], [I, -JW]]) [I; 0] expm(t J W), W = X^T J Z.
/// Throws NumericRangeError if an exponential overflows.
Matrix retract_qgeo(const Matrix& x, const Matrix& z, double t);

/// Cayley step along the negative Riemannian gradient from P_f = H_X egrad
/// (see riemannian_gradient()); needs one 4p x 4p solve.
Matrix retract_cayley_lowrank(const Matrix& x, const Matrix& p_f, double t);

/// Cayley retraction cay((t/2) S_{X,Z} J) X for any tangent Z via the
/// Sherman-Morrison-Woodbury reduction to a 4p x 4p system.
Matrix retract_cayley_generic(const Matrix& x, const Matrix& z, double t);

/// Dense reference (I - (t/2) S J)^{-1} (I + (t/2) S J) X.
Matrix retract_cayley_dense(const Matrix& x, const Matrix& z, double t);

/// Low-rank Cayley curve t -> X + t U (I + (t/2) M)^{-1} B with U, M, B fixed,
/// so backtracking only repeats the 4p x 4p solve.
class CayleyCurve {
 public:
  /// Curve along -grad f(X) with L = -P_f, R = XJ; the 4p x 4p blocks are
  /// computed from U and V, so the map stays an exact Cayley transform even
  /// when X carries rounding drift.
  static CayleyCurve from_gradient(const Matrix& x, const Matrix& p_f);
  /// Same curve with the blocks simplified through X^T J X = J:
  /// M = [[E, J^T], [P^T J^T P, -E^T]], B = [I; -E^T J]. Agrees with
  /// from_gradient on the manifold but amplifies drift on long steps.
  static CayleyCurve from_gradient_closed_form(const Matrix& x, const Matrix& p_f,
                                               const Matrix& e_rho);
  /// Curve along an arbitrary tangent direction Z.
  static CayleyCurve from_tangent(const Matrix& x, const Matrix& z);

  /// Throws DomainError when I + (t/2) M is singular or ill-conditioned.
  Matrix at(double t) const;

  /// The 4p x 4p matrix M = V^T J^T U.
  const Matrix& inner_matrix() const { return inner_; }

 private:
  Matrix x_;
  Matrix u_;      // 2n x 4p
  Matrix inner_;  // 4p x 4p
  Matrix rhs_;    // 4p x 2p, V^T J X
};

}  // namespace symstiefel
