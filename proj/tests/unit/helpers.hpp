#pragma once

#include "symstiefel/manifold.hpp"
#include "symstiefel/matkit.hpp"

#include <cmath>

namespace testing_helpers {

using symstiefel::Index;
using symstiefel::Matrix;

inline Matrix dense_j(Index m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

// I0 expm(J (W + W^T)) with W scaled so that ||X|| stays moderate for any p.
inline Matrix random_point(Index n, Index p, std::uint64_t seed) {
  const Matrix w = symstiefel::rand_gaussian(2 * p, 2 * p, seed) / std::sqrt(8.0 * p);
  const Matrix e = symstiefel::expm(symstiefel::apply_j_left(Matrix(w + w.transpose())));
  return symstiefel::canonical_point(n, p) * e;
}

inline Matrix random_tangent(const Matrix& x, std::uint64_t seed) {
  return symstiefel::project_tangent(x, symstiefel::rand_gaussian(x.rows(), x.cols(), seed));
}

}  // namespace testing_helpers
