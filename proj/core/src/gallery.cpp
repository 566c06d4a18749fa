#include "symstiefel/problems.hpp"

#include <cmath>

namespace symstiefel {

GalleryMatrix gallery_from_string(const std::string& name) {
  if (name == "lehmer") return GalleryMatrix::Lehmer;
  if (name == "wilkinson_sq" || name == "wilkinson") return GalleryMatrix::WilkinsonSquared;
  if (name == "companion_sq" || name == "companion") return GalleryMatrix::CompanionSquared;
  if (name == "central_diff") return GalleryMatrix::CentralDifference;
  throw std::invalid_argument("unknown gallery matrix '" + name +
                              "' (expected lehmer, wilkinson_sq, companion_sq, central_diff)");
}

const char* to_string(GalleryMatrix which) {
  switch (which) {
    case GalleryMatrix::Lehmer: return "lehmer";
    case GalleryMatrix::WilkinsonSquared: return "wilkinson_sq";
    case GalleryMatrix::CompanionSquared: return "companion_sq";
    case GalleryMatrix::CentralDifference: return "central_diff";
  }
  return "?";
}

namespace {

Matrix lehmer(Index m) {
  Matrix a(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      const double lo = static_cast<double>(std::min(i, j) + 1);
      const double hi = static_cast<double>(std::max(i, j) + 1);
      a(i, j) = lo / hi;
    }
  }
  return a;
}

// Symmetric tridiagonal, unit off-diagonals, diagonal |-(m-1)/2 : (m-1)/2|
// (the MATLAB wilkinson(m) layout).
Matrix wilkinson(Index m) {
  Matrix w = Matrix::Zero(m, m);
  const double half = 0.5 * static_cast<double>(m - 1);
  for (Index i = 0; i < m; ++i) {
    w(i, i) = std::abs(static_cast<double>(i) - half);
    if (i + 1 < m) {
      w(i, i + 1) = 1.0;
      w(i + 1, i) = 1.0;
    }
  }
  return w;
}

// Companion matrix of the polynomial with coefficients 1, 2, ..., m + 1.
Matrix companion(Index m) {
  Matrix c = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) c(0, j) = -static_cast<double>(j + 2);
  for (Index i = 1; i < m; ++i) c(i, i - 1) = 1.0;
  return c;
}

Matrix central_difference(Index m) {
  Matrix a = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < m) {
      a(i, i + 1) = -1.0;
      a(i + 1, i) = -1.0;
    }
  }
  return a;
}

}  // namespace

Matrix gallery(GalleryMatrix which, Index size) {
  if (size < 1) throw DimensionError("gallery: size must be positive");
  switch (which) {
    case GalleryMatrix::Lehmer:
      return lehmer(size);
    case GalleryMatrix::WilkinsonSquared: {
      const Matrix w = wilkinson(size);
      return w.transpose() * w;
    }
    case GalleryMatrix::CompanionSquared: {
      const Matrix c = companion(size);
      return c.transpose() * c;
    }
    case GalleryMatrix::CentralDifference:
      return central_difference(size);
  }
  throw std::invalid_argument("gallery: unknown matrix");
}

}  // namespace symstiefel
