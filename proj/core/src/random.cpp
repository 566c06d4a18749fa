#include "symstiefel/matkit.hpp"

#include <cmath>

namespace symstiefel {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

Matrix rand_gaussian(Index rows, Index cols, Rng& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("rand_gaussian: dimensions must be positive");
  }
  Matrix out(rows, cols);
  // Fill in column-major order so the stream layout matches storage.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = rng.normal();
  }
  return out;
}

Matrix rand_gaussian(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return rand_gaussian(rows, cols, rng);
}

Matrix rand_orthogonal(Index m, Rng& rng) {
  const Matrix g = rand_gaussian(m, m, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(m, m);
  const Matrix& r = qr.matrixQR();
  for (Index i = 0; i < m; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

Matrix rand_orthogonal(Index m, std::uint64_t seed) {
  Rng rng(seed);
  return rand_orthogonal(m, rng);
}

}  // namespace symstiefel
