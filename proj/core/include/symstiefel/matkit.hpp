#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace symstiefel {

/// Dense real matrix used across the library (column-major, Eigen storage).
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when operand shapes do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation leaves the representable floating-point range.
class NumericRangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// ---------------------------------------------------------------------------
// Poisson structure J_{2m} = [[0, I_m], [-I_m, 0]], applied implicitly.
// ---------------------------------------------------------------------------

/// J_{2m} * A. A must have exactly 2m rows.
Matrix apply_j_left(Index m, const Matrix& a);
/// J * A with m inferred from the (even) row count of A.
Matrix apply_j_left(const Matrix& a);
/// J^T * A = -J * A.
Matrix apply_jt_left(const Matrix& a);
/// A * J_{2m} with m inferred from the (even) column count of A.
Matrix apply_j_right(const Matrix& a);
/// A * J^T = -A * J.
Matrix apply_jt_right(const Matrix& a);
/// Materialized J_{2m}. Intended for small matrices and tests.
Matrix poisson_matrix(Index m);

Matrix sym_part(const Matrix& a);
Matrix skew_part(const Matrix& a);

/// Matrix exponential via scaling and squaring with a diagonal Pade
/// approximant (order up to 13). Throws NumericRangeError when the input or
/// result is not finite.
Matrix expm(const Matrix& a);

/// Outcome of a pivoted-LU solve. `singular` is set when the smallest pivot
/// magnitude falls below kSingularPivotRatio * max|A_ij|; `solution` is then
/// left empty.
struct LinearSolve {
  Matrix solution;
  bool singular = false;
  /// 1-norm condition estimate; +inf when singular.
  double condition = 0.0;
};

inline constexpr double kSingularPivotRatio = 1e-14;

LinearSolve solve_dense(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// Seeded generators.
// ---------------------------------------------------------------------------

/// Portable random source: 64-bit Mersenne Twister (bit sequence fixed by the
/// C++ standard) with a locally defined uniform/normal transform so that the
/// same seed yields the same matrices on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Matrix rand_gaussian(Index rows, Index cols, Rng& rng);
Matrix rand_gaussian(Index rows, Index cols, std::uint64_t seed);

/// Q factor of a Gaussian matrix's QR factorization, normalized so that
/// diag(R) >= 0.
Matrix rand_orthogonal(Index m, Rng& rng);
Matrix rand_orthogonal(Index m, std::uint64_t seed);

/// Columns {1..p, n+1..n+p} of I_{2n}.
Matrix canonical_point(Index n, Index p);

/// Initial-point strategies for random symplectic matrices.
enum class InitStrategy {
  Canonical = 1,           ///< I0
  LocalExponential = 2,    ///< I0 * expm(J (W + W^T)), W ~ 2p x 2p Gaussian
  AmbientExponential = 3,  ///< columns of expm(J (W + W^T)), W ~ 2n x 2n
};

InitStrategy init_strategy_from_int(int strategy);

Matrix rand_symplectic(Index n, Index p, InitStrategy strategy, Rng& rng);
Matrix rand_symplectic(Index n, Index p, InitStrategy strategy, std::uint64_t seed);

/// <A, B> = tr(A^T B).
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

bool all_finite(const Matrix& a);

std::string shape_string(const Matrix& a);

}  // namespace symstiefel
