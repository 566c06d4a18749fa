#pragma once

#include "symstiefel/matkit.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace symstiefel {

/// Structural problem in a MatrixMarket stream (bad banner, size line, index).
class MatrixMarketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed banner naming a field or layout we do not read (complex, pattern, hermitian).
class UnsupportedFormat : public MatrixMarketError {
 public:
  using MatrixMarketError::MatrixMarketError;
};

/// Dense matrix from MatrixMarket text. Accepts coordinate and array layouts
/// with real or integer fields and general, symmetric or skew-symmetric
/// storage; symmetric storage is expanded.
Matrix parse_matrix_market(std::string_view text);

Matrix read_matrix_market(const std::string& path);

/// "array real general" text with 17 significant digits, so that parsing
/// the output reproduces the matrix exactly.
std::string format_matrix_market(const Matrix& a);

void write_matrix_market(const std::string& path, const Matrix& a);

}  // namespace symstiefel
