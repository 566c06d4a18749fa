#pragma once

#include "symstiefel/matkit.hpp"

#include <functional>
#include <string>
#include <vector>

namespace symstiefel {

/// Where a problem instance came from; echoed into experiment reports.
struct ProblemDescriptor {
  std::string kind;       ///< "nearest", "mean", "brockett", "sympeig", ...
  std::string generator;  ///< generator or gallery name, or "file"
  std::uint64_t seed = 0;
  std::string source;     ///< input file path when ingested
  std::vector<std::string> notes;
};

/// Objective on Sp(2p, 2n): value and Euclidean gradient of a smooth
/// extension to R^{2n x 2p}. Instances are immutable and may be shared.
struct ProblemDef {
  Index n = 0;
  Index p = 0;
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
  /// Optional: f(X) with the Euclidean gradient written to the second
  /// argument, for objectives where both share the expensive product.
  std::function<double(const Matrix&, Matrix&)> value_and_gradient;
  ProblemDescriptor descriptor;
};

}  // namespace symstiefel
