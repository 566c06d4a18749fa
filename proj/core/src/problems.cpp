#include "symstiefel/problems.hpp"

#include "symstiefel/manifold.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace symstiefel {

namespace {

void require_target_shape(const Matrix& a, const char* who) {
  if (a.rows() == 0 || a.rows() % 2 != 0 || a.cols() % 2 != 0 || a.cols() == 0 ||
      a.cols() > a.rows()) {
    throw DimensionError(std::string(who) + ": expected a 2n x 2p matrix with p <= n, got " +
                         shape_string(a));
  }
}

void require_square_even(const Matrix& a, Index p, const char* who) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0 || a.rows() == 0) {
    throw DimensionError(std::string(who) + ": expected a square 2n x 2n matrix, got " +
                         shape_string(a));
  }
  if (p < 1 || p > a.rows() / 2) {
    throw DimensionError(std::string(who) + ": need 1 <= p <= n, got p=" + std::to_string(p));
  }
}

}  // namespace

ProblemDef nearest_symplectic(const Matrix& target) {
  require_target_shape(target, "nearest_symplectic");
  auto a = std::make_shared<const Matrix>(target);
  ProblemDef def;
  def.n = target.rows() / 2;
  def.p = target.cols() / 2;
  def.value = [a](const Matrix& x) { return (x - *a).squaredNorm(); };
  def.gradient = [a](const Matrix& x) -> Matrix { return 2.0 * (x - *a); };
  def.descriptor.kind = "nearest";
  return def;
}

ProblemDef extrinsic_mean(const std::vector<Matrix>& samples) {
  if (samples.empty()) throw std::invalid_argument("extrinsic_mean: sample list is empty");
  const Matrix& first = samples.front();
  require_target_shape(first, "extrinsic_mean");
  Matrix mean = Matrix::Zero(first.rows(), first.cols());
  double mean_sq = 0.0;
  for (const Matrix& s : samples) {
    if (s.rows() != first.rows() || s.cols() != first.cols()) {
      throw DimensionError("extrinsic_mean: sample of shape " + shape_string(s) +
                           " differs from " + shape_string(first));
    }
    mean += s;
    mean_sq += s.squaredNorm();
  }
  const double count = static_cast<double>(samples.size());
  mean /= count;
  mean_sq /= count;
  // (1/N) sum ||X - X_i||^2 = ||X - A||^2 + offset
  const double offset = mean_sq - mean.squaredNorm();

  ProblemDef def = nearest_symplectic(mean);
  auto a = std::make_shared<const Matrix>(std::move(mean));
  def.value = [a, offset](const Matrix& x) { return (x - *a).squaredNorm() + offset; };
  def.descriptor.kind = "mean";
  return def;
}

ProblemDef brockett_trace(const Matrix& a, Index p) {
  require_square_even(a, p, "brockett_trace");
  ProblemDef def;
  const double skew = skew_part(a).norm();
  const double scale = a.norm();
  if (skew > 1e-12 * scale) {
    std::ostringstream os;
    os << "input matrix is not symmetric (||skew(A)||_F / ||A||_F = " << skew / scale
       << "); using sym(A)";
    def.descriptor.notes.push_back(os.str());
  }
  auto sym = std::make_shared<const Matrix>(sym_part(a));
  def.n = a.rows() / 2;
  def.p = p;
  def.value = [sym](const Matrix& x) { return ((*sym) * x).cwiseProduct(x).sum(); };
  def.gradient = [sym](const Matrix& x) -> Matrix { return 2.0 * ((*sym) * x); };
  def.value_and_gradient = [sym](const Matrix& x, Matrix& egrad) {
    egrad.noalias() = (*sym) * x;
    const double f = egrad.cwiseProduct(x).sum();
    egrad *= 2.0;
    return f;
  };
  def.descriptor.kind = "brockett";
  return def;
}

void require_spd(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(who) + ": matrix must be square, got " + shape_string(m));
  }
  if ((m - m.transpose()).norm() > 1e-12 * m.norm()) {
    throw std::domain_error(std::string(who) + ": matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error(std::string(who) + ": matrix is not positive definite");
  }
}

ProblemDef symplectic_eig_smallest(const Matrix& m, Index p) {
  require_square_even(m, p, "symplectic_eig_smallest");
  require_spd(m, "symplectic_eig_smallest");
  ProblemDef def = brockett_trace(m, p);
  def.descriptor.kind = "sympeig";
  return def;
}

SymplecticEigenEstimate extract_eigenvalues(const Matrix& m, const Matrix& x) {
  if (m.rows() != m.cols() || m.cols() != x.rows() || x.cols() % 2 != 0) {
    throw DimensionError("extract_eigenvalues: shapes " + shape_string(m) + " and " +
                         shape_string(x) + " do not conform");
  }
  const Index p = x.cols() / 2;
  const Matrix proj = x.transpose() * sym_part(m) * x;
  SymplecticEigenEstimate out;
  out.values.resize(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    out.values[static_cast<std::size_t>(j)] = 0.5 * (proj(j, j) + proj(p + j, p + j));
  }
  out.smallest = *std::min_element(out.values.begin(), out.values.end());
  Matrix off = proj;
  off.diagonal().setZero();
  out.pairing_residual = off.norm();
  return out;
}

std::vector<double> symplectic_eig_oracle(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw DimensionError("symplectic_eig_oracle: expected a square 2n x 2n matrix, got " +
                         shape_string(m));
  }
  require_spd(m, "symplectic_eig_oracle");
  const Index n = m.rows() / 2;
  Eigen::EigenSolver<Matrix> eig(apply_jt_left(m), /*computeEigenvectors=*/false);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("symplectic_eig_oracle: eigensolver did not converge");
  }
  const auto& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i).real()) > 1e-8 * scale) {
      std::ostringstream os;
      os << "symplectic_eig_oracle: eigenvalue " << lambda(i) << " is off the imaginary axis";
      throw std::domain_error(os.str());
    }
    if (lambda(i).imag() > 0.0) d.push_back(lambda(i).imag());
  }
  if (static_cast<Index>(d.size()) != n) {
    throw std::domain_error("symplectic_eig_oracle: expected " + std::to_string(n) +
                            " positive imaginary parts, found " + std::to_string(d.size()));
  }
  std::sort(d.begin(), d.end());
  return d;
}

Matrix spd_with_decay(Index n, double lambda, std::uint64_t seed) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("spd_with_decay: lambda must be >= 1");
  if (n < 1) throw DimensionError("spd_with_decay: n must be positive");
  const Matrix q = rand_orthogonal(2 * n, seed);
  Eigen::VectorXd diag(2 * n);
  for (Index i = 0; i < 2 * n; ++i) diag(i) = std::pow(lambda, -static_cast<double>(i));
  Matrix a = q * diag.asDiagonal() * q.transpose();
  return sym_part(a);
}

std::vector<Matrix> sample_cloud(const Matrix& center, Index count, double spread,
                                 std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_cloud: count must be positive");
  if (center.cols() % 2 != 0) {
    throw DimensionError("sample_cloud: center must be 2n x 2p, got " + shape_string(center));
  }
  const Index p2 = center.cols();
  Rng rng(seed);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const Matrix w = spread * rand_gaussian(p2, p2, rng);
    out.push_back(center * expm(apply_j_left(Matrix(w + w.transpose()))));
  }
  return out;
}

Matrix scale_by_spectral_norm(const Matrix& a, double factor) {
  Eigen::BDCSVD<Matrix> svd(a);
  const double norm2 = svd.singularValues()(0);
  if (norm2 == 0.0) throw std::domain_error("scale_by_spectral_norm: zero matrix");
  return (factor / norm2) * a;
}

Matrix normalize_max_abs(const Matrix& a) {
  const double amax = a.cwiseAbs().maxCoeff();
  if (amax == 0.0) throw std::domain_error("normalize_max_abs: zero matrix");
  return a / amax;
}

double gradient_check(const ProblemDef& problem, const Matrix& x, const Matrix& direction) {
  const double dnorm = direction.norm();
  if (dnorm == 0.0) throw std::invalid_argument("gradient_check: zero direction");
  const Matrix d = direction / dnorm;
  const double h = 1e-6 * (1.0 + x.norm());
  const double fd = (problem.value(x + h * d) - problem.value(x - h * d)) / (2.0 * h);
  const double exact = frobenius_inner(problem.gradient(x), d);
  const double denom =
      std::max({std::abs(exact), std::abs(fd), std::numeric_limits<double>::min()});
  return std::abs(fd - exact) / denom;
}

}  // namespace symstiefel
