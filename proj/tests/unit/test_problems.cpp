#include "helpers.hpp"

#include "symstiefel/problems.hpp"
#include "symstiefel/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <algorithm>
#include <iomanip>
#include <iostream>

using namespace symstiefel;
using testing_helpers::random_point;

namespace {

// Symplectic eigenvalues as singular values of L^T J L with M = L L^T.
std::vector<double> eig_by_cholesky(const Matrix& m) {
  const Matrix l = Eigen::LLT<Matrix>(m).matrixL();
  Eigen::JacobiSVD<Matrix> svd(l.transpose() * apply_j_left(l));
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  std::sort(sv.begin(), sv.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < sv.size(); i += 2) out.push_back(sv[i]);
  return out;
}

}  // namespace

TEST(Problems, NearestValueAndGradient) {
  const Matrix a = rand_gaussian(6, 2, 1);
  const ProblemDef prob = nearest_symplectic(a);
  EXPECT_EQ(prob.n, 3);
  EXPECT_EQ(prob.p, 1);
  const Matrix x = random_point(3, 1, 2);
  EXPECT_DOUBLE_EQ(prob.value(x), (x - a).squaredNorm());
  EXPECT_EQ(prob.value(a), 0.0);
  EXPECT_EQ(prob.gradient(a).norm(), 0.0);
  EXPECT_THROW(nearest_symplectic(Matrix::Zero(3, 2)), DimensionError);
}

TEST(Problems, MeanMatchesSampleAverage) {
  const Matrix center = random_point(2, 1, 3);
  const std::vector<Matrix> cloud = sample_cloud(center, 12, 0.2, 4);
  for (const Matrix& s : cloud) EXPECT_LE(feasibility_residual(s), 1e-12);
  const ProblemDef prob = extrinsic_mean(cloud);
  const Matrix x = random_point(2, 1, 5);
  double direct = 0.0;
  for (const Matrix& s : cloud) direct += (x - s).squaredNorm();
  direct /= static_cast<double>(cloud.size());
  EXPECT_NEAR(prob.value(x), direct, 1e-12 * direct);
  EXPECT_THROW(extrinsic_mean({}), std::invalid_argument);
}

TEST(Problems, BrockettSymmetrizesWithNote) {
  const Matrix a = rand_gaussian(6, 6, 6);
  const ProblemDef prob = brockett_trace(a, 2);
  EXPECT_FALSE(prob.descriptor.notes.empty());
  const Matrix x = random_point(3, 2, 7);
  EXPECT_NEAR(prob.value(x), (x.transpose() * a * x).trace(), 1e-12 * a.norm() * x.squaredNorm());
  Matrix g;
  const double f = prob.value_and_gradient(x, g);
  EXPECT_DOUBLE_EQ(f, prob.value(x));
  EXPECT_LE((g - prob.gradient(x)).norm(), 1e-14 * g.norm());
  EXPECT_TRUE(brockett_trace(sym_part(a), 2).descriptor.notes.empty());
}

TEST(Problems, GradientCheckAllFamilies) {
  const Matrix x = random_point(4, 2, 8);
  const std::vector<ProblemDef> probs = {
      nearest_symplectic(rand_gaussian(8, 4, 9)),
      extrinsic_mean(sample_cloud(x, 5, 0.1, 10)),
      brockett_trace(spd_with_decay(4, 1.1, 11), 2),
  };
  for (const ProblemDef& prob : probs) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      EXPECT_LE(gradient_check(prob, x, rand_gaussian(8, 4, 20 + s)), 1e-6)
          << prob.descriptor.kind;
    }
  }
}

TEST(Problems, SpdWithDecaySpectrum) {
  const Matrix a = spd_with_decay(3, 2.0, 12);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  for (Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(eig.eigenvalues()(i), std::pow(2.0, -(5.0 - static_cast<double>(i))), 1e-14);
  }
  EXPECT_THROW(spd_with_decay(3, 0.5, 1), std::invalid_argument);
}

TEST(Problems, GalleryLehmer) {
  const Matrix l = gallery(GalleryMatrix::Lehmer, 3);
  Matrix expected(3, 3);
  expected << 1, 1. / 2, 1. / 3, 1. / 2, 1, 2. / 3, 1. / 3, 2. / 3, 1;
  EXPECT_LE((l - expected).norm(), 1e-16);
  EXPECT_EQ(gallery_from_string("central_diff"), GalleryMatrix::CentralDifference);
  EXPECT_EQ(gallery_from_string("wilkinson"), GalleryMatrix::WilkinsonSquared);
  EXPECT_THROW(gallery_from_string("hilbert"), std::invalid_argument);
}

TEST(Problems, OracleExamples) {
  const std::vector<double> one = symplectic_eig_oracle(Matrix::Identity(4, 4));
  ASSERT_EQ(one.size(), 2u);
  EXPECT_NEAR(one[0], 1.0, 1e-14);
  EXPECT_NEAR(one[1], 1.0, 1e-14);

  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 3, 5, 3, 5;
  const std::vector<double> ds = symplectic_eig_oracle(d);
  EXPECT_NEAR(ds[0], 3.0, 1e-13);
  EXPECT_NEAR(ds[1], 5.0, 1e-13);

  const std::vector<double> two = symplectic_eig_oracle(2.0 * Matrix::Identity(6, 6));
  for (double v : two) EXPECT_NEAR(v, 2.0, 1e-14);

  Matrix bad = Matrix::Identity(4, 4);
  bad(3, 3) = -1.0;
  EXPECT_THROW(symplectic_eig_oracle(bad), std::domain_error);
  EXPECT_THROW(symplectic_eig_oracle(Matrix::Identity(3, 3)), DimensionError);
}

TEST(Problems, OracleAgreesWithCholeskyRoute) {
  for (GalleryMatrix g : {GalleryMatrix::Lehmer, GalleryMatrix::CentralDifference,
                          GalleryMatrix::WilkinsonSquared}) {
    const Matrix m = gallery(g, 20);
    const std::vector<double> a = symplectic_eig_oracle(m);
    const std::vector<double> b = eig_by_cholesky(m);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-9 * b.back()) << to_string(g) << " " << i;
    }
  }
}

TEST(Problems, ExtractEigenvaluesDiagonal) {
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 3, 5, 3, 5;
  const SymplecticEigenEstimate e = extract_eigenvalues(d, canonical_point(2, 2));
  EXPECT_EQ(e.values, (std::vector<double>{3.0, 5.0}));
  EXPECT_EQ(e.smallest, 3.0);
  EXPECT_EQ(e.pairing_residual, 0.0);
  const SymplecticEigenEstimate one = extract_eigenvalues(d, canonical_point(2, 1));
  EXPECT_EQ(one.smallest, 3.0);
}

TEST(Problems, SympeigSolveMatchesOracle) {
  const Matrix m = spd_with_decay(6, 1.3, 13);
  const std::vector<double> oracle = symplectic_eig_oracle(m);
  SolverOptions opt;
  opt.stop.eps_grad = 1e-9;
  opt.stop.step_test = false;
  opt.stop.max_iter = 20000;

  // p = 1: the diagonal of X^T M X gives d_1 directly.
  const SolveReport r1 = solve(symplectic_eig_smallest(m, 1), canonical_point(6, 1), opt);
  ASSERT_TRUE(r1.converged());
  const SymplecticEigenEstimate e = extract_eigenvalues(m, r1.x);
  EXPECT_NEAR(e.smallest, oracle[0], 1e-8);
  EXPECT_LE(e.pairing_residual, 1e-6);

  // p = 2: the minimum is 2 (d_1 + d_2); the minimizer is only fixed up to an
  // orthosymplectic factor, so individual diagonal entries may mix.
  const SolveReport r2 = solve(symplectic_eig_smallest(m, 2), canonical_point(6, 2), opt);
  ASSERT_TRUE(r2.converged());
  EXPECT_NEAR(r2.last().fval, 2.0 * (oracle[0] + oracle[1]), 1e-8);
  EXPECT_THROW(symplectic_eig_smallest(-m, 2), std::domain_error);
}

// Squared Wilkinson (2n = 150) against its reference value. The squared
// companion matrix (2n = 1000) is badly conditioned and only reported.
TEST(Problems, GalleryReferenceValues) {
  const double w = symplectic_eig_oracle(gallery(GalleryMatrix::WilkinsonSquared, 150))[0];
  const double c = symplectic_eig_oracle(gallery(GalleryMatrix::CompanionSquared, 1000))[0];
  std::cout << "wilkinson_sq 150: d1 = " << std::setprecision(12) << w
            << " (reference 15.3471652403)\n"
            << "companion_sq 1000: d1 = " << c << " (reference 0.0547240371331)\n";
  RecordProperty("wilkinson_d1", std::to_string(w));
  RecordProperty("companion_d1", std::to_string(c));
  EXPECT_NEAR(w, 15.3471652403, 1e-9 * 15.3471652403);
  EXPECT_GT(c, 0.0);
}
