#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "interlace/linalg.hpp"
#include "test_support.hpp"

using namespace interlace;

namespace {

HermitianMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<Complex>> entries;
  for (const auto& r : rows) {
    entries.emplace_back();
    for (double v : r) entries.back().emplace_back(v, 0.0);
  }
  return make_hermitian(entries);
}

void expect_matrix_near(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  ASSERT_EQ(a.dim(), b.dim());
  EXPECT_LE((a.matrix() - b.matrix()).norm(), tol);
}

}  // namespace

TEST(MakeHermitian, AcceptsIdentityAndPauliY) {
  const auto one = make_hermitian(std::vector<std::vector<Complex>>{{Complex(1, 0)}});
  EXPECT_EQ(one.dim(), 1u);
  EXPECT_DOUBLE_EQ(one(0, 0).real(), 1.0);

  const auto y = make_hermitian(std::vector<std::vector<Complex>>{{Complex(0, 0), Complex(0, 1)},
                                                                  {Complex(0, -1), Complex(0, 0)}});
  EXPECT_EQ(y(0, 1), Complex(0, 1));
  EXPECT_EQ(y(1, 0), Complex(0, -1));
}

TEST(MakeHermitian, RejectsAsymmetric) {
  try {
    make_hermitian(std::vector<std::vector<Complex>>{{Complex(0, 0), Complex(1, 0)},
                                                     {Complex(0, 0), Complex(0, 0)}});
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotHermitian);
  }
}

TEST(MakeHermitian, SymmetrizesWithinTolerance) {
  const auto h = make_hermitian(std::vector<std::vector<Complex>>{{Complex(1, 0), Complex(0.5, 0)},
                                                                  {Complex(0.5 + 1e-14, 0), Complex(2, 0)}});
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(MakeHermitian, RejectsEmptyAndRagged) {
  EXPECT_THROW(make_hermitian(std::vector<std::vector<Complex>>{}), Error);
  EXPECT_THROW(make_hermitian(std::vector<std::vector<Complex>>{{Complex(1, 0), Complex(0, 0)}}),
               Error);
}

TEST(Eigen, SmallExamples) {
  EXPECT_EQ(eigenvalues(HermitianMatrix::diagonal({3, 1})), (std::vector<double>{1, 3}));
  const auto swap = eigenvalues(real_matrix({{0, 1}, {1, 0}}));
  EXPECT_NEAR(swap[0], -1.0, 1e-12);
  EXPECT_NEAR(swap[1], 1.0, 1e-12);
  EXPECT_EQ(eigenvalues(HermitianMatrix::zero(2)), (std::vector<double>{0, 0}));
}

TEST(OperatorNorm, SmallExamples) {
  EXPECT_DOUBLE_EQ(operator_norm(HermitianMatrix::diagonal({1, -2})), 2.0);
  EXPECT_NEAR(operator_norm(HermitianMatrix::identity(3)), 1.0, 1e-14);
  EXPECT_NEAR(operator_norm(HermitianMatrix::diagonal({1, -1}) + HermitianMatrix::diagonal({-1, 1})),
              0.0, 1e-14);
}

TEST(PositiveNegativeParts, Examples) {
  auto [p, n] = positive_negative_parts(HermitianMatrix::diagonal({2, -3}));
  expect_matrix_near(p, HermitianMatrix::diagonal({2, 0}), 1e-12);
  expect_matrix_near(n, HermitianMatrix::diagonal({0, 3}), 1e-12);

  std::mt19937_64 rng(4);
  const auto psd = testsupport::psd(rng, 3, 3, 1.0);
  auto [pp, pn] = positive_negative_parts(psd);
  expect_matrix_near(pp, psd, 1e-12);
  EXPECT_LE(pn.matrix().norm(), 1e-12);

  const auto swap = real_matrix({{0, 1}, {1, 0}});
  auto [sp, sn] = positive_negative_parts(swap);
  for (const auto& part : {sp, sn}) {
    const auto ev = eigenvalues(part);
    EXPECT_NEAR(ev[0], 0.0, 1e-12);
    EXPECT_NEAR(ev[1], 1.0, 1e-12);
  }
  expect_matrix_near(absolute_value(swap), HermitianMatrix::identity(2), 1e-12);
}

TEST(PositiveNegativeParts, SpectraMatchClippedEigenvalues) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 8);
    const auto h = testsupport::hermitian(rng, d);
    const auto ev = eigenvalues(h);
    auto [p, n] = positive_negative_parts(h);
    std::vector<double> want_p, want_n;
    for (double l : ev) {
      want_p.push_back(std::max(l, 0.0));
      want_n.push_back(std::max(-l, 0.0));
    }
    std::sort(want_p.begin(), want_p.end());
    std::sort(want_n.begin(), want_n.end());
    const auto got_p = eigenvalues(p);
    const auto got_n = eigenvalues(n);
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_NEAR(got_p[i], want_p[i], 1e-8);
      EXPECT_NEAR(got_n[i], want_n[i], 1e-8);
    }
    expect_matrix_near(p - n, h, 1e-10);
    EXPECT_LE((p.matrix() * n.matrix()).norm(), 1e-8);
  }
}

TEST(RankOneCompletion, Examples) {
  EXPECT_TRUE(rank_one_completion(HermitianMatrix::identity(3), 0.3).empty());

  const auto half = rank_one_completion(HermitianMatrix::diagonal({0.5, 1.0}), 0.5);
  ASSERT_EQ(half.size(), 1u);
  expect_matrix_near(half[0], HermitianMatrix::diagonal({0.5, 0.0}), 1e-12);

  const auto zero = rank_one_completion(HermitianMatrix::zero(2), 1.0);
  ASSERT_EQ(zero.size(), 2u);
  expect_matrix_near(zero[0] + zero[1], HermitianMatrix::identity(2), 1e-12);
  for (const auto& z : zero) EXPECT_NEAR(z.trace(), 1.0, 1e-12);
}

TEST(RankOneCompletion, Invariants) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const double eps = testsupport::uniform(rng, 0.05, 1.0);
    const auto e = testsupport::capped(rng, d, testsupport::pick(rng, 1, 5), 0.5);
    const auto a = e.sum();
    const auto pieces = rank_one_completion(a, eps);
    HermitianMatrix total = a;
    for (const auto& p : pieces) {
      const auto ev = eigenvalues(p);
      EXPECT_GE(ev.front(), -1e-10);
      if (d > 1) EXPECT_LE(ev[d - 2], 1e-8);
      EXPECT_LE(p.trace(), eps + 1e-12);
      total = total + p;
    }
    EXPECT_LE((total.matrix() - HermitianMatrix::identity(d).matrix()).norm(), 1e-8 * d);
  }
}

TEST(RankOneCompletion, RejectsNonContraction) {
  EXPECT_THROW(rank_one_completion(HermitianMatrix::diagonal({2.0}), 0.5), Error);
}

TEST(BlockLift, Examples) {
  expect_matrix_near(block_diagonal_lift(HermitianMatrix::diagonal({1}), 2, 1, 2.0),
                     HermitianMatrix::diagonal({2, 0}), 0.0);
  expect_matrix_near(block_diagonal_lift(HermitianMatrix::identity(2), 1, 1, 1.0),
                     HermitianMatrix::identity(2), 0.0);
  expect_matrix_near(block_diagonal_lift(HermitianMatrix::diagonal({1, 0}), 2, 2, 0.5),
                     HermitianMatrix::diagonal({0, 0, 0.5, 0}), 0.0);
}

TEST(BlockLift, TraceAndNorm) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 5);
    const std::size_t r = testsupport::pick(rng, 1, 4);
    const std::size_t slot = testsupport::pick(rng, 1, r);
    const double s = testsupport::uniform(rng, 0.1, 3.0);
    const auto a = testsupport::hermitian(rng, d);
    const auto lifted = block_diagonal_lift(a, r, slot, s);
    EXPECT_EQ(lifted.dim(), d * r);
    EXPECT_NEAR(lifted.trace(), s * a.trace(), 1e-10);
    EXPECT_NEAR(operator_norm(lifted), s * operator_norm(a), 1e-10);
  }
  EXPECT_THROW(block_diagonal_lift(HermitianMatrix::identity(2), 2, 3, 1.0), Error);
}

TEST(EnsembleStats, Examples) {
  const auto id = ensemble_stats(
      MatrixEnsemble({HermitianMatrix::diagonal({1, 0}), HermitianMatrix::diagonal({0, 1})}));
  EXPECT_DOUBLE_EQ(id.epsilon, 1.0);
  EXPECT_NEAR(id.sum_norm, 1.0, 1e-14);
  EXPECT_TRUE(id.sum_leq_identity);
  EXPECT_TRUE(id.all_psd);

  const auto two = ensemble_stats(MatrixEnsemble({HermitianMatrix::diagonal({2})}));
  EXPECT_DOUBLE_EQ(two.epsilon, 2.0);
  EXPECT_FALSE(two.sum_leq_identity);

  EXPECT_FALSE(ensemble_stats(MatrixEnsemble({HermitianMatrix::diagonal({1, -1})})).all_psd);
}

TEST(Ensemble, RejectsMixedDimensions) {
  EXPECT_THROW(MatrixEnsemble({HermitianMatrix::identity(2), HermitianMatrix::identity(3)}), Error);
  EXPECT_THROW(MatrixEnsemble({}), Error);
}

TEST(OperatorNorm, SymmetricAndSubadditive) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const auto a = testsupport::hermitian(rng, d);
    const auto b = testsupport::hermitian(rng, d);
    EXPECT_DOUBLE_EQ(operator_norm(a), operator_norm(-a));
    EXPECT_LE(operator_norm(a + b), operator_norm(a) + operator_norm(b) + 1e-12);
    EXPECT_NEAR(operator_norm(a), testsupport::norm(a), 1e-10);
  }
}
