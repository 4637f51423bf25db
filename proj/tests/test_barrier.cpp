#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "interlace/barrier.hpp"
#include "test_support.hpp"

using namespace interlace;

namespace {

double log_det(const MatrixEnsemble& e, const BarrierPoint& pt) {
  Eigen::MatrixXcd m = pt.x * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(e.dim()),
                                                         static_cast<Eigen::Index>(e.dim()));
  for (std::size_t i = 0; i < e.size(); ++i) m += pt.shifts[i] * e[i].matrix();
  const Eigen::LLT<Eigen::MatrixXcd> llt(m);
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out += 2.0 * std::log(llt.matrixL()(i, i).real());
  return out;
}

BarrierPoint random_above(std::mt19937_64& rng, std::size_t m) {
  BarrierPoint pt;
  pt.x = testsupport::uniform(rng, 0.2, 3.0);
  for (std::size_t i = 0; i < m; ++i) pt.shifts.push_back(testsupport::uniform(rng, 0.0, 2.0));
  return pt;
}

}  // namespace

TEST(BarrierValue, Examples) {
  EXPECT_NEAR(barrier_value(MatrixEnsemble({HermitianMatrix::diagonal({1})}), {2.0, {0.0}}, 0), 0.5, 1e-14);
  EXPECT_NEAR(barrier_value(MatrixEnsemble({HermitianMatrix::identity(3)}), {1.5, {0.0}}, 0), 2.0, 1e-14);
  EXPECT_EQ(barrier_value(MatrixEnsemble({HermitianMatrix::identity(2), HermitianMatrix::zero(2)}),
                          {1.0, {0.0, 0.0}}, 1),
            0.0);
}

TEST(BarrierValue, Errors) {
  const MatrixEnsemble one({HermitianMatrix::diagonal({1})});
  try {
    barrier_value(one, {-1.0, {0.0}}, 0);
    FAIL() << "expected NotAboveRoots";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAboveRoots);
  }
  EXPECT_FALSE(above_roots(one, {-1.0, {0.5}}));
  EXPECT_TRUE(above_roots(one, {-1.0, {1.5}}));
  EXPECT_THROW(above_roots(MatrixEnsemble({HermitianMatrix::diagonal({1, -1})}), {2.0, {0.0}}), Error);
}

TEST(BarrierValue, MatchesFiniteDifferences) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const std::size_t m = testsupport::pick(rng, 1, 6);
    const auto e = testsupport::capped(rng, d, m, 1.0);
    const auto pt = random_above(rng, m);
    const std::size_t j = testsupport::pick(rng, 0, m - 1);
    const double h = 1e-6;
    BarrierPoint up = pt, down = pt;
    up.shifts[j] += h;
    down.shifts[j] -= h;
    const double fd = (log_det(e, up) - log_det(e, down)) / (2.0 * h);
    const double exact = barrier_value(e, pt, j);
    EXPECT_NEAR(exact, fd, 1e-4 * std::max(std::abs(fd), 1e-3));
  }
}

TEST(BarrierShape, Examples) {
  const auto one = barrier_shape_check(MatrixEnsemble({HermitianMatrix::diagonal({1})}), {2.0, {0.0}}, 0,
                                       {0.0, 1.0, 2.0});
  ASSERT_EQ(one.values.size(), 3u);
  EXPECT_NEAR(one.values[0], 0.5, 1e-14);
  EXPECT_NEAR(one.values[1], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(one.values[2], 0.25, 1e-14);
  EXPECT_TRUE(one.passed());

  const auto zero = barrier_shape_check(MatrixEnsemble({HermitianMatrix::zero(2)}), {1.0, {0.0}}, 0);
  for (double v : zero.values) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(zero.passed());

  const auto id = barrier_shape_check(MatrixEnsemble({HermitianMatrix::identity(2)}), {1.0, {0.0}}, 0,
                                      {0.0, 1.0});
  EXPECT_NEAR(id.values[0], 2.0, 1e-14);
  EXPECT_NEAR(id.values[1], 1.0, 1e-14);
  EXPECT_TRUE(id.non_increasing);
}

TEST(BarrierShape, RandomEnsembles) {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const std::size_t m = testsupport::pick(rng, 1, 6);
    const auto e = testsupport::capped(rng, d, m, 1.0);
    const auto pt = random_above(rng, m);
    EXPECT_TRUE(barrier_shape_check(e, pt, testsupport::pick(rng, 0, m - 1)).passed());
  }
}

TEST(AgCondition, Examples) {
  EXPECT_TRUE(ag_condition(5.0, 0.0, 0.1));
  EXPECT_NEAR(ag_value(0.5, 1.0, 2.0), 0.75, 1e-15);
  EXPECT_TRUE(ag_condition(0.5, 1.0, 2.0));
  EXPECT_NEAR(ag_value(1.0, 1.0, 1.0), 3.0, 1e-15);
  EXPECT_FALSE(ag_condition(1.0, 1.0, 1.0));
  try {
    ag_value(0.5, 1.0, 0.0);
    FAIL() << "expected BadDelta";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadDelta);
  }
}

TEST(QxCertificate, Examples) {
  EXPECT_TRUE(qx_certificate(MatrixEnsemble({HermitianMatrix::zero(2)})).passed());
  try {
    qx_certificate(MatrixEnsemble({HermitianMatrix::diagonal({1.5})}));
    FAIL() << "expected QxNormalizationViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::QxNormalizationViolated);
  }
}

TEST(QxCertificate, NormalizedEnsembles) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const std::size_t m = testsupport::pick(rng, 1, 8);
    std::vector<HermitianMatrix> mats;
    for (std::size_t i = 0; i < m; ++i) {
      mats.push_back(testsupport::psd(rng, d, testsupport::pick(rng, 1, d), testsupport::uniform(rng, 0.1, 2.0)));
    }
    double max_trace = 0.0;
    HermitianMatrix weighted = HermitianMatrix::zero(d);
    for (const auto& b : mats) {
      max_trace = std::max(max_trace, b.trace());
      weighted = weighted + b.scaled(b.trace());
    }
    const double s = std::min(1.0 / max_trace, 1.0 / std::sqrt(testsupport::norm(weighted)));
    for (auto& b : mats) b = b.scaled(s * (1.0 - 1e-12));
    const auto rep = qx_certificate(MatrixEnsemble(mats));
    EXPECT_TRUE(rep.passed());
    for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(rep.delta[j], 2.0 * mats[j].trace(), 1e-14);
  }
}

TEST(Transfer, HypothesisIsChecked) {
  const RealPolynomial q = RealPolynomial::from_roots({0.0, 1.0});
  EXPECT_TRUE(transfer_holds(q, 0.0, 1.0 + 1e-9));
  EXPECT_THROW(transfer_holds(q, 1.0, 0.5), Error);
}
