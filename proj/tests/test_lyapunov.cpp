#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "interlace/lyapunov.hpp"
#include "test_support.hpp"

using namespace interlace;

namespace {

double selection_gap(const MatrixEnsemble& e, const std::vector<double>& t,
                     const std::vector<std::size_t>& subset) {
  HermitianMatrix dev = HermitianMatrix::zero(e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) dev = dev - e[i].scaled(t[i]);
  for (auto i : subset) dev = dev + e[i];
  return testsupport::norm(dev);
}

void expect_partition(const PartitionResult& res, std::size_t m, std::size_t r) {
  ASSERT_EQ(res.blocks.size(), r);
  std::set<std::size_t> seen;
  std::size_t count = 0;
  for (const auto& b : res.blocks) {
    for (auto i : b) {
      seen.insert(i);
      ++count;
    }
  }
  EXPECT_EQ(count, m);
  EXPECT_EQ(seen.size(), m);
  if (!seen.empty()) EXPECT_EQ(*seen.rbegin(), m - 1);
}

}  // namespace

TEST(LyapunovSelect, Examples) {
  const MatrixEnsemble one({HermitianMatrix::diagonal({0.25})});
  const auto res = lyapunov_select(one, {0.5});
  EXPECT_NEAR(res.achieved, 0.125, 1e-12);
  EXPECT_NEAR(res.bound, 1.0, 1e-12);

  std::mt19937_64 rng(3);
  const auto e = testsupport::capped(rng, 3, 4, 0.3);
  EXPECT_EQ(lyapunov_select(e, std::vector<double>(4, 1.0)).subset, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_NEAR(lyapunov_select(e, std::vector<double>(4, 1.0)).achieved, 0.0, 1e-12);
  EXPECT_TRUE(lyapunov_select(e, std::vector<double>(4, 0.0)).subset.empty());
}

TEST(LyapunovSelect, Errors) {
  const MatrixEnsemble big({HermitianMatrix::diagonal({0.8}), HermitianMatrix::diagonal({0.8})});
  try {
    lyapunov_select(big, {0.5, 0.5});
    FAIL() << "expected SumExceedsIdentity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SumExceedsIdentity);
  }
  const MatrixEnsemble ok({HermitianMatrix::diagonal({0.3})});
  try {
    lyapunov_select(ok, {1.5});
    FAIL() << "expected WeightOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WeightOutOfRange);
  }
  EXPECT_THROW(lyapunov_select(MatrixEnsemble({HermitianMatrix::diagonal({0.3, -0.1})}), {0.5}), Error);
}

TEST(LyapunovSelect, TwoSqrtEpsilon) {
  std::mt19937_64 rng(71);
  for (double eps : {0.05, 0.1, 0.25}) {
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t d = testsupport::pick(rng, 1, 6);
      const std::size_t m = testsupport::pick(rng, 1, 8);
      const auto e = testsupport::capped(rng, d, m, eps);
      std::vector<double> t;
      for (std::size_t i = 0; i < m; ++i) t.push_back(testsupport::uniform(rng, 0.0, 1.0));
      const auto res = lyapunov_select(e, t);
      EXPECT_NEAR(res.achieved, selection_gap(e, t, res.subset), 1e-12);
      EXPECT_LE(res.achieved, 2.0 * std::sqrt(eps) + 1e-7);
    }
  }
}

TEST(WeightedApprox, Examples) {
  const MatrixEnsemble pair({HermitianMatrix::diagonal({1, 0}), HermitianMatrix::diagonal({0, 1})});
  EXPECT_LE(weighted_approx(pair, 0.5).selection.achieved, 2.0);
  const auto one = weighted_approx(MatrixEnsemble({HermitianMatrix::diagonal({0.25})}), 0.5);
  EXPECT_NEAR(one.selection.achieved, 0.125, 1e-12);
  try {
    weighted_approx(pair, 0.0);
    FAIL() << "expected WeightOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WeightOutOfRange);
  }
}

TEST(Partition, SingleBlock) {
  std::mt19937_64 rng(72);
  const auto e = testsupport::capped(rng, 3, 5, 0.3);
  const auto res = ks_r_partition(e, {1.0});
  expect_partition(res, 5, 1);
  EXPECT_LE(res.block_norms[0], res.bounds[0] + 1e-7);
}

TEST(Partition, DiagonalPair) {
  const MatrixEnsemble pair({HermitianMatrix::diagonal({1, 0}), HermitianMatrix::diagonal({0, 1})});
  const auto res = ks_r_partition(pair, {0.5, 0.5});
  expect_partition(res, 2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LE(res.block_norms[k], 1.0 + 1e-12);
    EXPECT_NEAR(res.bounds[k], 0.5 * std::pow(1.0 + std::sqrt(2.0), 2), 1e-12);
  }
}

TEST(Partition, RankOneHalves) {
  std::mt19937_64 rng(73);
  const auto e = testsupport::capped(rng, 3, 8, 0.25, 1);
  const auto res = ks_r_partition(e, {0.5, 0.5});
  expect_partition(res, 8, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    HermitianMatrix block = HermitianMatrix::zero(3);
    for (auto i : res.blocks[k]) block = block + e[i];
    EXPECT_NEAR(res.block_norms[k], testsupport::norm(block), 1e-12);
    EXPECT_LE(testsupport::norm(block), 0.5 * std::pow(1.0 + std::sqrt(0.5), 2) + 1e-7);
  }
}

TEST(Partition, Errors) {
  const MatrixEnsemble pair({HermitianMatrix::diagonal({0.5, 0}), HermitianMatrix::diagonal({0, 0.5})});
  for (const auto& bad : std::vector<std::vector<double>>{{}, {0.5, 0.6}, {1.2, -0.2}}) {
    try {
      ks_r_partition(pair, bad);
      FAIL() << "expected BadProportions";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::BadProportions);
    }
  }
  EXPECT_THROW(ks_r_partition(MatrixEnsemble({HermitianMatrix::diagonal({1.5})}), {0.5, 0.5}), Error);
}

TEST(Partition, CertificatesOnRandomInstances) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t r = testsupport::pick(rng, 2, 3);
    const std::size_t d = testsupport::pick(rng, 1, std::min<std::size_t>(6, 24 / r));
    const std::size_t m = testsupport::pick(rng, 2, 8);
    const double eps = testsupport::uniform(rng, 0.05, 0.6);
    const auto e = testsupport::capped(rng, d, m, eps, testsupport::pick(rng, 0, 1));
    std::vector<double> t(r, 1.0 / static_cast<double>(r));
    const auto res = ks_r_partition(e, t);
    expect_partition(res, m, r);
    double max_trace = 0.0;
    for (const auto& a : e) max_trace = std::max(max_trace, a.trace());
    const double re = static_cast<double>(r) * max_trace;
    const double gap = 2.0 * std::sqrt(re) + re;
    const auto total = e.sum();
    for (std::size_t k = 0; k < r; ++k) {
      HermitianMatrix block = HermitianMatrix::zero(d);
      for (auto i : res.blocks[k]) block = block + e[i];
      const auto upper = (total + HermitianMatrix::identity(d).scaled(gap)).scaled(t[k]) - block;
      EXPECT_GE(testsupport::min_eig(upper), -1e-7);
      EXPECT_LE(testsupport::norm(block), t[k] * std::pow(1.0 + std::sqrt(re), 2) + 1e-7);
      EXPECT_LE(testsupport::norm(block - total.scaled(t[k])), gap + 1e-7);
    }
  }
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(HermitianMatrix::diagonal({1, 0, 0})), 1u);
  EXPECT_EQ(numerical_rank(HermitianMatrix::identity(3)), 3u);
  EXPECT_EQ(numerical_rank(HermitianMatrix::zero(2)), 0u);
}
