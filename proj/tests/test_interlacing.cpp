#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "interlace/interlacing.hpp"
#include "test_support.hpp"

using namespace interlace;

namespace {

FiniteDistribution fair_sign() { return FiniteDistribution({-1.0, 1.0}, {0.5, 0.5}); }

std::vector<FiniteDistribution> random_dists(std::mt19937_64& rng, std::size_t m) {
  std::vector<FiniteDistribution> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(testsupport::two_valued(rng));
  return out;
}

}  // namespace

TEST(FiniteDistribution, ValidatesAndSorts) {
  const FiniteDistribution d({3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0});
  EXPECT_EQ(d.values(), (std::vector<double>{0.0, 3.0}));
  EXPECT_NEAR(d.mean(), 1.0, 1e-15);
  EXPECT_NEAR(d.variance(), 2.0, 1e-14);
  EXPECT_EQ(d.index_of(3.0), std::optional<std::size_t>(1));
  EXPECT_FALSE(d.index_of(1.0).has_value());
  EXPECT_THROW(FiniteDistribution({0.0, 0.0}, {0.5, 0.5}), Error);
  EXPECT_THROW(FiniteDistribution({0.0, 1.0}, {0.5, 0.6}), Error);
  EXPECT_THROW(FiniteDistribution({0.0, 1.0}, {-0.1, 1.1}), Error);
  EXPECT_THROW(FiniteDistribution({}, {}), Error);
}

TEST(ConditionalSpec, Moments) {
  const auto free = conditional_spec_quadratic({fair_sign()}, {std::nullopt});
  EXPECT_DOUBLE_EQ(free.terms[0].a, 0.0);
  EXPECT_DOUBLE_EQ(free.terms[0].b, 0.0);
  EXPECT_DOUBLE_EQ(free.terms[0].c, -1.0);

  const auto fixed = conditional_spec_quadratic({fair_sign()}, {1.0});
  EXPECT_DOUBLE_EQ(fixed.terms[0].a, -1.0);
  EXPECT_DOUBLE_EQ(fixed.terms[0].b, 1.0);
  EXPECT_DOUBLE_EQ(fixed.terms[0].c, -1.0);

  const double t = 0.3;
  const auto centered = FiniteDistribution::bernoulli(t).affine(1.0, -t);
  const auto bern = conditional_spec_quadratic({centered}, {std::nullopt});
  EXPECT_NEAR(bern.terms[0].a, 0.0, 1e-15);
  EXPECT_NEAR(bern.terms[0].c, -t * (1 - t), 1e-15);

  EXPECT_THROW(conditional_spec_quadratic({fair_sign()}, {0.5}), Error);
}

TEST(QuadraticDescent, Examples) {
  const MatrixEnsemble one({HermitianMatrix::diagonal({1})});
  const auto tie = greedy_descent_quadratic(one, {fair_sign()});
  EXPECT_EQ(tie.assignment, (std::vector<double>{-1.0}));
  ASSERT_EQ(tie.maxroots.size(), 2u);
  EXPECT_NEAR(tie.maxroots[0], 1.0, 1e-9);
  EXPECT_NEAR(tie.maxroots[1], 1.0, 1e-9);

  const auto point = greedy_descent_quadratic(one, {FiniteDistribution::point_mass(0.0)});
  EXPECT_EQ(point.assignment, (std::vector<double>{0.0}));
  EXPECT_NEAR(point.maxroots[0], 0.0, 1e-9);
  EXPECT_NEAR(point.maxroots[1], 0.0, 1e-9);

  const MatrixEnsemble pair({HermitianMatrix::diagonal({1, 0}), HermitianMatrix::diagonal({0, 1})});
  const auto cert = greedy_descent_quadratic(pair, {fair_sign(), fair_sign()});
  HermitianMatrix sum = HermitianMatrix::zero(2);
  for (std::size_t i = 0; i < 2; ++i) sum = sum + pair[i].scaled(cert.assignment[i]);
  const auto root = testsupport::oracle_product(pair, DerivativeSpec::centered_unit(2));
  EXPECT_NEAR(testsupport::norm(sum), 1.0, 1e-12);
  EXPECT_LE(testsupport::norm(sum), maxroot_certified(root) + 1e-9);
}

TEST(LinearDescent, Examples) {
  const auto forced = greedy_descent_linear({MatrixChoice{{HermitianMatrix::diagonal({2})}, {1.0}}});
  EXPECT_EQ(forced.choices, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(forced.maxroots[0], 2.0, 1e-9);
  EXPECT_NEAR(forced.maxroots[1], 2.0, 1e-9);

  const auto split = greedy_descent_linear(
      {MatrixChoice{{HermitianMatrix::diagonal({0}), HermitianMatrix::diagonal({2})}, {0.5, 0.5}}});
  EXPECT_EQ(split.choices, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(split.maxroots[0], 1.0, 1e-9);
  EXPECT_NEAR(split.maxroots[1], 0.0, 1e-9);

  const auto chain = greedy_descent_linear({MatrixChoice{{HermitianMatrix::diagonal({1, 0})}, {1.0}},
                                            MatrixChoice{{HermitianMatrix::diagonal({0, 1})}, {1.0}}});
  for (double r : chain.maxroots) EXPECT_NEAR(r, 1.0, 1e-9);
}

TEST(LinearDescent, ZeroProbabilityBranchesAreSkipped) {
  const auto cert = greedy_descent_linear(
      {MatrixChoice{{HermitianMatrix::diagonal({0}), HermitianMatrix::diagonal({2})}, {0.0, 1.0}}});
  EXPECT_EQ(cert.choices, (std::vector<std::size_t>{1}));
}

TEST(GreedyDescent, AbortsOnNonRealRootedPolynomials) {
  const RealPolynomial bad({2.0, 0.0, 1.0});
  const BranchEvaluator eval = [&](const std::vector<std::size_t>&, std::size_t) { return bad; };
  try {
    greedy_descent(RealPolynomial({-1.0, 0.0, 1.0}), {{0.5, 0.5}}, eval);
    FAIL() << "expected NotRealRooted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotRealRooted);
  }
}

TEST(GreedyDescent, OriginShiftsReportedMaxroots) {
  const RealPolynomial root({-1.0, 1.0});
  const BranchEvaluator eval = [](const std::vector<std::size_t>&, std::size_t c) {
    return RealPolynomial({c == 0 ? -0.5 : -2.0, 1.0});
  };
  DescentOptions opt;
  opt.origin = 3.0;
  const auto cert = greedy_descent(root, {{0.5, 0.5}}, eval, opt);
  EXPECT_EQ(cert.choices, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(cert.maxroots[0], 4.0, 1e-9);
  EXPECT_NEAR(cert.maxroots[1], 3.5, 1e-9);
}

TEST(QuadraticDescent, MaxrootsNeverIncrease) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 6);
    const std::size_t m = testsupport::pick(rng, 1, 8);
    const auto e = testsupport::capped(rng, d, m, 1.0);
    const auto cert = greedy_descent_quadratic(e, random_dists(rng, m));
    EXPECT_TRUE(cert.non_increasing(1e-7));
    EXPECT_EQ(cert.maxroots.size(), m + 1);
    EXPECT_EQ(cert.residuals.size(), m);
  }
}

TEST(QuadraticDescent, GreedyLeafMeetsRootBoundExhaustively) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 4);
    const std::size_t m = testsupport::pick(rng, 1, 3);
    const auto e = testsupport::capped(rng, d, m, 1.0);
    std::vector<FiniteDistribution> dists;
    for (std::size_t i = 0; i < m; ++i) {
      dists.push_back(testsupport::pick(rng, 0, 3) == 0
                          ? FiniteDistribution::point_mass(testsupport::uniform(rng, -1, 1))
                          : testsupport::two_valued(rng));
    }
    std::vector<DerivativeTerm> free_terms;
    for (const auto& x : dists) free_terms.push_back(DerivativeTerm::free(x.mean(), x.second_moment()));
    const double root = maxroot_certified(testsupport::oracle_product(e, DerivativeSpec{free_terms}));

    bool some_leaf = false;
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<DerivativeTerm> leaf;
      for (std::size_t i = 0; i < m; ++i) leaf.push_back(DerivativeTerm::fixed(dists[i].values()[idx[i]]));
      if (maxroot_certified(testsupport::oracle_product(e, DerivativeSpec{leaf})) <= root + 1e-7) {
        some_leaf = true;
      }
      std::size_t i = 0;
      while (i < m && ++idx[i] == dists[i].size()) idx[i++] = 0;
      if (i == m) break;
    }
    EXPECT_TRUE(some_leaf);

    const auto cert = greedy_descent_quadratic(e, dists);
    std::vector<DerivativeTerm> chosen;
    for (double s : cert.assignment) chosen.push_back(DerivativeTerm::fixed(s));
    EXPECT_LE(maxroot_certified(testsupport::oracle_product(e, DerivativeSpec{chosen})), root + 1e-7);
    EXPECT_NEAR(cert.maxroots.front(), root, 1e-7);
  }
}

TEST(QuadraticDescent, PermutedOrderKeepsCertificateValid) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 4);
    const std::size_t m = testsupport::pick(rng, 2, 6);
    const auto e = testsupport::capped(rng, d, m, 1.0);
    const auto dists = random_dists(rng, m);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<HermitianMatrix> pm;
    std::vector<FiniteDistribution> pd;
    for (auto i : perm) {
      pm.push_back(e[i]);
      pd.push_back(dists[i]);
    }
    const auto a = greedy_descent_quadratic(e, dists);
    const auto b = greedy_descent_quadratic(MatrixEnsemble(pm), pd);
    EXPECT_TRUE(a.non_increasing(1e-7));
    EXPECT_TRUE(b.non_increasing(1e-7));
    EXPECT_NEAR(a.maxroots.front(), b.maxroots.front(), 1e-8);
  }
}

TEST(LinearDescent, LeafBelowRootMaxroot) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = testsupport::pick(rng, 1, 4);
    const std::size_t m = testsupport::pick(rng, 1, 4);
    std::vector<MatrixChoice> choices;
    for (std::size_t i = 0; i < m; ++i) {
      MatrixChoice c;
      const std::size_t k = testsupport::pick(rng, 1, 3);
      double total = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        c.values.push_back(testsupport::psd(rng, d, 1, testsupport::uniform(rng, 0.1, 1.0)));
        c.probs.push_back(testsupport::uniform(rng, 0.1, 1.0));
        total += c.probs.back();
      }
      for (auto& p : c.probs) p /= total;
      choices.push_back(c);
    }
    const auto cert = greedy_descent_linear(choices);
    std::vector<HermitianMatrix> leaf;
    for (std::size_t i = 0; i < m; ++i) leaf.push_back(choices[i].values[cert.choices[i]]);
    const double leaf_root =
        maxroot_certified(testsupport::oracle_mixed(MatrixEnsemble(leaf), std::vector<double>(m, 1.0)));
    EXPECT_LE(leaf_root, cert.maxroots.front() + 1e-7);
    EXPECT_TRUE(cert.non_increasing(1e-7));
  }
}
