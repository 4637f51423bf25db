#include "interlace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "interlace/barrier.hpp"
#include "interlace/discrepancy.hpp"
#include "interlace/instance_gen.hpp"
#include "interlace/interlacing.hpp"
#include "interlace/lyapunov.hpp"
#include "interlace/mixed_charpoly.hpp"
#include "interlace/polynomial.hpp"

namespace interlace {

namespace {

constexpr double kSlack = 1e-7;

// Collects checks of the form lhs <= rhs (+ slack) and keeps the first
// failure for the report.
class Tally {
 public:
  void leq(double lhs, double rhs, double slack, const std::string& what) {
    ++checks_;
    const double excess = lhs - rhs;
    worst_ = std::max(worst_, excess - slack);
    if (!(excess <= slack)) fail(what + ": " + fmt(lhs) + " > " + fmt(rhs) + " + " + fmt(slack));
  }
  void truth(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (first_failure_.empty()) first_failure_ = what;
    ok_ = false;
  }

  bool ok() const { return ok_; }
  std::size_t checks() const { return checks_; }
  double worst() const { return worst_; }
  const std::string& first_failure() const { return first_failure_; }

  static std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
  }

 private:
  bool ok_ = true;
  std::size_t checks_ = 0;
  double worst_ = -std::numeric_limits<double>::infinity();
  std::string first_failure_;
};

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string case_tag(std::size_t k) { return "case " + std::to_string(k); }

// PSD members with trace in (0, cap], no normalization of the sum.
MatrixEnsemble trace_capped(std::mt19937_64& rng, std::size_t d, std::size_t m, double cap,
                            std::size_t rank = 0) {
  std::vector<HermitianMatrix> mats;
  for (std::size_t i = 0; i < m; ++i) {
    const HermitianMatrix a = random_psd(rng, d, rank == 0 ? d : rank);
    mats.push_back(a.scaled(cap * uniform(rng, 0.05, 1.0) / a.trace()));
  }
  return MatrixEnsemble(std::move(mats));
}

// Max trace <= eps and sum <= I.
MatrixEnsemble contraction(std::mt19937_64& rng, std::size_t d, std::size_t m, double eps,
                           std::size_t rank = 0) {
  GenOptions opt;
  opt.d = d;
  opt.m = m;
  opt.epsilon = eps;
  opt.rank = rank;
  opt.seed = rng();
  return gen_instance(opt).ensemble();
}

FiniteDistribution random_dist(std::mt19937_64& rng, std::size_t support) {
  std::vector<double> values;
  while (values.size() < support) {
    const double v = uniform(rng, -2.0, 2.0);
    bool distinct = true;
    for (double w : values) distinct = distinct && std::abs(v - w) > 0.05;
    if (distinct) values.push_back(v);
  }
  std::vector<double> probs;
  double total = 0.0;
  for (std::size_t k = 0; k < support; ++k) {
    probs.push_back(uniform(rng, 0.1, 1.0));
    total += probs.back();
  }
  for (double& p : probs) p /= total;
  // Renormalization can leave the sum a few ulps off 1; push it into the last entry.
  double head = 0.0;
  for (std::size_t k = 0; k + 1 < support; ++k) head += probs[k];
  probs.back() = 1.0 - head;
  return FiniteDistribution(std::move(values), std::move(probs));
}

std::vector<FiniteDistribution> random_dists(std::mt19937_64& rng, std::size_t m,
                                             std::size_t support) {
  std::vector<FiniteDistribution> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(random_dist(rng, support));
  return out;
}

std::vector<double> random_signs(std::mt19937_64& rng, std::size_t m) {
  std::vector<double> s;
  for (std::size_t i = 0; i < m; ++i) s.push_back(pick(rng, 0, 1) == 0 ? -1.0 : 1.0);
  return s;
}

double maxroot_of(const RealPolynomial& p) { return maxroot_certified(p); }

std::vector<double> with_first_sign(std::vector<double> signs, double first) {
  signs[0] = first;
  return signs;
}

void check_coeffs(Tally& t, const RealPolynomial& got, const RealPolynomial& want, double tol,
                  const std::string& what) {
  t.leq(relative_coeff_error(got, want), 0.0, tol, what);
}

// ---------------------------------------------------------------------------

void suite_exact(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  const MatrixEnsemble pair({HermitianMatrix::diagonal({1.0, -1.0}),
                             HermitianMatrix::diagonal({-1.0, 1.0})});
  const RealPolynomial p = mixed_char_poly(pair, {1.0, 1.0});
  check_coeffs(t, p, RealPolynomial({2.0, 0.0, 1.0}), 1e-9, "opposite diagonal pair");
  t.truth(!root_report(p).real_rooted, "x^2 + 2 must not be reported real-rooted");

  const MatrixEnsemble split({HermitianMatrix::diagonal({1.0, 0.0}),
                              HermitianMatrix::diagonal({0.0, 1.0})});
  check_coeffs(t, mixed_char_poly(split, {1.0, 1.0}), RealPolynomial({1.0, -2.0, 1.0}), 1e-9,
               "coordinate pair");
  check_coeffs(t, quadratic_mixed_char_poly(MatrixEnsemble({HermitianMatrix::identity(2)})),
               RealPolynomial({0.0, 0.0, -4.0, 0.0, 1.0}), 1e-9, "quadratic of I_2");

  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 1, 6);
    const HermitianMatrix b = random_psd(rng, d, pick(rng, 1, d));
    // x^(d-1) (x - tr B)
    std::vector<double> c(d + 1, 0.0);
    c[d] = 1.0;
    c[d - 1] = -b.trace();
    check_coeffs(t, mixed_char_poly(MatrixEnsemble({b}), {1.0}), RealPolynomial(c), 1e-9,
                 case_tag(k) + " single matrix");
  }
}

void suite_oracle(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 1, kOracleMaxDim);
    const std::size_t m = pick(rng, 1, kOracleMaxCount);
    std::vector<HermitianMatrix> mats;
    for (std::size_t i = 0; i < m; ++i) {
      mats.push_back(k % 2 == 0 ? random_psd(rng, d, pick(rng, 1, d)) : random_hermitian(rng, d));
    }
    const MatrixEnsemble e(std::move(mats));
    std::vector<double> scalars;
    for (std::size_t i = 0; i < m; ++i) scalars.push_back(uniform(rng, -1.5, 1.5));
    check_coeffs(t, mixed_char_poly(e, scalars), truncated_ring_linear(e, scalars), 1e-8,
                 case_tag(k) + " linear");
    check_coeffs(t, quadratic_mixed_char_poly(e),
                 truncated_ring_product(e, DerivativeSpec::centered_unit(m)), 1e-8,
                 case_tag(k) + " quadratic");
    DerivativeSpec spec;
    for (std::size_t i = 0; i < m; ++i) {
      spec.terms.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    }
    check_coeffs(t, expected_product_poly(e, spec), truncated_ring_product(e, spec), 1e-8,
                 case_tag(k) + " general product");
  }
}

void suite_kls(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 1, 6);
    const std::size_t m = pick(rng, 1, 8);
    const DiscrepancyInstance inst{trace_capped(rng, d, m, 1.0), random_dists(rng, m, 2)};
    const auto res = solve_kls(inst);
    const double sigma = sigma_bound(inst);
    const double achieved = discrepancy_norm(inst.ensemble.matrices(), inst.dists, res.outcome);
    t.leq(achieved, 4.0 * sigma, kSlack, case_tag(k) + " 4 sigma");
    t.truth(res.certificate.non_increasing(kSlack), case_tag(k) + " descent maxroots increase");
  }
}

void suite_mu2(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 1, 5);
    const std::size_t m = pick(rng, 1, 8);
    const MatrixEnsemble e = normalize_quadratic(trace_capped(rng, d, m, 1.0, pick(rng, 0, d)));
    t.leq(maxroot_of(quadratic_mixed_char_poly(e)), 4.0, kSlack, case_tag(k) + " quadratic maxroot");
  }
}

void suite_mixed_bound(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 2, 6);
    const std::size_t m = pick(rng, 1, 10);
    const std::size_t variant = k % 3;  // 0: full rank, 1: rank 2, 2: rank 3
    const std::size_t cap = variant == 0 ? 0 : variant + 1;
    const double max_eps = cap == 0 ? 1.0 : std::min(1.0, (cap - 1.0) * (cap - 1.0) / cap);
    const double eps = uniform(rng, 0.02, max_eps);
    const MatrixEnsemble e = contraction(rng, d, m, eps, cap);
    const double root = maxroot_of(mixed_char_poly(e, std::vector<double>(m, 1.0)));
    const auto stats = ensemble_stats(e);
    if (cap == 0) {
      t.leq(root, mixed_bound_reference(stats.epsilon), kSlack, case_tag(k) + " trace-capped bound");
    } else {
      t.leq(root, mixed_bound_reference(e, cap), kSlack,
            case_tag(k) + " rank-" + std::to_string(cap) + " bound");
    }
  }
}

void suite_lyapunov(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  const double levels[] = {0.05, 0.1, 0.25};
  for (std::size_t k = 0; k < cases; ++k) {
    const double eps = levels[k % 3];
    const std::size_t d = pick(rng, 1, 6);
    const std::size_t m = pick(rng, 1, 8);
    const MatrixEnsemble e = contraction(rng, d, m, eps);
    std::vector<double> w;
    for (std::size_t i = 0; i < m; ++i) w.push_back(uniform(rng, 0.0, 1.0));
    const auto res = lyapunov_select(e, w);
    HermitianMatrix diff = HermitianMatrix::zero(d);
    for (std::size_t i = 0; i < m; ++i) diff = diff - e[i].scaled(w[i]);
    for (std::size_t i : res.subset) diff = diff + e[i];
    t.leq(operator_norm(diff), 2.0 * std::sqrt(eps), kSlack, case_tag(k) + " selection");
  }
}

void suite_partition(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t r = 2 + k % 2;
    const std::size_t d = pick(rng, 1, std::min<std::size_t>(10, 24 / r));
    const std::size_t m = pick(rng, 1, 8);
    const double eps = uniform(rng, 0.05, 0.5);
    const MatrixEnsemble e = contraction(rng, d, m, eps, k % 4 == 0 ? 1 : 0);
    const std::vector<double> props(r, 1.0 / static_cast<double>(r));
    const auto res = ks_r_partition(e, props);
    const double true_eps = ensemble_stats(e).epsilon;
    const double gap = 2.0 * std::sqrt(r * true_eps) + r * true_eps;
    const HermitianMatrix total = e.sum();

    std::vector<int> seen(m, 0);
    for (const auto& block : res.blocks) {
      for (std::size_t i : block) ++seen[i];
    }
    t.truth(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
            case_tag(k) + " blocks do not partition the index set");
    for (std::size_t b = 0; b < r; ++b) {
      HermitianMatrix part = HermitianMatrix::zero(d);
      for (std::size_t i : res.blocks[b]) part = part + e[i];
      const HermitianMatrix upper =
          (total + HermitianMatrix::identity(d).scaled(gap)).scaled(props[b]) - part;
      t.leq(0.0, min_eigenvalue(upper), kSlack, case_tag(k) + " upper certificate");
      t.leq(operator_norm(part), props[b] * std::pow(1.0 + std::sqrt(r * true_eps), 2), kSlack,
            case_tag(k) + " block norm");
      t.leq(operator_norm(part - total.scaled(props[b])), gap, kSlack, case_tag(k) + " deviation");
    }
  }
}

void suite_hermitian(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t d = pick(rng, 1, 4);
    const std::size_t m = pick(rng, 1, 6);
    std::vector<HermitianMatrix> mats;
    for (std::size_t i = 0; i < m; ++i) {
      const HermitianMatrix h = random_hermitian(rng, d);
      mats.push_back(h.scaled(uniform(rng, 0.1, 1.0) / operator_norm(h)));
    }
    const auto dists = random_dists(rng, m, 2);
    const auto res = solve_hermitian(mats, dists);
    const double sigma = hermitian_sigma(mats, dists);
    t.leq(discrepancy_norm(mats, dists, res.outcome), 8.0 * sigma, kSlack, case_tag(k) + " 8 sigma");
  }
}

// Joint-support average of mu over independent finite matrix choices.
RealPolynomial support_average(const std::vector<MatrixChoice>& choices) {
  RealPolynomial acc;
  std::vector<std::size_t> idx(choices.size(), 0);
  const std::vector<double> ones(choices.size(), 1.0);
  while (true) {
    double prob = 1.0;
    std::vector<HermitianMatrix> mats;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      prob *= choices[i].probs[idx[i]];
      mats.push_back(choices[i].values[idx[i]]);
    }
    acc = acc + scale(mixed_char_poly(MatrixEnsemble(mats), ones), prob);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].values.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return acc;
}

void suite_structural(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::string tag = case_tag(k);
    const std::size_t d = pick(rng, 1, 5);
    const std::size_t m = pick(rng, 1, 6);
    const MatrixEnsemble e = trace_capped(rng, d, m, 1.0, pick(rng, 0, d));
    const std::vector<double> signs = random_signs(rng, m);
    std::vector<double> flipped;
    for (double s : signs) flipped.push_back(-s);
    const std::vector<double> ones(m, 1.0);

    // Multi-affinity in the first slot and symmetry.
    {
      const HermitianMatrix other = random_psd(rng, d, pick(rng, 1, d));
      const double lambda = uniform(rng, 0.0, 1.0);
      auto with_first = [&](const HermitianMatrix& first) {
        std::vector<HermitianMatrix> mats = e.matrices();
        mats[0] = first;
        return mixed_char_poly(MatrixEnsemble(mats), signs);
      };
      const RealPolynomial mixed = with_first(e[0].scaled(lambda) + other.scaled(1.0 - lambda));
      const RealPolynomial affine =
          scale(with_first(e[0]), lambda) + scale(with_first(other), 1.0 - lambda);
      check_coeffs(t, mixed, affine, 1e-8, tag + " multi-affinity");

      std::vector<std::size_t> perm(m);
      for (std::size_t i = 0; i < m; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<HermitianMatrix> mats;
      std::vector<double> s;
      for (std::size_t i : perm) {
        mats.push_back(e[i]);
        s.push_back(signs[i]);
      }
      check_coeffs(t, mixed_char_poly(MatrixEnsemble(mats), s), mixed_char_poly(e, signs), 1e-8,
                   tag + " permutation symmetry");
    }

    // Multilinearization by joint-support enumeration.
    {
      std::vector<MatrixChoice> choices;
      const std::size_t mm = pick(rng, 1, 3);
      for (std::size_t i = 0; i < mm; ++i) {
        MatrixChoice c;
        const std::size_t n = pick(rng, 1, 3);
        double total = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
          c.values.push_back(random_psd(rng, d, pick(rng, 1, d)).scaled(0.3));
          c.probs.push_back(uniform(rng, 0.1, 1.0));
          total += c.probs.back();
        }
        for (double& p : c.probs) p /= total;
        choices.push_back(std::move(c));
      }
      std::vector<HermitianMatrix> means;
      for (const auto& c : choices) means.push_back(c.mean());
      check_coeffs(t, support_average(choices),
                   mixed_char_poly(MatrixEnsemble(means), std::vector<double>(mm, 1.0)), 1e-8,
                   tag + " multilinearization");
    }

    // Root scaling and reflection.
    const RealPolynomial mu = mixed_char_poly(e, signs);
    {
      const double factor = uniform(rng, 0.1, 10.0);
      std::vector<HermitianMatrix> scaled;
      for (const auto& a : e) scaled.push_back(a.scaled(factor));
      check_coeffs(t, mixed_char_poly(MatrixEnsemble(scaled), signs), root_scaling(mu, factor), 1e-8,
                   tag + " root scaling");
      const auto rep = root_report(mu, 1e-7);
      t.leq(std::abs(rep.minroot + maxroot_of(reflect(mu))), 0.0, 1e-8 * (1.0 + std::abs(rep.minroot)),
            tag + " reflected maxroot is -minroot");
      t.truth(reflect(reflect(mu)) == mu, tag + " reflect is an involution");
    }

    // Real-rootedness of signed mixed polynomials and expected products.
    t.truth(root_report(mu, 1e-7).real_rooted, tag + " signed mixed polynomial real-rooted");
    {
      const auto dists = random_dists(rng, m, pick(rng, 1, 3));
      std::vector<std::optional<double>> fixed(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (pick(rng, 0, 2) == 0) fixed[i] = dists[i].values()[pick(rng, 0, dists[i].size() - 1)];
      }
      const RealPolynomial q = expected_product_poly(e, conditional_spec_quadratic(dists, fixed));
      t.truth(root_report(q, 1e-7).real_rooted, tag + " expected product real-rooted");
    }

    // Trace identity for a single matrix.
    t.leq(std::abs(maxroot_of(mixed_char_poly(MatrixEnsemble({e[0]}), {1.0})) - e[0].trace()), 0.0,
          1e-8 * (1.0 + e[0].trace()), tag + " single-matrix maxroot equals trace");

    // Maxroot monotonicity in the first slot, both orientations.
    {
      const HermitianMatrix bigger = e[0] + random_psd(rng, d, pick(rng, 1, d)).scaled(0.5);
      std::vector<HermitianMatrix> mats = e.matrices();
      const double lo = maxroot_of(mixed_char_poly(e, with_first_sign(signs, 1.0)));
      mats[0] = bigger;
      const MatrixEnsemble up(mats);
      const double hi = maxroot_of(mixed_char_poly(up, with_first_sign(signs, 1.0)));
      t.leq(lo, hi, kSlack, tag + " monotone in a positive slot");
      const double neg_lo = maxroot_of(mixed_char_poly(e, with_first_sign(signs, -1.0)));
      const double neg_hi = maxroot_of(mixed_char_poly(up, with_first_sign(signs, -1.0)));
      t.leq(neg_hi, neg_lo, kSlack, tag + " antitone in a negative slot");
    }

    // Norm bounds.
    {
      HermitianMatrix signed_sum = HermitianMatrix::zero(d);
      for (std::size_t i = 0; i < m; ++i) signed_sum = signed_sum + e[i].scaled(signs[i]);
      const RealPolynomial prod = mu * mixed_char_poly(e, flipped);
      t.leq(operator_norm(signed_sum), maxroot_of(prod), kSlack, tag + " signed norm bound");
      t.leq(operator_norm(e.sum()), maxroot_of(mixed_char_poly(e, ones)), kSlack,
            tag + " sum norm bound");
    }

    // Single-matrix product operators: mixed restriction below the diagonal one.
    {
      const auto ops = single_matrix_operators(e[0]);
      const double diag_root = maxroot_of(ops.diagonal);
      if (diag_root > 0.0) {
        t.leq(maxroot_of(ops.mixed), diag_root, kSlack, tag + " mixed vs diagonal restriction");
      }
    }
  }
}

void suite_barrier(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  for (std::size_t k = 0; k < cases; ++k) {
    const std::string tag = case_tag(k);
    const std::size_t d = pick(rng, 1, 6);
    const std::size_t m = pick(rng, 1, 6);
    const MatrixEnsemble e = trace_capped(rng, d, m, 1.0);

    BarrierPoint pt;
    HermitianMatrix pencil = HermitianMatrix::zero(d);
    for (std::size_t i = 0; i < m; ++i) {
      pt.shifts.push_back(uniform(rng, -1.0, 1.0));
      pencil = pencil + e[i].scaled(pt.shifts.back());
    }
    pt.x = -min_eigenvalue(pencil) + uniform(rng, 0.05, 1.0);
    t.truth(above_roots(e, pt), tag + " constructed point not above the roots");

    const std::size_t j = pick(rng, 0, m - 1);
    const double value = barrier_value(e, pt, j);
    auto log_det = [&](double dz) {
      BarrierPoint moved = pt;
      moved.shifts[j] += dz;
      ComplexMatrix mat = moved.x * ComplexMatrix::Identity(d, d);
      for (std::size_t i = 0; i < m; ++i) mat += moved.shifts[i] * e[i].matrix();
      const Eigen::LLT<ComplexMatrix> llt(mat);
      return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
    };
    const double h = 1e-6;
    const double fd = (log_det(h) - log_det(-h)) / (2.0 * h);
    t.leq(std::abs(fd - value), 0.0, 1e-4 * std::max(std::abs(value), 1e-6),
          tag + " barrier vs finite difference");

    const auto shape = barrier_shape_check(e, pt, j);
    t.truth(shape.passed(), tag + " barrier shape (nonnegative, non-increasing, convex)");

    const auto qx = qx_certificate(normalize_quadratic(e));
    t.truth(qx.passed(), tag + " corner certificate");

    const std::size_t deg = pick(rng, 1, 6);
    std::vector<double> roots;
    for (std::size_t i = 0; i < deg; ++i) roots.push_back(uniform(rng, -3.0, 3.0));
    const RealPolynomial q = RealPolynomial::from_roots(roots);
    for (double c : {-0.5, 0.5, 1.0}) {
      const RealPolynomial moved = q + scale(derivative(q), c);
      const double x0 = maxroot_of(moved) + uniform(rng, 1e-6, 1.0);
      t.truth(transfer_holds(q, c, x0), tag + " transfer with c = " + Tally::fmt(c));
    }
  }
}

// Enumerates every leaf of a product-polynomial tree and of a matrix-choice
// tree and compares with the greedy leaf.
void suite_exhaustive(Tally& t, std::mt19937_64& rng, std::size_t cases) {
  std::size_t k = 0;
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t rep = 0; rep < cases; ++rep, ++k) {
      const std::string tag = case_tag(k);
      const std::size_t d = pick(rng, 1, 4);
      const MatrixEnsemble e = trace_capped(rng, d, m, 1.0, pick(rng, 0, d));
      std::vector<FiniteDistribution> dists;
      for (std::size_t i = 0; i < m; ++i) dists.push_back(random_dist(rng, pick(rng, 1, 2)));

      const auto cert = greedy_descent_quadratic(e, dists);
      const double root = cert.maxroots.front();
      t.leq(cert.maxroots.back(), root, kSlack, tag + " greedy leaf vs root");

      const auto table = SubsetDerivativeTable::build(e);
      bool some_leaf = false;
      std::vector<std::size_t> idx(m, 0);
      while (true) {
        std::vector<std::optional<double>> fixed(m);
        for (std::size_t i = 0; i < m; ++i) fixed[i] = dists[i].values()[idx[i]];
        const double leaf =
            maxroot_of(expected_product_poly(table, conditional_spec_quadratic(dists, fixed)));
        if (leaf <= root + kSlack) some_leaf = true;
        if (idx == cert.choices) {
          t.leq(std::abs(leaf - cert.maxroots.back()), 0.0, 1e-8, tag + " greedy leaf recomputed");
        }
        std::size_t pos = 0;
        while (pos < m && ++idx[pos] == dists[pos].size()) idx[pos++] = 0;
        if (pos == m) break;
      }
      t.truth(some_leaf, tag + " no leaf meets the root bound");

      // Linear mode on PSD matrix choices.
      std::vector<MatrixChoice> choices;
      for (std::size_t i = 0; i < m; ++i) {
        MatrixChoice c;
        const std::size_t n = pick(rng, 1, 2);
        for (std::size_t v = 0; v < n; ++v) c.values.push_back(random_psd(rng, d, pick(rng, 1, d)).scaled(0.4));
        if (n == 1) {
          c.probs = {1.0};
        } else {
          const double p = uniform(rng, 0.1, 0.9);
          c.probs = {p, 1.0 - p};
        }
        choices.push_back(std::move(c));
      }
      const auto lin = greedy_descent_linear(choices);
      const double lin_root = lin.maxroots.front();
      t.leq(lin.maxroots.back(), lin_root, kSlack, tag + " linear greedy leaf vs root");
      bool some_lin = false;
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<HermitianMatrix> mats;
        for (std::size_t i = 0; i < m; ++i) mats.push_back(choices[i].values[idx[i]]);
        const double leaf =
            maxroot_of(mixed_char_poly(MatrixEnsemble(mats), std::vector<double>(m, 1.0)));
        if (leaf <= lin_root + kSlack) some_lin = true;
        std::size_t pos = 0;
        while (pos < m && ++idx[pos] == choices[pos].values.size()) idx[pos++] = 0;
        if (pos == m) break;
      }
      t.truth(some_lin, tag + " no linear leaf meets the root bound");
    }
  }
}

struct SuiteDef {
  std::function<void(Tally&, std::mt19937_64&, std::size_t)> run;
  std::size_t default_cases;
};

const std::map<std::string, SuiteDef>& registry() {
  static const std::map<std::string, SuiteDef> suites{
      {"exact", {suite_exact, 20}},
      {"oracle", {suite_oracle, 40}},
      {"kls", {suite_kls, 10}},
      {"mu2", {suite_mu2, 30}},
      {"mixed-bound", {suite_mixed_bound, 30}},
      {"lyapunov", {suite_lyapunov, 12}},
      {"partition", {suite_partition, 6}},
      {"hermitian", {suite_hermitian, 8}},
      {"structural", {suite_structural, 30}},
      {"barrier", {suite_barrier, 30}},
      {"exhaustive", {suite_exhaustive, 10}},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exact",     "oracle",    "kls",        "mu2",
                                              "mixed-bound", "lyapunov", "partition",  "hermitian",
                                              "structural", "barrier",   "exhaustive"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw Error(Errc::InvalidArgument, "unknown suite '" + name + "'");
  SuiteResult out;
  out.name = name;
  out.cases = cases == 0 ? it->second.default_cases : cases;
  // Each suite gets its own stream so selecting a subset does not shift the others.
  const auto& names = suite_names();
  const auto slot = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
  std::seed_seq seq{seed, slot};
  std::mt19937_64 rng(seq);
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second.run(tally, rng, out.cases);
  } catch (const std::exception& e) {
    tally.fail(std::string("exception: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = tally.ok();
  out.checks = tally.checks();
  out.worst = tally.worst();
  out.detail = tally.ok() ? std::to_string(tally.checks()) + " checks" : tally.first_failure();
  return out;
}

std::vector<SuiteResult> run_suites(const std::string& selector, std::uint64_t seed,
                                    std::size_t cases) {
  std::vector<std::string> names;
  if (selector == "all") {
    names = suite_names();
  } else {
    std::stringstream ss(selector);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) names.push_back(item);
    }
  }
  if (names.empty()) throw Error(Errc::InvalidArgument, "no suite selected");
  for (const auto& n : names) {
    if (!registry().count(n)) throw Error(Errc::InvalidArgument, "unknown suite '" + n + "'");
  }
  std::vector<SuiteResult> out;
  for (const auto& n : names) out.push_back(run_suite(n, seed, cases));
  return out;
}

}  // namespace interlace
