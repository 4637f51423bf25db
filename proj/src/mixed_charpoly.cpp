#include "interlace/mixed_charpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace interlace {

namespace {

int popcount(std::uint32_t v) { return std::popcount(v); }

void require_table_limits(std::size_t d, std::size_t m) {
  if (d > kMaxTableDim || m > kMaxTableCount) {
    throw Error(Errc::SizeGuard, "subset table limited to d <= " + std::to_string(kMaxTableDim) +
                                     ", m <= " + std::to_string(kMaxTableCount) + " (got d=" +
                                     std::to_string(d) + ", m=" + std::to_string(m) + ")");
  }
}

// Elementary symmetric polynomials e_0..e_d of the given values.
std::vector<double> elementary_symmetric(const std::vector<double>& values, std::size_t d) {
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (double v : values) {
    ++seen;
    for (std::size_t k = std::min(seen, d); k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

// In-place Moebius inversion over the subset lattice:
// f(S) <- sum_{T subset S} (-1)^{|S|-|T|} f(T).
void subset_moebius(std::vector<double>& f, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t s = 0; s < f.size(); ++s) {
      if (s & bit) f[s] -= f[s ^ bit];
    }
  }
}

RealPolynomial from_long(const std::vector<long double>& acc) {
  std::vector<double> c(acc.begin(), acc.end());
  return RealPolynomial(std::move(c));
}

}  // namespace

bool DerivativeSpec::stability_safe(double tol) const noexcept {
  for (const auto& t : terms) {
    if (t.a != -t.b) return false;
    if (t.b * t.b > -t.c + tol * (1.0 + std::abs(t.c))) return false;
  }
  return true;
}

DerivativeSpec DerivativeSpec::centered_unit(std::size_t m) {
  return DerivativeSpec{std::vector<DerivativeTerm>(m, DerivativeTerm{0.0, 0.0, -1.0})};
}

SubsetDerivativeTable SubsetDerivativeTable::build(const MatrixEnsemble& ensemble) {
  const std::size_t d = ensemble.dim();
  const std::size_t m = ensemble.size();
  require_table_limits(d, m);
  const std::size_t n = std::size_t{1} << m;

  // e_k of the spectrum of A_T for every T. By homogeneity the coefficient of
  // x^(d-k) in det(xI + A_T) collects exactly the degree-k monomials in z
  // supported on T, so Moebius inversion isolates the multilinear term z^S.
  std::vector<std::vector<double>> by_degree(d + 1, std::vector<double>(n, 0.0));
  for (std::uint32_t t = 0; t < n; ++t) {
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < m; ++i) {
      if (t & (1u << i)) sum += ensemble[i].matrix();
    }
    std::vector<double> e(d + 1, 0.0);
    if (t == 0) {
      e[0] = 1.0;
    } else {
      e = elementary_symmetric(eigenvalues(make_hermitian(sum, 1e-9)), d);
    }
    for (std::size_t k = 0; k <= d; ++k) by_degree[k][t] = e[k];
  }
  for (std::size_t k = 1; k <= d; ++k) subset_moebius(by_degree[k], m);

  SubsetDerivativeTable table;
  table.d_ = d;
  table.m_ = m;
  table.c_.assign(n, 0.0);
  for (std::uint32_t s = 0; s < n; ++s) {
    const auto k = static_cast<std::size_t>(popcount(s));
    if (k <= d) table.c_[s] = (k == 0) ? 1.0 : by_degree[k][s];
  }
  return table;
}

RealPolynomial SubsetDerivativeTable::derivative(std::uint32_t mask) const {
  const auto k = static_cast<std::size_t>(popcount(mask));
  if (k > d_) return {};
  return RealPolynomial::monomial(static_cast<int>(d_ - k), c_[mask]);
}

RealPolynomial subset_derivative(const MatrixEnsemble& ensemble,
                                 const std::vector<std::size_t>& subset) {
  std::vector<bool> used(ensemble.size(), false);
  std::vector<HermitianMatrix> members;
  for (std::size_t i : subset) {
    if (i >= ensemble.size()) {
      throw Error(Errc::InvalidArgument, "subset index " + std::to_string(i) + " out of range");
    }
    if (used[i]) throw Error(Errc::InvalidArgument, "subset index " + std::to_string(i) + " repeated");
    used[i] = true;
    members.push_back(ensemble[i]);
  }
  if (members.empty()) return RealPolynomial::monomial(static_cast<int>(ensemble.dim()));
  if (members.size() > ensemble.dim()) return {};
  const auto table = SubsetDerivativeTable::build(MatrixEnsemble(std::move(members)));
  return table.derivative(static_cast<std::uint32_t>((std::size_t{1} << subset.size()) - 1));
}

RealPolynomial mixed_char_poly(const SubsetDerivativeTable& table,
                               const std::vector<double>& scalars) {
  const std::size_t d = table.dim();
  const std::size_t m = table.size();
  if (scalars.size() != m) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(m) + " scalars, got " +
                                             std::to_string(scalars.size()));
  }
  const std::size_t n = std::size_t{1} << m;
  std::vector<double> weight(n, 1.0);
  std::vector<long double> acc(d + 1, 0.0L);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (s != 0) {
      const int low = std::countr_zero(s);
      weight[s] = weight[s & (s - 1)] * -scalars[static_cast<std::size_t>(low)];
    }
    const auto k = static_cast<std::size_t>(popcount(s));
    if (k > d) continue;
    acc[d - k] += static_cast<long double>(weight[s]) * table.scalar(s);
  }
  return from_long(acc);
}

RealPolynomial mixed_char_poly(const MatrixEnsemble& ensemble, const std::vector<double>& scalars) {
  if (scalars.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(ensemble.size()) +
                                             " scalars, got " + std::to_string(scalars.size()));
  }
  return mixed_char_poly(SubsetDerivativeTable::build(ensemble), scalars);
}

namespace {

// G(U)[k] = sum over S containing U with |S| = k of weight^(S \ U) c_S,
// computed with a weighted superset-sum transform.
std::vector<std::vector<double>> superset_transform(const SubsetDerivativeTable& table,
                                                    const std::vector<double>& weight) {
  const std::size_t d = table.dim();
  const std::size_t m = table.size();
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::vector<double>> g(n, std::vector<double>(d + 1, 0.0));
  for (std::uint32_t s = 0; s < n; ++s) {
    const auto k = static_cast<std::size_t>(popcount(s));
    if (k <= d) g[s][k] = table.scalar(s);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double w = weight[i];
    if (w == 0.0) continue;
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (u & bit) continue;
      const auto& up = g[u | bit];
      auto& cur = g[u];
      for (std::size_t k = 0; k <= d; ++k) cur[k] += w * up[k];
    }
  }
  return g;
}

}  // namespace

RealPolynomial expected_product_poly(const SubsetDerivativeTable& table,
                                     const DerivativeSpec& spec) {
  const std::size_t d = table.dim();
  const std::size_t m = table.size();
  if (spec.size() != m) {
    throw Error(Errc::DimensionMismatch, "spec has " + std::to_string(spec.size()) +
                                             " terms for " + std::to_string(m) + " matrices");
  }
  // Writing c_i = delta_i + a_i b_i splits the (S, T) double sum into
  // sum_U delta^U F_a(U) F_b(U) with U = the pairs sharing a mixed derivative.
  std::vector<double> a(m), b(m), delta(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = spec.terms[i].a;
    b[i] = spec.terms[i].b;
    delta[i] = spec.terms[i].c - a[i] * b[i];
  }
  const auto fa = superset_transform(table, a);
  const auto fb = (a == b) ? fa : superset_transform(table, b);

  const std::size_t n = std::size_t{1} << m;
  std::vector<double> dprod(n, 1.0);
  std::vector<long double> acc(2 * d + 1, 0.0L);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (u != 0) {
      dprod[u] = dprod[u & (u - 1)] * delta[static_cast<std::size_t>(std::countr_zero(u))];
    }
    const double w = dprod[u];
    if (w == 0.0) continue;
    const auto lo = static_cast<std::size_t>(popcount(u));
    if (lo > d) continue;
    for (std::size_t k = lo; k <= d; ++k) {
      const double x = fa[u][k];
      if (x == 0.0) continue;
      for (std::size_t l = lo; l <= d; ++l) {
        acc[2 * d - k - l] += static_cast<long double>(w) * x * fb[u][l];
      }
    }
  }
  return from_long(acc);
}

RealPolynomial expected_product_poly(const MatrixEnsemble& ensemble, const DerivativeSpec& spec) {
  if (spec.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, "spec has " + std::to_string(spec.size()) +
                                             " terms for " + std::to_string(ensemble.size()) +
                                             " matrices");
  }
  return expected_product_poly(SubsetDerivativeTable::build(ensemble), spec);
}

RealPolynomial quadratic_mixed_char_poly(const SubsetDerivativeTable& table) {
  const std::size_t d = table.dim();
  const std::size_t n = std::size_t{1} << table.size();
  std::vector<long double> acc(2 * d + 1, 0.0L);
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto k = static_cast<std::size_t>(popcount(u));
    if (k > d) continue;
    const long double c = table.scalar(u);
    acc[2 * d - 2 * k] += (k % 2 == 0 ? 1.0L : -1.0L) * c * c;
  }
  return from_long(acc);
}

RealPolynomial quadratic_mixed_char_poly(const MatrixEnsemble& ensemble) {
  return quadratic_mixed_char_poly(SubsetDerivativeTable::build(ensemble));
}

SingleMatrixOperators single_matrix_operators(const HermitianMatrix& b) {
  const std::size_t d = b.dim();
  const auto e = elementary_symmetric(eigenvalues(b), std::min<std::size_t>(d, 2));
  const double e1 = e.size() > 1 ? e[1] : 0.0;
  const double e2 = e.size() > 2 ? e[2] : 0.0;
  std::vector<double> mixed(2 * d + 1, 0.0);
  std::vector<double> diag(2 * d + 1, 0.0);
  mixed[2 * d] = diag[2 * d] = 1.0;
  mixed[2 * d - 2] = -e1 * e1;
  diag[2 * d - 2] = -(e1 * e1 + 2.0 * e2);
  return {RealPolynomial(std::move(mixed)), RealPolynomial(std::move(diag))};
}

BlockPencil::BlockPencil(const HermitianMatrix& shift, const MatrixEnsemble& ensemble,
                         std::vector<double> block_scales, double origin)
    : d_(ensemble.dim()), m_(ensemble.size()), scales_(std::move(block_scales)), origin_(origin) {
  if (shift.dim() != d_) {
    throw Error(Errc::DimensionMismatch, "shift has dim " + std::to_string(shift.dim()) +
                                             ", ensemble has dim " + std::to_string(d_));
  }
  if (scales_.empty()) throw Error(Errc::InvalidArgument, "at least one block is required");
  for (double s : scales_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(Errc::InvalidArgument, "block scales must be positive and finite");
    }
  }
  require_table_limits(d_, m_);
  if (d_ * scales_.size() > kMaxBlockTotal) {
    throw Error(Errc::SizeGuard, "block ensemble limited to d * r <= " +
                                     std::to_string(kMaxBlockTotal));
  }

  // In the eigenbasis of C the base pencil is diagonal, so
  //   det(diag(x - lambda) + Z) = sum_Col prod_{c not in Col} (x - lambda_c) det Z[Col, Col]
  // and the multilinear coefficient of z^T in det Z[Col, Col] (homogeneous of
  // degree |Col|) is again isolated by Moebius inversion.
  const auto eig = eigen_decompose(shift);
  const auto dd = static_cast<Eigen::Index>(d_);
  std::vector<ComplexMatrix> rotated;
  rotated.reserve(m_);
  for (const auto& a : ensemble) rotated.push_back(eig.vectors.adjoint() * a.matrix() * eig.vectors);

  const std::size_t n = std::size_t{1} << m_;
  table_.assign(n, RealPolynomial());
  std::vector<double> minors(n);
  for (std::uint32_t col = 0; col < (1u << d_); ++col) {
    std::vector<Eigen::Index> idx;
    RealPolynomial base({1.0});
    for (Eigen::Index c = 0; c < dd; ++c) {
      if (col & (1u << c)) {
        idx.push_back(c);
      } else {
        base = base * RealPolynomial({origin_ - eig.values(c), 1.0});
      }
    }
    const auto j = idx.size();
    if (j == 0) {
      table_[0] = base;
      continue;
    }
    const auto jj = static_cast<Eigen::Index>(j);
    std::fill(minors.begin(), minors.end(), 0.0);
    for (std::uint32_t t = 1; t < n; ++t) {
      if (static_cast<std::size_t>(popcount(t)) > j) continue;
      ComplexMatrix sub = ComplexMatrix::Zero(jj, jj);
      for (std::size_t i = 0; i < m_; ++i) {
        if (!(t & (1u << i))) continue;
        for (Eigen::Index r = 0; r < jj; ++r)
          for (Eigen::Index c = 0; c < jj; ++c) sub(r, c) += rotated[i](idx[r], idx[c]);
      }
      minors[t] = sub.determinant().real();
    }
    subset_moebius(minors, m_);
    for (std::uint32_t t = 1; t < n; ++t) {
      if (static_cast<std::size_t>(popcount(t)) != j || minors[t] == 0.0) continue;
      table_[t] = table_[t] + scale(base, minors[t]);
    }
  }
}

RealPolynomial BlockPencil::evaluate(const std::vector<int>& placement) const {
  if (placement.size() != m_) {
    throw Error(Errc::DimensionMismatch, "placement has " + std::to_string(placement.size()) +
                                             " entries for " + std::to_string(m_) + " members");
  }
  const int r = static_cast<int>(scales_.size());
  std::vector<std::uint32_t> undecided;
  std::vector<std::uint32_t> fixed(scales_.size(), 0);
  for (std::size_t i = 0; i < m_; ++i) {
    const int p = placement[i];
    if (p == kUndecided) {
      undecided.push_back(1u << i);
    } else if (p >= 0 && p < r) {
      fixed[static_cast<std::size_t>(p)] |= 1u << i;
    } else {
      throw Error(Errc::InvalidArgument, "placement " + std::to_string(p) + " for member " +
                                             std::to_string(i) + " is not a block index");
    }
  }
  const std::size_t u = undecided.size();
  const std::size_t nu = std::size_t{1} << u;
  std::vector<std::uint32_t> global(nu, 0);
  for (std::uint32_t h = 1; h < nu; ++h) {
    global[h] = global[h & (h - 1)] | undecided[static_cast<std::size_t>(std::countr_zero(h))];
  }

  // dp[H] = contribution of the blocks processed so far with the undecided
  // members in H already differentiated (each in exactly one block).
  std::vector<std::vector<double>> dp(nu);
  dp[0] = {1.0};
  for (std::size_t k = 0; k < scales_.size(); ++k) {
    std::vector<RealPolynomial> w(nu);
    const std::uint32_t fk = fixed[k];
    for (std::uint32_t h = 0; h < nu; ++h) {
      const int hs = popcount(h);
      if (static_cast<std::size_t>(hs) > d_) continue;
      std::vector<long double> acc(d_ + 1, 0.0L);
      bool any = false;
      // every subset g of the members fixed to this block
      for (std::uint32_t g = fk;; g = (g - 1) & fk) {
        const std::uint32_t t = g | global[h];
        const int gs = popcount(g);
        if (static_cast<std::size_t>(gs + hs) <= d_ && !table_[t].is_zero()) {
          const long double coeff =
              ((gs + hs) % 2 == 0 ? 1.0L : -1.0L) * std::pow(static_cast<long double>(scales_[k]), gs);
          const auto& c = table_[t].coeffs();
          for (std::size_t q = 0; q < c.size(); ++q) acc[q] += coeff * c[q];
          any = true;
        }
        if (g == 0) break;
      }
      if (any) w[h] = from_long(acc);
    }
    std::vector<std::vector<double>> next(nu);
    for (std::uint32_t mask = 0; mask < nu; ++mask) {
      if (dp[mask].empty()) continue;
      const std::uint32_t comp = static_cast<std::uint32_t>(nu - 1) ^ mask;
      for (std::uint32_t h = comp;; h = (h - 1) & comp) {
        const auto& wc = w[h].coeffs();
        if (!wc.empty()) {
          auto& dst = next[mask | h];
          const auto& src = dp[mask];
          if (dst.size() < src.size() + wc.size() - 1) dst.resize(src.size() + wc.size() - 1, 0.0);
          for (std::size_t i = 0; i < src.size(); ++i) {
            if (src[i] == 0.0) continue;
            for (std::size_t j = 0; j < wc.size(); ++j) dst[i + j] += src[i] * wc[j];
          }
        }
        if (h == 0) break;
      }
    }
    dp = std::move(next);
  }
  std::vector<double> total;
  for (const auto& p : dp) {
    if (total.size() < p.size()) total.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) total[i] += p[i];
  }
  return RealPolynomial(std::move(total));
}

}  // namespace interlace
