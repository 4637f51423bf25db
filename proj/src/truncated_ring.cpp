// Reference evaluation of mixed polynomials by brute-force symbolic
// determinant expansion. Kept deliberately naive: it shares no code with the
// subset tables it is used to check.

#include <bit>
#include <complex>
#include <string>
#include <vector>

#include "interlace/mixed_charpoly.hpp"

namespace interlace {

namespace {

using Cplx = std::complex<double>;
using XPoly = std::vector<Cplx>;  // ascending powers of x

// Multilinear polynomial in m variables with x-polynomial coefficients,
// dense in the monomial mask. Products drop any monomial with a squared
// variable.
struct RingElement {
  std::vector<XPoly> terms;  // indexed by mask
};

XPoly xpoly_mul(const XPoly& p, const XPoly& q) {
  if (p.empty() || q.empty()) return {};
  XPoly r(p.size() + q.size() - 1, Cplx(0.0, 0.0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

void xpoly_add(XPoly& dst, const XPoly& src, double sign) {
  if (dst.size() < src.size()) dst.resize(src.size(), Cplx(0.0, 0.0));
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += sign * src[i];
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  RingElement r{std::vector<XPoly>(a.terms.size())};
  for (std::uint32_t s = 0; s < a.terms.size(); ++s) {
    if (a.terms[s].empty()) continue;
    for (std::uint32_t t = 0; t < b.terms.size(); ++t) {
      if ((s & t) != 0 || b.terms[t].empty()) continue;
      xpoly_add(r.terms[s | t], xpoly_mul(a.terms[s], b.terms[t]), 1.0);
    }
  }
  return r;
}

void ring_add(RingElement& dst, const RingElement& src, double sign) {
  for (std::size_t s = 0; s < src.terms.size(); ++s) {
    if (!src.terms[s].empty()) xpoly_add(dst.terms[s], src.terms[s], sign);
  }
}

using RingMatrix = std::vector<std::vector<RingElement>>;

// Division-free cofactor expansion along the first row.
RingElement ring_det(const RingMatrix& a, std::size_t masks) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  RingElement total{std::vector<XPoly>(masks)};
  for (std::size_t col = 0; col < n; ++col) {
    RingMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RingElement> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    ring_add(total, ring_mul(a[0][col], ring_det(minor, masks)), col % 2 == 0 ? 1.0 : -1.0);
  }
  return total;
}

void require_oracle_limits(const MatrixEnsemble& ensemble) {
  if (ensemble.dim() > kOracleMaxDim || ensemble.size() > kOracleMaxCount) {
    throw Error(Errc::SizeGuard, "truncated ring oracle limited to d, m <= 4 (got d=" +
                                     std::to_string(ensemble.dim()) +
                                     ", m=" + std::to_string(ensemble.size()) + ")");
  }
}

// det(xI + sum_i z_i s_i A_i) as a truncated ring element.
RingElement pencil_det(const MatrixEnsemble& ensemble, const std::vector<double>& scalars) {
  const std::size_t d = ensemble.dim();
  const std::size_t m = ensemble.size();
  const std::size_t masks = std::size_t{1} << m;
  RingMatrix mat(d, std::vector<RingElement>(d, RingElement{std::vector<XPoly>(masks)}));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (r == c) mat[r][c].terms[0] = {Cplx(0.0, 0.0), Cplx(1.0, 0.0)};
      for (std::size_t i = 0; i < m; ++i) {
        const Cplx v = scalars[i] * ensemble[i](r, c);
        if (v != Cplx(0.0, 0.0)) mat[r][c].terms[1u << i] = {v};
      }
    }
  }
  return ring_det(mat, masks);
}

RealPolynomial real_part(const XPoly& p) {
  std::vector<double> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i].real();
  return RealPolynomial(std::move(c));
}

}  // namespace

RealPolynomial truncated_ring_linear(const MatrixEnsemble& ensemble,
                                     const std::vector<double>& scalars) {
  require_oracle_limits(ensemble);
  if (scalars.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, "scalar count does not match ensemble size");
  }
  const RingElement det = pencil_det(ensemble, scalars);
  XPoly acc;
  for (std::uint32_t s = 0; s < det.terms.size(); ++s) {
    if (det.terms[s].empty()) continue;
    xpoly_add(acc, det.terms[s], std::popcount(s) % 2 == 0 ? 1.0 : -1.0);
  }
  return real_part(acc);
}

RealPolynomial truncated_ring_product(const MatrixEnsemble& ensemble, const DerivativeSpec& spec) {
  require_oracle_limits(ensemble);
  const std::size_t m = ensemble.size();
  if (spec.size() != m) throw Error(Errc::DimensionMismatch, "spec size does not match ensemble");
  const RingElement det = pencil_det(ensemble, std::vector<double>(m, 1.0));
  // P(z) P(w) has the coefficient det[S] det[T] on z^S w^T; the operator reads
  // off c on S n T, a on S \ T and b on T \ S.
  XPoly acc;
  for (std::uint32_t s = 0; s < det.terms.size(); ++s) {
    if (det.terms[s].empty()) continue;
    for (std::uint32_t t = 0; t < det.terms.size(); ++t) {
      if (det.terms[t].empty()) continue;
      double w = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const bool in_s = (s >> i) & 1u;
        const bool in_t = (t >> i) & 1u;
        if (in_s && in_t) {
          w *= spec.terms[i].c;
        } else if (in_s) {
          w *= spec.terms[i].a;
        } else if (in_t) {
          w *= spec.terms[i].b;
        }
      }
      if (w != 0.0) xpoly_add(acc, xpoly_mul(det.terms[s], det.terms[t]), w);
    }
  }
  return real_part(acc);
}

}  // namespace interlace
