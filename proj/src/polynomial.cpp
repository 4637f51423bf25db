#include "interlace/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace interlace {

namespace {

using Cplx = std::complex<double>;

// Relative coefficient noise assumed when deciding whether a root cluster is
// a perturbed multiple root.
constexpr double kCoeffNoise = 1e-12;

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

void require_nonconstant(const RealPolynomial& p, const char* what) {
  if (p.degree() < 1) {
    throw Error(Errc::InvalidArgument,
                std::string(what) + " needs a polynomial of degree >= 1, got degree " +
                    std::to_string(p.degree()));
  }
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

RealPolynomial RealPolynomial::monomial(int degree, double coeff) {
  if (degree < 0 || coeff == 0.0) return {};
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return RealPolynomial(std::move(c));
}

RealPolynomial RealPolynomial::from_roots(const std::vector<double>& roots) {
  RealPolynomial p({1.0});
  for (double r : roots) p = p * RealPolynomial({-r, 1.0});
  return p;
}

double RealPolynomial::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

bool RealPolynomial::is_monic(double tol) const noexcept {
  if (coeffs_.empty()) return false;
  double scale = 1.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  return std::abs(coeffs_.back() - 1.0) <= tol * scale;
}

double RealPolynomial::operator()(double x) const noexcept {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> RealPolynomial::operator()(std::complex<double> x) const noexcept {
  Cplx r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

RealPolynomial operator+(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] += q.coeffs()[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& p, const RealPolynomial& q) {
  std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] -= q.coeffs()[i];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator*(const RealPolynomial& p, const RealPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return RealPolynomial(std::move(c));
}

RealPolynomial scale(const RealPolynomial& p, double t) {
  std::vector<double> c = p.coeffs();
  for (double& v : c) v *= t;
  return RealPolynomial(std::move(c));
}

RealPolynomial compose_affine(const RealPolynomial& p, double alpha, double beta) {
  const RealPolynomial inner({beta, alpha});
  RealPolynomial r;
  const auto& a = p.coeffs();
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * inner + RealPolynomial({*it});
  return r;
}

RealPolynomial derivative(const RealPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<double> c(static_cast<std::size_t>(p.degree()));
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
    c[k - 1] = static_cast<double>(k) * p.coeffs()[k];
  }
  return RealPolynomial(std::move(c));
}

RealPolynomial reflect(const RealPolynomial& p) {
  std::vector<double> c = p.coeffs();
  const int d = p.degree();
  for (int k = 0; k <= d; ++k) {
    if ((d + k) % 2 != 0) c[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k)];
  }
  return RealPolynomial(std::move(c));
}

RealPolynomial root_scaling(const RealPolynomial& p, double t) {
  if (!(t > 0.0)) throw Error(Errc::InvalidArgument, "root scaling factor must be positive");
  if (!p.is_monic()) throw Error(Errc::NotMonic, "root scaling expects a monic polynomial");
  std::vector<double> c = p.coeffs();
  const int d = p.degree();
  for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] *= std::pow(t, d - k);
  return RealPolynomial(std::move(c));
}

double cauchy_bound(const RealPolynomial& p) {
  require_nonconstant(p, "cauchy_bound");
  const double lead = std::abs(p.leading());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coeff(k)) / lead);
  return 1.0 + m;
}

double relative_coeff_error(const RealPolynomial& p, const RealPolynomial& q) {
  const int n = std::max(p.degree(), q.degree());
  double num = 0.0;
  double den = 1.0;
  for (int k = 0; k <= n; ++k) {
    num = std::max(num, std::abs(p.coeff(k) - q.coeff(k)));
    den = std::max(den, std::abs(q.coeff(k)));
  }
  return num / den;
}

namespace {

// Parlett-Reinsch diagonal similarity with powers of two, so that every row
// and its column have comparable norms. Eigen's solver does not balance.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(a(j, i));
        row += std::abs(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      const double total = col + row;
      double f = 1.0;
      double g = row / 2.0;
      while (col < g) {
        f *= 2.0;
        col *= 4.0;
      }
      g = row * 2.0;
      while (col >= g) {
        f /= 2.0;
        col /= 4.0;
      }
      if ((col + row) / f < 0.95 * total) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Roots of a monic polynomial with nonzero constant term.
std::vector<Cplx> companion_roots(const std::vector<double>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n == 1) return {Cplx(-monic[0], 0.0)};
  // Substitute x = s y so the roots of the scaled polynomial sit near the
  // unit circle; this keeps the companion matrix well balanced.
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    s = std::max(s, std::pow(std::abs(monic[static_cast<std::size_t>(j)]), 1.0 / (n - j)));
  }
  if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    c(i, n - 1) = -monic[static_cast<std::size_t>(i)] / std::pow(s, n - i);
  }
  balance(c);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "companion eigensolver did not converge");
  }
  std::vector<Cplx> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots.push_back(s * solver.eigenvalues()(i));
  return roots;
}

// |p^(k)(c) / k!| for the monic coefficient vector.
double taylor_coeff(const std::vector<double>& a, int k, double c) {
  double r = 0.0;
  for (int j = static_cast<int>(a.size()) - 1; j >= k; --j) {
    r = r * c + binom(j, k) * a[static_cast<std::size_t>(j)];
  }
  return std::abs(r);
}

void collapse_clusters(std::vector<Cplx>& roots, const std::vector<double>& monic, double tol,
                       double scale) {
  const std::size_t n = roots.size();
  std::vector<bool> settled(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (settled[i] || std::abs(roots[i].imag()) <= tol * scale) continue;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = std::abs(roots[a] - roots[i]);
      const double db = std::abs(roots[b] - roots[i]);
      return da != db ? da < db : a < b;
    });
    for (std::size_t k = 2; k <= n; ++k) {
      Cplx centroid = 0.0;
      for (std::size_t t = 0; t < k; ++t) centroid += roots[order[t]];
      centroid /= static_cast<double>(k);
      if (std::abs(centroid.imag()) > tol * scale) continue;
      double radius = 0.0;
      for (std::size_t t = 0; t < k; ++t) radius = std::max(radius, std::abs(roots[order[t]] - centroid));
      const double c = centroid.real();
      double noise = 0.0;
      const double base = std::max(1.0, std::abs(c));
      for (std::size_t j = 0; j < monic.size(); ++j) {
        noise += std::abs(monic[j]) * std::pow(base, static_cast<double>(j));
      }
      noise *= kCoeffNoise;
      const double lead = taylor_coeff(monic, static_cast<int>(k), c);
      const double allowed =
          lead > 0.0 ? 4.0 * std::pow(noise / lead, 1.0 / static_cast<double>(k))
                     : std::numeric_limits<double>::infinity();
      if (!(radius <= allowed)) continue;
      for (std::size_t t = 0; t < k; ++t) {
        roots[order[t]] = Cplx(c, 0.0);
        settled[order[t]] = true;
      }
      break;
    }
  }
}

}  // namespace

RootReport root_report(const RealPolynomial& p, double tol) {
  require_nonconstant(p, "root_report");
  std::vector<double> monic = p.coeffs();
  const double lead = monic.back();
  for (double& v : monic) v /= lead;
  monic.back() = 1.0;

  std::size_t zeros = 0;
  while (zeros < monic.size() && monic[zeros] == 0.0) ++zeros;
  std::vector<double> reduced(monic.begin() + static_cast<std::ptrdiff_t>(zeros), monic.end());

  std::vector<Cplx> roots(zeros, Cplx(0.0, 0.0));
  if (reduced.size() > 1) {
    auto found = companion_roots(reduced);
    const RealPolynomial q(reduced);
    const RealPolynomial dq = derivative(q);
    for (Cplx& z : found) {
      const Cplx fz = q(z);
      const Cplx dfz = dq(z);
      if (std::abs(dfz) > 0.0) {
        const Cplx z1 = z - fz / dfz;
        if (std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::abs(q(z1)) < std::abs(fz)) {
          z = z1;
        }
      }
    }
    double max_abs = 0.0;
    for (const Cplx& z : found) max_abs = std::max(max_abs, std::abs(z));
    collapse_clusters(found, reduced, tol, 1.0 + max_abs);
    roots.insert(roots.end(), found.begin(), found.end());
  }

  RootReport rep;
  double max_abs = 0.0;
  for (const Cplx& z : roots) max_abs = std::max(max_abs, std::abs(z));
  const double scale = 1.0 + max_abs;
  rep.maxroot = -std::numeric_limits<double>::infinity();
  rep.minroot = std::numeric_limits<double>::infinity();
  for (const Cplx& z : roots) {
    rep.maxroot = std::max(rep.maxroot, z.real());
    rep.minroot = std::min(rep.minroot, z.real());
    rep.max_imag_residual = std::max(rep.max_imag_residual, std::abs(z.imag()) / scale);
  }
  rep.real_rooted = rep.max_imag_residual <= tol;
  rep.roots = std::move(roots);
  return rep;
}

double maxroot_certified(const RealPolynomial& p, double tol, double real_tol,
                         RootReport* report) {
  require_nonconstant(p, "maxroot_certified");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "bisection tolerance must be positive");
  const RootReport rep = root_report(p, real_tol);
  if (!rep.real_rooted) {
    std::ostringstream os;
    os << "imaginary residual " << rep.max_imag_residual << " exceeds " << real_tol;
    throw Error(Errc::NotRealRooted, os.str());
  }
  if (report != nullptr) *report = rep;
  const RealPolynomial monic = scale(p, 1.0 / p.leading());
  const int n = monic.degree();
  std::vector<RealPolynomial> chain{monic};
  for (int j = 1; j < n; ++j) chain.push_back(derivative(chain.back()));

  // chain[n-1] is linear; every higher maxroot lies to its right and each
  // chain[j] is increasing to the right of the maxroot of chain[j+1].
  double a = -chain[static_cast<std::size_t>(n - 1)].coeff(0) /
             chain[static_cast<std::size_t>(n - 1)].coeff(1);
  const double bound = std::max(cauchy_bound(monic), a + 1.0);
  for (int j = n - 2; j >= 0; --j) {
    const RealPolynomial& f = chain[static_cast<std::size_t>(j)];
    if (f(a) >= 0.0) continue;
    double lo = a;
    double hi = bound;
    while (f(hi) < 0.0) hi = lo + 2.0 * (hi - lo);
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (f(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    a = 0.5 * (lo + hi);
  }
  return a;
}

}  // namespace interlace
