#include "interlace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace interlace {

namespace {

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

HermitianMatrix make_hermitian(const ComplexMatrix& entries, double tol) {
  if (entries.rows() == 0 || entries.cols() == 0) {
    throw Error(Errc::EmptyMatrix, "matrix has dimension 0");
  }
  if (entries.rows() != entries.cols()) {
    std::ostringstream os;
    os << "matrix is " << entries.rows() << "x" << entries.cols() << ", expected square";
    throw Error(Errc::DimensionMismatch, os.str());
  }
  const double limit = tol * (1.0 + max_abs_entry(entries));
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= limit)) {
    std::ostringstream os;
    os << "asymmetry " << asym << " exceeds tolerance " << limit;
    throw Error(Errc::NotHermitian, os.str());
  }
  ComplexMatrix sym = 0.5 * (entries + entries.adjoint());
  return HermitianMatrix(std::move(sym));
}

HermitianMatrix make_hermitian(const std::vector<std::vector<Complex>>& entries, double tol) {
  const auto d = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = entries[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw Error(Errc::DimensionMismatch, "row " + std::to_string(r) + " has length " +
                                               std::to_string(row.size()));
    }
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return make_hermitian(m, tol);
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  if (dim == 0) throw Error(Errc::EmptyMatrix, "dimension 0");
  const auto d = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(ComplexMatrix::Zero(d, d));
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  if (dim == 0) throw Error(Errc::EmptyMatrix, "dimension 0");
  const auto d = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& diag) {
  if (diag.empty()) throw Error(Errc::EmptyMatrix, "dimension 0");
  const auto d = static_cast<Eigen::Index>(diag.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::outer(const Eigen::VectorXcd& v) {
  if (v.size() == 0) throw Error(Errc::EmptyMatrix, "dimension 0");
  ComplexMatrix m = v * v.adjoint();
  // exact symmetry: the diagonal of v v^* is |v_i|^2 with no imaginary part
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) = std::norm(v(i));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw Error(Errc::DimensionMismatch, "sum of mismatched dims");
  return HermitianMatrix(m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw Error(Errc::DimensionMismatch, "difference of mismatched dims");
  return HermitianMatrix(m_ - other.m_);
}

HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(-m_); }

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return HermitianMatrix(factor * m_);
}

EigenDecomposition eigen_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

double min_eigenvalue(const HermitianMatrix& h) { return eigenvalues(h).front(); }
double max_eigenvalue(const HermitianMatrix& h) { return eigenvalues(h).back(); }

double operator_norm(const HermitianMatrix& h) {
  const auto ev = eigenvalues(h);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

bool is_psd(const HermitianMatrix& h, double tol) {
  const auto ev = eigenvalues(h);
  const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.front() >= -tol * (1.0 + norm);
}

namespace {

HermitianMatrix spectral_map(const EigenDecomposition& eig, double (*f)(double)) {
  Eigen::VectorXd mapped = eig.values.unaryExpr(f);
  ComplexMatrix m = eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
  return make_hermitian(m, 1e-9);
}

}  // namespace

std::pair<HermitianMatrix, HermitianMatrix> positive_negative_parts(const HermitianMatrix& h) {
  const auto eig = eigen_decompose(h);
  auto plus = spectral_map(eig, [](double x) { return x > 0.0 ? x : 0.0; });
  auto minus = spectral_map(eig, [](double x) { return x < 0.0 ? -x : 0.0; });
  return {std::move(plus), std::move(minus)};
}

HermitianMatrix absolute_value(const HermitianMatrix& h) {
  return spectral_map(eigen_decompose(h), [](double x) { return std::abs(x); });
}

std::vector<HermitianMatrix> rank_one_completion(const HermitianMatrix& a, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  if (!is_psd(a)) throw Error(Errc::NotPSD, "completion input is not PSD");
  const auto d = a.dim();
  const auto eig = eigen_decompose(HermitianMatrix::identity(d) - a);
  if (eig.values(0) < -kPsdTol) {
    throw Error(Errc::NotContraction, "A is not bounded by the identity (max eigenvalue " +
                                          std::to_string(1.0 - eig.values(0)) + ")");
  }
  std::vector<HermitianMatrix> pieces;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const double lambda = eig.values(j);
    if (lambda <= 1e-12) continue;
    const auto copies =
        static_cast<std::size_t>(std::max(1.0, std::ceil(lambda / epsilon - 1e-12)));
    const Eigen::VectorXcd v = eig.vectors.col(j) * std::sqrt(lambda / static_cast<double>(copies));
    const auto piece = HermitianMatrix::outer(v);
    for (std::size_t c = 0; c < copies; ++c) pieces.push_back(piece);
  }
  return pieces;
}

HermitianMatrix block_diagonal_lift(const HermitianMatrix& a, std::size_t r, std::size_t slot,
                                    double scale) {
  if (r == 0 || slot == 0 || slot > r) {
    throw Error(Errc::BadSlot, "slot " + std::to_string(slot) + " outside [1, " +
                                   std::to_string(r) + "]");
  }
  if (!(scale > 0.0)) throw Error(Errc::InvalidArgument, "lift scale must be positive");
  const auto d = static_cast<Eigen::Index>(a.dim());
  const auto n = d * static_cast<Eigen::Index>(r);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const auto offset = d * static_cast<Eigen::Index>(slot - 1);
  m.block(offset, offset, d, d) = scale * a.matrix();
  return make_hermitian(m);
}

HermitianMatrix block_diagonal(const std::vector<HermitianMatrix>& blocks) {
  if (blocks.empty()) throw Error(Errc::EmptyMatrix, "no blocks");
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += static_cast<Eigen::Index>(b.dim());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    const auto d = static_cast<Eigen::Index>(b.dim());
    m.block(offset, offset, d, d) = b.matrix();
    offset += d;
  }
  return make_hermitian(m);
}

MatrixEnsemble::MatrixEnsemble(std::vector<HermitianMatrix> matrices)
    : dim_(0), matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw Error(Errc::EmptyMatrix, "ensemble has no members");
  dim_ = matrices_.front().dim();
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (matrices_[i].dim() != dim_) {
      throw Error(Errc::DimensionMismatch, "member " + std::to_string(i) + " has dim " +
                                               std::to_string(matrices_[i].dim()) +
                                               ", expected " + std::to_string(dim_));
    }
  }
}

HermitianMatrix MatrixEnsemble::sum() const {
  HermitianMatrix total = HermitianMatrix::zero(dim_);
  for (const auto& m : matrices_) total = total + m;
  return total;
}

EnsembleStats ensemble_stats(const MatrixEnsemble& ensemble) {
  EnsembleStats stats;
  stats.all_psd = true;
  for (const auto& m : ensemble) {
    stats.epsilon = std::max(stats.epsilon, m.trace());
    if (!is_psd(m)) stats.all_psd = false;
  }
  const auto ev = eigenvalues(ensemble.sum());
  stats.sum_norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
  stats.sum_leq_identity = ev.back() <= 1.0 + 1e-10;
  return stats;
}

void require_psd(const MatrixEnsemble& ensemble) {
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    if (!is_psd(ensemble[i])) {
      throw Error(Errc::NotPSD, "member " + std::to_string(i) + " has min eigenvalue " +
                                    std::to_string(min_eigenvalue(ensemble[i])));
    }
  }
}

}  // namespace interlace
