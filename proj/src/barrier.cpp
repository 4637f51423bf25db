#include "interlace/barrier.hpp"

#include <cmath>
#include <string>

namespace interlace {

namespace {

ComplexMatrix pencil(const MatrixEnsemble& ensemble, const BarrierPoint& pt) {
  if (pt.shifts.size() != ensemble.size()) {
    throw Error(Errc::DimensionMismatch, std::to_string(pt.shifts.size()) + " shifts for " +
                                             std::to_string(ensemble.size()) + " matrices");
  }
  const auto d = static_cast<Eigen::Index>(ensemble.dim());
  ComplexMatrix m = pt.x * ComplexMatrix::Identity(d, d);
  for (std::size_t i = 0; i < ensemble.size(); ++i) m += pt.shifts[i] * ensemble[i].matrix();
  return m;
}

double min_eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::NumericalFailure, "hermitian eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

// tr(M^{-1} B) for positive definite M.
double resolvent_trace(const ComplexMatrix& m, const ComplexMatrix& b) {
  const Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw Error(Errc::NotAboveRoots, "pencil is not positive definite");
  return llt.solve(b).trace().real();
}

}  // namespace

bool above_roots(const MatrixEnsemble& ensemble, const BarrierPoint& pt) {
  require_psd(ensemble);
  return min_eig(pencil(ensemble, pt)) > 0.0;
}

double barrier_value(const MatrixEnsemble& ensemble, const BarrierPoint& pt, std::size_t j) {
  if (j >= ensemble.size()) {
    throw Error(Errc::InvalidArgument, "barrier index " + std::to_string(j) + " out of range");
  }
  require_psd(ensemble);
  const ComplexMatrix m = pencil(ensemble, pt);
  const double lo = min_eig(m);
  if (!(lo > 0.0)) {
    throw Error(Errc::NotAboveRoots, "pencil has min eigenvalue " + std::to_string(lo));
  }
  return resolvent_trace(m, ensemble[j].matrix());
}

ShapeReport barrier_shape_check(const MatrixEnsemble& ensemble, const BarrierPoint& pt,
                                std::size_t j, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(Errc::InvalidArgument, "empty grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw Error(Errc::InvalidArgument, "grid must be ascending and nonnegative");
    }
  }
  if (j >= ensemble.size()) {
    throw Error(Errc::InvalidArgument, "barrier index " + std::to_string(j) + " out of range");
  }
  ShapeReport rep;
  rep.grid = grid;
  for (double t : grid) {
    BarrierPoint moved = pt;
    moved.shifts[j] += t;
    rep.values.push_back(barrier_value(ensemble, moved, j));
  }
  rep.nonnegative = true;
  rep.non_increasing = true;
  rep.convex = true;
  for (std::size_t k = 0; k < rep.values.size(); ++k) {
    const double v = rep.values[k];
    if (v < -1e-12) rep.nonnegative = false;
    if (k > 0 && v > rep.values[k - 1] + 1e-12 * (1.0 + std::abs(v))) rep.non_increasing = false;
    if (k >= 2) {
      const double s0 = (rep.values[k - 1] - rep.values[k - 2]) / (grid[k - 1] - grid[k - 2]);
      const double s1 = (v - rep.values[k - 1]) / (grid[k] - grid[k - 1]);
      if (s1 - s0 < -1e-9) rep.convex = false;
    }
  }
  return rep;
}

double ag_value(double phi, double c, double delta) {
  if (!(delta > 0.0)) throw Error(Errc::BadDelta, "delta must be positive, got " + std::to_string(delta));
  if (!(c >= 0.0) || !(phi >= 0.0)) {
    throw Error(Errc::InvalidArgument, "c and phi must be nonnegative");
  }
  return c * c * (2.0 * phi / delta + phi * phi);
}

bool ag_condition(double phi, double c, double delta) { return ag_value(phi, c, delta) <= 1.0; }

QxReport qx_certificate(const MatrixEnsemble& ensemble) {
  require_psd(ensemble);
  const std::size_t d = ensemble.dim();
  HermitianMatrix weighted = HermitianMatrix::zero(d);
  double max_trace = 0.0;
  for (const auto& b : ensemble) {
    max_trace = std::max(max_trace, b.trace());
    weighted = weighted + b.scaled(b.trace());
  }
  const double weighted_top = max_eigenvalue(weighted);
  if (max_trace > 1.0 + 1e-9 || weighted_top > 1.0 + 1e-9) {
    throw Error(Errc::QxNormalizationViolated,
                "max trace " + std::to_string(max_trace) + ", ||sum tr(B) B|| " +
                    std::to_string(weighted_top) + " (both must be <= 1)");
  }

  QxReport rep;
  const auto dd = static_cast<Eigen::Index>(d);
  ComplexMatrix corner = 4.0 * ComplexMatrix::Identity(dd, dd);
  for (const auto& b : ensemble) {
    rep.delta.push_back(2.0 * b.trace());
    corner -= rep.delta.back() * b.matrix();
  }
  rep.corner_min_eigenvalue = min_eig(corner);
  rep.corner_above_roots = rep.corner_min_eigenvalue >= 2.0 - 1e-9;
  rep.phi_within_bound = true;
  rep.shift_condition = true;
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    // z and w sit at the same point, so both determinant factors contribute
    // the same resolvent trace.
    const double phi = 2.0 * resolvent_trace(corner, ensemble[j].matrix());
    const double bound = ensemble[j].trace();
    rep.phi.push_back(phi);
    rep.phi_bound.push_back(bound);
    if (phi > bound + 1e-9 * (1.0 + bound)) rep.phi_within_bound = false;
    double shift = 0.0;
    if (rep.delta[j] > 0.0) shift = ag_value(std::max(phi, 0.0), 1.0 / std::sqrt(2.0), rep.delta[j]);
    rep.shift_value.push_back(shift);
    if (shift > 1.0 + 1e-9) rep.shift_condition = false;
  }
  return rep;
}

bool transfer_holds(const RealPolynomial& q, double c, double x0, double tol) {
  const RealPolynomial moved = q + scale(derivative(q), c);
  const auto moved_rep = root_report(moved, 1e-7);
  if (!(x0 > moved_rep.maxroot)) {
    throw Error(Errc::NotAboveRoots, "x0 = " + std::to_string(x0) + " is not above maxroot " +
                                         std::to_string(moved_rep.maxroot));
  }
  return x0 + c > root_report(q, 1e-7).maxroot - tol;
}

}  // namespace interlace
