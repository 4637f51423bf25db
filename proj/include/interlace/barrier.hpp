#pragma once

#include <cstddef>
#include <vector>

#include "interlace/linalg.hpp"
#include "interlace/polynomial.hpp"

namespace interlace {

/// Point (x, z_1, ..., z_m) for the pencil det(xI + sum z_i A_i).
struct BarrierPoint {
  double x = 0.0;
  std::vector<double> shifts;
};

/// For PSD ensembles a point is above the roots iff xI + sum z_i A_i is
/// positive definite. Non-PSD ensembles are refused with NotPSD.
bool above_roots(const MatrixEnsemble& ensemble, const BarrierPoint& pt);

/// d/dz_j log det(xI + sum z_i A_i) = tr(M^{-1} A_j). Throws NotAboveRoots.
double barrier_value(const MatrixEnsemble& ensemble, const BarrierPoint& pt, std::size_t j);

inline const std::vector<double> kDefaultShapeGrid{0.0, 0.5, 1.0, 2.0, 4.0, 8.0};

struct ShapeReport {
  std::vector<double> grid;
  std::vector<double> values;
  bool nonnegative = false;
  bool non_increasing = false;
  bool convex = false;  // slopes between grid points nondecreasing within 1e-9

  bool passed() const noexcept { return nonnegative && non_increasing && convex; }
};

/// Barrier j along pt + t e_j for t on an ascending grid of nonnegative reals.
ShapeReport barrier_shape_check(const MatrixEnsemble& ensemble, const BarrierPoint& pt,
                                std::size_t j, const std::vector<double>& grid = kDefaultShapeGrid);

/// c^2 (2 phi / delta + phi^2). Throws BadDelta for delta <= 0.
double ag_value(double phi, double c, double delta);
/// ag_value(phi, c, delta) <= 1.
bool ag_condition(double phi, double c, double delta);

struct QxReport {
  std::vector<double> delta;      // 2 tr(B_i)
  double corner_min_eigenvalue = 0.0;  // of 4I - sum delta_i B_i
  bool corner_above_roots = false;     // corner matrix >= 2I
  std::vector<double> phi;             // barrier of the product at the corner
  std::vector<double> phi_bound;       // tr(B_j)
  bool phi_within_bound = false;
  std::vector<double> shift_value;     // phi/delta + phi^2/2 (0 when B_j = 0)
  bool shift_condition = false;        // every shift_value <= 1 + 1e-9

  bool passed() const noexcept { return corner_above_roots && phi_within_bound && shift_condition; }
};

/// Corner certificate at x = 4, z_i = w_i = -2 tr(B_i) for PSD ensembles with
/// max tr(B_i) <= 1 and sum tr(B_i) B_i <= I (QxNormalizationViolated
/// otherwise).
QxReport qx_certificate(const MatrixEnsemble& ensemble);

/// For real-rooted q: if x0 lies above the roots of q + c q', reports whether
/// x0 + c lies above the roots of q (within tol). Throws NotAboveRoots when
/// the hypothesis fails.
bool transfer_holds(const RealPolynomial& q, double c, double x0, double tol = 1e-9);

}  // namespace interlace
