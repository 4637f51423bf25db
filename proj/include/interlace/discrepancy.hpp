#pragma once

#include <vector>

#include "interlace/interlacing.hpp"
#include "interlace/linalg.hpp"

namespace interlace {

struct DiscrepancyInstance {
  MatrixEnsemble ensemble;
  std::vector<FiniteDistribution> dists;
};

struct DiscrepancyResult {
  std::vector<double> outcome;  // one support value per variable
  double achieved = 0.0;        // || sum (s_i - E xi_i) A_i ||, recomputed
  double sigma = 0.0;           // sigma of the distributions the descent ran on
  double sigma_input = 0.0;     // sigma of the distributions as given
  double bound = 0.0;
  bool zero_sigma = false;      // every variable was effectively deterministic
  DescentCertificate certificate;
};

/// sqrt(max(max_i var_i tr(A_i)^2, || sum_i var_i tr(A_i) A_i ||)). Throws
/// NotPSD.
double sigma_bound(const DiscrepancyInstance& inst);

/// Mean-preserving reduction to at most two support points: the point mass
/// at the mean when it lies in the support, otherwise the nearest support
/// values on either side. Zero-probability values are dropped first.
FiniteDistribution two_point_reduction(const FiniteDistribution& dist);

/// || sum_i (outcome_i - E xi_i) M_i ||.
double discrepancy_norm(const std::vector<HermitianMatrix>& matrices,
                        const std::vector<FiniteDistribution>& dists,
                        const std::vector<double>& outcome);

/// Finds an outcome with discrepancy at most 4 sigma.
DiscrepancyResult solve_kls(const DiscrepancyInstance& inst, bool reduce = true,
                            const DescentOptions& options = {});

/// sigma computed with |B_i| in place of A_i.
double hermitian_sigma(const std::vector<HermitianMatrix>& matrices,
                       const std::vector<FiniteDistribution>& dists);

/// Hermitian inputs through the PSD lift diag(B_i+, B_i-); bound 8 sigma.
/// The lift doubles the dimension, so d is limited to kMaxTableDim / 2.
DiscrepancyResult solve_hermitian(const std::vector<HermitianMatrix>& matrices,
                                  const std::vector<FiniteDistribution>& dists, bool reduce = true,
                                  const DescentOptions& options = {});

}  // namespace interlace
