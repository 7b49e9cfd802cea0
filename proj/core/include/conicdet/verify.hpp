#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "conicdet/spectral_det.hpp"

namespace conicdet {

/// Gluing identity on the unit cone with a Dirichlet wall, cut at r = eps:
/// logdet C(alpha,1) = logdet Ann(alpha; eps,1) + logdet C(alpha,eps) + logdet R_eps.
struct BfkReport {
  double logdet_whole = 0.0;
  double logdet_annulus = 0.0;
  double logdet_small_cone = 0.0;
  double logdet_r = 0.0;
  double identity_residual = 0.0;
  double tolerance = 0.0;
  // Cross-oracle values and the heat-trace error estimates behind them.
  double gy_whole = 0.0;
  double gy_annulus = 0.0;
  double err_whole = 0.0;
  double err_annulus = 0.0;
};

struct BfkOptions {
  double spectral_cutoff = 4e4;  // for the unit-length domains
  int mode_cutoff = 0;
  double tol = 1e-3;
  double scale = 1.0;  // run the identity on the metric scaled by scale^2
};

/// Throws inconclusive when an error estimate or a cross-oracle gap exceeds tol / 4.
BfkReport verify_bfk_model(double alpha, double eps, const BfkOptions& options = {});

struct SweepRow {
  double eps = 0.0;
  double logdet_r_numeric = 0.0;
  double logdet_r_asymptotic = 0.0;
  double residual = 0.0;
  double comeback_bound = 0.0;
  double paper_bound = 0.0;
  double runtime_seconds = 0.0;
  bool in_regime = true;
};

/// One row per grid point, ordered by eps descending. Points with
/// eps > 2^{-alpha} are kept and marked in_regime = false.
std::vector<SweepRow> sweep_jump_determinant(double alpha, std::span<const double> eps_grid, int mode_cutoff = 0);

/// Least-squares slope of log|residual| against log eps over rows with
/// |residual| >= 1e-12. Needs at least three such rows.
double fit_convergence_rate(std::span<const SweepRow> rows);

/// Header eps,logdet_r_numeric,logdet_r_asymptotic,residual,comeback_bound,paper_bound,runtime_seconds.
/// With timing = false the runtime column is written as 0.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool timing = true);

}  // namespace conicdet
