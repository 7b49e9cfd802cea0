#include "conicdet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "conicdet/error.hpp"
#include "conicdet/geometry.hpp"
#include "conicdet/jump_operator.hpp"
#include "conicdet/parallel.hpp"

namespace conicdet {
namespace {

std::string describe(const char* what, double value) {
  std::ostringstream s;
  s.precision(3);
  s << what << " = " << value;
  return s.str();
}

// Heat-trace determinant with its GY cross-check.
std::pair<ZetaDetResult, double> checked_logdet(const Domain& domain, double cutoff, double limit, const char* label) {
  const auto spectrum = enumerate_spectrum(domain, cutoff);
  const auto heat = logdet_from_spectrum(spectrum, heat_coefficients(domain));
  const auto gy = gelfand_yaglom_logdet(domain);
  if (heat.err_estimate > limit)
    fail(ErrorKind::inconclusive,
         std::string(label) + ": " + describe("err_estimate", heat.err_estimate) + " exceeds tol/4; raise the cutoff");
  if (std::abs(heat.logdet - gy.logdet) > limit)
    fail(ErrorKind::inconclusive, std::string(label) + ": heat-trace and Gelfand-Yaglom routes differ by " +
                                      describe("", std::abs(heat.logdet - gy.logdet)));
  return {heat, gy.logdet};
}

}  // namespace

BfkReport verify_bfk_model(double alpha, double eps, const BfkOptions& options) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::invalid_argument, "alpha must be positive");
  require(std::isfinite(eps) && eps > 0.0 && eps <= 0.5, ErrorKind::invalid_argument, "eps must lie in (0, 1/2]");
  require(options.tol > 0.0 && options.scale > 0.0 && options.spectral_cutoff > 0.0, ErrorKind::invalid_argument,
          "tol, scale and cutoff must be positive");
  const double s = options.scale;
  const double cutoff = options.spectral_cutoff / (s * s);
  const double limit = options.tol / 4.0;

  BfkReport r;
  r.tolerance = options.tol;
  const auto [whole, gy_whole] = checked_logdet(ConeSpec(alpha, s), cutoff, limit, "cone");
  const auto [ann, gy_ann] = checked_logdet(AnnulusSpec(alpha, s * eps, s), cutoff, limit, "annulus");
  r.logdet_whole = whole.logdet;
  r.gy_whole = gy_whole;
  r.err_whole = whole.err_estimate;
  r.logdet_annulus = ann.logdet;
  r.gy_annulus = gy_ann;
  r.err_annulus = ann.err_estimate;
  r.logdet_small_cone = scale_logdet(whole.logdet, zeta0_cone(alpha), eps);

  // Eigenvalues of R scale by 1/s under g -> s^2 g.
  const auto jump = logdet_model_r(eps, alpha, options.mode_cutoff, ModeConvention::model);
  r.logdet_r = jump.logdet_r - jump.zeta_r0 * std::log(s);
  r.identity_residual = r.logdet_whole - r.logdet_annulus - r.logdet_small_cone - r.logdet_r;
  return r;
}

std::vector<SweepRow> sweep_jump_determinant(double alpha, std::span<const double> eps_grid, int mode_cutoff) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::invalid_argument, "alpha must be positive");
  require(!eps_grid.empty(), ErrorKind::invalid_argument, "empty eps grid");
  std::vector<double> grid(eps_grid.begin(), eps_grid.end());
  std::sort(grid.begin(), grid.end(), std::greater<>());
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const double eps = grid[i];
    const auto jump = logdet_model_r(eps, alpha, mode_cutoff, ModeConvention::model);
    SweepRow& row = rows[i];
    row.eps = eps;
    row.logdet_r_numeric = jump.logdet_r;
    row.logdet_r_asymptotic = std::log(std::numbers::pi * alpha) - std::log(std::log(1.0 / eps));
    row.residual = row.logdet_r_numeric - row.logdet_r_asymptotic;
    row.comeback_bound = jump.comeback_bound;
    row.paper_bound = jump.paper_bound;
    row.in_regime = jump.in_regime;
    row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return rows;
}

double fit_convergence_rate(std::span<const SweepRow> rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (std::abs(r.residual) >= 1e-12 && r.eps > 0.0) pts.emplace_back(std::log(r.eps), std::log(std::abs(r.residual)));
  if (pts.size() < 3) fail(ErrorKind::insufficient_data, "need at least 3 rows above the 1e-12 noise floor");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  require(sxx > 0.0, ErrorKind::insufficient_data, "rows need distinct eps values");
  return sxy / sxx;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool timing) {
  const auto old_precision = out.precision(17);
  out << "eps,logdet_r_numeric,logdet_r_asymptotic,residual,comeback_bound,paper_bound,runtime_seconds\n";
  for (const auto& r : rows) {
    out << r.eps << ',' << r.logdet_r_numeric << ',' << r.logdet_r_asymptotic << ',' << r.residual << ','
        << r.comeback_bound << ',' << r.paper_bound << ',' << (timing ? r.runtime_seconds : 0.0) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace conicdet
