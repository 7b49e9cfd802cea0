// Per-mode contour route. For each angular order nu the radial Dirichlet
// problem has characteristic function k^{-nu} I_nu(k) (cone) or an I/K cross
// product (annulus) on the imaginary axis. Subtracting the uniform Debye
// expansion through order 3 leaves a convergent mode sum; the subtracted
// pieces are resummed over nu = n/alpha with Riemann zeta special values.
#include <cmath>
#include <numbers>

#include "conicdet/error.hpp"
#include "conicdet/geometry.hpp"
#include "conicdet/spectral_det.hpp"

namespace conicdet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr double kZetaPrimeMinusOne = -0.16542114370045092;
constexpr double kZeta3 = 1.2020569031595942;
// zeta_R'(0): the n = 0 cone mode contributes this at unit radius.
const double kZetaRiemannPrimeZero = -0.5 * std::log(2.0 * kPi);

constexpr double kTailTolerance = 1e-10;

// lgamma(nu + 1) minus Stirling through 1/(360 nu^3).
double stirling_remainder(double nu) {
  if (nu >= 8.0) {
    const double x = 1.0 / (nu * nu);
    return (1.0 / 1260.0 + x * (-1.0 / 1680.0 + x * (1.0 / 1188.0 + x * (-691.0 / 360360.0 + x / 156.0)))) * x * x / nu;
  }
  return std::lgamma(nu + 1.0) - nu * std::log(nu) + nu - 0.5 * std::log(2.0 * kPi * nu) - 1.0 / (12.0 * nu) +
         1.0 / (360.0 * nu * nu * nu);
}

double cone_tail_bound(double alpha, int n) {
  return 2.0 * std::pow(alpha, 5) / (5040.0 * std::pow(static_cast<double>(n), 4));
}

int default_cone_modes(double alpha) {
  return std::max(1000, static_cast<int>(std::ceil(alpha * 2000.0)));
}

}  // namespace

ZetaDetResult gelfand_yaglom_logdet(const ConeSpec& cone, int mode_cutoff) {
  const double a = cone.alpha();
  const int n_modes = mode_cutoff > 0 ? mode_cutoff : default_cone_modes(a);
  const double tail = cone_tail_bound(a, n_modes);
  if (tail > kTailTolerance)
    fail(ErrorKind::non_convergence, "cone mode tail bound " + std::to_string(tail) + " exceeds tolerance");

  // Debye-subtracted pieces resummed over nu = n / alpha, unit radius.
  const double f = (2.0 - 2.0 * std::log(2.0) + 2.0 * std::log(a) - 24.0 * kZetaPrimeMinusOne) / (24.0 * a);
  const double g = 0.25 * std::log(2.0 * kPi * a);
  const double h1 = a * (kEuler / 12.0 + (std::log(a) - std::log(2.0)) / 12.0 + 5.0 / 24.0);
  const double h3 = -a * a * a * kZeta3 / 360.0;
  double remainder = 0.0;
  for (int n = n_modes; n >= 1; --n) remainder += stirling_remainder(n / a);

  // n = 0: the Bessel zeros of order 0 have zeta'(0) = -log(2 pi)/2 at unit radius.
  const double zp_unit = kZetaRiemannPrimeZero + 2.0 * (f + g + h1 + h3 + remainder);
  const double z0 = zeta0_cone(a);
  ZetaDetResult r;
  r.zeta0 = z0;
  r.logdet = scale_logdet(-zp_unit, z0, cone.length());
  r.zeta_prime0 = -r.logdet;
  r.err_estimate = tail + 1e-13 * (1.0 + std::abs(r.logdet));
  return r;
}

ZetaDetResult gelfand_yaglom_logdet(const AnnulusSpec& ann, int mode_cutoff) {
  const double a = ann.alpha();
  const double q = ann.ratio();
  const double x1 = std::pow(q, 2.0 / a);
  // Terms -2 log(1 - x1^n) are below 1e-17 once n exceeds this.
  const int auto_modes = static_cast<int>(std::ceil(40.0 / -std::log(x1))) + 1;
  const int n_modes = mode_cutoff > 0 ? mode_cutoff : auto_modes;
  const double xn = std::pow(x1, n_modes + 1);
  const double tail = 2.0 * xn / ((1.0 - x1) * (1.0 - xn));
  if (tail > kTailTolerance)
    fail(ErrorKind::non_convergence, "annulus mode tail bound " + std::to_string(tail) + " exceeds tolerance");

  double pairs = 0.0;
  for (int n = n_modes; n >= 1; --n) pairs += std::log1p(-std::pow(x1, n));
  const double log_inv_q = -std::log(q);
  // log log(1/q) is the n = 0 mode (Dirichlet problem in log r); -log(pi alpha)
  // collects the zeta-regularized sum of log(2 nu) over n != 0.
  const double logdet =
      std::log(log_inv_q) - std::log(kPi * a) - (a + 1.0 / a) / 6.0 * log_inv_q + 2.0 * pairs;
  ZetaDetResult r;
  r.zeta0 = zeta0_smooth(0);
  r.logdet = logdet;
  r.zeta_prime0 = -logdet;
  r.err_estimate = tail + 1e-13 * (1.0 + std::abs(logdet));
  return r;
}

ZetaDetResult gelfand_yaglom_logdet(const Domain& domain, int mode_cutoff) {
  return std::visit([mode_cutoff](const auto& d) { return gelfand_yaglom_logdet(d, mode_cutoff); }, domain);
}

}  // namespace conicdet
