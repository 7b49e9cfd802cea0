#include "conicdet/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

namespace bm = boost::math;
using Policy = bm::policies::policy<bm::policies::overflow_error<bm::policies::ignore_error>,
                                    bm::policies::underflow_error<bm::policies::ignore_error>,
                                    bm::policies::promote_double<false>>;

constexpr double kPi = std::numbers::pi;

void check_argument(double x) {
  require(std::isfinite(x) && x >= 0.0, ErrorKind::invalid_argument,
          "Bessel argument must be finite and >= 0");
}

// Safeguarded Newton on a sign-change bracket [lo, hi]. `fdf` returns (f, f').
// Steps that leave the bracket, or fail to halve it, fall back to bisection.
template <class F>
double refine_root(F&& fdf, double lo, double hi, double guess) {
  auto [flo, dlo] = fdf(lo);
  (void)dlo;
  if (flo == 0.0) return lo;
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  double width = hi - lo;
  for (int iter = 0; iter < 200; ++iter) {
    auto [fx, dfx] = fdf(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    double next = x - fx / dfx;
    const bool inside = std::isfinite(next) && next > lo && next < hi;
    if (!inside || std::abs(next - x) > 0.5 * width) next = 0.5 * (lo + hi);
    width = std::abs(next - x);
    x = next;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * x || hi - lo <= 2e-16 * x) break;
  }
  return x;
}

// Cross product scaled to avoid overflow when k*ratio sits far inside the
// turning point: there Y_nu(k ratio) < 0, and J - (J(kr)/Y(kr)) Y has the same
// sign and zeros as the raw product.
std::pair<double, double> cross_fdf(double nu, double q, double k) {
  const double x = k * q;
  if (x < nu) {
    const double jq = bm::cyl_bessel_j(nu, x, Policy());
    const double yq = bm::cyl_neumann(nu, x, Policy());
    const double rho = std::isfinite(yq) ? jq / yq : 0.0;
    const double drho = std::isfinite(yq) ? -2.0 / (kPi * k * yq * yq) : 0.0;
    const double j = bm::cyl_bessel_j(nu, k, Policy());
    const double y = bm::cyl_neumann(nu, k, Policy());
    const double jp = bm::cyl_bessel_j_prime(nu, k, Policy());
    const double yp = bm::cyl_neumann_prime(nu, k, Policy());
    return {j - rho * y, jp - rho * yp - drho * y};
  }
  const double jq = bm::cyl_bessel_j(nu, x, Policy());
  const double yq = bm::cyl_neumann(nu, x, Policy());
  const double jqp = bm::cyl_bessel_j_prime(nu, x, Policy());
  const double yqp = bm::cyl_neumann_prime(nu, x, Policy());
  const double j = bm::cyl_bessel_j(nu, k, Policy());
  const double y = bm::cyl_neumann(nu, k, Policy());
  const double jp = bm::cyl_bessel_j_prime(nu, k, Policy());
  const double yp = bm::cyl_neumann_prime(nu, k, Policy());
  return {jq * y - j * yq, q * jqp * y + jq * yp - jp * yq - q * j * yqp};
}

std::pair<double, double> j_fdf(double nu, double x) {
  return {bm::cyl_bessel_j(nu, x, Policy()), bm::cyl_bessel_j_prime(nu, x, Policy())};
}

// Zeros of J_nu are more than 3 apart, and none lie in (0, nu].
constexpr double kJScanStep = 1.0;

double cross_scan_step(double q) { return kPi / (4.0 * (1.0 - q)); }

void check_ratio(double q) {
  require(std::isfinite(q) && q > 0.0 && q < 1.0, ErrorKind::invalid_argument,
          "annulus ratio must lie in (0, 1)");
}

// Walks sign changes of fdf on a uniform grid from `start`; calls on_zero for
// each refined zero until it returns false or x exceeds kmax.
template <class F, class G>
void scan_zeros(F&& fdf, double start, double step, double kmax, G&& on_zero) {
  double a = start;
  double fa = fdf(a).first;
  int index = 0;
  while (a < kmax) {
    const double b = a + step;
    const double fb = fdf(b).first;
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
      const double z = refine_root(fdf, a, b, on_zero.guess(index + 1, a, b));
      ++index;
      if (!on_zero(z)) return;
    }
    a = b;
    fa = fb;
  }
}

struct ZeroCollector {
  std::vector<double>* out;
  double kmax;
  int stop_at;  // 0: collect every zero below kmax
  double nu;
  bool bessel;

  double guess(int m, double a, double b) const {
    if (!bessel) return 0.5 * (a + b);
    const double g = mcmahon_zero(BesselOrder(nu), m);
    return (g > a && g < b) ? g : 0.5 * (a + b);
  }
  bool operator()(double z) const {
    if (stop_at == 0 && z > kmax) return false;
    out->push_back(z);
    return stop_at == 0 || static_cast<int>(out->size()) < stop_at;
  }
};

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  require(std::isfinite(nu) && nu >= 0.0, ErrorKind::invalid_argument, "Bessel order must be >= 0");
}

double bessel_j(BesselOrder nu, double x) {
  check_argument(x);
  if (x == 0.0) return nu.value() == 0.0 ? 1.0 : 0.0;
  return bm::cyl_bessel_j(nu.value(), x, Policy());
}

double bessel_j_prime(BesselOrder nu, double x) {
  check_argument(x);
  return bm::cyl_bessel_j_prime(nu.value(), x, Policy());
}

double bessel_y(BesselOrder nu, double x) {
  check_argument(x);
  return bm::cyl_neumann(nu.value(), x, Policy());
}

double bessel_y_prime(BesselOrder nu, double x) {
  check_argument(x);
  return bm::cyl_neumann_prime(nu.value(), x, Policy());
}

double mcmahon_zero(BesselOrder order, int m) {
  require(m >= 1, ErrorKind::invalid_argument, "zero index must be >= 1");
  const double mu = 4.0 * order.value() * order.value();
  const double b = (m + 0.5 * order.value() - 0.25) * kPi;
  const double e = 1.0 / (8.0 * b);
  const double e2 = e * e;
  return b - (mu - 1.0) * e
         - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / 3.0 * e * e2
         - 32.0 * (mu - 1.0) * ((83.0 * mu - 982.0) * mu + 3779.0) / 15.0 * e * e2 * e2
         - 64.0 * (mu - 1.0) * (((6949.0 * mu - 153855.0) * mu + 1585743.0) * mu - 6277237.0) / 105.0
               * e * e2 * e2 * e2;
}

double bessel_j_zero(BesselOrder order, int m) {
  require(m >= 1, ErrorKind::invalid_argument, "zero index must be >= 1");
  const double nu = order.value();
  const double mu = 4.0 * nu * nu;
  const double b = (m + 0.5 * nu - 0.25) * kPi;
  auto fdf = [nu](double x) { return j_fdf(nu, x); };
  if (b >= std::max(mu, 10.0)) {
    // McMahon is accurate far below the zero spacing here, so the bracket
    // [g - 1, g + 1] holds exactly the m-th zero.
    const double g = mcmahon_zero(order, m);
    const double lo = g - 1.0, hi = g + 1.0;
    if ((fdf(lo).first < 0.0) != (fdf(hi).first < 0.0)) return refine_root(fdf, lo, hi, g);
  }
  std::vector<double> zeros;
  ZeroCollector collect{&zeros, 0.0, m, nu, true};
  scan_zeros(fdf, std::max(nu, 1e-3), kJScanStep, std::numeric_limits<double>::infinity(), collect);
  return zeros.back();
}

std::vector<double> bessel_j_zeros_below(BesselOrder order, double kmax) {
  std::vector<double> zeros;
  const double nu = order.value();
  if (!(kmax > nu)) return zeros;
  auto fdf = [nu](double x) { return j_fdf(nu, x); };
  scan_zeros(fdf, std::max(nu, 1e-3), kJScanStep, kmax, ZeroCollector{&zeros, kmax, 0, nu, true});
  return zeros;
}

double cross_product(BesselOrder order, double ratio, double k) {
  check_ratio(ratio);
  check_argument(k);
  const double nu = order.value();
  return bm::cyl_bessel_j(nu, k * ratio, Policy()) * bm::cyl_neumann(nu, k, Policy())
         - bm::cyl_bessel_j(nu, k, Policy()) * bm::cyl_neumann(nu, k * ratio, Policy());
}

double cross_product_zero(BesselOrder order, double ratio, int m) {
  check_ratio(ratio);
  require(m >= 1, ErrorKind::invalid_argument, "zero index must be >= 1");
  const double nu = order.value();
  auto fdf = [nu, ratio](double k) { return cross_fdf(nu, ratio, k); };
  std::vector<double> zeros;
  ZeroCollector collect{&zeros, 0.0, m, nu, false};
  scan_zeros(fdf, std::max(nu, 1e-3), cross_scan_step(ratio), std::numeric_limits<double>::infinity(),
             collect);
  return zeros.back();
}

std::vector<double> cross_product_zeros_below(BesselOrder order, double ratio, double kmax) {
  check_ratio(ratio);
  std::vector<double> zeros;
  const double nu = order.value();
  if (!(kmax > nu)) return zeros;
  auto fdf = [nu, ratio](double k) { return cross_fdf(nu, ratio, k); };
  scan_zeros(fdf, std::max(nu, 1e-3), cross_scan_step(ratio), kmax,
             ZeroCollector{&zeros, kmax, 0, nu, false});
  return zeros;
}

}  // namespace conicdet
