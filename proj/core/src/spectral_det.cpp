#include "conicdet/spectral_det.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "conicdet/error.hpp"
#include "conicdet/parallel.hpp"
#include "conicdet/specfun.hpp"

namespace conicdet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;

template <class ZerosBelow>
std::vector<SpectrumEntry> enumerate_modes(double alpha, double kmax, double scale, ZerosBelow zeros_below) {
  // j_{nu,1} > nu, so modes with nu >= kmax contribute nothing.
  const auto n_max = static_cast<std::size_t>(std::floor(alpha * kmax)) + 1;
  std::vector<std::vector<SpectrumEntry>> per_mode(n_max);
  parallel_for(n_max, [&](std::size_t n) {
    const double nu = static_cast<double>(n) / alpha;
    const auto zeros = zeros_below(BesselOrder(nu), kmax);
    auto& slot = per_mode[n];
    slot.reserve(zeros.size());
    for (std::size_t m = 0; m < zeros.size(); ++m) {
      const double k = zeros[m] / scale;
      slot.push_back({static_cast<int>(n), static_cast<int>(m + 1), nu, k * k, n == 0 ? 1 : 2});
    }
  });
  std::vector<SpectrumEntry> all;
  for (auto& slot : per_mode) {
    // Ground energies grow with nu: the first empty mode ends the spectrum.
    if (slot.empty()) break;
    all.insert(all.end(), slot.begin(), slot.end());
  }
  return all;
}

void check_cutoff(double cutoff) {
  require(std::isfinite(cutoff) && cutoff > 0.0, ErrorKind::invalid_argument, "cutoff must be positive");
}

struct Quadrature {
  std::vector<double> t;
  std::vector<double> w;  // weights for integrals in u = log t
};

// Gauss-Legendre in log t on [tmin, tsplit].
Quadrature log_gauss_legendre(int nodes, double tmin, double tsplit) {
  std::vector<double> x;
  for (double z : boost::math::legendre_p_zeros<double>(nodes)) {
    x.push_back(z);
    if (z != 0.0) x.push_back(-z);
  }
  std::sort(x.begin(), x.end());
  const double u0 = std::log(tmin);
  const double half = 0.5 * (std::log(tsplit) - u0);
  Quadrature q;
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime(nodes, xi);
    q.t.push_back(std::exp(u0 + (xi + 1.0) * half));
    q.w.push_back(2.0 / ((1.0 - xi * xi) * dp * dp) * half);
  }
  return q;
}

std::vector<double> heat_trace(const Spectrum& spectrum, const std::vector<double>& ts) {
  std::vector<double> theta(ts.size());
  const auto& entries = spectrum.entries();
  parallel_for(ts.size(), [&](std::size_t i) {
    double s = 0.0;
    for (const auto& e : entries) s += e.multiplicity * std::exp(-e.lambda * ts[i]);
    theta[i] = s;
  });
  return theta;
}

// Least-squares fit of y on powers s^p (s = t / t_min); returns coefficients in t.
std::vector<double> fit_powers(const std::vector<double>& t, const std::vector<double>& y,
                               const std::vector<double>& powers, double tmin) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(powers.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t k = 0; k < powers.size(); ++k) a(i, k) = std::pow(t[i] / tmin, powers[k]);
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(powers.size());
  for (std::size_t k = 0; k < powers.size(); ++k) out[k] = c(k) / std::pow(tmin, powers[k]);
  return out;
}

struct Continuation {
  double zeta_prime0;
  double zeta0;
};

Continuation continue_zeta(const Spectrum& spectrum, const HeatCoefficients& h, double e1_sum,
                           int nodes, double span, int terms, int points, double tmin, double tsplit) {
  const auto quad = log_gauss_legendre(nodes, tmin, tsplit);
  const auto theta = heat_trace(spectrum, quad.t);
  double integral = 0.0;
  for (std::size_t i = 0; i < quad.t.size(); ++i) {
    const double t = quad.t[i];
    integral += quad.w[i] * (theta[i] - h.a0 / t - h.a_half / std::sqrt(t) - h.a1);
  }

  std::vector<double> tf(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) tf[i] = tmin * std::pow(span, static_cast<double>(i) / (points - 1));
  const auto theta_fit = heat_trace(spectrum, tf);
  std::vector<double> rem(tf.size()), rem0(tf.size());
  for (std::size_t i = 0; i < tf.size(); ++i) {
    const double t = tf[i];
    rem0[i] = theta_fit[i] - h.a0 / t - h.a_half / std::sqrt(t) - h.c_sqrt * std::sqrt(t) - h.c_t * t;
    rem[i] = rem0[i] - h.a1;
  }
  std::vector<double> powers;
  for (int k = 0; k < terms; ++k) powers.push_back(1.5 + 0.5 * k);
  const auto c = fit_powers(tf, rem, powers, tmin);
  double small = 2.0 * h.c_sqrt * std::sqrt(tmin) + h.c_t * tmin;
  for (std::size_t k = 0; k < c.size(); ++k) small += c[k] * std::pow(tmin, powers[k]) / powers[k];

  powers.insert(powers.begin(), 0.0);
  const auto c0 = fit_powers(tf, rem0, powers, tmin);

  const double head = -h.a0 / tsplit - 2.0 * h.a_half / std::sqrt(tsplit) + h.a1 * (kEuler + std::log(tsplit));
  return {head + integral + small + e1_sum, c0[0]};
}

}  // namespace

Spectrum::Spectrum(std::vector<SpectrumEntry> entries, double cutoff, Domain domain)
    : entries_(std::move(entries)), cutoff_(cutoff), domain_(std::move(domain)) {
  std::sort(entries_.begin(), entries_.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.n < b.n;
  });
}

std::vector<double> Spectrum::eigenvalues() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.lambda);
  return out;
}

std::vector<int> Spectrum::multiplicities() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.multiplicity);
  return out;
}

std::size_t Spectrum::count() const noexcept {
  std::size_t c = 0;
  for (const auto& e : entries_) c += static_cast<std::size_t>(e.multiplicity);
  return c;
}

double Spectrum::area() const {
  return std::visit([](const auto& d) { return d.area(); }, domain_);
}

double Spectrum::perimeter() const {
  return std::visit([](const auto& d) { return d.perimeter(); }, domain_);
}

Spectrum enumerate_cone_spectrum(const ConeSpec& cone, double cutoff) {
  check_cutoff(cutoff);
  const double kmax = cone.length() * std::sqrt(cutoff);
  auto entries = enumerate_modes(cone.alpha(), kmax, cone.length(), [](BesselOrder nu, double k) {
    return bessel_j_zeros_below(nu, k);
  });
  if (entries.empty()) fail(ErrorKind::empty_spectrum, "cutoff is below the ground state");
  return {std::move(entries), cutoff, cone};
}

Spectrum enumerate_annulus_spectrum(const AnnulusSpec& ann, double cutoff) {
  check_cutoff(cutoff);
  const double kmax = ann.outer() * std::sqrt(cutoff);
  const double q = ann.ratio();
  auto entries = enumerate_modes(ann.alpha(), kmax, ann.outer(), [q](BesselOrder nu, double k) {
    return cross_product_zeros_below(nu, q, k);
  });
  if (entries.empty()) fail(ErrorKind::empty_spectrum, "cutoff is below the ground state");
  return {std::move(entries), cutoff, ann};
}

Spectrum enumerate_spectrum(const Domain& domain, double cutoff) {
  return std::visit(
      [cutoff](const auto& d) -> Spectrum {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, ConeSpec>)
          return enumerate_cone_spectrum(d, cutoff);
        else
          return enumerate_annulus_spectrum(d, cutoff);
      },
      domain);
}

double weyl_count(double area, double perimeter, double cutoff) {
  return area / (4.0 * kPi) * cutoff - perimeter / (4.0 * kPi) * std::sqrt(cutoff);
}

HeatCoefficients heat_coefficients(const ConeSpec& cone) {
  const double a = cone.alpha(), l = cone.length();
  HeatCoefficients h;
  h.a0 = cone.area() / (4.0 * kPi);
  h.a_half = -cone.perimeter() / (8.0 * std::sqrt(kPi));
  h.a1 = zeta0_cone(a);
  h.c_sqrt = 2.0 * kPi * a / l / (256.0 * std::sqrt(kPi));
  h.c_t = 2.0 * kPi * a / (l * l) / (315.0 * kPi);
  return h;
}

HeatCoefficients heat_coefficients(const AnnulusSpec& ann) {
  const double a = ann.alpha(), r1 = ann.inner(), r2 = ann.outer();
  HeatCoefficients h;
  h.a0 = ann.area() / (4.0 * kPi);
  h.a_half = -ann.perimeter() / (8.0 * std::sqrt(kPi));
  h.a1 = zeta0_smooth(0);
  // The inner circle is concave: its curvature enters with a minus sign.
  h.c_sqrt = 2.0 * kPi * a * (1.0 / r2 + 1.0 / r1) / (256.0 * std::sqrt(kPi));
  h.c_t = 2.0 * kPi * a * (1.0 / (r2 * r2) - 1.0 / (r1 * r1)) / (315.0 * kPi);
  return h;
}

HeatCoefficients heat_coefficients(const Domain& domain) {
  return std::visit([](const auto& d) { return heat_coefficients(d); }, domain);
}

double zeta0_cone(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::invalid_argument, "alpha must be positive");
  return (alpha + 1.0 / alpha) / 12.0;
}

double zeta0_smooth(int chi) { return chi / 6.0; }

ZetaDetResult logdet_from_spectrum(const Spectrum& spectrum, const HeatCoefficients& heat,
                                   const HeatOptions& options) {
  require(!spectrum.entries().empty(), ErrorKind::empty_spectrum, "empty spectrum");
  require(options.quadrature_nodes >= 8 && options.fit_terms >= 1 && options.fit_points > options.fit_terms + 1 &&
              options.fit_span > 1.0 && options.tmin_factor > 0.0,
          ErrorKind::invalid_argument, "bad heat-trace options");
  const double cutoff = spectrum.cutoff();
  const double tmin = options.tmin_factor / cutoff;
  // Splitting at the squared outer length makes the result covariant under metric scaling.
  const double tsplit = std::visit(
      [](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, ConeSpec>)
          return d.length() * d.length();
        else
          return d.outer() * d.outer();
      },
      spectrum.domain());
  require(tmin < 0.25 * tsplit, ErrorKind::increase_cutoff, "cutoff too small for the heat-trace window");

  double e1_sum = 0.0;
  for (const auto& e : spectrum.entries()) e1_sum += e.multiplicity * boost::math::expint(1, e.lambda * tsplit);

  const auto run = [&](int nodes, double span, int terms) {
    return continue_zeta(spectrum, heat, e1_sum, nodes, span, terms, options.fit_points, tmin, tsplit);
  };
  const auto base = run(options.quadrature_nodes, options.fit_span, options.fit_terms);
  const Continuation variants[] = {
      run(options.quadrature_nodes / 2, options.fit_span, options.fit_terms),
      run(options.quadrature_nodes, 2.0 * options.fit_span, options.fit_terms),
      run(options.quadrature_nodes, options.fit_span, options.fit_terms + 1),
  };
  double spread = 0.0, zeta0_spread = 0.0;
  for (const auto& v : variants) {
    spread = std::max(spread, std::abs(v.zeta_prime0 - base.zeta_prime0));
    zeta0_spread = std::max(zeta0_spread, std::abs(v.zeta0 - base.zeta0));
  }
  spread = std::max(spread, zeta0_spread);
  // Eigenvalues above the cutoff, bounded with the Weyl density a0 per unit lambda.
  const double truncation = 2.0 * heat.a0 * std::exp(-cutoff * tmin) / (cutoff * tmin * tmin);

  ZetaDetResult r;
  r.zeta0 = base.zeta0;
  r.zeta_prime0 = base.zeta_prime0;
  r.logdet = -base.zeta_prime0;
  r.err_estimate = options.safety * (spread + truncation);
  // The zeta(0) fit never sees a1, so its own spread stays small when a1 is wrong.
  const double zeta0_err = options.safety * (zeta0_spread + truncation);
  if (!(std::abs(r.zeta0 - heat.a1) <= zeta0_err)) {
    fail(ErrorKind::inconsistent_regularization,
         "numeric zeta(0) = " + std::to_string(r.zeta0) + " differs from " + std::to_string(heat.a1) +
             " by more than its error estimate " + std::to_string(zeta0_err));
  }
  return r;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  const auto old_precision = out.precision(17);
  out << "n,m,nu,lambda,multiplicity\n";
  for (const auto& e : spectrum.entries())
    out << e.n << ',' << e.m << ',' << e.nu << ',' << e.lambda << ',' << e.multiplicity << '\n';
  out.precision(old_precision);
}

}  // namespace conicdet
