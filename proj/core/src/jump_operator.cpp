#include "conicdet/jump_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZetaRiemannZero = -0.5;
const double kZetaRiemannPrimeZero = -0.5 * std::log(2.0 * kPi);

void check_eps(double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, ErrorKind::invalid_argument, "eps must lie in (0, 1)");
}

void check_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::invalid_argument, "alpha must be positive");
}

double alpha_of(ModeIndex idx, std::span<const double> alphas) {
  require(idx.j >= 1 && static_cast<std::size_t>(idx.j) <= alphas.size(), ErrorKind::invalid_mode,
          "circle index j out of range");
  check_alpha(alphas[idx.j - 1]);
  return alphas[idx.j - 1];
}

void require_nonconstant(ModeIndex idx) {
  require(idx.n != 0, ErrorKind::invalid_mode, "operator is defined on nonconstant modes only");
}

void check_lists(std::span<const double> alphas, std::span<const double> bs) {
  require(!alphas.empty() && alphas.size() == bs.size(), ErrorKind::invalid_argument,
          "alphas and bs must be nonempty and of equal length");
  for (double a : alphas) check_alpha(a);
  for (double b : bs)
    require(std::isfinite(b) && b > 0.0, ErrorKind::invalid_argument, "b_i must be positive");
}

// sum_{m > n} m r^m
double power_tail(double r, int n) {
  const double rn = std::pow(r, n + 1);
  return rn * ((n + 1) - n * r) / ((1.0 - r) * (1.0 - r));
}

}  // namespace

DiagonalModeOperator::DiagonalModeOperator(std::string name, Subspace subspace, int k, Eval eval)
    : name_(std::move(name)), subspace_(subspace), k_(k), eval_(std::move(eval)) {
  require(k >= 1, ErrorKind::invalid_argument, "k must be >= 1");
}

double DiagonalModeOperator::operator()(ModeIndex idx) const {
  require(idx.j >= 1 && idx.j <= k_, ErrorKind::invalid_mode, "circle index j out of range");
  if (subspace_ == Subspace::l0) require_nonconstant(idx);
  const double v = eval_(idx);
  require(std::isfinite(v), ErrorKind::numeric, "non-finite mode eigenvalue");
  return v;
}

void DiagonalModeOperator::write_csv(std::ostream& out, int n_max) const {
  const auto old_precision = out.precision(17);
  out << "n,j,eigenvalue\n";
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0 && subspace_ == Subspace::l0) continue;
    for (int j = 1; j <= k_; ++j) out << n << ',' << j << ',' << (*this)({n, j}) << '\n';
  }
  out.precision(old_precision);
}

double t_eps(ModeIndex idx, double eps, std::span<const double> alphas) {
  require_nonconstant(idx);
  check_eps(eps);
  return std::tanh(idx.n / alpha_of(idx, alphas) * std::log(eps));
}

double u_eps_minus(ModeIndex idx, double eps, std::span<const double> alphas) {
  require_nonconstant(idx);
  check_eps(eps);
  return std::sinh(idx.n / alpha_of(idx, alphas) * std::log(eps));
}

double u_eps_plus(ModeIndex idx, double eps, std::span<const double> alphas) {
  check_eps(eps);
  return std::cosh(idx.n / alpha_of(idx, alphas) * std::log(eps));
}

double mode_mult(ModeIndex idx, std::span<const double> alphas) { return idx.n / alpha_of(idx, alphas); }

double abs_mode_mult(ModeIndex idx, std::span<const double> alphas) {
  return std::abs(idx.n) / alpha_of(idx, alphas);
}

double b_mult(ModeIndex idx, std::span<const double> bs) {
  require(idx.j >= 1 && static_cast<std::size_t>(idx.j) <= bs.size(), ErrorKind::invalid_mode,
          "circle index j out of range");
  return bs[idx.j - 1];
}

double p_cone_mode(ModeIndex idx, double eps, std::span<const double> bs, std::span<const double> alphas) {
  check_eps(eps);
  if (idx.n == 0) return 0.0;
  return -std::abs(idx.n) / (b_mult(idx, bs) * eps * alpha_of(idx, alphas));
}

double k_diag_eigen(ModeIndex idx, double eps, std::span<const double> alphas) {
  require_nonconstant(idx);
  check_eps(eps);
  const double nu = std::abs(idx.n) / alpha_of(idx, alphas);
  const double e = 2.0 * nu * std::log(eps);
  return 2.0 * nu * std::exp(e) / std::expm1(e);
}

double k_coupling_eigen(ModeIndex idx, double eps, std::span<const double> alphas) {
  require_nonconstant(idx);
  check_eps(eps);
  const double nu = idx.n / alpha_of(idx, alphas);
  return nu / (2.0 * std::sinh(nu * std::log(eps)));
}

namespace {
int k_of(const std::vector<double>& v) { return static_cast<int>(v.size()); }
}  // namespace

DiagonalModeOperator make_t_eps(double eps, std::vector<double> alphas) {
  const int k = k_of(alphas);
  return {"T_eps", Subspace::l0, k, [eps, a = std::move(alphas)](ModeIndex i) { return t_eps(i, eps, a); }};
}

DiagonalModeOperator make_u_eps_minus(double eps, std::vector<double> alphas) {
  const int k = k_of(alphas);
  return {"U_eps_minus", Subspace::l0, k,
          [eps, a = std::move(alphas)](ModeIndex i) { return u_eps_minus(i, eps, a); }};
}

DiagonalModeOperator make_u_eps_plus(double eps, std::vector<double> alphas) {
  const int k = k_of(alphas);
  return {"U_eps_plus", Subspace::full, k,
          [eps, a = std::move(alphas)](ModeIndex i) { return u_eps_plus(i, eps, a); }};
}

DiagonalModeOperator make_mode_mult(std::vector<double> alphas) {
  const int k = k_of(alphas);
  return {"V", Subspace::full, k, [a = std::move(alphas)](ModeIndex i) { return mode_mult(i, a); }};
}

DiagonalModeOperator make_abs_mode_mult(std::vector<double> alphas) {
  const int k = k_of(alphas);
  return {"abs_V", Subspace::full, k, [a = std::move(alphas)](ModeIndex i) { return abs_mode_mult(i, a); }};
}

DiagonalModeOperator make_b_mult(std::vector<double> bs) {
  const int k = k_of(bs);
  return {"B", Subspace::full, k, [b = std::move(bs)](ModeIndex i) { return b_mult(i, b); }};
}

std::vector<double> ModelExtension::apply(std::span<const ModeIndex> modes, std::span<const double> coeffs) const {
  require(modes.size() == coeffs.size(), ErrorKind::invalid_argument, "mode/coefficient size mismatch");
  return std::vector<double>(coeffs.size(), 0.0);
}

std::vector<double> ContractExtension::apply(std::span<const ModeIndex> modes,
                                             std::span<const double> coeffs) const {
  require(modes.size() == coeffs.size(), ErrorKind::invalid_argument, "mode/coefficient size mismatch");
  return {coeffs.begin(), coeffs.end()};
}

int default_mode_cutoff(double eps, double alpha) {
  check_eps(eps);
  check_alpha(alpha);
  const double l = std::log(1.0 / eps);
  return static_cast<int>(std::ceil(alpha * std::max(40.0 * l, 70.0 / l)));
}

double trace_norm_k(double eps, std::span<const double> alphas, std::span<const double> bs, int mode_cutoff,
                    const ExtensionProvider& provider) {
  check_eps(eps);
  check_lists(alphas, bs);
  const double l_norm = provider.norm_bound();
  const double alpha_max = *std::max_element(alphas.begin(), alphas.end());
  const int n_modes = mode_cutoff > 0 ? mode_cutoff : default_mode_cutoff(eps, alpha_max);
  const int k = static_cast<int>(alphas.size());

  double head = 0.0, tail = 0.0, sup_coupling = 0.0;
  for (int j = 1; j <= k; ++j) {
    for (int m = n_modes; m >= 1; --m) {
      const double d = std::abs(k_diag_eigen({m, j}, eps, alphas));
      const double c = std::abs(k_coupling_eigen({m, j}, eps, alphas));
      sup_coupling = std::max(sup_coupling, c);
      head += 2.0 * (d + l_norm * c);  // modes +m and -m
    }
    const double a = alphas[j - 1];
    const double x = std::pow(eps, 2.0 / a), y = std::pow(eps, 1.0 / a);
    tail += 2.0 * (2.0 / (a * (1.0 - x)) * power_tail(x, n_modes) +
                   l_norm / (a * (1.0 - y * y)) * power_tail(y, n_modes));
  }
  if (k >= 2) {
    // Blocks touching the (k-1)-dimensional space of locally constant data.
    const double inv_log = 1.0 / std::log(1.0 / eps);
    head += (k - 1) * l_norm * (2.0 * inv_log + sup_coupling);
  }
  if (tail > 1e-14 * head)
    fail(ErrorKind::increase_cutoff, "trace tail bound " + std::to_string(tail) + " is not negligible at N = " +
                                         std::to_string(n_modes));
  const double b_min = *std::min_element(bs.begin(), bs.end());
  return (head + tail) / b_min;
}

double trace_norm_k(double eps, std::span<const double> alphas, std::span<const double> bs, int mode_cutoff) {
  return trace_norm_k(eps, alphas, bs, mode_cutoff, ModelExtension{});
}

double norm_k_a_inv(double eps, std::span<const double> alphas, std::span<const double> bs,
                    const ExtensionProvider& provider) {
  check_eps(eps);
  check_lists(alphas, bs);
  const double l_norm = provider.norm_bound();
  const int k = static_cast<int>(alphas.size());
  const double alpha_max = *std::max_element(alphas.begin(), alphas.end());
  // |V|^{-1} weighted magnitudes decrease in |m|, so the supremum sits at m = 1.
  double first = 0.0, sup_coupling = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double a = alphas[j - 1];
    const double d = std::abs(k_diag_eigen({1, j}, eps, alphas));
    const double c = std::abs(k_coupling_eigen({1, j}, eps, alphas));
    first = std::max(first, 0.5 * a * (d + l_norm * c));
    sup_coupling = std::max(sup_coupling, c);
  }
  double total = first;
  if (k >= 2) {
    const double log_inv = std::log(1.0 / eps);
    total += 0.5 * l_norm * alpha_max / log_inv + log_inv * l_norm * sup_coupling + l_norm;
  }
  const auto [b_min, b_max] = std::minmax_element(bs.begin(), bs.end());
  return total * (*b_max / *b_min);
}

double norm_k_a_inv(double eps, std::span<const double> alphas, std::span<const double> bs) {
  return norm_k_a_inv(eps, alphas, bs, ModelExtension{});
}

double zeta_regularized_logdet_linear(double c, int mult) {
  require(c > 0.0 && mult >= 1, ErrorKind::invalid_argument, "bad diagonal spectrum");
  return mult * (kZetaRiemannZero * std::log(c) - kZetaRiemannPrimeZero);
}

double logdet_a_eps(double eps, std::span<const double> alphas, std::span<const double> bs) {
  check_eps(eps);
  check_lists(alphas, bs);
  const auto k = alphas.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += zeta_regularized_logdet_linear(2.0 / (bs[i] * alphas[i]), 2);
  if (k >= 2) sum -= (k - 1) * std::log(std::log(1.0 / eps)) + bhat_logdet(bs);
  return sum;
}

double bhat_logdet(std::span<const double> bs) {
  require(bs.size() >= 2, ErrorKind::invalid_argument, "B-hat needs k >= 2");
  for (double b : bs) require(std::isfinite(b) && b > 0.0, ErrorKind::invalid_argument, "b_i must be positive");
  const auto k = static_cast<Eigen::Index>(bs.size());
  Eigen::MatrixXd m(k - 1, k - 1);
  for (Eigen::Index i = 0; i < k - 1; ++i)
    for (Eigen::Index j = 0; j < k - 1; ++j)
      m(i, j) = (bs[k - 1] - bs[j]) / static_cast<double>(k) + (i == j ? bs[j] : 0.0);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::MatrixXd& u = lu.matrixLU();
  double log_abs = 0.0;
  double sign = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < k - 1; ++i) {
    const double d = u(i, i);
    if (d == 0.0 || !std::isfinite(d)) fail(ErrorKind::numeric, "B-hat is singular");
    log_abs += std::log(std::abs(d));
    if (d < 0.0) sign = -sign;
  }
  if (sign < 0.0) fail(ErrorKind::numeric, "B-hat determinant is negative");
  return log_abs;
}

double model_r_eigen(ModeIndex idx, double eps, double alpha) {
  check_eps(eps);
  check_alpha(alpha);
  require(idx.j == 1, ErrorKind::invalid_mode, "the model has a single circle");
  if (idx.n == 0) return 1.0 / (eps * std::log(1.0 / eps));
  const double nu = std::abs(idx.n) / alpha;
  return -2.0 * nu / (eps * std::expm1(2.0 * nu * std::log(eps)));
}

JumpDetResult logdet_model_r(double eps, double alpha, int mode_cutoff, ModeConvention convention) {
  check_eps(eps);
  check_alpha(alpha);
  const int n_modes = mode_cutoff > 0 ? mode_cutoff : default_mode_cutoff(eps, alpha);
  const double x = std::pow(eps, 2.0 / alpha);

  // eps mu_n / (2 nu) = 1 / (1 - x^|n|): the convergent correction to the diagonal part.
  double correction = 0.0;
  for (int m = n_modes; m >= 1; --m) correction -= 2.0 * std::log1p(-std::pow(x, m));
  const double xn = std::pow(x, n_modes + 1);
  const double tail = 2.0 * xn / ((1.0 - x) * (1.0 - xn));
  if (tail > 1e-14 * correction)
    fail(ErrorKind::increase_cutoff, "jump determinant tail is not negligible at N = " + std::to_string(n_modes));
  correction += tail;

  const double diagonal = zeta_regularized_logdet_linear(2.0 / alpha, 2);
  const double zero_mode = -std::log(std::log(1.0 / eps));

  JumpDetResult r;
  if (convention == ModeConvention::model) {
    r.logdet_a = diagonal + zero_mode;
    r.zeta_r0 = 1.0 + 2.0 * kZetaRiemannZero;
  } else {
    r.logdet_a = diagonal;
    r.zeta_r0 = 2.0 * kZetaRiemannZero;
  }
  r.logdet_eps_r = r.logdet_a + correction;
  r.logdet_r = r.logdet_eps_r - r.zeta_r0 * std::log(eps);
  r.residual = r.logdet_eps_r - r.logdet_a;

  // K_eps vanishes on the n = 0 mode, so only A^{-1} on L0 (norm alpha / 2) enters.
  const double alphas[] = {alpha};
  const double bs[] = {1.0};
  const double kappa = norm_k_a_inv(eps, alphas, bs);
  const double trace = trace_norm_k(eps, alphas, bs, n_modes);
  r.comeback_bound = kappa < 1.0 ? 0.5 * alpha * trace / (1.0 - kappa) : std::numeric_limits<double>::infinity();
  r.paper_bound = 6.0 * std::pow(eps, 1.0 / alpha);
  r.in_regime = eps <= std::pow(2.0, -alpha);
  return r;
}

double zeta_r_at_zero() { return -1.0; }

double jump_zeta0_numeric(double eps, double alpha, ModeConvention convention) {
  check_eps(eps);
  check_alpha(alpha);
  // Eigenvalues in units of 2 / (alpha eps): lambda_m = m / (1 - x^m), each twice.
  const double x = std::pow(eps, 2.0 / alpha);
  constexpr double tau_min = 0.01, tau_max = 1.0;
  constexpr int points = 60, degree = 12;
  const int n_modes = static_cast<int>(std::ceil(45.0 / tau_min));
  std::vector<double> lambdas(static_cast<std::size_t>(n_modes));
  for (int m = 1; m <= n_modes; ++m) lambdas[m - 1] = -m / std::expm1(m * std::log(x));
  const double lambda0 = alpha / (2.0 * std::log(1.0 / eps));

  Eigen::MatrixXd a(points, degree + 1);
  Eigen::VectorXd b(points);
  for (int i = 0; i < points; ++i) {
    const double tau = tau_min * std::pow(tau_max / tau_min, static_cast<double>(i) / (points - 1));
    double theta = 0.0;
    for (int m = n_modes; m >= 1; --m) theta += 2.0 * std::exp(-tau * lambdas[m - 1]);
    if (convention == ModeConvention::model) theta += std::exp(-tau * lambda0);
    const double s = tau / tau_max;
    for (int p = 0; p <= degree; ++p) a(i, p) = std::pow(s, p);
    b(i) = tau * theta;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  // tau * theta = sum c_p (tau / tau_max)^p; zeta(0) is the tau^1 coefficient.
  return c(1) / tau_max;
}

}  // namespace conicdet
