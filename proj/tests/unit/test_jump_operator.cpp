#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "conicdet/error.hpp"
#include "conicdet/geometry.hpp"
#include "conicdet/jump_operator.hpp"
#include "doctest.h"

using namespace conicdet;
using std::numbers::pi;

namespace {

const std::vector<double> kOne{1.0};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::numeric;
}

}  // namespace

TEST_CASE("mode multipliers") {
  CHECK(mode_mult({2, 1}, kOne) == 2.0);
  CHECK(mode_mult({-2, 1}, kOne) == -2.0);
  CHECK(abs_mode_mult({-3, 1}, std::vector<double>{1.5}) == 2.0);
  CHECK(t_eps({1, 1}, 0.1, kOne) == doctest::Approx((0.1 - 10.0) / (0.1 + 10.0)).epsilon(1e-14));
  CHECK(u_eps_minus({1, 1}, 0.1, kOne) == doctest::Approx(-4.95).epsilon(1e-14));
  CHECK(u_eps_plus({1, 1}, 0.1, kOne) == doctest::Approx(5.05).epsilon(1e-14));
  CHECK(b_mult({0, 2}, std::vector<double>{1.0, 0.4}) == 0.4);

  CHECK(p_cone_mode({1, 1}, 0.1, kOne, kOne) == doctest::Approx(-10.0).epsilon(1e-14));
  CHECK(p_cone_mode({0, 1}, 0.3, kOne, kOne) == 0.0);
  CHECK(p_cone_mode({-3, 1}, 0.5, kOne, std::vector<double>{3.0}) == doctest::Approx(-2.0).epsilon(1e-14));

  CHECK(k_diag_eigen({1, 1}, 0.1, kOne) == doctest::Approx(2.0 / (1.0 - 100.0)).epsilon(1e-14));
  CHECK(k_coupling_eigen({1, 1}, 0.1, kOne) == doctest::Approx(1.0 / (0.1 - 10.0)).epsilon(1e-14));
  // far modes do not overflow
  CHECK(std::isfinite(k_diag_eigen({4000, 1}, 0.01, kOne)));
  CHECK(k_coupling_eigen({4000, 1}, 0.01, kOne) == 0.0);
}

TEST_CASE("operator wrappers enforce their subspace") {
  const auto t = make_t_eps(0.1, kOne);
  CHECK(t.subspace() == Subspace::l0);
  CHECK(t({1, 1}) == doctest::Approx(t_eps({1, 1}, 0.1, kOne)));
  CHECK(kind_of([&] { t({0, 1}); }) == ErrorKind::invalid_mode);
  CHECK(kind_of([&] { t({1, 2}); }) == ErrorKind::invalid_mode);
  CHECK(kind_of([] { k_diag_eigen({0, 1}, 0.1, kOne); }) == ErrorKind::invalid_mode);
  CHECK(kind_of([] { k_coupling_eigen({0, 1}, 0.1, kOne); }) == ErrorKind::invalid_mode);
  const auto b = make_b_mult({0.5, 1.0});
  CHECK(b({0, 1}) == 0.5);

  std::ostringstream out;
  make_mode_mult(kOne).write_csv(out, 2);
  CHECK(out.str() == "n,j,eigenvalue\n-2,1,-2\n-1,1,-1\n0,1,0\n1,1,1\n2,1,2\n");
}

TEST_CASE("scaled diagonal sum stays bounded") {
  for (double alpha : {1.0, 2.0}) {
    double previous = 0.0;
    for (double eps : {0.1, 0.01, 0.001}) {
      double s = 0.0;
      for (int n = 1; n < 4000; ++n) s += 2.0 * std::abs(k_diag_eigen({n, 1}, eps, std::vector<double>{alpha}));
      const double scaled = s * std::pow(eps, -1.0 / alpha);
      CHECK(scaled <= 12.0 / alpha);
      if (previous > 0.0) CHECK(scaled <= previous * 1.5);
      previous = scaled;
    }
  }
}

TEST_CASE("trace norm of K") {
  const double at_quarter = trace_norm_k(0.25, kOne, kOne);
  CHECK(at_quarter <= 3.0);
  const double at_tenth = trace_norm_k(0.1, kOne, kOne);
  CHECK(std::log(10.0) * at_tenth * 2.0 <= std::log(4.0) * at_quarter);
  double previous = 1e300;
  for (double eps : {0.2, 0.1, 0.05}) {
    const double v = std::log(1.0 / eps) * trace_norm_k(eps, kOne, kOne);
    CHECK(v < previous);
    previous = v;
  }
  // monotone in eps on the regime
  for (double alpha : {1.0, 2.0, 3.0}) {
    const std::vector<double> a{alpha};
    double last = 0.0;
    for (double eps = 1e-4; eps <= std::pow(2.0, -alpha); eps *= 1.7) {
      const double v = trace_norm_k(eps, a, kOne);
      CHECK(v >= last);
      CHECK(v <= 12.0 / alpha * std::pow(eps, 1.0 / alpha));
      last = v;
    }
  }
  CHECK(kind_of([] { trace_norm_k(0.5, kOne, kOne, 3); }) == ErrorKind::increase_cutoff);
}

TEST_CASE("norm of K A^{-1}") {
  CHECK(norm_k_a_inv(0.25, kOne, kOne) <= 0.1875);
  for (double alpha : {1.0, 2.0, 3.0}) {
    const std::vector<double> a{alpha};
    const double edge = std::pow(2.0, -alpha);
    CHECK(norm_k_a_inv(edge, a, kOne) <= 0.5);
    CHECK(norm_k_a_inv(1e-6, a, kOne) < 1e-2 / alpha);
  }
  // the generic contract can only be worse than the model
  const ContractExtension contract;
  CHECK(norm_k_a_inv(0.1, kOne, kOne, contract) >= norm_k_a_inv(0.1, kOne, kOne));
  CHECK(trace_norm_k(0.1, kOne, kOne, 0, contract) >= trace_norm_k(0.1, kOne, kOne));
  // with only ||L|| <= 1 known, the estimate at the regime edge exceeds 1/2
  CHECK(norm_k_a_inv(0.5, kOne, kOne, contract) > 0.5);
  const std::vector<ModeIndex> modes{{1, 1}, {-1, 1}};
  const std::vector<double> coeffs{0.3, -0.2};
  CHECK(ModelExtension().apply(modes, coeffs) == std::vector<double>{0.0, 0.0});
  CHECK(contract.apply(modes, coeffs) == coeffs);
}

TEST_CASE("log det A_eps") {
  CHECK(logdet_a_eps(0.3, kOne, kOne) == doctest::Approx(std::log(pi)).epsilon(1e-14));
  CHECK(logdet_a_eps(0.001, kOne, kOne) == doctest::Approx(std::log(pi)).epsilon(1e-14));
  const std::vector<double> ones{1.0, 1.0};
  CHECK(logdet_a_eps(std::exp(-std::exp(1.0)), ones, ones) == doctest::Approx(2.0 * std::log(pi) - 1.0).epsilon(1e-14));
  CHECK(logdet_a_eps(0.2, std::vector<double>{2.0}, kOne) == doctest::Approx(std::log(2.0 * pi)).epsilon(1e-14));
  // the regularized sum over 2m / (b alpha)
  CHECK(2.0 * zeta_regularized_logdet_linear(2.0 / 1.0, 1) == doctest::Approx(std::log(pi)).epsilon(1e-14));
}

TEST_CASE("B-hat determinant") {
  CHECK(bhat_logdet(std::vector<double>{1.0, 1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(bhat_logdet(std::vector<double>{0.5, 1.0}) == doctest::Approx(std::log(0.75)).epsilon(1e-14));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> bs(4);
    for (auto& b : bs) b = u(rng);
    CHECK(std::abs(bhat_logdet(bs) - std::log(beta(bs))) < 1e-12);
  }
  CHECK(kind_of([] { bhat_logdet(std::vector<double>{1.0}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("model jump operator") {
  CHECK(0.1 * model_r_eigen({1, 1}, 0.1, 1.0) == doctest::Approx(1.0 - 10.1 / -9.9).epsilon(1e-14));
  CHECK(std::exp(-1.0) * model_r_eigen({0, 1}, std::exp(-1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(1e-8 * model_r_eigen({3, 1}, 1e-8, 2.0) == doctest::Approx(3.0).epsilon(1e-7));
  for (int n = -20; n <= 20; ++n) CHECK(model_r_eigen({n, 1}, 0.3, 1.5) > 0.0);

  // leading behavior as eps -> 0
  double previous = 1e300;
  for (double eps : {0.1, 0.01, 0.001, 1e-4}) {
    const auto r = logdet_model_r(eps, 1.0);
    const double gap = std::abs(r.logdet_r - (std::log(pi) - std::log(std::log(1.0 / eps))));
    CHECK(gap < previous);
    previous = gap;
    CHECK(std::abs(r.residual) <= r.comeback_bound);
    CHECK(r.comeback_bound <= 6.0 * eps);
    CHECK(r.zeta_r0 == 0.0);
  }
  CHECK(previous < 1e-3);

  // closed convention unscales by zeta_R(0) = -1 and drops the n = 0 mode
  const auto closed = logdet_model_r(0.1, 1.0, 0, ModeConvention::closed);
  CHECK(closed.zeta_r0 == -1.0);
  CHECK(closed.logdet_r == doctest::Approx(closed.logdet_eps_r + std::log(0.1)).epsilon(1e-14));

  CHECK(logdet_model_r(0.6, 1.0).in_regime == false);
  CHECK(zeta_r_at_zero() == -1.0);
}

TEST_CASE("numeric zeta_R(0)") {
  CHECK(std::abs(jump_zeta0_numeric(0.1, 1.0) + 1.0) < 1e-3);
  CHECK(std::abs(jump_zeta0_numeric(0.05, 2.0) + 1.0) < 1e-3);
  CHECK(std::abs(jump_zeta0_numeric(0.1, 1.0, ModeConvention::model)) < 1e-3);
}

TEST_CASE("default mode cutoff") {
  for (double alpha : {0.5, 1.0, 3.0})
    for (double eps : {0.5, 0.1, 1e-3}) {
      const int n = default_mode_cutoff(eps, alpha);
      CHECK(std::pow(eps, n / alpha) < 1e-30);
    }
}
