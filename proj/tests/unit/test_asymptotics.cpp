#include <cmath>
#include <numbers>

#include "conicdet/asymptotics.hpp"
#include "conicdet/error.hpp"
#include "doctest.h"

using namespace conicdet;

namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

SurfaceSpec surface(int genus, std::vector<Rational> angles) {
  SurfaceSpec s;
  s.genus = genus;
  s.angles = std::move(angles);
  return s;
}

}  // namespace

TEST_CASE("expansion of log det M_eps") {
  const ExcisionSpec one({R(1)}, {1.0}, 0.1);
  const auto r1 = expansion_m_eps(one, surface(1, {R(1)}));
  CHECK(r1.c_log_eps == R(1, 3));
  CHECK(r1.c_loglog == R(0));
  CHECK(r1.error_model == ErrorModel::bounded_6eps);
  CHECK(r1.symbolic.at("logdet_m") == R(1));
  CHECK(r1.symbolic.at("logdet_cone[1]") == R(-1));

  const ExcisionSpec two({R(1), R(1)}, {1.0, 1.0}, 0.1);
  const auto r2 = expansion_m_eps(two, surface(1, {R(1), R(1)}));
  CHECK(r2.c_loglog == R(1));
  CHECK(r2.c_log_eps == R(1) + R(2, 3));
  CHECK(r2.error_model == ErrorModel::little_o);

  // off-unit radius: b enters through log b and log beta, error model stays o(1)
  const ExcisionSpec half({R(2)}, {0.5}, 0.1);
  const auto rh = expansion_m_eps(half, surface(1, {R(2)}));
  CHECK(rh.log_terms.at("log_b[1]") == R(5, 12));
  CHECK(rh.error_model == ErrorModel::little_o);
}

TEST_CASE("expansion of log det R_eps") {
  const auto r1 = expansion_r(ExcisionSpec({R(1)}, {1.0}, 0.1));
  CHECK(r1.c_log_eps == R(1));
  CHECK(r1.c_loglog == R(0));
  CHECK(r1.c_const_known() == doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(r1.error_model == ErrorModel::bounded_6eps);
  CHECK(r1.error_alpha == 1.0);

  const auto r2 = expansion_r(ExcisionSpec({R(1), R(1)}, {1.0, 1.0}, 0.1));
  CHECK(r2.c_loglog == R(-1));
  CHECK(r2.c_const_known() == doctest::Approx(2.0 * std::log(std::numbers::pi)).epsilon(1e-15));

  const auto r3 = expansion_r(ExcisionSpec({R(1, 2), R(3, 2)}, {0.5, 1.0}, 0.1));
  CHECK(r3.c_const_known() ==
        doctest::Approx(2.0 * std::log(std::numbers::pi) + std::log(0.25) + std::log(1.5) - std::log(0.75)).epsilon(1e-14));
}

TEST_CASE("evaluate reproduces the expansion") {
  const auto r = expansion_m_eps(ExcisionSpec({R(1), R(2)}, {1.0, 0.5}, 0.1), surface(1, {R(1), R(2)}));
  SymbolicConstants c;
  c.logdet_m = 0.7;
  c.logdet_unit_cones = {-0.77, -1.59};
  const double eps = 0.01;
  const double expected = to_double(r.c_log_eps) * std::log(eps) + to_double(r.c_loglog) * std::log(std::log(1.0 / eps)) +
                          r.c_const_known() + 0.7 + 0.77 + 1.59;
  CHECK(r.evaluate(eps, c) == doctest::Approx(expected).epsilon(1e-14));
  c.logdet_unit_cones = {-0.77};
  CHECK_THROWS_AS(r.evaluate(eps, c), Error);
  c.logdet_m.reset();
  c.logdet_unit_cones = {-0.77, -1.59};
  CHECK_THROWS_AS(r.evaluate(eps, c), Error);
}

TEST_CASE("symbolic consistency of the gluing rearrangement") {
  const std::vector<std::pair<std::vector<Rational>, std::vector<double>>> cases{
      {{R(1)}, {1.0}},
      {{R(3)}, {1.0}},
      {{R(1, 2), R(3, 2)}, {0.5, 1.0}},
      {{R(1), R(2, 3), R(5)}, {1.0, 0.25, 0.75}},
  };
  for (const auto& [alphas, bs] : cases) {
    const ExcisionSpec ex(alphas, bs, 0.05);
    const auto s = surface(2, alphas);
    const auto composed = substitute(intermediate_expansion(ex, s), "logdet_r", expansion_r(ex));
    const auto direct = expansion_m_eps(ex, s);
    CHECK(same_expansion(composed, direct));
    CHECK(composed.c_const_known() == doctest::Approx(direct.c_const_known()).epsilon(1e-13));
  }
  CHECK_THROWS_AS(substitute(expansion_r(ExcisionSpec({R(1)}, {1.0}, 0.1)), "logdet_r", expansion_r(ExcisionSpec({R(1)}, {1.0}, 0.1))), Error);
}

TEST_CASE("khuri coefficients") {
  const auto k11 = khuri_expansion(1, {R(1)});
  CHECK(k11.c_log_eps == R(0));
  CHECK(k11.c_loglog == R(0));
  for (int n = 2; n <= 4; ++n) {
    const auto k = khuri_expansion(1, std::vector<Rational>(n, R(1)));
    CHECK(k.c_log_eps == R(0));
    CHECK(k.c_loglog == R(n - 1));
  }
  CHECK(khuri_expansion(2, {R(3)}).c_log_eps == R(-4, 9));
  CHECK(khuri_expansion(2, {R(3)}).c_loglog == R(0));
  CHECK(khuri_expansion(0, {R(1, 3), R(1, 3), R(1, 3)}).c_log_eps == R(4, 3));
  CHECK_THROWS_AS(khuri_expansion(1, {}), Error);
}

TEST_CASE("khuri is the rescaled M_eps expansion for one cone point") {
  for (int p : {1, 2, 3}) {
    const Rational a(2 * p - 1);
    const ExcisionSpec ex({a}, {1.0}, 0.1);
    const auto s = surface(p, {a});
    const auto rescaled = rescale_by_inverse_eps(expansion_m_eps(ex, s), Rational(1 - 2 * p, 6));
    CHECK(same_expansion(rescaled, khuri_expansion(p, {a})));
  }
  // with n >= 2 the literal total-length convention leaves a gap of n - 1 in c_log_eps
  for (int n = 2; n <= 4; ++n) {
    const std::vector<Rational> ones(n, R(1));
    const ExcisionSpec ex(ones, std::vector<double>(n, 1.0), 0.1);
    const auto rescaled = rescale_by_inverse_eps(expansion_m_eps(ex, surface(1, ones)), Rational(2 - 2 - n, 6));
    CHECK(rescaled.c_log_eps - khuri_expansion(1, ones).c_log_eps == R(n - 1));
  }
}

TEST_CASE("divergence classes") {
  CHECK(divergence_class(1, {R(1)}) == DivergenceClass::bounded);
  CHECK(divergence_class(1, {R(1, 2), R(3, 2)}) == DivergenceClass::to_minus_infinity);
  CHECK(divergence_class(2, {R(3)}) == DivergenceClass::to_plus_infinity);
  CHECK(divergence_class(1, {R(1), R(1)}) == DivergenceClass::to_plus_infinity);
  CHECK(divergence_class(1, {R(1, 5)}) == DivergenceClass::to_minus_infinity);
  CHECK(to_string(DivergenceClass::to_plus_infinity) == "to_plus_infinity");
}

TEST_CASE("error bound") {
  CHECK(error_bound(0.25, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(error_bound(std::pow(2.0, -3.0), 3.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(error_bound(0.01, 2.0) == doctest::Approx(0.6).epsilon(1e-15));
  try {
    error_bound(0.3, 2.0);
    FAIL("expected out_of_regime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_regime);
  }
}
