#include <cmath>
#include <numbers>
#include <sstream>

#include "conicdet/error.hpp"
#include "conicdet/specfun.hpp"
#include "conicdet/spectral_det.hpp"
#include "doctest.h"

using namespace conicdet;
using std::numbers::pi;

namespace {

constexpr double kZetaPrimeMinusOne = -0.16542114370045092;

// Weisberger's closed form for the unit disk.
double disk_logdet() {
  return -(5.0 / 12.0 + 2.0 * kZetaPrimeMinusOne + std::log(2.0) / 6.0 + 0.5 * std::log(pi));
}

}  // namespace

TEST_CASE("cone spectrum") {
  const auto disk = enumerate_cone_spectrum(ConeSpec(1.0, 1.0), 200.0);
  REQUIRE(!disk.entries().empty());
  CHECK(disk.entries().front().lambda == doctest::Approx(5.783185962946784).epsilon(1e-14));
  CHECK(disk.entries().front().multiplicity == 1);
  for (std::size_t i = 1; i < disk.entries().size(); ++i)
    CHECK(disk.entries()[i].lambda >= disk.entries()[i - 1].lambda);
  CHECK(disk.entries().back().lambda <= 200.0);

  const auto half = enumerate_cone_spectrum(ConeSpec(0.5, 1.0), 400.0);
  for (const auto& e : half.entries()) {
    CHECK(e.nu == 2.0 * e.n);
    CHECK(e.multiplicity == (e.n == 0 ? 1 : 2));
  }
  const double j21 = bessel_j_zero(BesselOrder(2.0), 1);
  bool found = false;
  for (const auto& e : half.entries())
    if (e.n == 1 && e.m == 1) {
      found = true;
      CHECK(e.lambda == doctest::Approx(j21 * j21).epsilon(1e-14));
    }
  CHECK(found);

  // length L divides the eigenvalues by L^2
  const auto big = enumerate_cone_spectrum(ConeSpec(1.0, 2.0), 50.0);
  CHECK(big.entries().front().lambda == doctest::Approx(5.783185962946784 / 4.0).epsilon(1e-14));

  CHECK_THROWS_AS(enumerate_cone_spectrum(ConeSpec(1.0, 1.0), 5.0), Error);
}

TEST_CASE("weyl count") {
  const double cutoff = 1e4;
  const auto s = enumerate_cone_spectrum(ConeSpec(1.0, 1.0), cutoff);
  const double weyl = weyl_count(s.area(), s.perimeter(), cutoff);
  CHECK(std::abs(static_cast<double>(s.count()) - weyl) / weyl < 0.02);
  const auto a = enumerate_annulus_spectrum(AnnulusSpec(2.0, 0.3, 1.0), cutoff);
  const double wa = weyl_count(a.area(), a.perimeter(), cutoff);
  CHECK(std::abs(static_cast<double>(a.count()) - wa) / wa < 0.02);
}

TEST_CASE("annulus spectrum") {
  const double inner = 0.25, outer = 1.5;
  const auto s = enumerate_annulus_spectrum(AnnulusSpec(2.0, inner, outer), 200.0);
  int checked = 0;
  for (const auto& e : s.entries())
    if (e.n == 1) {
      const double k = e.m * pi / (outer - inner);
      CHECK(e.lambda == doctest::Approx(k * k).epsilon(1e-13));
      ++checked;
    }
  CHECK(checked > 3);

  // (alpha, a, b) is (alpha, a/b, 1) with eigenvalues divided by b^2
  const auto unit = enumerate_annulus_spectrum(AnnulusSpec(2.0, inner / outer, 1.0), 200.0 * outer * outer);
  REQUIRE(unit.entries().size() == s.entries().size());
  for (std::size_t i = 0; i < s.entries().size(); ++i)
    CHECK(s.entries()[i].lambda == doctest::Approx(unit.entries()[i].lambda / (outer * outer)).epsilon(1e-13));

  // a shrinking hole approaches the disk in the n = 0 mode
  const double j01 = 2.404825557695773;
  double previous = 1e300;
  for (double a : {1e-2, 1e-4, 1e-8}) {
    const auto t = enumerate_annulus_spectrum(AnnulusSpec(1.0, a, 1.0), 40.0);
    double first = 0.0;
    for (const auto& e : t.entries())
      if (e.n == 0) {
        first = std::sqrt(e.lambda);
        break;
      }
    CHECK(first > j01);
    CHECK(first - j01 < previous);
    previous = first - j01;
  }
  // the approach is only logarithmic in the hole radius
  CHECK(previous < 0.1);
}

TEST_CASE("zeta(0) closed forms") {
  CHECK(zeta0_cone(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(zeta0_cone(2.0) == doctest::Approx(5.0 / 24.0).epsilon(1e-15));
  CHECK(zeta0_cone(3.0) == doctest::Approx(zeta0_cone(1.0 / 3.0)).epsilon(1e-15));
  CHECK(zeta0_smooth(0) == 0.0);
  CHECK(zeta0_smooth(1) == doctest::Approx(1.0 / 6.0));
  CHECK(zeta0_smooth(2 - 2 * 2 - 3) == doctest::Approx(-5.0 / 6.0));
}

TEST_CASE("gelfand-yaglom determinants") {
  CHECK(gelfand_yaglom_logdet(ConeSpec(1.0, 1.0)).logdet == doctest::Approx(disk_logdet()).epsilon(1e-12));
  // mpmath evaluation of the same closed form (50 digits, nsum over the Stirling remainders)
  CHECK(gelfand_yaglom_logdet(ConeSpec(1.0, 1.0)).logdet == doctest::Approx(-0.77371385228379).epsilon(1e-12));
  CHECK(gelfand_yaglom_logdet(ConeSpec(2.0, 1.0)).logdet == doctest::Approx(-1.58685072283756).epsilon(1e-12));
  CHECK(gelfand_yaglom_logdet(ConeSpec(3.0, 1.0)).logdet == doctest::Approx(-2.38927158931698).epsilon(1e-12));
  CHECK(gelfand_yaglom_logdet(AnnulusSpec(1.0, 0.5, 1.0)).logdet == doctest::Approx(-2.48866275092543).epsilon(1e-12));

  for (double alpha : {0.5, 1.0, 2.0}) {
    const double l1 = gelfand_yaglom_logdet(ConeSpec(alpha, 1.0)).logdet;
    for (double len : {0.5, 2.0}) {
      const double ll = gelfand_yaglom_logdet(ConeSpec(alpha, len)).logdet;
      CHECK(std::abs(ll - l1 + 2.0 * zeta0_cone(alpha) * std::log(len)) < 1e-6);
    }
  }
  // annulus: zeta(0) = 0, so only the ratio matters
  const double a1 = gelfand_yaglom_logdet(AnnulusSpec(1.0, 0.5, 1.0)).logdet;
  CHECK(gelfand_yaglom_logdet(AnnulusSpec(1.0, 1.5, 3.0)).logdet == doctest::Approx(a1).epsilon(1e-14));
  CHECK(gelfand_yaglom_logdet(AnnulusSpec(1.0, 0.5, 1.0)).zeta0 == 0.0);
  // explicit cutoff too small to certify
  CHECK_THROWS_AS(gelfand_yaglom_logdet(ConeSpec(1.0, 1.0), 3), Error);
}

TEST_CASE("heat-trace route against gelfand-yaglom") {
  const double cutoff = 4e4;
  for (const Domain& d : {Domain(ConeSpec(1.0, 1.0)), Domain(ConeSpec(2.0, 1.0)), Domain(AnnulusSpec(1.0, 0.5, 1.0))}) {
    const auto heat = logdet_from_spectrum(enumerate_spectrum(d, cutoff), heat_coefficients(d));
    const auto gy = gelfand_yaglom_logdet(d);
    CHECK(std::abs(heat.logdet - gy.logdet) < 1e-4);
    CHECK(std::abs(heat.logdet - gy.logdet) <= heat.err_estimate);
    CHECK(heat.zeta0 == doctest::Approx(heat_coefficients(d).a1).epsilon(1e-6));
  }
  const auto disk = logdet_from_spectrum(enumerate_cone_spectrum(ConeSpec(1.0, 1.0), cutoff),
                                         heat_coefficients(ConeSpec(1.0, 1.0)));
  CHECK(std::abs(disk.zeta0 - 1.0 / 6.0) < 1e-3);

  // wrong a1 is caught by the zeta(0) self-check
  auto h = heat_coefficients(ConeSpec(2.0, 1.0));
  h.a1 += 0.01;
  try {
    logdet_from_spectrum(enumerate_cone_spectrum(ConeSpec(2.0, 1.0), cutoff), h);
    FAIL("expected inconsistent regularization");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::inconsistent_regularization);
  }
  try {
    logdet_from_spectrum(enumerate_cone_spectrum(ConeSpec(1.0, 1.0), 100.0), heat_coefficients(ConeSpec(1.0, 1.0)));
    FAIL("expected increase_cutoff");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::increase_cutoff);
  }
}

TEST_CASE("spectrum csv") {
  std::ostringstream out;
  write_spectrum_csv(out, enumerate_cone_spectrum(ConeSpec(1.0, 1.0), 30.0));
  const auto text = out.str();
  CHECK(text.rfind("n,m,nu,lambda,multiplicity\n", 0) == 0);
  CHECK(text.find("0,1,0,5.78318596294677") != std::string::npos);
}
