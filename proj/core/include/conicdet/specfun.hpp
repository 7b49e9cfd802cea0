#pragma once

#include <vector>

namespace conicdet {

/// Real Bessel order nu >= 0. For a cone of parameter alpha, mode n has nu = |n| / alpha.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  double value() const noexcept { return nu_; }

 private:
  double nu_;
};

// First- and second-kind Bessel functions of real order. x must be finite and
// >= 0; J_nu(0) is 1 for nu = 0 and 0 otherwise.
double bessel_j(BesselOrder nu, double x);
double bessel_j_prime(BesselOrder nu, double x);
double bessel_y(BesselOrder nu, double x);
double bessel_y_prime(BesselOrder nu, double x);

/// McMahon asymptotic estimate of j_{nu,m} (four correction terms).
double mcmahon_zero(BesselOrder nu, int m);

/// m-th positive zero j_{nu,m}, m >= 1.
double bessel_j_zero(BesselOrder nu, int m);

/// All positive zeros of J_nu that are <= kmax, ascending.
std::vector<double> bessel_j_zeros_below(BesselOrder nu, double kmax);

/// J_nu(k ratio) Y_nu(k) - J_nu(k) Y_nu(k ratio): the Dirichlet characteristic
/// function of the annulus ratio < r < 1 in mode nu.
double cross_product(BesselOrder nu, double ratio, double k);

/// m-th positive zero of cross_product in k, 0 < ratio < 1.
double cross_product_zero(BesselOrder nu, double ratio, int m);

/// All zeros of cross_product in (0, kmax], ascending.
std::vector<double> cross_product_zeros_below(BesselOrder nu, double ratio, double kmax);

}  // namespace conicdet
