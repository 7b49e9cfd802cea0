#pragma once

#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

#include "conicdet/geometry.hpp"

namespace conicdet {

using Domain = std::variant<ConeSpec, AnnulusSpec>;

/// One radial eigenvalue of angular mode n >= 0; the +-n pair is folded into
/// multiplicity 2.
struct SpectrumEntry {
  int n = 0;
  int m = 0;
  double nu = 0.0;
  double lambda = 0.0;
  int multiplicity = 1;
};

/// Dirichlet eigenvalues <= cutoff, ascending (ties ordered by n).
class Spectrum {
 public:
  Spectrum(std::vector<SpectrumEntry> entries, double cutoff, Domain domain);

  const std::vector<SpectrumEntry>& entries() const noexcept { return entries_; }
  double cutoff() const noexcept { return cutoff_; }
  const Domain& domain() const noexcept { return domain_; }

  std::vector<double> eigenvalues() const;
  std::vector<int> multiplicities() const;
  /// Eigenvalue count with multiplicity.
  std::size_t count() const noexcept;

  double area() const;
  double perimeter() const;

 private:
  std::vector<SpectrumEntry> entries_;
  double cutoff_;
  Domain domain_;
};

Spectrum enumerate_cone_spectrum(const ConeSpec& cone, double cutoff);
Spectrum enumerate_annulus_spectrum(const AnnulusSpec& ann, double cutoff);
Spectrum enumerate_spectrum(const Domain& domain, double cutoff);

/// Two-term Weyl count (Area/4pi) L - (Perimeter/4pi) sqrt L.
double weyl_count(double area, double perimeter, double cutoff);

/// Small-t heat trace expansion a0/t + a_half/sqrt t + a1 + c_sqrt sqrt t + c_t t.
/// The last two are the boundary curvature invariants; a cone tip only shifts a1.
struct HeatCoefficients {
  double a0 = 0.0;
  double a_half = 0.0;
  double a1 = 0.0;
  double c_sqrt = 0.0;
  double c_t = 0.0;
};

HeatCoefficients heat_coefficients(const ConeSpec& cone);
HeatCoefficients heat_coefficients(const AnnulusSpec& ann);
HeatCoefficients heat_coefficients(const Domain& domain);

/// (alpha + 1/alpha) / 12.
double zeta0_cone(double alpha);
/// chi / 6.
double zeta0_smooth(int chi);

struct ZetaDetResult {
  double zeta0 = 0.0;
  double zeta_prime0 = 0.0;
  double logdet = 0.0;
  double err_estimate = 0.0;
};

struct HeatOptions {
  double tmin_factor = 30.0;  // t_min = tmin_factor / cutoff
  int quadrature_nodes = 400;
  double fit_span = 4.0;      // fit window [t_min, fit_span * t_min]
  int fit_points = 40;
  int fit_terms = 2;          // t^{3/2}, t^2, ...
  double safety = 10.0;       // err_estimate multiplier on the variant spread
};

/// Heat-trace Mellin continuation split at t = L^2 (L the outer length). Throws
/// inconsistent_regularization when the numerically continued zeta(0) misses
/// heat.a1 by more than safety times the spread of the zeta(0) fits.
ZetaDetResult logdet_from_spectrum(const Spectrum& spectrum, const HeatCoefficients& heat,
                                   const HeatOptions& options = {});

/// Per-mode contour (Gelfand-Yaglom) route. mode_cutoff = 0 picks the cutoff
/// automatically; an explicit cutoff whose certified tail exceeds 1e-10
/// raises non_convergence.
ZetaDetResult gelfand_yaglom_logdet(const ConeSpec& cone, int mode_cutoff = 0);
ZetaDetResult gelfand_yaglom_logdet(const AnnulusSpec& ann, int mode_cutoff = 0);
ZetaDetResult gelfand_yaglom_logdet(const Domain& domain, int mode_cutoff = 0);

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace conicdet
