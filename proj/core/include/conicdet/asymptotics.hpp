#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conicdet/geometry.hpp"
#include "conicdet/rational.hpp"

namespace conicdet {

enum class ErrorModel { little_o, bounded_6eps };

/// Supplied values for the unknowns an expansion carries symbolically.
struct SymbolicConstants {
  std::optional<double> logdet_m;
  std::vector<double> logdet_unit_cones;
  std::optional<double> logdet_r;
};

/// c_log_eps log(eps) + c_loglog log log(1/eps) + constant. The constant is
/// kept as exact rational multiples of named logarithms ("log2", "log_pi",
/// "log_V", "log_beta", "log_b[i]", "log_alpha[i]") and of the unknown
/// determinants ("logdet_m", "logdet_cone[i]", "logdet_r").
struct ExpansionReport {
  Rational c_log_eps{0};
  Rational c_loglog{0};
  std::map<std::string, Rational> log_terms;
  std::map<std::string, double> log_values;
  std::map<std::string, Rational> symbolic;
  ErrorModel error_model = ErrorModel::little_o;
  double error_alpha = 0.0;  // alpha_1 for the 6 eps^{1/alpha_1} model

  double c_const_known() const;
  std::map<std::string, double> c_const_symbolic() const;
  /// Full expansion at eps; every symbol present must have a value.
  double evaluate(double eps, const SymbolicConstants& constants) const;
};

std::string to_string(ErrorModel model);

/// log det of M_eps as eps -> 0.
ExpansionReport expansion_m_eps(const ExcisionSpec& excision, const SurfaceSpec& surface);

/// log det R_eps as eps -> 0.
ExpansionReport expansion_r(const ExcisionSpec& excision);

/// Gluing formula rearranged for log det M_eps, with log det R_eps left as the symbol "logdet_r".
ExpansionReport intermediate_expansion(const ExcisionSpec& excision, const SurfaceSpec& surface);

/// Replace symbol `name` (coefficient c) by c times `value`.
ExpansionReport substitute(const ExpansionReport& report, const std::string& name, const ExpansionReport& value);

/// Effect of rescaling the metric by eps^{-2} on a surface with the given zeta(0).
ExpansionReport rescale_by_inverse_eps(const ExpansionReport& report, Rational zeta0);

/// Expansion for the rescaled metric eps^{-2} g on the truncated surface.
ExpansionReport khuri_expansion(int genus, const std::vector<Rational>& alphas, double volume = 1.0);

enum class DivergenceClass { to_minus_infinity, to_plus_infinity, bounded };
std::string to_string(DivergenceClass c);

DivergenceClass divergence_class(int genus, const std::vector<Rational>& alphas);

/// 6 eps^{1/alpha}; out_of_regime for eps > 2^{-alpha}.
double error_bound(double eps, double alpha);

/// True when both reports have identical coefficients, log terms and symbols.
bool same_expansion(const ExpansionReport& a, const ExpansionReport& b);

}  // namespace conicdet
