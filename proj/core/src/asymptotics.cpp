#include "conicdet/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

std::string indexed(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i + 1) + "]"; }

void add_log(ExpansionReport& r, const std::string& name, Rational coeff, double value) {
  // log 1 terms carry no information; dropping them keeps b_i = 1 reports comparable.
  if (value == 0.0 || coeff == Rational(0)) return;
  r.log_terms[name] += coeff;
  r.log_values[name] = value;
  if (r.log_terms[name] == Rational(0)) {
    r.log_terms.erase(name);
    r.log_values.erase(name);
  }
}

void add_symbol(ExpansionReport& r, const std::string& name, Rational coeff) {
  r.symbolic[name] += coeff;
  if (r.symbolic[name] == Rational(0)) r.symbolic.erase(name);
}

Rational cone_zeta_weight(Rational a) { return (a + Rational(1) / a) / 6; }

bool unit_single(const ExcisionSpec& e) { return e.k() == 1 && e.bs()[0] == 1.0; }

void set_error_model(ExpansionReport& r, const ExcisionSpec& e) {
  if (unit_single(e)) {
    r.error_model = ErrorModel::bounded_6eps;
    r.error_alpha = to_double(e.alphas()[0]);
  }
}

}  // namespace

double ExpansionReport::c_const_known() const {
  double s = 0.0;
  for (const auto& [name, c] : log_terms) s += to_double(c) * log_values.at(name);
  return s;
}

std::map<std::string, double> ExpansionReport::c_const_symbolic() const {
  std::map<std::string, double> out;
  for (const auto& [name, c] : symbolic) out[name] = to_double(c);
  return out;
}

double ExpansionReport::evaluate(double eps, const SymbolicConstants& constants) const {
  require(eps > 0.0 && eps < 1.0, ErrorKind::invalid_argument, "eps must lie in (0, 1)");
  double v = to_double(c_log_eps) * std::log(eps) + to_double(c_loglog) * std::log(std::log(1.0 / eps)) +
             c_const_known();
  for (const auto& [name, c] : symbolic) {
    double value = 0.0;
    if (name == "logdet_m") {
      require(constants.logdet_m.has_value(), ErrorKind::invalid_argument, "logdet_m value required");
      value = *constants.logdet_m;
    } else if (name == "logdet_r") {
      require(constants.logdet_r.has_value(), ErrorKind::invalid_argument, "logdet_r value required");
      value = *constants.logdet_r;
    } else {
      const auto i = static_cast<std::size_t>(std::stoul(name.substr(name.find('[') + 1))) - 1;
      if (i >= constants.logdet_unit_cones.size()) fail(ErrorKind::invalid_argument, name + " value required");
      value = constants.logdet_unit_cones[i];
    }
    v += to_double(c) * value;
  }
  return v;
}

std::string to_string(ErrorModel model) {
  return model == ErrorModel::little_o ? "o(1)" : "bounded-by-6eps^(1/alpha)";
}

ExpansionReport expansion_m_eps(const ExcisionSpec& excision, const SurfaceSpec& surface) {
  surface.validate();
  const auto k = static_cast<std::int64_t>(excision.k());
  ExpansionReport r;
  Rational weight_sum{0};
  for (const auto& a : excision.alphas()) weight_sum += cone_zeta_weight(a);
  r.c_log_eps = Rational(k - 1) + weight_sum;
  r.c_loglog = Rational(k - 1);
  add_symbol(r, "logdet_m", 1);
  for (std::size_t i = 0; i < excision.k(); ++i) {
    add_symbol(r, indexed("logdet_cone", i), -1);
    add_log(r, indexed("log_b", i), cone_zeta_weight(excision.alphas()[i]), std::log(excision.bs()[i]));
  }
  add_log(r, "log2", Rational(k), std::log(2.0));
  add_log(r, "log_V", -1, std::log(surface.volume));
  add_log(r, "log_beta", 1, std::log(beta(excision.bs())));
  set_error_model(r, excision);
  return r;
}

ExpansionReport expansion_r(const ExcisionSpec& excision) {
  const auto k = static_cast<std::int64_t>(excision.k());
  ExpansionReport r;
  r.c_log_eps = 1;
  r.c_loglog = Rational(-(k - 1));
  for (std::size_t i = 0; i < excision.k(); ++i) {
    add_log(r, "log_pi", 1, std::log(std::numbers::pi));
    add_log(r, indexed("log_b", i), 1, std::log(excision.bs()[i]));
    add_log(r, indexed("log_alpha", i), 1, std::log(to_double(excision.alphas()[i])));
  }
  add_log(r, "log_beta", -1, std::log(beta(excision.bs())));
  set_error_model(r, excision);
  return r;
}

ExpansionReport intermediate_expansion(const ExcisionSpec& excision, const SurfaceSpec& surface) {
  surface.validate();
  const auto k = static_cast<std::int64_t>(excision.k());
  ExpansionReport r;
  Rational weight_sum{0};
  for (const auto& a : excision.alphas()) weight_sum += cone_zeta_weight(a);
  r.c_log_eps = Rational(k) + weight_sum;
  add_symbol(r, "logdet_m", 1);
  for (std::size_t i = 0; i < excision.k(); ++i) {
    const auto& a = excision.alphas()[i];
    const double b = excision.bs()[i];
    add_symbol(r, indexed("logdet_cone", i), -1);
    add_log(r, indexed("log_b", i), cone_zeta_weight(a), std::log(b));
    // log(2 pi alpha_i b_i)
    add_log(r, "log2", 1, std::log(2.0));
    add_log(r, "log_pi", 1, std::log(std::numbers::pi));
    add_log(r, indexed("log_alpha", i), 1, std::log(to_double(a)));
    add_log(r, indexed("log_b", i), 1, std::log(b));
  }
  add_symbol(r, "logdet_r", -1);
  add_log(r, "log_V", -1, std::log(surface.volume));
  return r;
}

ExpansionReport substitute(const ExpansionReport& report, const std::string& name, const ExpansionReport& value) {
  const auto it = report.symbolic.find(name);
  if (it == report.symbolic.end()) fail(ErrorKind::invalid_argument, "symbol " + name + " not present");
  const Rational c = it->second;
  ExpansionReport r = report;
  r.symbolic.erase(name);
  r.c_log_eps += c * value.c_log_eps;
  r.c_loglog += c * value.c_loglog;
  for (const auto& [n, v] : value.log_terms) add_log(r, n, c * v, value.log_values.at(n));
  for (const auto& [n, v] : value.symbolic) add_symbol(r, n, c * v);
  if (value.error_model == ErrorModel::bounded_6eps) {
    r.error_model = value.error_model;
    r.error_alpha = value.error_alpha;
  }
  return r;
}

ExpansionReport rescale_by_inverse_eps(const ExpansionReport& report, Rational zeta0) {
  // log det(eps^{-2} g) = log det(g) + 2 zeta(0) log eps
  ExpansionReport r = report;
  r.c_log_eps += 2 * zeta0;
  return r;
}

ExpansionReport khuri_expansion(int genus, const std::vector<Rational>& alphas, double volume) {
  require(genus >= 0, ErrorKind::invalid_argument, "genus must be >= 0");
  require(!alphas.empty(), ErrorKind::invalid_argument, "at least one cone angle required");
  require(std::isfinite(volume) && volume > 0.0, ErrorKind::invalid_argument, "volume must be positive");
  const auto n = static_cast<std::int64_t>(alphas.size());
  Rational inv_sum{0};
  for (const auto& a : alphas) {
    require(a > Rational(0), ErrorKind::invalid_argument, "cone angles must be positive");
    inv_sum += Rational(1) / a;
  }
  ExpansionReport r;
  r.c_log_eps = (Rational(2 - 2 * genus - n) + inv_sum) / 6;
  r.c_loglog = Rational(n - 1);
  add_symbol(r, "logdet_m", 1);
  for (std::size_t i = 0; i < alphas.size(); ++i) add_symbol(r, indexed("logdet_cone", i), -1);
  add_log(r, "log2", Rational(n), std::log(2.0));
  add_log(r, "log_V", -1, std::log(volume));
  if (n == 1) {
    r.error_model = ErrorModel::bounded_6eps;
    r.error_alpha = to_double(alphas[0]);
  }
  return r;
}

std::string to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::to_minus_infinity: return "to_minus_infinity";
    case DivergenceClass::to_plus_infinity: return "to_plus_infinity";
    case DivergenceClass::bounded: return "bounded";
  }
  return "bounded";
}

DivergenceClass divergence_class(int genus, const std::vector<Rational>& alphas) {
  require(genus >= 0, ErrorKind::invalid_argument, "genus must be >= 0");
  require(!alphas.empty(), ErrorKind::invalid_argument, "at least one cone angle required");
  Rational inv_sum{0};
  for (const auto& a : alphas) {
    require(a > Rational(0), ErrorKind::invalid_argument, "cone angles must be positive");
    inv_sum += Rational(1) / a;
  }
  const auto n = static_cast<std::int64_t>(alphas.size());
  const Rational threshold(2 * genus + n - 2);
  if (inv_sum > threshold) return DivergenceClass::to_minus_infinity;
  if (inv_sum < threshold) return DivergenceClass::to_plus_infinity;
  return n == 1 ? DivergenceClass::bounded : DivergenceClass::to_plus_infinity;
}

double error_bound(double eps, double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::invalid_argument, "alpha must be positive");
  require(std::isfinite(eps) && eps > 0.0, ErrorKind::invalid_argument, "eps must be positive");
  if (eps > std::pow(2.0, -alpha))
    fail(ErrorKind::out_of_regime, "eps exceeds 2^-alpha; the 6 eps^(1/alpha) bound is not proven there");
  return 6.0 * std::pow(eps, 1.0 / alpha);
}

bool same_expansion(const ExpansionReport& a, const ExpansionReport& b) {
  return a.c_log_eps == b.c_log_eps && a.c_loglog == b.c_loglog && a.log_terms == b.log_terms &&
         a.symbolic == b.symbolic;
}

}  // namespace conicdet
