#include "conicdet/io.hpp"

#include <ostream>

#include <json.hpp>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// key,value rows for flat records.
void write_pairs(std::ostream& out, const ordered_json& j) {
  out << "key,value\n";
  for (const auto& [k, v] : j.items()) out << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

ordered_json zeta_json(const ZetaDetResult& r) {
  return {{"zeta0", r.zeta0}, {"zeta_prime0", r.zeta_prime0}, {"logdet", r.logdet}, {"err_estimate", r.err_estimate}};
}

ordered_json jump_json(const JumpDetResult& r) {
  return {{"logdet_eps_r", r.logdet_eps_r},     {"logdet_r", r.logdet_r},       {"logdet_a", r.logdet_a},
          {"residual", r.residual},             {"comeback_bound", r.comeback_bound}, {"paper_bound", r.paper_bound},
          {"zeta_r0", r.zeta_r0},               {"in_regime", r.in_regime}};
}

ordered_json bfk_json(const BfkReport& r) {
  return {{"logdet_whole", r.logdet_whole},
          {"logdet_annulus", r.logdet_annulus},
          {"logdet_small_cone", r.logdet_small_cone},
          {"logdet_r", r.logdet_r},
          {"identity_residual", r.identity_residual},
          {"tolerance", r.tolerance},
          {"gy_whole", r.gy_whole},
          {"gy_annulus", r.gy_annulus},
          {"err_whole", r.err_whole},
          {"err_annulus", r.err_annulus}};
}

ordered_json expansion_json(const ExpansionReport& r, std::optional<DivergenceClass> divergence) {
  ordered_json j;
  j["c_log_eps"] = to_string(r.c_log_eps);
  j["c_log_eps_float"] = to_double(r.c_log_eps);
  j["c_loglog"] = to_string(r.c_loglog);
  j["c_loglog_float"] = to_double(r.c_loglog);
  j["c_const_known"] = r.c_const_known();
  ordered_json sym = ordered_json::object();
  for (const auto& [name, c] : r.c_const_symbolic()) sym[name] = c;
  j["c_const_symbolic"] = sym;
  j["error_model"] = to_string(r.error_model);
  if (divergence) j["divergence"] = to_string(*divergence);
  return j;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  fail(ErrorKind::invalid_argument, "format must be csv or json");
}

std::string to_json(const ZetaDetResult& r) { return zeta_json(r).dump(2); }
std::string to_json(const JumpDetResult& r) { return jump_json(r).dump(2); }
std::string to_json(const BfkReport& r) { return bfk_json(r).dump(2); }

std::string to_json(std::span<const SweepRow> rows, bool timing) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"eps", r.eps},
                   {"logdet_r_numeric", r.logdet_r_numeric},
                   {"logdet_r_asymptotic", r.logdet_r_asymptotic},
                   {"residual", r.residual},
                   {"comeback_bound", r.comeback_bound},
                   {"paper_bound", r.paper_bound},
                   {"runtime_seconds", timing ? r.runtime_seconds : 0.0},
                   {"in_regime", r.in_regime}});
  }
  return arr.dump(2);
}

std::string to_json(const ExpansionReport& r, std::optional<DivergenceClass> divergence) {
  return expansion_json(r, divergence).dump(2);
}

void write(std::ostream& out, Format format, const ZetaDetResult& r) {
  if (format == Format::json) {
    out << to_json(r) << '\n';
    return;
  }
  const auto old_precision = out.precision(17);
  out << "zeta0,zeta_prime0,logdet,err_estimate\n"
      << r.zeta0 << ',' << r.zeta_prime0 << ',' << r.logdet << ',' << r.err_estimate << '\n';
  out.precision(old_precision);
}

void write(std::ostream& out, Format format, const JumpDetResult& r) {
  if (format == Format::json) {
    out << to_json(r) << '\n';
    return;
  }
  const auto old_precision = out.precision(17);
  out << "logdet_eps_r,logdet_r,logdet_a,residual,comeback_bound,paper_bound\n"
      << r.logdet_eps_r << ',' << r.logdet_r << ',' << r.logdet_a << ',' << r.residual << ',' << r.comeback_bound
      << ',' << r.paper_bound << '\n';
  out.precision(old_precision);
}

void write(std::ostream& out, Format format, const BfkReport& r) {
  if (format == Format::json)
    out << to_json(r) << '\n';
  else
    write_pairs(out, bfk_json(r));
}

void write(std::ostream& out, Format format, std::span<const SweepRow> rows, bool timing) {
  if (format == Format::json)
    out << to_json(rows, timing) << '\n';
  else
    write_sweep_csv(out, rows, timing);
}

void write(std::ostream& out, Format format, const ExpansionReport& r, std::optional<DivergenceClass> divergence) {
  if (format == Format::json) {
    out << to_json(r, divergence) << '\n';
    return;
  }
  auto j = expansion_json(r, divergence);
  ordered_json flat;
  for (const auto& [k, v] : j.items()) {
    if (k == "c_const_symbolic") {
      for (const auto& [name, c] : v.items()) flat["c_const_symbolic." + name] = c;
    } else {
      flat[k] = v;
    }
  }
  write_pairs(out, flat);
}

}  // namespace conicdet
