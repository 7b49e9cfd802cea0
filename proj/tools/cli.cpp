#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conicdet/asymptotics.hpp"
#include "conicdet/error.hpp"
#include "conicdet/geometry.hpp"
#include "conicdet/io.hpp"
#include "conicdet/jump_operator.hpp"
#include "conicdet/parallel.hpp"
#include "conicdet/rational.hpp"
#include "conicdet/spectral_det.hpp"
#include "conicdet/verify.hpp"

namespace conicdet::cli {
namespace {

struct Options {
  // global
  unsigned threads = 0;
  std::string format = "json";
  std::string out_path;
  std::string config_path;
  bool no_timing = false;
  bool eps_from_config = false;
  // shared
  std::optional<double> alpha;
  std::optional<double> eps;
  double cutoff = 4e4;
  int modes = 0;
  std::string oracle = "heat";
  std::string spectrum_csv;
  // cone / annulus
  double length = 1.0;
  std::optional<double> inner;
  double outer = 1.0;
  // jump
  std::string convention = "model";
  std::string mode_table;
  // verify
  double tol = 1e-3;
  // sweep
  std::string eps_list;
  bool force = false;
  // khuri
  std::optional<int> genus;
  std::string angles;
  std::optional<double> volume;
  std::optional<double> logdet_m;
  std::string logdet_cones;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

std::vector<double> parse_doubles(const std::string& list) { return to_doubles(parse_rational_list(list)); }

// Values from --config fill options that were not given on the command line.
void merge_config(Options& o, const GeometryConfig& cfg) {
  if (cfg.angles && !cfg.angles->empty() && !o.alpha) o.alpha = to_double(cfg.angles->front());
  if (cfg.eps && !o.eps) {
    o.eps = *cfg.eps;
    o.eps_from_config = true;
  }
  if (cfg.genus && !o.genus) o.genus = *cfg.genus;
  if (cfg.volume && !o.volume) o.volume = *cfg.volume;
  if (cfg.logdet_m && !o.logdet_m) o.logdet_m = *cfg.logdet_m;
  if (cfg.angles && o.angles.empty()) {
    std::string joined;
    for (const auto& a : *cfg.angles) joined += (joined.empty() ? "" : ",") + to_string(a);
    o.angles = joined;
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) fail(ErrorKind::invalid_argument, "cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void export_spectrum(const std::string& path, const Spectrum& spectrum) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) fail(ErrorKind::invalid_argument, "cannot open spectrum file " + path);
  write_spectrum_csv(f, spectrum);
}

ZetaDetResult domain_det(const Domain& domain, const Options& o) {
  if (o.oracle == "gy") return gelfand_yaglom_logdet(domain, o.modes);
  if (o.oracle != "heat") throw UsageError("--oracle must be heat or gy");
  const auto spectrum = enumerate_spectrum(domain, o.cutoff);
  export_spectrum(o.spectrum_csv, spectrum);
  return logdet_from_spectrum(spectrum, heat_coefficients(domain));
}

int cmd_cone(const Options& o, Format f, std::ostream& out) {
  write(out, f, domain_det(ConeSpec(need(o.alpha, "--alpha"), o.length), o));
  return kOk;
}

int cmd_annulus(const Options& o, Format f, std::ostream& out) {
  write(out, f, domain_det(AnnulusSpec(need(o.alpha, "--alpha"), need(o.inner, "--inner"), o.outer), o));
  return kOk;
}

int cmd_jump(const Options& o, Format f, std::ostream& out, std::ostream& err) {
  const double alpha = need(o.alpha, "--alpha");
  const double eps = need(o.eps, "--eps");
  if (o.convention != "model" && o.convention != "closed") throw UsageError("--convention must be model or closed");
  const auto conv = o.convention == "model" ? ModeConvention::model : ModeConvention::closed;
  const auto r = logdet_model_r(eps, alpha, o.modes, conv);
  if (!r.in_regime) err << "note: eps > 2^-alpha, outside the proven-bound regime\n";
  if (!o.mode_table.empty()) {
    std::ofstream t(o.mode_table);
    if (!t) fail(ErrorKind::invalid_argument, "cannot open mode table file " + o.mode_table);
    DiagonalModeOperator op("R_eps", Subspace::full, 1,
                            [eps, alpha](ModeIndex i) { return model_r_eigen(i, eps, alpha); });
    op.write_csv(t, o.modes > 0 ? o.modes : default_mode_cutoff(eps, alpha));
  }
  write(out, f, r);
  return kOk;
}

int cmd_verify(const Options& o, Format f, std::ostream& out, std::ostream& err) {
  BfkOptions b;
  b.spectral_cutoff = o.cutoff;
  b.mode_cutoff = o.modes;
  b.tol = o.tol;
  const auto r = verify_bfk_model(need(o.alpha, "--alpha"), need(o.eps, "--eps"), b);
  write(out, f, r);
  if (!(std::abs(r.identity_residual) < r.tolerance)) {
    err << "identity residual " << r.identity_residual << " exceeds tolerance " << r.tolerance << '\n';
    return kInconclusive;
  }
  return kOk;
}

int cmd_sweep(const Options& o, Format f, std::ostream& out, std::ostream& err) {
  const double alpha = need(o.alpha, "--alpha");
  std::vector<double> grid;
  if (!o.eps_list.empty())
    grid = parse_doubles(o.eps_list);
  else if (o.eps)
    grid = {*o.eps};
  else
    throw UsageError("missing required option --eps-list");
  const double edge = std::pow(2.0, -alpha);
  for (double e : grid) {
    if (e > edge && !o.force) {
      err << "eps = " << e << " exceeds 2^-alpha = " << edge << " (use --force to include it)\n";
      return kOutOfRegime;
    }
  }
  const auto rows = sweep_jump_determinant(alpha, grid, o.modes);
  write(out, f, std::span<const SweepRow>(rows), !o.no_timing);
  try {
    err << "fitted residual exponent: " << fit_convergence_rate(rows) << '\n';
  } catch (const Error&) {
  }
  return kOk;
}

int cmd_khuri(const Options& o, Format f, std::ostream& out) {
  const int genus = need(o.genus, "--genus");
  if (o.angles.empty()) throw UsageError("missing required option --angles");
  const auto alphas = parse_rational_list(o.angles);
  const auto report = khuri_expansion(genus, alphas, o.volume.value_or(1.0));
  const auto divergence = divergence_class(genus, alphas);

  std::optional<double> value;
  if (o.eps) {
    SymbolicConstants c;
    c.logdet_m = o.logdet_m;
    if (!o.logdet_cones.empty()) c.logdet_unit_cones = parse_doubles(o.logdet_cones);
    // An eps from --config is geometry, not a request to evaluate.
    const bool complete = c.logdet_m && c.logdet_unit_cones.size() == alphas.size();
    if (!o.eps_from_config || complete) value = report.evaluate(*o.eps, c);
  }
  if (f == Format::json) {
    auto j = nlohmann::ordered_json::parse(to_json(report, divergence));
    if (value) j["value"] = *value;
    out << j.dump(2) << '\n';
  } else {
    std::ostringstream s;
    write(s, f, report, divergence);
    out << s.str();
    if (value) {
      out.precision(17);
      out << "value," << *value << '\n';
    }
  }
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::invalid_mode: return kUsage;
    case ErrorKind::out_of_regime: return kOutOfRegime;
    default: return kInconclusive;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zeta-regularized determinants on flat cones, conic annuli and the Neumann jump operator"};
  app.name("conicdet");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "Worker threads (default: all cores)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out_path, "Write output to PATH instead of stdout");
  app.add_option("--config", o.config_path, "key=value file (genus, angles, bs, eps, volume, logdet_m)");
  app.add_flag("--no-timing", o.no_timing, "Write 0 for runtimes so output is reproducible");

  auto* cone = app.add_subcommand("cone-det", "log det of the Dirichlet Laplacian on the cone C(alpha, L)");
  cone->add_option("--alpha", o.alpha, "Cone angle / 2pi");
  cone->add_option("--length", o.length, "Slant radius L");
  cone->add_option("--cutoff", o.cutoff, "Spectral cutoff Lambda");
  cone->add_option("--oracle", o.oracle, "heat (spectrum + heat trace) or gy (Gelfand-Yaglom)");
  cone->add_option("--spectrum-csv", o.spectrum_csv, "Also write the spectrum to PATH");

  auto* ann = app.add_subcommand("annulus-det", "log det on the conic annulus inner < r < outer");
  ann->add_option("--alpha", o.alpha, "Cone angle / 2pi");
  ann->add_option("--inner", o.inner, "Inner radius");
  ann->add_option("--outer", o.outer, "Outer radius");
  ann->add_option("--cutoff", o.cutoff, "Spectral cutoff Lambda");
  ann->add_option("--oracle", o.oracle, "heat or gy");
  ann->add_option("--spectrum-csv", o.spectrum_csv, "Also write the spectrum to PATH");

  auto* jump = app.add_subcommand("jump-det", "log det of the Neumann jump operator on the unit cone model");
  jump->add_option("--alpha", o.alpha, "Cone angle / 2pi");
  jump->add_option("--eps", o.eps, "Excision radius");
  jump->add_option("--modes", o.modes, "Mode cutoff (0: automatic)");
  jump->add_option("--convention", o.convention, "model (outer Dirichlet wall) or closed (constant kernel)");
  jump->add_option("--mode-table", o.mode_table, "Write R_eps mode eigenvalues (n,j,eigenvalue) to PATH");

  auto* bfk = app.add_subcommand("verify-bfk", "Check the gluing identity on the unit cone model");
  bfk->add_option("--alpha", o.alpha, "Cone angle / 2pi");
  bfk->add_option("--eps", o.eps, "Excision radius in (0, 1/2]");
  bfk->add_option("--tol", o.tol, "Residual tolerance");
  bfk->add_option("--cutoff", o.cutoff, "Spectral cutoff Lambda");
  bfk->add_option("--modes", o.modes, "Jump-operator mode cutoff (0: automatic)");

  auto* sweep = app.add_subcommand("sweep", "Jump determinant against its asymptote over an eps grid");
  sweep->add_option("--alpha", o.alpha, "Cone angle / 2pi");
  sweep->add_option("--eps-list", o.eps_list, "Comma-separated eps values");
  sweep->add_option("--modes", o.modes, "Mode cutoff (0: automatic)");
  sweep->add_flag("--force", o.force, "Allow eps > 2^-alpha");

  auto* khuri = app.add_subcommand("khuri", "Expansion of log det for the rescaled truncated surface");
  khuri->add_option("--genus", o.genus, "Genus p");
  khuri->add_option("--angles", o.angles, "Comma-separated cone angles / 2pi (fractions like 1/3 allowed)");
  khuri->add_option("--volume", o.volume, "Area V");
  khuri->add_option("--logdet-m", o.logdet_m, "log det of the closed surface, if known");
  khuri->add_option("--logdet-cones", o.logdet_cones, "Comma-separated log det of the unit cones");
  khuri->add_option("--eps", o.eps, "Evaluate the expansion at eps (needs all constants)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(o.threads);
    if (!o.config_path.empty()) merge_config(o, load_geometry_config(o.config_path));
    const Format format = parse_format(o.format);
    Output output(o.out_path, out);
    std::ostream& os = output.get();
    if (cone->parsed()) return cmd_cone(o, format, os);
    if (ann->parsed()) return cmd_annulus(o, format, os);
    if (jump->parsed()) return cmd_jump(o, format, os, err);
    if (bfk->parsed()) return cmd_verify(o, format, os, err);
    if (sweep->parsed()) return cmd_sweep(o, format, os, err);
    return cmd_khuri(o, format, os);
  } catch (const UsageError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace conicdet::cli
