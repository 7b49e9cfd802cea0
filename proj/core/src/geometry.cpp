#include "conicdet/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "conicdet/error.hpp"

namespace conicdet {
namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !std::isfinite(v))
    fail(ErrorKind::invalid_argument, "bad value for '" + key + "': " + value);
  return v;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item)));
  return out;
}

}  // namespace

ConeSpec::ConeSpec(double alpha, double length) : alpha_(alpha), length_(length) {
  require(positive_finite(alpha), ErrorKind::invalid_argument, "cone alpha must be > 0");
  require(positive_finite(length), ErrorKind::invalid_argument, "cone length must be > 0");
}

double ConeSpec::area() const noexcept { return std::numbers::pi * alpha_ * length_ * length_; }
double ConeSpec::perimeter() const noexcept { return 2.0 * std::numbers::pi * alpha_ * length_; }

AnnulusSpec::AnnulusSpec(double alpha, double inner, double outer)
    : alpha_(alpha), inner_(inner), outer_(outer) {
  require(positive_finite(alpha), ErrorKind::invalid_argument, "annulus alpha must be > 0");
  require(positive_finite(inner) && positive_finite(outer) && inner < outer,
          ErrorKind::invalid_argument, "annulus radii must satisfy 0 < inner < outer");
}

double AnnulusSpec::area() const noexcept {
  return std::numbers::pi * alpha_ * (outer_ * outer_ - inner_ * inner_);
}
double AnnulusSpec::perimeter() const noexcept {
  return 2.0 * std::numbers::pi * alpha_ * (outer_ + inner_);
}

ExcisionSpec::ExcisionSpec(std::vector<Rational> alphas, std::vector<double> bs, double eps)
    : alphas_(std::move(alphas)), bs_(std::move(bs)), eps_(eps) {
  require(!alphas_.empty(), ErrorKind::invalid_argument, "excision needs k >= 1");
  require(alphas_.size() == bs_.size(), ErrorKind::invalid_argument,
          "excision alphas and bs differ in length");
  for (const auto& a : alphas_)
    require(a > Rational(0), ErrorKind::invalid_argument, "excision alpha must be > 0");
  for (double b : bs_)
    require(positive_finite(b) && b <= 1.0, ErrorKind::invalid_argument, "b_i must lie in (0, 1]");
  require(positive_finite(eps) && eps <= 1.0, ErrorKind::invalid_argument, "eps must lie in (0, 1]");
}

void SurfaceSpec::validate() const {
  require(genus >= 0, ErrorKind::invalid_argument, "genus must be >= 0");
  require(!angles.empty(), ErrorKind::invalid_argument, "surface needs at least one cone angle");
  for (const auto& a : angles) require(a > Rational(0), ErrorKind::invalid_argument, "cone angles must be > 0");
  require(positive_finite(volume), ErrorKind::invalid_argument, "volume must be > 0");
  if (flat && gauss_bonnet_residual(*this) != Rational(0))
    fail(ErrorKind::invalid_argument, "flat surface violates sum(alpha) = 2p + n - 2");
}

double beta(std::span<const double> bs) {
  require(!bs.empty(), ErrorKind::invalid_argument, "beta of an empty list");
  const auto k = bs.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double prod = 1.0;
    for (std::size_t i = 0; i < k; ++i)
      if (i != j) prod *= bs[i];
    sum += prod;
  }
  return sum / static_cast<double>(k);
}

Rational gauss_bonnet_residual(const SurfaceSpec& spec) {
  Rational sum = 0;
  for (const auto& a : spec.angles) sum += a;
  return sum - Rational(2 * spec.genus + static_cast<std::int64_t>(spec.n()) - 2);
}

double scale_logdet(double logdet, double zeta0, double scale) {
  require(positive_finite(scale), ErrorKind::invalid_argument, "scale must be > 0");
  return logdet - 2.0 * zeta0 * std::log(scale);
}

SurfaceSpec GeometryConfig::surface() const {
  require(genus.has_value(), ErrorKind::invalid_argument, "config lacks 'genus'");
  require(angles.has_value(), ErrorKind::invalid_argument, "config lacks 'angles'");
  SurfaceSpec s;
  s.genus = *genus;
  s.angles = *angles;
  s.volume = volume.value_or(1.0);
  s.logdet_m = logdet_m;
  s.validate();
  return s;
}

ExcisionSpec GeometryConfig::excision() const {
  require(angles.has_value(), ErrorKind::invalid_argument, "config lacks 'angles'");
  require(eps.has_value(), ErrorKind::invalid_argument, "config lacks 'eps'");
  if (!bs) return {*angles, std::vector<double>(angles->size(), 1.0), *eps};
  require(bs->size() <= angles->size(), ErrorKind::invalid_argument, "more bs than angles");
  std::vector<Rational> alphas(angles->begin(), angles->begin() + static_cast<std::ptrdiff_t>(bs->size()));
  return {std::move(alphas), *bs, *eps};
}

GeometryConfig parse_geometry_config(std::istream& in) {
  GeometryConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::invalid_argument, "line " + std::to_string(lineno) + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "genus") {
      auto g = parse_rational(value);
      require(g.denominator() == 1, ErrorKind::invalid_argument, "genus must be an integer");
      cfg.genus = static_cast<int>(g.numerator());
    } else if (key == "angles") {
      cfg.angles = parse_rational_list(value);
    } else if (key == "bs") {
      cfg.bs = parse_real_list(key, value);
    } else if (key == "eps") {
      cfg.eps = parse_real(key, value);
    } else if (key == "volume") {
      cfg.volume = parse_real(key, value);
    } else if (key == "logdet_m") {
      cfg.logdet_m = parse_real(key, value);
    } else {
      fail(ErrorKind::invalid_argument, "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

GeometryConfig load_geometry_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_argument, "cannot open config file " + path);
  return parse_geometry_config(in);
}

}  // namespace conicdet
