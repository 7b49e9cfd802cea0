#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conicdet/rational.hpp"

namespace conicdet {

/// Flat cone of angle 2*pi*alpha and slant radius `length`, metric dr^2 + r^2 alpha^2 dtheta^2.
class ConeSpec {
 public:
  ConeSpec(double alpha, double length);

  double alpha() const noexcept { return alpha_; }
  double length() const noexcept { return length_; }
  double area() const noexcept;
  double perimeter() const noexcept;

 private:
  double alpha_;
  double length_;
};

/// The part of a flat cone between r = inner and r = outer.
class AnnulusSpec {
 public:
  AnnulusSpec(double alpha, double inner, double outer);

  double alpha() const noexcept { return alpha_; }
  double inner() const noexcept { return inner_; }
  double outer() const noexcept { return outer_; }
  double ratio() const noexcept { return inner_ / outer_; }
  double area() const noexcept;
  double perimeter() const noexcept;

 private:
  double alpha_;
  double inner_;
  double outer_;
};

/// k circles r = b_i * eps cut around cone points of angle parameters alpha_i.
class ExcisionSpec {
 public:
  ExcisionSpec(std::vector<Rational> alphas, std::vector<double> bs, double eps);

  std::size_t k() const noexcept { return alphas_.size(); }
  const std::vector<Rational>& alphas() const noexcept { return alphas_; }
  std::vector<double> alpha_values() const { return to_doubles(alphas_); }
  const std::vector<double>& bs() const noexcept { return bs_; }
  double eps() const noexcept { return eps_; }

  /// Copy with a different excision parameter.
  ExcisionSpec with_eps(double eps) const { return {alphas_, bs_, eps}; }

 private:
  std::vector<Rational> alphas_;
  std::vector<double> bs_;
  double eps_;
};

/// Closed conic surface data entering the expansions. log det of the closed
/// surface is carried as an opaque optional constant.
struct SurfaceSpec {
  int genus = 0;
  std::vector<Rational> angles;
  double volume = 1.0;
  std::optional<double> logdet_m;
  /// When set, validate() enforces sum(alpha_i) == 2p + n - 2.
  bool flat = false;

  std::size_t n() const noexcept { return angles.size(); }
  void validate() const;
};

/// (1/k) * sum_j prod_{i != j} b_i.
double beta(std::span<const double> bs);

/// sum(alpha_i) - (2p + n - 2), exact.
Rational gauss_bonnet_residual(const SurfaceSpec& spec);

/// log det after multiplying the metric by scale^2: logdet - 2 zeta0 log(scale).
double scale_logdet(double logdet, double zeta0, double scale);

/// Plain key=value configuration (keys: genus, angles, bs, eps, volume,
/// logdet_m). '#' starts a comment. Unknown keys are rejected.
struct GeometryConfig {
  std::optional<int> genus;
  std::optional<std::vector<Rational>> angles;
  std::optional<std::vector<double>> bs;
  std::optional<double> eps;
  std::optional<double> volume;
  std::optional<double> logdet_m;

  /// Requires genus and angles.
  SurfaceSpec surface() const;
  /// Requires angles and eps. With bs absent every angle is excised with b = 1;
  /// otherwise the first bs.size() angles are excised.
  ExcisionSpec excision() const;
};

GeometryConfig parse_geometry_config(std::istream& in);
GeometryConfig load_geometry_config(const std::string& path);

}  // namespace conicdet
