#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace conicdet {

/// Fourier mode n on the j-th excision circle (j is 1-based).
struct ModeIndex {
  int n = 0;
  int j = 1;
};

/// L0: nonconstant modes only; c_and_l0 and full also admit n = 0.
enum class Subspace { l0, c_and_l0, full };

/// Operator diagonal in the f_{n,j} basis.
class DiagonalModeOperator {
 public:
  using Eval = std::function<double(ModeIndex)>;

  DiagonalModeOperator(std::string name, Subspace subspace, int k, Eval eval);

  const std::string& name() const noexcept { return name_; }
  Subspace subspace() const noexcept { return subspace_; }
  int k() const noexcept { return k_; }

  /// Throws invalid_mode for n = 0 on L0 operators or j outside [1, k].
  double operator()(ModeIndex idx) const;

  /// Mode table for |n| <= n_max, CSV header n,j,eigenvalue.
  void write_csv(std::ostream& out, int n_max) const;

 private:
  std::string name_;
  Subspace subspace_;
  int k_;
  Eval eval_;
};

// Scalar multipliers on f_{n,j}; `alphas` and `bs` are indexed by j - 1.
double t_eps(ModeIndex idx, double eps, std::span<const double> alphas);
double u_eps_minus(ModeIndex idx, double eps, std::span<const double> alphas);
double u_eps_plus(ModeIndex idx, double eps, std::span<const double> alphas);
double mode_mult(ModeIndex idx, std::span<const double> alphas);
double abs_mode_mult(ModeIndex idx, std::span<const double> alphas);
double b_mult(ModeIndex idx, std::span<const double> bs);

/// Cone Dirichlet-to-Neumann multiplier -|n| / (b_j eps alpha_j); 0 on constants.
double p_cone_mode(ModeIndex idx, double eps, std::span<const double> bs, std::span<const double> alphas);

/// Eigenvalue of |V| + V T^{-1}.
double k_diag_eigen(ModeIndex idx, double eps, std::span<const double> alphas);
/// Eigenvalue of V (U^-)^{-1}.
double k_coupling_eigen(ModeIndex idx, double eps, std::span<const double> alphas);

DiagonalModeOperator make_t_eps(double eps, std::vector<double> alphas);
DiagonalModeOperator make_u_eps_minus(double eps, std::vector<double> alphas);
DiagonalModeOperator make_u_eps_plus(double eps, std::vector<double> alphas);
DiagonalModeOperator make_mode_mult(std::vector<double> alphas);
DiagonalModeOperator make_abs_mode_mult(std::vector<double> alphas);
DiagonalModeOperator make_b_mult(std::vector<double> bs);

/// Harmonic extension across M_eps restricted to the unit-scale circles.
class ExtensionProvider {
 public:
  virtual ~ExtensionProvider() = default;
  virtual std::string name() const = 0;
  /// Upper bound on the operator norm of L_eps.
  virtual double norm_bound() const = 0;
  /// Apply to boundary data given as mode coefficients, ordered like `modes`.
  virtual std::vector<double> apply(std::span<const ModeIndex> modes, std::span<const double> coeffs) const = 0;
};

/// Unit cone with a Dirichlet wall at r = 1: the extension vanishes on the wall.
class ModelExtension final : public ExtensionProvider {
 public:
  std::string name() const override { return "model"; }
  double norm_bound() const override { return 0.0; }
  std::vector<double> apply(std::span<const ModeIndex> modes, std::span<const double> coeffs) const override;
};

/// Generic contract: only ||L_eps|| <= 1 is known. apply() is the identity,
/// the extreme admissible case.
class ContractExtension final : public ExtensionProvider {
 public:
  std::string name() const override { return "contract"; }
  double norm_bound() const override { return 1.0; }
  std::vector<double> apply(std::span<const ModeIndex> modes, std::span<const double> coeffs) const override;
};

/// Default mode cutoff; large enough that eps^{N/alpha} < 1e-30.
int default_mode_cutoff(double eps, double alpha);

/// Upper bound on Tr|K_eps|: per-mode sum over 0 < |n| <= N plus a certified
/// geometric tail. Throws increase_cutoff if the tail exceeds 1e-14 of the head.
double trace_norm_k(double eps, std::span<const double> alphas, std::span<const double> bs, int mode_cutoff,
                    const ExtensionProvider& provider);
double trace_norm_k(double eps, std::span<const double> alphas, std::span<const double> bs, int mode_cutoff = 0);

/// Upper bound on ||K_eps A_eps^{-1}|| from the four blocks of B K A^{-1} B^{-1}.
double norm_k_a_inv(double eps, std::span<const double> alphas, std::span<const double> bs,
                    const ExtensionProvider& provider);
double norm_k_a_inv(double eps, std::span<const double> alphas, std::span<const double> bs);

/// Regularized log det of the diagonal operator with eigenvalues c*m, m >= 1,
/// each of multiplicity `mult`, from zeta_R(0) and zeta_R'(0).
double zeta_regularized_logdet_linear(double c, int mult);

/// log det A_eps = -(k-1) log log(1/eps) + sum log(pi b_i alpha_i) - log det B-hat.
double logdet_a_eps(double eps, std::span<const double> alphas, std::span<const double> bs);

/// log det of the (k-1)x(k-1) matrix (b_k - b_j)/k + b_j delta_ij, by LU elimination.
double bhat_logdet(std::span<const double> bs);

/// Positive eigenvalue of R_eps on mode n for the unit cone model.
double model_r_eigen(ModeIndex idx, double eps, double alpha);

/// model: outer Dirichlet wall, n = 0 is an honest eigenvalue (zeta_R(0) = 0).
/// closed: n = 0 treated as the constant kernel of a closed surface (zeta_R(0) = -1).
enum class ModeConvention { model, closed };

struct JumpDetResult {
  double logdet_eps_r = 0.0;
  double logdet_r = 0.0;
  double logdet_a = 0.0;
  double residual = 0.0;
  double comeback_bound = 0.0;
  double paper_bound = 0.0;
  double zeta_r0 = 0.0;
  bool in_regime = true;
};

JumpDetResult logdet_model_r(double eps, double alpha, int mode_cutoff = 0,
                             ModeConvention convention = ModeConvention::model);

/// zeta_{R_eps}(0) on a closed surface.
double zeta_r_at_zero();

/// Numerical continuation of the model jump-operator zeta function to s = 0
/// (small-t fit of t * Tr exp(-t R_eps)).
double jump_zeta0_numeric(double eps, double alpha, ModeConvention convention = ModeConvention::closed);

}  // namespace conicdet
