#pragma once

#include <cstddef>
#include <limits>

#include <Eigen/Dense>

namespace qac {

/// Inverse temperature that selects the closed-form zero-temperature branch.
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

/// How the penalty transverse field enters the single-block Hamiltonian.
///
/// `per_block` puts ε·Γ·σx_0 on the block once. `per_copy` multiplies it by C,
/// matching ε·C·Γ on the N-qubit Hamiltonian. Published critical fields at
/// ε > 0 are reproduced by `per_block`.
enum class PenaltyFieldConvention { per_block, per_copy };

/// Physical parameters of one evaluation point.
struct ModelParams {
  int p = 2;                ///< interaction order
  int C = 1;                ///< number of code copies
  double gamma = 0.0;       ///< penalty coupling γ
  double epsilon = 0.0;     ///< penalty transverse field relative to Γ
  double Gamma = 0.0;       ///< transverse field Γ
  double beta = 1.0;        ///< inverse temperature, or kZeroTemperature
  PenaltyFieldConvention convention = PenaltyFieldConvention::per_block;

  bool zero_temperature() const noexcept { return beta == kZeroTemperature; }

  /// κ, the multiplier of ε·Γ·σx_0 in the block Hamiltonian.
  double penalty_field_scale() const noexcept {
    return convention == PenaltyFieldConvention::per_copy ? static_cast<double>(C) : 1.0;
  }

  /// Throws InvalidParameter when any invariant is violated.
  void validate() const;

  ModelParams with_Gamma(double value) const {
    ModelParams out = *this;
    out.Gamma = value;
    return out;
  }
  ModelParams with_beta(double value) const {
    ModelParams out = *this;
    out.beta = value;
    return out;
  }
  ModelParams with_gamma(double value) const {
    ModelParams out = *this;
    out.gamma = value;
    return out;
  }
  ModelParams with_epsilon(double value) const {
    ModelParams out = *this;
    out.epsilon = value;
    return out;
  }
};

/// Temperature to inverse temperature; T = 0 maps to the sentinel.
double beta_from_temperature(double T);
double temperature_from_beta(double beta);

/// Throws InvalidParameter unless m is finite and |m| <= 1.
void check_order_parameter(double m);

/// x^k for non-negative integer k, exact sign for negative x.
double ipow(double x, int k);

/// Real symmetric matrix on a qubit register, stored dense.
class DenseSymmetricOperator {
 public:
  explicit DenseSymmetricOperator(Eigen::MatrixXd entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  int qubits() const noexcept;
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  double operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Largest copy count accepted by build_effective_hamiltonian.
inline constexpr int kMaxEffectiveCopies = 20;
/// Largest qubit count accepted by build_full_hamiltonian.
inline constexpr int kMaxFullQubits = 14;

/// Single-block mean-field Hamiltonian on (copies 1..C) ⊗ (penalty qubit).
///
/// H_eff = −[ p m^{p−1} Σ_c σz_c + γ Σ_c σz_c σz_0 + Γ Σ_c σx_c + κ ε Γ σx_0 ].
/// Bit c−1 of a basis index holds copy c; bit C holds the penalty qubit.
/// Bit value 0 is the σz = +1 state.
DenseSymmetricOperator build_effective_hamiltonian(const ModelParams& params, double m);

/// Exact Hamiltonian of n_logical encoded qubits:
/// −N Σ_c (M_c/N)^p − Γ Σ σx_ic − γ Σ σz_ic σz_i0 − κ ε Γ Σ σx_i0.
/// Logical qubit i occupies bits [i(C+1), (i+1)(C+1)) with the effective-Hamiltonian
/// layout inside each block.
DenseSymmetricOperator build_full_hamiltonian(const ModelParams& params, int n_logical);

}  // namespace qac
