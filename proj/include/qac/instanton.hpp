#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qac/phase.hpp"

namespace qac {

/// Upper eigenpair of the single-spin operator p m^{p−1} σz + Γ σx.
struct Eigenpair {
  double lambda;
  std::array<double, 2> plus;   ///< eigenvalue +λ, first component ≥ 0
  std::array<double, 2> minus;  ///< eigenvalue −λ
};

/// Throws InvalidParameter when Γ = 0 and m = 0 together.
Eigenpair lambda_eigenpair(int p, double Gamma, double m);

/// −ln|⟨λ₊(m1)|λ₊(m2)⟩|; +∞ for orthogonal states.
double sharp_instanton_coefficient(int p, double Gamma, double m1, double m2);

/// β ∫_{m1}^{m2} [F(m) − F(m1)] dm for the γ = 0 single-copy model.
/// Throws NumericalError(missing_minimum) if the integrand dips below −1e-8
/// (the two points do not bound a barrier).
double area_coefficient(int p, double beta, double Gamma_c, double m1, double m2);

/// Δ = 2 ε_trans for the effective two-level system.
double two_level_gap(double transition_amplitude);

struct InstantonReport {
  int p;
  double beta;
  double Gamma_c;
  double m1;
  double m2;
  double overlap_coeff;
  double area_coeff;
  bool converged;

  bool area_bounds_overlap() const noexcept { return area_coeff > overlap_coeff; }
};

/// γ = 0, C = 1, ε = 0 model at inverse temperature β.
ModelParams instanton_model(int p, double beta);

/// Locates the m0 ↔ m_large transition of the γ = 0 model and evaluates both coefficients.
InstantonReport instanton_report(int p, double beta, Bracket Gamma_window = {0.2, 3.0}, double Gamma_step = 0.01);

/// Reports for every p, in input order.
std::vector<InstantonReport> instanton_sweep(const std::vector<int>& p_values, double beta,
                                             std::size_t workers = 0);

}  // namespace qac
