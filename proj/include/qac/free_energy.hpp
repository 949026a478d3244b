#pragma once

#include <string_view>
#include <vector>

#include "qac/model.hpp"

namespace qac {

/// Evaluator used for F(m).
enum class Method { closed, trace, zero_t };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

/// β used in place of the zero-temperature sentinel when ε > 0.
inline constexpr double kZeroTemperatureProxyBeta = 200.0;

/// Longitudinal fields v_s = p m^{p−1} + s γ and their magnitudes Q_s = √(v_s² + Γ²).
struct BranchFields {
  double v_minus;
  double v_plus;
  double q_minus;
  double q_plus;
};

BranchFields branch_fields(const ModelParams& params, double m);

/// F/C = (p−1) m^p − (1/Cβ) ln Σ_s [2 cosh βQ_s]^C. Requires ε = 0 and finite β.
double free_energy_closed(const ModelParams& params, double m);

/// F/C = (p−1) m^p − (1/Cβ) ln Tr exp(−β H_eff). Requires finite β.
double free_energy_trace(const ModelParams& params, double m);

/// β → ∞ limit of the closed form: (p−1) m^p − √(max(v_+², v_−²) + Γ²). Requires ε = 0.
double free_energy_zero_t(const ModelParams& params, double m);

/// Leading terms of the zero-temperature free energy near m = 0:
/// F/C ≈ constant + coefficient·|m|^{p−1}.
struct SmallMExpansion {
  double constant;
  double coefficient;
};

SmallMExpansion small_m_expansion_zero_t(const ModelParams& params);

/// closed for ε = 0 at finite β, zero_t for ε = 0 at T = 0, trace otherwise.
Method default_method(const ModelParams& params);

/// Dispatches on `method`. The trace evaluator at the zero-temperature sentinel
/// runs at kZeroTemperatureProxyBeta.
double free_energy(const ModelParams& params, double m, Method method);

/// β used for β-weighted quantities (barrier area) under `method`.
double effective_beta(const ModelParams& params, Method method);

struct FreeEnergyCurve {
  ModelParams params;
  Method method;
  std::vector<double> grid;
  std::vector<double> values;
};

/// Default m-grid resolution for scans on [−1, 1].
inline constexpr std::size_t kDefaultGridPoints = 4001;

FreeEnergyCurve sample_free_energy(const ModelParams& params, Method method, std::vector<double> grid,
                                   std::size_t workers = 1);

}  // namespace qac
