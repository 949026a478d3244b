#pragma once

#include <string_view>
#include <vector>

#include "qac/model.hpp"

namespace qac {

enum class Validity { nondegenerate, degenerate_m0, invalid_near_zero };

std::string_view to_string(Validity validity);

/// Single-copy eigen-scales E± = √((p m^{p−1} ± γ)² + Γ²).
struct EnergyPair {
  double E_plus;
  double E_minus;
};

struct PerturbationResult {
  double E_plus = 0.0;
  double E_minus = 0.0;
  double delta_E = 0.0;  ///< NaN when validity is invalid_near_zero
  Validity validity = Validity::nondegenerate;
  bool warning = false;  ///< degenerate case outside ε < 0.1 Γ
};

/// Requires m >= 0.
EnergyPair e_pm(const ModelParams& params, double m);

/// The nondegenerate formula is trusted only while E₊ − E₋ >= 10·ε·Γ.
inline constexpr double kNondegenerateGapFactor = 10.0;

/// ΔE = ε²Γ² / (C (E₊ − E₋)), with ε the effective penalty-field factor κε.
PerturbationResult delta_E(const ModelParams& params, double m);

/// ΔE = 2εΓ at m = 0.
PerturbationResult delta_E_m0(const ModelParams& params);

/// Zero-temperature free energy at ε = 0 plus the correction (ΔE_m0 at m = 0).
/// Throws NumericalError(spinodal) inside the invalid region near m = 0.
double perturbed_free_energy_zero_t(const ModelParams& params, double m);

/// Correction on a grid of m >= 0; m = 0 uses the degenerate result.
std::vector<PerturbationResult> correction_profile(const ModelParams& params, const std::vector<double>& m_grid);

}  // namespace qac
