#pragma once

#include <string_view>
#include <vector>

#include "qac/model.hpp"

namespace qac {

enum class OracleRoute { automatic, full, sectors };

std::string_view to_string(OracleRoute route);

/// Largest sector register (N·C qubits) handled by the ε = 0 decomposition.
inline constexpr int kMaxSectorQubits = 14;

/// Degeneracy tolerance when measuring the gap above the ground multiplet.
inline constexpr double kDegeneracyTol = 1e-10;

struct ExactSpectrumResult {
  int n_logical = 0;
  OracleRoute route = OracleRoute::full;
  std::vector<double> spectrum;  ///< ascending, with multiplicity
  double log_Z = 0.0;            ///< ln Z (0 ground-state convention at T = 0 is not used)
  double F_per_site = 0.0;       ///< −ln Z / (β N C); E₀/(N C) at T = 0
  double magnetization = 0.0;    ///< thermal ⟨(1/N) Σ_i σz_{i,1}⟩
  double abs_magnetization = 0.0;  ///< thermal ⟨|(1/N) Σ_i σz_{i,1}|⟩

  double ground_energy() const { return spectrum.front(); }
};

/// Hamiltonian of the copy qubits with penalty spins frozen: the first k
/// logical qubits carry σz_0 = −1, the rest +1. Copy c of qubit i sits at bit iC + c − 1.
/// Requires ε = 0.
DenseSymmetricOperator build_sector_hamiltonian(const ModelParams& params, int n_logical, int flipped);

/// Dense diagonalization of the full encoded Hamiltonian of n_logical qubits.
/// `automatic` picks sectors when ε = 0 and the full register otherwise.
ExactSpectrumResult exact_free_energy(const ModelParams& params, int n_logical,
                                      OracleRoute route = OracleRoute::automatic);

/// Ascending spectrum only (no eigenvectors).
std::vector<double> exact_spectrum(const ModelParams& params, int n_logical,
                                   OracleRoute route = OracleRoute::automatic);

/// First level above the ground multiplet (levels within kDegeneracyTol of E₀).
double spectral_gap(const std::vector<double>& spectrum);

struct MinGapResult {
  double Gamma_at_min;
  double min_gap;
};

/// Minimal gap over the grid, refined by golden section between the neighbours of the best point.
MinGapResult exact_min_gap(const ModelParams& params, const std::vector<double>& Gamma_grid, int n_logical);

}  // namespace qac
