#include "qac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qac/error.hpp"
#include "qac/numeric.hpp"

namespace qac {

std::string_view to_string(OracleRoute route) {
  switch (route) {
    case OracleRoute::automatic: return "automatic";
    case OracleRoute::full: return "full";
    case OracleRoute::sectors: return "sectors";
  }
  return "unknown";
}

namespace {

int spin(std::size_t state, int bit) { return (state >> bit) & 1U ? -1 : 1; }

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

OracleRoute resolve(const ModelParams& params, int n_logical, OracleRoute route) {
  if (route == OracleRoute::automatic) route = params.epsilon == 0.0 ? OracleRoute::sectors : OracleRoute::full;
  if (route == OracleRoute::sectors) {
    if (params.epsilon != 0.0) throw InvalidParameter("sector decomposition requires epsilon = 0");
    if (n_logical * params.C > kMaxSectorQubits) {
      throw NumericalError(NumericalFailure::dimension_guard,
                           "sector register limited to N*C <= " + std::to_string(kMaxSectorQubits));
    }
  } else if (n_logical * (params.C + 1) > kMaxFullQubits) {
    throw NumericalError(NumericalFailure::dimension_guard,
                         "full register limited to N*(C+1) <= " + std::to_string(kMaxFullQubits));
  }
  return route;
}

/// One diagonalized block with its degeneracy and the copy-1 magnetization of each basis state.
struct Block {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  ///< empty when eigenvectors were not requested
  double multiplicity;
  Eigen::VectorXd m1;       ///< (1/N) Σ_i σz_{i,1} per basis state
};

Eigen::VectorXd copy_one_magnetization(std::size_t dim, int n_logical, int stride) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    int total = 0;
    for (int i = 0; i < n_logical; ++i) total += spin(s, i * stride);
    out(static_cast<Eigen::Index>(s)) = static_cast<double>(total) / n_logical;
  }
  return out;
}

Block diagonalize(const DenseSymmetricOperator& h, double multiplicity, int n_logical, int stride, bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix(),
                                                        vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(NumericalFailure::not_converged, "dense eigensolver did not converge");
  }
  Block b{solver.eigenvalues(), {}, multiplicity, {}};
  if (vectors) {
    b.vectors = solver.eigenvectors();
    b.m1 = copy_one_magnetization(h.dim(), n_logical, stride);
  }
  return b;
}

std::vector<Block> blocks(const ModelParams& params, int n_logical, OracleRoute route, bool vectors) {
  std::vector<Block> out;
  if (route == OracleRoute::full) {
    out.push_back(diagonalize(build_full_hamiltonian(params, n_logical), 1.0, n_logical, params.C + 1, vectors));
    return out;
  }
  // Sectors depend only on how many penalty spins are flipped; with γ = 0 not even on that.
  if (params.gamma == 0.0) {
    out.push_back(diagonalize(build_sector_hamiltonian(params, n_logical, 0), std::ldexp(1.0, n_logical), n_logical,
                              params.C, vectors));
    return out;
  }
  for (int k = 0; k <= n_logical; ++k) {
    out.push_back(diagonalize(build_sector_hamiltonian(params, n_logical, k), binomial(n_logical, k), n_logical,
                              params.C, vectors));
  }
  return out;
}

std::vector<double> merged_spectrum(const std::vector<Block>& parts) {
  std::vector<double> out;
  for (const auto& b : parts) {
    const auto copies = static_cast<std::size_t>(b.multiplicity);
    for (Eigen::Index i = 0; i < b.energies.size(); ++i) out.insert(out.end(), copies, b.energies(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DenseSymmetricOperator build_sector_hamiltonian(const ModelParams& params, int n_logical, int flipped) {
  params.validate();
  if (params.epsilon != 0.0) throw InvalidParameter("penalty sectors exist only for epsilon = 0");
  if (n_logical < 1) throw InvalidParameter("n_logical must be >= 1");
  if (flipped < 0 || flipped > n_logical) throw InvalidParameter("flipped count outside [0, n_logical]");
  if (n_logical * params.C > kMaxSectorQubits) {
    throw NumericalError(NumericalFailure::dimension_guard, "sector register too large");
  }
  const int qubits = n_logical * params.C;
  const std::size_t dim = std::size_t{1} << qubits;
  const double n = n_logical;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    double diagonal = 0.0;
    for (int c = 0; c < params.C; ++c) {
      int magnetization = 0;
      for (int i = 0; i < n_logical; ++i) magnetization += spin(s, i * params.C + c);
      diagonal -= n * ipow(magnetization / n, params.p);
    }
    for (int i = 0; i < n_logical; ++i) {
      const int z0 = i < flipped ? -1 : 1;
      for (int c = 0; c < params.C; ++c) {
        const int bit = i * params.C + c;
        diagonal -= params.gamma * spin(s, bit) * z0;
        h(row, static_cast<Eigen::Index>(s ^ (std::size_t{1} << bit))) = -params.Gamma;
      }
    }
    h(row, row) = diagonal;
  }
  return DenseSymmetricOperator(std::move(h));
}

ExactSpectrumResult exact_free_energy(const ModelParams& params, int n_logical, OracleRoute route) {
  params.validate();
  if (n_logical < 1) throw InvalidParameter("n_logical must be >= 1");
  route = resolve(params, n_logical, route);
  const std::vector<Block> parts = blocks(params, n_logical, route, true);

  ExactSpectrumResult r;
  r.n_logical = n_logical;
  r.route = route;
  r.spectrum = merged_spectrum(parts);
  const double e0 = r.spectrum.front();
  const double sites = static_cast<double>(n_logical) * params.C;

  // Boltzmann weights relative to the ground state; at T = 0 the ground multiplet shares the weight.
  double z = 0.0;
  double m_sum = 0.0;
  double abs_sum = 0.0;
  for (const auto& b : parts) {
    for (Eigen::Index n = 0; n < b.energies.size(); ++n) {
      const double gap = b.energies(n) - e0;
      const double w = params.zero_temperature() ? (gap <= kDegeneracyTol ? 1.0 : 0.0)
                                                 : std::exp(-params.beta * gap);
      if (w == 0.0) continue;
      const Eigen::VectorXd prob = b.vectors.col(n).array().square();
      z += b.multiplicity * w;
      m_sum += b.multiplicity * w * prob.dot(b.m1);
      abs_sum += b.multiplicity * w * prob.dot(b.m1.cwiseAbs());
    }
  }
  r.magnetization = m_sum / z;
  r.abs_magnetization = abs_sum / z;
  if (params.zero_temperature()) {
    r.log_Z = std::numeric_limits<double>::quiet_NaN();
    r.F_per_site = e0 / sites;
  } else {
    r.log_Z = std::log(z) - params.beta * e0;
    r.F_per_site = -r.log_Z / (params.beta * sites);
  }
  return r;
}

std::vector<double> exact_spectrum(const ModelParams& params, int n_logical, OracleRoute route) {
  params.validate();
  if (n_logical < 1) throw InvalidParameter("n_logical must be >= 1");
  return merged_spectrum(blocks(params, n_logical, resolve(params, n_logical, route), false));
}

double spectral_gap(const std::vector<double>& spectrum) {
  if (spectrum.empty()) throw InvalidParameter("empty spectrum");
  const double e0 = spectrum.front();
  for (double e : spectrum)
    if (e - e0 > kDegeneracyTol) return e - e0;
  return 0.0;
}

MinGapResult exact_min_gap(const ModelParams& params, const std::vector<double>& Gamma_grid, int n_logical) {
  if (Gamma_grid.empty()) throw InvalidParameter("empty Gamma grid");
  const auto gap_at = [&](double Gamma) { return spectral_gap(exact_spectrum(params.with_Gamma(Gamma), n_logical)); };
  std::vector<double> gaps(Gamma_grid.size());
  for (std::size_t i = 0; i < Gamma_grid.size(); ++i) gaps[i] = gap_at(Gamma_grid[i]);
  const auto best = static_cast<std::size_t>(std::min_element(gaps.begin(), gaps.end()) - gaps.begin());
  MinGapResult out{Gamma_grid[best], gaps[best]};
  if (Gamma_grid.size() < 3) return out;
  const double lo = Gamma_grid[best == 0 ? 0 : best - 1];
  const double hi = Gamma_grid[std::min(best + 1, Gamma_grid.size() - 1)];
  const MinimizeResult refined = golden_section_minimize(gap_at, lo, hi, 1e-6 * std::max(1.0, hi - lo));
  if (refined.fx < out.min_gap) out = {refined.x, refined.fx};
  return out;
}

}  // namespace qac
