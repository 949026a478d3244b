#include "qac/perturbation.hpp"

#include <cmath>
#include <limits>

#include "qac/error.hpp"
#include "qac/free_energy.hpp"

namespace qac {

std::string_view to_string(Validity validity) {
  switch (validity) {
    case Validity::nondegenerate: return "nondegenerate";
    case Validity::degenerate_m0: return "degenerate_m0";
    case Validity::invalid_near_zero: return "invalid_near_zero";
  }
  return "unknown";
}

namespace {

double effective_epsilon(const ModelParams& params) { return params.penalty_field_scale() * params.epsilon; }

}  // namespace

EnergyPair e_pm(const ModelParams& params, double m) {
  params.validate();
  check_order_parameter(m);
  if (m < 0.0) throw InvalidParameter("e_pm requires m >= 0");
  const double a = params.p * ipow(m, params.p - 1);
  return {std::hypot(a + params.gamma, params.Gamma), std::hypot(a - params.gamma, params.Gamma)};
}

PerturbationResult delta_E(const ModelParams& params, double m) {
  const EnergyPair e = e_pm(params, m);
  PerturbationResult r;
  r.E_plus = e.E_plus;
  r.E_minus = e.E_minus;
  const double eps = effective_epsilon(params);
  if (eps == 0.0) return r;
  const double split = e.E_plus - e.E_minus;
  if (split < kNondegenerateGapFactor * eps * params.Gamma) {
    r.validity = Validity::invalid_near_zero;
    r.delta_E = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.delta_E = eps * eps * params.Gamma * params.Gamma / (params.C * split);
  return r;
}

PerturbationResult delta_E_m0(const ModelParams& params) {
  const EnergyPair e = e_pm(params, 0.0);
  const double eps = effective_epsilon(params);
  PerturbationResult r;
  r.E_plus = e.E_plus;
  r.E_minus = e.E_minus;
  r.validity = Validity::degenerate_m0;
  r.delta_E = 2.0 * eps * params.Gamma;
  r.warning = eps >= 0.1 * params.Gamma;
  return r;
}

double perturbed_free_energy_zero_t(const ModelParams& params, double m) {
  const double base = free_energy_zero_t(params.with_epsilon(0.0), m);
  if (params.epsilon == 0.0) return base;
  const PerturbationResult r = m == 0.0 ? delta_E_m0(params) : delta_E(params, std::abs(m));
  if (r.validity == Validity::invalid_near_zero) {
    throw NumericalError(NumericalFailure::spinodal, "perturbative correction invalid this close to m = 0");
  }
  return base + r.delta_E;
}

std::vector<PerturbationResult> correction_profile(const ModelParams& params, const std::vector<double>& m_grid) {
  std::vector<PerturbationResult> out;
  out.reserve(m_grid.size());
  for (double m : m_grid) out.push_back(m == 0.0 ? delta_E_m0(params) : delta_E(params, m));
  return out;
}

}  // namespace qac
