#include "qac/free_energy.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qac/error.hpp"
#include "qac/numeric.hpp"

namespace qac {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::closed: return "closed";
    case Method::trace: return "trace";
    case Method::zero_t: return "zeroT";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "closed") return Method::closed;
  if (name == "trace") return Method::trace;
  if (name == "zeroT" || name == "zero_t") return Method::zero_t;
  throw InvalidParameter("unknown free-energy method '" + std::string(name) + "'");
}

BranchFields branch_fields(const ModelParams& params, double m) {
  params.validate();
  check_order_parameter(m);
  const double longitudinal = params.p * ipow(m, params.p - 1);
  const double v_minus = longitudinal - params.gamma;
  const double v_plus = longitudinal + params.gamma;
  return {v_minus, v_plus, std::hypot(v_minus, params.Gamma), std::hypot(v_plus, params.Gamma)};
}

double free_energy_closed(const ModelParams& params, double m) {
  if (params.epsilon != 0.0) throw InvalidParameter("closed-form free energy requires epsilon = 0");
  if (params.zero_temperature()) throw InvalidParameter("closed-form free energy requires finite beta");
  const BranchFields b = branch_fields(params, m);
  const double C = params.C;
  const std::array<double, 2> terms{C * log_2cosh(params.beta * b.q_minus), C * log_2cosh(params.beta * b.q_plus)};
  return (params.p - 1) * ipow(m, params.p) - log_sum_exp(terms) / (C * params.beta);
}

double free_energy_trace(const ModelParams& params, double m) {
  if (params.zero_temperature()) throw InvalidParameter("trace free energy requires finite beta");
  const Eigen::VectorXd energies = build_effective_hamiltonian(params, m).eigenvalues();
  std::vector<double> exponents(static_cast<std::size_t>(energies.size()));
  for (Eigen::Index i = 0; i < energies.size(); ++i) exponents[static_cast<std::size_t>(i)] = -params.beta * energies(i);
  return (params.p - 1) * ipow(m, params.p) - log_sum_exp(exponents) / (params.C * params.beta);
}

double free_energy_zero_t(const ModelParams& params, double m) {
  if (params.epsilon != 0.0) throw InvalidParameter("zero-temperature closed form requires epsilon = 0");
  const BranchFields b = branch_fields(params, m);
  return (params.p - 1) * ipow(m, params.p) - std::max(b.q_minus, b.q_plus);
}

SmallMExpansion small_m_expansion_zero_t(const ModelParams& params) {
  params.validate();
  if (params.epsilon != 0.0) throw InvalidParameter("small-m expansion requires epsilon = 0");
  const double scale = std::hypot(params.gamma, params.Gamma);
  if (scale == 0.0) throw InvalidParameter("small-m expansion is singular at gamma = Gamma = 0");
  return {-scale, -params.p * params.gamma / scale};
}

Method default_method(const ModelParams& params) {
  if (params.epsilon != 0.0) return Method::trace;
  return params.zero_temperature() ? Method::zero_t : Method::closed;
}

double free_energy(const ModelParams& params, double m, Method method) {
  switch (method) {
    case Method::closed: return free_energy_closed(params, m);
    case Method::zero_t: return free_energy_zero_t(params, m);
    case Method::trace:
      if (params.zero_temperature()) return free_energy_trace(params.with_beta(kZeroTemperatureProxyBeta), m);
      return free_energy_trace(params, m);
  }
  throw InvalidParameter("unknown method");
}

double effective_beta(const ModelParams& params, Method method) {
  (void)method;
  return params.zero_temperature() ? kZeroTemperatureProxyBeta : params.beta;
}

FreeEnergyCurve sample_free_energy(const ModelParams& params, Method method, std::vector<double> grid,
                                   std::size_t workers) {
  params.validate();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_order_parameter(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidParameter("m-grid must be strictly increasing");
  }
  auto values = parallel_map<double>(
      grid.size(), [&](std::size_t i) { return free_energy(params, grid[i], method); }, workers);
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericalError(NumericalFailure::not_converged, "non-finite free energy");
  }
  return {params, method, std::move(grid), std::move(values)};
}

}  // namespace qac
