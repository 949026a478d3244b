#include "qac/instanton.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qac/error.hpp"

namespace qac {

Eigenpair lambda_eigenpair(int p, double Gamma, double m) {
  if (p < 2) throw InvalidParameter("p must be >= 2");
  const double a = p * ipow(m, p - 1);
  if (Gamma == 0.0 && a == 0.0) throw InvalidParameter("eigenvector undefined for Gamma = 0 at m = 0");
  const double lambda = std::hypot(a, Gamma);
  // a + λ loses all digits when a < 0 and |a| ≫ Γ.
  const double shifted = a >= 0.0 ? a + lambda : Gamma * Gamma / (lambda - a);
  const double norm = std::hypot(shifted, Gamma);
  const double x = shifted / norm;
  const double y = Gamma / norm;
  return {lambda, {x, y}, {-y, x}};
}

double sharp_instanton_coefficient(int p, double Gamma, double m1, double m2) {
  const Eigenpair a = lambda_eigenpair(p, Gamma, m1);
  const Eigenpair b = lambda_eigenpair(p, Gamma, m2);
  const double overlap = std::abs(a.plus[0] * b.plus[0] + a.plus[1] * b.plus[1]);
  if (overlap == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log(std::min(overlap, 1.0)));
}

ModelParams instanton_model(int p, double beta) {
  ModelParams params;
  params.p = p;
  params.C = 1;
  params.gamma = 0.0;
  params.epsilon = 0.0;
  params.Gamma = 1.0;
  params.beta = beta;
  params.validate();
  return params;
}

double area_coefficient(int p, double beta, double Gamma_c, double m1, double m2) {
  if (m2 < m1) std::swap(m1, m2);
  const ModelParams params = instanton_model(p, beta).with_Gamma(Gamma_c);
  const double base = free_energy_closed(params, m1);
  double lowest = 0.0;
  const auto integrand = [&](double m) {
    const double d = free_energy_closed(params, m) - base;
    lowest = std::min(lowest, d);
    return d;
  };
  const double integral = m2 > m1 ? adaptive_simpson(integrand, m1, m2, kAreaRelTol) : 0.0;
  if (lowest < -1e-8) {
    throw NumericalError(NumericalFailure::missing_minimum,
                         "free energy drops below F(m1) inside the barrier interval");
  }
  return beta * integral;
}

double two_level_gap(double transition_amplitude) {
  if (!(transition_amplitude >= 0.0)) throw InvalidParameter("transition amplitude must be >= 0");
  return 2.0 * transition_amplitude;
}

InstantonReport instanton_report(int p, double beta, Bracket Gamma_window, double Gamma_step) {
  const ModelParams params = instanton_model(p, beta);
  const auto n = static_cast<std::size_t>(std::ceil((Gamma_window.hi - Gamma_window.lo) / Gamma_step)) + 1;
  const auto transitions = find_transitions(params, uniform_grid(Gamma_window.lo, Gamma_window.hi, n), Method::closed);
  const TransitionPoint* chosen = nullptr;
  for (const auto& tp : transitions) {
    if (tp.label_before == MinimumLabel::m0) {
      chosen = &tp;
      break;
    }
  }
  if (chosen == nullptr) {
    throw NumericalError(NumericalFailure::no_sign_change,
                         "no first-order transition out of m = 0 for p=" + std::to_string(p));
  }
  InstantonReport report{};
  report.p = p;
  report.beta = beta;
  report.Gamma_c = chosen->params.Gamma;
  report.m1 = chosen->m_before;
  report.m2 = chosen->m_after;
  report.overlap_coeff = sharp_instanton_coefficient(p, report.Gamma_c, report.m1, report.m2);
  report.area_coeff = area_coefficient(p, beta, report.Gamma_c, report.m1, report.m2);
  report.converged = chosen->converged;
  return report;
}

std::vector<InstantonReport> instanton_sweep(const std::vector<int>& p_values, double beta, std::size_t workers) {
  return parallel_map<InstantonReport>(
      p_values.size(), [&](std::size_t i) { return instanton_report(p_values[i], beta); }, workers);
}

}  // namespace qac
