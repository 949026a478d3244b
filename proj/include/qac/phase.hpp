#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qac/landscape.hpp"
#include "qac/numeric.hpp"

namespace qac {

enum class TransitionOrder { first, second };

enum class BranchLabel { m0_to_small, small_to_large, m0_to_large, second_order, other };

enum class SweepVariable { temperature, gamma, epsilon };

std::string_view to_string(TransitionOrder order);
std::string_view to_string(BranchLabel label);
std::string_view to_string(SweepVariable variable);
SweepVariable sweep_variable_from_string(std::string_view name);

/// Minimum jump in m that counts as a first-order transition.
inline constexpr double kJumpTol = 1e-3;

struct TransitionPoint {
  ModelParams params;  ///< Gamma holds the critical field
  TransitionOrder order = TransitionOrder::first;
  double m_before = 0.0;  ///< smaller-m coexisting minimum (0 for second order)
  double m_after = 0.0;   ///< larger-m coexisting minimum (0 for second order)
  MinimumLabel label_before = MinimumLabel::m0;
  MinimumLabel label_after = MinimumLabel::m0;
  std::optional<BarrierMetrics> barrier;
  bool converged = true;

  double critical_Gamma() const noexcept { return params.Gamma; }
  BranchLabel branch() const;
};

/// Right-hand side of the symmetric saddle-point equation m = RHS(m). Requires ε = 0, finite β.
double saddle_rhs(const ModelParams& params, double m);

/// d²(F/C)/dm² at m = 0 by central differences (step 1e-4) with one Richardson step.
/// Positive means m = 0 is locally stable.
double curvature_at_zero(const ModelParams& params, Method method);

/// Slope of the saddle right-hand side at m = 0 for p = 2, ε = 0.
/// Slope > 1 means the symmetry is broken.
double p2_slope_coefficient(const ModelParams& params);

enum class SecondOrderCriterion { automatic, slope, curvature };

/// Second-order critical field inside `Gamma_bracket` by bisection (|ΔΓ| < 1e-8).
/// Throws NumericalError(no_sign_change) when the bracket holds no transition.
TransitionPoint locate_second_order(const ModelParams& params, Bracket Gamma_bracket,
                                    SecondOrderCriterion criterion = SecondOrderCriterion::automatic);

struct TransitionOptions {
  ScanOptions scan{.grid_points = 1001, .refine_tol = 1e-10, .merge_tol = 1e-8, .m_lo = std::nullopt, .m_hi = 1.0};
  double f_tol = 1e-9;
  double Gamma_tol = 1e-12;
  double jump_tol = kJumpTol;
};

/// Scan options used inside transition searches: [0, 1] for even p.
ScanOptions transition_scan(const ModelParams& params, const TransitionOptions& options);

/// First-order critical field where the two labelled minima are degenerate.
/// Throws NumericalError with kind missing_minimum (label absent at a bracket
/// end), no_sign_change, or spinodal (a minimum vanished inside the bracket).
TransitionPoint locate_first_order(const ModelParams& params, Bracket Gamma_bracket, MinimumLabel left,
                                   MinimumLabel right, Method method, const TransitionOptions& options = {});

/// Γ sub-interval of `Gamma_grid` across which F(right) − F(left) changes sign
/// with both labels present at both ends, or nullopt.
std::optional<Bracket> find_pair_bracket(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                         MinimumLabel left, MinimumLabel right, Method method,
                                         const TransitionOptions& options = {});

/// Every switch of the global minimum along an ascending Γ grid, refined by
/// bisection on the identity of the global minimum. Switches with a jump below
/// jump_tol are dropped (continuous evolution of the minimum).
std::vector<TransitionPoint> find_transitions(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                              Method method, const TransitionOptions& options = {});

struct BranchPoint {
  double temperature;
  double Gamma;
  double m_small;
  double m_large;
};

/// Temperature and field where m0, m_small and m_large are simultaneously degenerate.
///
/// Bisection on T of whether the lowest-field first-order switch ends on a nonzero
/// m_small (below the branch point) or on m = 0 (above it).
BranchPoint locate_branch_point(const ModelParams& params, Bracket temperature_bracket, Bracket Gamma_bracket,
                                const TransitionOptions& options = {});

/// True when the lowest-field first-order switch inside `Gamma_bracket` is
/// m_large -> m_small rather than m_large -> m0 (the transition is split in two).
bool has_branch_structure(const ModelParams& params, Bracket Gamma_bracket, const TransitionOptions& options = {});

/// Smallest ε at which has_branch_structure turns false (bisection to 1e-4).
double branching_washout_epsilon(const ModelParams& params, Bracket epsilon_bracket, Bracket Gamma_bracket,
                                 const TransitionOptions& options = {});

/// Whether a first-order m_small → m_large switch exists along the Γ grid.
bool has_small_large_transition(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                const TransitionOptions& options = {});

/// Penalty strength above which the m_small ↔ m_large transition disappears (bisection to 1e-4).
double critical_penalty(const ModelParams& params, Bracket gamma_bracket, const std::vector<double>& Gamma_grid,
                        const TransitionOptions& options = {});

/// p = 2: whether slope − 1 (or −curvature) changes sign on Γ ∈ (0, Gamma_max].
bool has_second_order_transition(const ModelParams& params, double Gamma_max);

/// p = 2: smallest γ admitting a second-order transition (bisection to 1e-5).
double minimal_gamma_for_transition(const ModelParams& params, Bracket gamma_bracket, double Gamma_max);

/// p = 2: temperature at which Γ_c reaches 0 for the given (small) γ.
double zero_field_temperature(const ModelParams& params, Bracket temperature_bracket);

struct SweepSpec {
  SweepVariable variable = SweepVariable::gamma;
  std::vector<double> values;
  Bracket Gamma_window{1e-3, 5.0};
  double Gamma_step = 0.01;
  std::optional<Method> method;
  TransitionOptions options;
};

struct SweepFailure {
  double sweep_value;
  std::string message;
  bool no_transition = false;  ///< nothing to locate, as opposed to a numerical failure
};

struct PhaseLine {
  SweepVariable variable;
  BranchLabel branch;
  std::vector<double> sweep_values;
  std::vector<TransitionPoint> points;
};

struct PhaseDiagram {
  std::vector<PhaseLine> lines;
  std::vector<SweepFailure> failures;

  const PhaseLine* find(BranchLabel branch) const;
};

/// Applies one sweep value to the template (T sets β; T = 0 selects the zero-temperature branch).
ModelParams apply_sweep(const ModelParams& params, SweepVariable variable, double value);

/// Transition lines along a sweep. Each point's Γ window is seeded from the
/// previous point and inflated by 1.5 up to three times before falling back to
/// the full window.
PhaseDiagram trace_phase_line(const ModelParams& params, const SweepSpec& spec);

struct OptimalGammaRow {
  double gamma;
  double Gamma_c;
  double m_large;
  double delta_F;
  double delta_m;
  bool converged;
  std::string error;
};

/// Per γ, the m0 ↔ m_large transition with its barrier (p ≥ 3, ε > 0).
std::vector<OptimalGammaRow> optimal_gamma_scan(const ModelParams& params, const std::vector<double>& gamma_grid,
                                                Bracket Gamma_window = {0.05, 12.0}, double Gamma_step = 0.02,
                                                const TransitionOptions& options = {});

}  // namespace qac
