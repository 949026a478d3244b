#include "qac/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "qac/error.hpp"

namespace qac {

std::string_view to_string(TransitionOrder order) {
  return order == TransitionOrder::first ? "first" : "second";
}

std::string_view to_string(BranchLabel label) {
  switch (label) {
    case BranchLabel::m0_to_small: return "m0_to_small";
    case BranchLabel::small_to_large: return "small_to_large";
    case BranchLabel::m0_to_large: return "m0_to_large";
    case BranchLabel::second_order: return "second_order";
    case BranchLabel::other: return "other";
  }
  return "unknown";
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::temperature: return "T";
    case SweepVariable::gamma: return "gamma";
    case SweepVariable::epsilon: return "epsilon";
  }
  return "unknown";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
  if (name == "T" || name == "temperature") return SweepVariable::temperature;
  if (name == "gamma") return SweepVariable::gamma;
  if (name == "epsilon") return SweepVariable::epsilon;
  throw InvalidParameter("unknown sweep variable '" + std::string(name) + "'");
}

BranchLabel TransitionPoint::branch() const {
  if (order == TransitionOrder::second) return BranchLabel::second_order;
  if (label_before == MinimumLabel::m0 && label_after == MinimumLabel::m_small) return BranchLabel::m0_to_small;
  if (label_before == MinimumLabel::m_small && label_after == MinimumLabel::m_large) return BranchLabel::small_to_large;
  if (label_before == MinimumLabel::m0 && label_after == MinimumLabel::m_large) return BranchLabel::m0_to_large;
  return BranchLabel::other;
}

const PhaseLine* PhaseDiagram::find(BranchLabel branch) const {
  for (const auto& line : lines)
    if (line.branch == branch) return &line;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Local stability of m = 0

double saddle_rhs(const ModelParams& params, double m) {
  if (params.epsilon != 0.0) throw InvalidParameter("saddle equation requires epsilon = 0");
  if (params.zero_temperature()) throw InvalidParameter("saddle equation requires finite beta");
  const BranchFields b = branch_fields(params, m);
  const std::array<double, 2> v{b.v_minus, b.v_plus};
  const std::array<double, 2> q{b.q_minus, b.q_plus};
  std::array<double, 2> weight{};
  for (std::size_t s = 0; s < 2; ++s) weight[s] = params.C * log_2cosh(params.beta * q[s]);
  const double norm = log_sum_exp(weight);
  double rhs = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    if (q[s] == 0.0) continue;
    rhs += std::exp(weight[s] - norm) * std::tanh(params.beta * q[s]) * v[s] / q[s];
  }
  return rhs;
}

namespace {

constexpr double kDifferenceStep = 1e-4;

template <class Fn>
double richardson(Fn&& estimate) {
  const double coarse = estimate(kDifferenceStep);
  const double fine = estimate(0.5 * kDifferenceStep);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double curvature_at_zero(const ModelParams& params, Method method) {
  const double center = free_energy(params, 0.0, method);
  return richardson([&](double h) {
    return (free_energy(params, h, method) - 2.0 * center + free_energy(params, -h, method)) / (h * h);
  });
}

double p2_slope_coefficient(const ModelParams& params) {
  if (params.p != 2) throw InvalidParameter("slope criterion applies to p = 2");
  return richardson([&](double h) { return (saddle_rhs(params, h) - saddle_rhs(params, -h)) / (2.0 * h); });
}

namespace {

SecondOrderCriterion resolve(const ModelParams& params, SecondOrderCriterion criterion) {
  if (criterion != SecondOrderCriterion::automatic) return criterion;
  return params.epsilon == 0.0 && !params.zero_temperature() ? SecondOrderCriterion::slope
                                                              : SecondOrderCriterion::curvature;
}

/// Positive in the symmetry-broken phase.
double broken_indicator(const ModelParams& params, SecondOrderCriterion criterion) {
  if (criterion == SecondOrderCriterion::slope) return p2_slope_coefficient(params) - 1.0;
  return -curvature_at_zero(params, default_method(params));
}

}  // namespace

TransitionPoint locate_second_order(const ModelParams& params, Bracket Gamma_bracket, SecondOrderCriterion criterion) {
  params.validate();
  if (params.p != 2) throw InvalidParameter("second-order transitions are located for p = 2");
  const SecondOrderCriterion used = resolve(params, criterion);
  const auto g = [&](double Gamma) { return broken_indicator(params.with_Gamma(Gamma), used); };
  const RootResult root = bisect(g, Gamma_bracket, 1e-8);
  TransitionPoint out;
  out.params = params.with_Gamma(root.x);
  out.order = TransitionOrder::second;
  out.converged = root.converged;
  return out;
}

// ---------------------------------------------------------------------------
// First-order transitions

ScanOptions transition_scan(const ModelParams& params, const TransitionOptions& options) {
  ScanOptions scan = options.scan;
  if (!scan.m_lo && params.p % 2 == 0) scan.m_lo = 0.0;
  return scan;
}

namespace {

std::string label_pair(MinimumLabel left, MinimumLabel right) {
  return std::string(to_string(left)) + "/" + std::string(to_string(right));
}

std::vector<double> grid_with_step(Bracket window, double step) {
  const auto n = static_cast<std::size_t>(std::ceil((window.hi - window.lo) / step - 1e-9)) + 1;
  return uniform_grid(window.lo, window.hi, std::max<std::size_t>(n, 2));
}

}  // namespace

TransitionPoint locate_first_order(const ModelParams& params, Bracket Gamma_bracket, MinimumLabel left,
                                   MinimumLabel right, Method method, const TransitionOptions& options) {
  params.validate();
  const ScanOptions scan = transition_scan(params, options);
  const auto difference = [&](double Gamma, NumericalFailure missing) {
    const ExtremaSet ex = find_extrema(params.with_Gamma(Gamma), method, scan);
    const Minimum* a = ex.find(left);
    const Minimum* b = ex.find(right);
    if (a == nullptr || b == nullptr) {
      throw NumericalError(missing, "minima " + label_pair(left, right) + " not both present at Gamma=" +
                                        std::to_string(Gamma));
    }
    return b->F - a->F;
  };
  const double d_lo = difference(Gamma_bracket.lo, NumericalFailure::missing_minimum);
  const double d_hi = difference(Gamma_bracket.hi, NumericalFailure::missing_minimum);
  if ((d_lo > 0.0) == (d_hi > 0.0) && d_lo != 0.0 && d_hi != 0.0) {
    throw NumericalError(NumericalFailure::no_sign_change,
                         "F(" + label_pair(left, right) + ") difference keeps its sign on the bracket");
  }
  const RootResult root = bisect([&](double G) { return difference(G, NumericalFailure::spinodal); },
                                 Gamma_bracket, options.Gamma_tol, 0.1 * options.f_tol);

  const ModelParams at = params.with_Gamma(root.x);
  const ExtremaSet ex = find_extrema(at, method, scan);
  const Minimum* a = ex.find(left);
  const Minimum* b = ex.find(right);
  if (a == nullptr || b == nullptr) {
    throw NumericalError(NumericalFailure::spinodal, "minima vanished at the located field");
  }
  TransitionPoint out;
  out.params = at;
  out.order = TransitionOrder::first;
  out.m_before = a->m;
  out.m_after = b->m;
  out.label_before = left;
  out.label_after = right;
  out.barrier = barrier_between(at, method, a->m, b->m);
  out.converged = std::abs(b->F - a->F) < options.f_tol && (b->m - a->m) > options.jump_tol;
  return out;
}

std::optional<Bracket> find_pair_bracket(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                         MinimumLabel left, MinimumLabel right, Method method,
                                         const TransitionOptions& options) {
  const ScanOptions scan = transition_scan(params, options);
  std::optional<std::pair<double, double>> previous;
  for (double Gamma : Gamma_grid) {
    const ExtremaSet ex = find_extrema(params.with_Gamma(Gamma), method, scan);
    const Minimum* a = ex.find(left);
    const Minimum* b = ex.find(right);
    if (a == nullptr || b == nullptr) {
      previous.reset();
      continue;
    }
    const double d = b->F - a->F;
    if (previous && (previous->second > 0.0) != (d > 0.0)) return Bracket{previous->first, Gamma};
    previous = std::make_pair(Gamma, d);
  }
  return std::nullopt;
}

namespace {

/// Largest per-step drift of the global minimum still treated as continuous motion.
constexpr double kContinuationReach = 0.1;

}  // namespace

std::vector<TransitionPoint> find_transitions(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                              Method method, const TransitionOptions& options) {
  params.validate();
  const ScanOptions scan = transition_scan(params, options);
  const auto global_m = [&](double Gamma) {
    return find_extrema(params.with_Gamma(Gamma), method, scan).global_minimum().m;
  };
  std::vector<double> m_global(Gamma_grid.size());
  std::vector<std::vector<double>> minima(Gamma_grid.size());
  for (std::size_t i = 0; i < Gamma_grid.size(); ++i) {
    const ExtremaSet ex = find_extrema(params.with_Gamma(Gamma_grid[i]), method, scan);
    m_global[i] = ex.global_minimum().m;
    for (const auto& mn : ex.minima) minima[i].push_back(mn.m);
  }
  // A grid step is a candidate switch unless the new global minimum is the
  // nearest continuation of the old one.
  const auto switched = [&](std::size_t i) {
    const double step = std::abs(m_global[i + 1] - m_global[i]);
    if (step <= options.jump_tol) return false;
    if (step > kContinuationReach) return true;
    for (double m : minima[i + 1])
      if (std::abs(m - m_global[i]) < step) return true;
    return false;
  };

  std::vector<TransitionPoint> out;
  for (std::size_t i = 0; i + 1 < Gamma_grid.size(); ++i) {
    if (!switched(i)) continue;
    const double m_lo_side = m_global[i];
    const double m_hi_side = m_global[i + 1];
    // Bisect on which of the two states is the global minimum.
    double lo = Gamma_grid[i];
    double hi = Gamma_grid[i + 1];
    double m_at_lo = m_lo_side;
    double m_at_hi = m_hi_side;
    for (int it = 0; it < 200 && (hi - lo) > options.Gamma_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double m = global_m(mid);
      if (std::abs(m - m_lo_side) < std::abs(m - m_hi_side)) {
        lo = mid;
        m_at_lo = m;
      } else {
        hi = mid;
        m_at_hi = m;
      }
    }
    if (std::abs(m_at_hi - m_at_lo) <= options.jump_tol) continue;

    const ModelParams at = params.with_Gamma(0.5 * (lo + hi));
    const ExtremaSet ex = find_extrema(at, method, scan);
    const auto nearest = [&](double m) {
      const Minimum* best = &ex.minima.front();
      for (const auto& mn : ex.minima)
        if (std::abs(mn.m - m) < std::abs(best->m - m)) best = &mn;
      return *best;
    };
    Minimum a = nearest(m_at_lo);
    Minimum b = nearest(m_at_hi);
    if (a.m > b.m) std::swap(a, b);
    TransitionPoint tp;
    tp.params = at;
    tp.order = TransitionOrder::first;
    tp.m_before = a.m;
    tp.m_after = b.m;
    tp.label_before = a.label;
    tp.label_after = b.label;
    tp.converged = (b.m - a.m) > options.jump_tol && std::abs(b.F - a.F) < options.f_tol;
    if (b.m - a.m > options.jump_tol) tp.barrier = barrier_between(at, method, a.m, b.m);
    out.push_back(tp);
  }
  // Positional labels call the outermost minimum m_large even after the true
  // m_large has vanished. Once a switch between two nonzero minima has been
  // seen, later switches out of m0 land on m_small.
  bool split = false;
  for (auto& tp : out) {
    if (tp.m_before > kZeroMagnetizationTol) {
      tp.label_before = MinimumLabel::m_small;
      tp.label_after = MinimumLabel::m_large;
      split = true;
    } else if (split && tp.label_before == MinimumLabel::m0) {
      tp.label_after = MinimumLabel::m_small;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Branch points and thresholds

namespace {

struct BranchProbe {
  bool split;
  double Gamma;
  double m_small;
  double m_large;
};

/// Below the branch point the lowest-field first-order switch goes from m_large to a
/// nonzero m_small; above it the switch lands on m = 0. Positional labels are not used
/// here because m_small takes the m_large label once the outer minimum disappears.
BranchProbe probe_branch(const ModelParams& params, Method method, Bracket Gamma_bracket,
                         const TransitionOptions& options) {
  const auto transitions = find_transitions(params, grid_with_step(Gamma_bracket, 0.01), method, options);
  if (transitions.empty()) {
    throw NumericalError(NumericalFailure::no_branch_point, "no first-order transition inside the field bracket");
  }
  const TransitionPoint& first = transitions.front();
  const bool split = first.m_before > kZeroMagnetizationTol;
  return {split, first.params.Gamma, split ? first.m_before : 0.0, first.m_after};
}

ModelParams finite_temperature(const ModelParams& params) {
  return params.zero_temperature() ? params.with_beta(kZeroTemperatureProxyBeta) : params;
}

}  // namespace

BranchPoint locate_branch_point(const ModelParams& params, Bracket temperature_bracket, Bracket Gamma_bracket,
                                const TransitionOptions& options) {
  params.validate();
  const auto probe = [&](double T) {
    const ModelParams at = params.with_beta(1.0 / T);
    return probe_branch(at, default_method(at), Gamma_bracket, options);
  };
  const auto safe_probe = [&](double T) -> std::optional<BranchProbe> {
    try {
      return probe(T);
    } catch (const NumericalError&) {
      return std::nullopt;
    }
  };
  auto low = safe_probe(temperature_bracket.lo);
  const auto high = safe_probe(temperature_bracket.hi);
  if (!low || !low->split || (high && high->split)) {
    throw NumericalError(NumericalFailure::no_branch_point,
                         "no triple degeneracy inside the temperature/field box");
  }
  double lo = temperature_bracket.lo;
  double hi = temperature_bracket.hi;
  BranchProbe last_split = *low;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    const auto pr = safe_probe(mid);
    if (pr && pr->split) {
      lo = mid;
      last_split = *pr;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), last_split.Gamma, last_split.m_small, last_split.m_large};
}

bool has_branch_structure(const ModelParams& params, Bracket Gamma_bracket, const TransitionOptions& options) {
  params.validate();
  const ModelParams at = finite_temperature(params);
  return probe_branch(at, default_method(at), Gamma_bracket, options).split;
}

double branching_washout_epsilon(const ModelParams& params, Bracket epsilon_bracket, Bracket Gamma_bracket,
                                 const TransitionOptions& options) {
  const auto split = [&](double eps) { return has_branch_structure(params.with_epsilon(eps), Gamma_bracket, options); };
  if (!split(epsilon_bracket.lo) || split(epsilon_bracket.hi)) {
    throw NumericalError(NumericalFailure::no_sign_change, "branch structure does not vanish inside the epsilon bracket");
  }
  double lo = epsilon_bracket.lo;
  double hi = epsilon_bracket.hi;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (split(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool has_small_large_transition(const ModelParams& params, const std::vector<double>& Gamma_grid,
                                const TransitionOptions& options) {
  const auto transitions = find_transitions(params, Gamma_grid, default_method(params), options);
  return std::any_of(transitions.begin(), transitions.end(), [](const TransitionPoint& tp) {
    return tp.label_before == MinimumLabel::m_small && tp.label_after == MinimumLabel::m_large;
  });
}

double critical_penalty(const ModelParams& params, Bracket gamma_bracket, const std::vector<double>& Gamma_grid,
                        const TransitionOptions& options) {
  const auto exists = [&](double g) { return has_small_large_transition(params.with_gamma(g), Gamma_grid, options); };
  if (!exists(gamma_bracket.lo) || exists(gamma_bracket.hi)) {
    throw NumericalError(NumericalFailure::no_sign_change, "m_small/m_large transition does not end inside the gamma bracket");
  }
  double lo = gamma_bracket.lo;
  double hi = gamma_bracket.hi;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (exists(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr double kFieldFloor = 1e-6;

}  // namespace

bool has_second_order_transition(const ModelParams& params, double Gamma_max) {
  const SecondOrderCriterion criterion = resolve(params, SecondOrderCriterion::automatic);
  if (broken_indicator(params.with_Gamma(Gamma_max), criterion) >= 0.0) return false;
  // Log-spaced probe towards Γ → 0, where the ordered phase is widest.
  constexpr int probes = 120;
  const double ratio = std::log(Gamma_max / kFieldFloor);
  for (int i = 0; i < probes; ++i) {
    const double Gamma = kFieldFloor * std::exp(ratio * i / probes);
    if (broken_indicator(params.with_Gamma(Gamma), criterion) > 0.0) return true;
  }
  return false;
}

double minimal_gamma_for_transition(const ModelParams& params, Bracket gamma_bracket, double Gamma_max) {
  const auto exists = [&](double g) { return has_second_order_transition(params.with_gamma(g), Gamma_max); };
  if (exists(gamma_bracket.lo) || !exists(gamma_bracket.hi)) {
    throw NumericalError(NumericalFailure::no_sign_change, "transition onset not inside the gamma bracket");
  }
  double lo = gamma_bracket.lo;
  double hi = gamma_bracket.hi;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (exists(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double zero_field_temperature(const ModelParams& params, Bracket temperature_bracket) {
  if (params.p != 2) throw InvalidParameter("zero-field temperature is defined for p = 2");
  const auto ordered_at_floor = [&](double T) {
    const ModelParams at = params.with_beta(1.0 / T).with_Gamma(kFieldFloor);
    return broken_indicator(at, resolve(at, SecondOrderCriterion::automatic)) > 0.0;
  };
  if (!ordered_at_floor(temperature_bracket.lo) || ordered_at_floor(temperature_bracket.hi)) {
    throw NumericalError(NumericalFailure::no_sign_change, "Gamma_c does not reach zero inside the temperature bracket");
  }
  double lo = temperature_bracket.lo;
  double hi = temperature_bracket.hi;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (ordered_at_floor(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Sweeps

ModelParams apply_sweep(const ModelParams& params, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::temperature: return params.with_beta(beta_from_temperature(value));
    case SweepVariable::gamma: return params.with_gamma(value);
    case SweepVariable::epsilon: return params.with_epsilon(value);
  }
  return params;
}

namespace {

constexpr double kWarmHalfWidth = 0.25;
constexpr double kInflation = 1.5;
constexpr int kMaxInflations = 3;

Bracket clip(Bracket window, Bracket limits) {
  return {std::max(window.lo, limits.lo), std::min(window.hi, limits.hi)};
}

}  // namespace

PhaseDiagram trace_phase_line(const ModelParams& params, const SweepSpec& spec) {
  PhaseDiagram diagram;
  std::map<BranchLabel, PhaseLine> lines;
  std::optional<Bracket> seed;

  for (double value : spec.values) {
    try {
      const ModelParams at = apply_sweep(params, spec.variable, value);
      at.validate();
      const Method method = spec.method.value_or(default_method(at));

      std::vector<Bracket> windows;
      if (seed) {
        double w = kWarmHalfWidth;
        for (int k = 0; k <= kMaxInflations; ++k, w *= kInflation)
          windows.push_back(clip({seed->lo - w, seed->hi + w}, spec.Gamma_window));
      }
      windows.push_back(spec.Gamma_window);

      std::vector<TransitionPoint> found;
      for (const Bracket& window : windows) {
        if (at.p == 2) {
          if (!has_second_order_transition(at, window.hi)) continue;
          // Bracket the sign change on a coarse grid before bisecting.
          const auto grid = grid_with_step(window, spec.Gamma_step);
          const SecondOrderCriterion criterion = resolve(at, SecondOrderCriterion::automatic);
          double prev_G = grid.front();
          double prev_g = broken_indicator(at.with_Gamma(prev_G), criterion);
          for (std::size_t i = 1; i < grid.size() && found.empty(); ++i) {
            const double g = broken_indicator(at.with_Gamma(grid[i]), criterion);
            if (prev_g > 0.0 && g <= 0.0) found.push_back(locate_second_order(at, {prev_G, grid[i]}, criterion));
            prev_G = grid[i];
            prev_g = g;
          }
          if (found.empty() && window.lo > kFieldFloor) {
            // Ordered at the window start: the transition may sit below it.
            continue;
          }
        } else {
          found = find_transitions(at, grid_with_step(window, spec.Gamma_step), method, spec.options);
        }
        if (!found.empty()) break;
      }
      if (found.empty()) {
        diagram.failures.push_back({value, "no transition inside the field window", true});
        continue;
      }
      double lo = found.front().params.Gamma;
      double hi = lo;
      for (const auto& tp : found) {
        const BranchLabel branch = tp.branch();
        auto [it, inserted] = lines.try_emplace(branch, PhaseLine{spec.variable, branch, {}, {}});
        it->second.sweep_values.push_back(value);
        it->second.points.push_back(tp);
        lo = std::min(lo, tp.params.Gamma);
        hi = std::max(hi, tp.params.Gamma);
        if (!tp.converged) diagram.failures.push_back({value, "transition flagged as not converged"});
      }
      seed = Bracket{lo, hi};
    } catch (const std::exception& e) {
      diagram.failures.push_back({value, e.what()});
    }
  }
  for (auto& [branch, line] : lines) diagram.lines.push_back(std::move(line));
  return diagram;
}

std::vector<OptimalGammaRow> optimal_gamma_scan(const ModelParams& params, const std::vector<double>& gamma_grid,
                                                Bracket Gamma_window, double Gamma_step,
                                                const TransitionOptions& options) {
  std::vector<OptimalGammaRow> rows;
  std::optional<double> previous;
  for (double g : gamma_grid) {
    OptimalGammaRow row{g, 0.0, 0.0, 0.0, 0.0, false, {}};
    try {
      const ModelParams at = params.with_gamma(g);
      at.validate();
      if (at.p < 3) throw InvalidParameter("optimal-gamma scan needs p >= 3");
      const Method method = default_method(at);
      std::vector<Bracket> windows;
      if (previous) {
        double w = kWarmHalfWidth;
        for (int k = 0; k <= kMaxInflations; ++k, w *= kInflation)
          windows.push_back(clip({*previous - w, *previous + 2.0 * w}, Gamma_window));
      }
      windows.push_back(Gamma_window);
      std::optional<TransitionPoint> chosen;
      for (const Bracket& window : windows) {
        const auto found = find_transitions(at, grid_with_step(window, Gamma_step), method, options);
        for (const auto& tp : found) {
          if (tp.label_before == MinimumLabel::m0 && tp.label_after == MinimumLabel::m_large) chosen = tp;
        }
        if (!chosen && found.size() == 1) chosen = found.front();
        if (chosen) break;
      }
      if (!chosen) throw NumericalError(NumericalFailure::no_sign_change, "no m0/m_large transition found");
      row.Gamma_c = chosen->params.Gamma;
      row.m_large = chosen->m_after;
      if (chosen->barrier) {
        row.delta_F = chosen->barrier->delta_F;
        row.delta_m = chosen->barrier->delta_m;
      }
      row.converged = chosen->converged;
      previous = row.Gamma_c;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qac
