#include "qac/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qac/error.hpp"
#include "qac/numeric.hpp"

namespace qac {

std::string_view to_string(MinimumLabel label) {
  switch (label) {
    case MinimumLabel::m0: return "m0";
    case MinimumLabel::m_small: return "m_small";
    case MinimumLabel::m_large: return "m_large";
    case MinimumLabel::negative: return "negative";
  }
  return "unknown";
}

MinimumLabel label_from_string(std::string_view name) {
  if (name == "m0") return MinimumLabel::m0;
  if (name == "m_small") return MinimumLabel::m_small;
  if (name == "m_large") return MinimumLabel::m_large;
  if (name == "negative") return MinimumLabel::negative;
  throw InvalidParameter("unknown minimum label '" + std::string(name) + "'");
}

const Minimum* ExtremaSet::find(MinimumLabel label) const {
  // m_small prefers the lowest-F candidate when several sit below m_large.
  const Minimum* best = nullptr;
  for (const auto& minimum : minima) {
    if (minimum.label != label) continue;
    if (best == nullptr || minimum.F < best->F) best = &minimum;
  }
  return best;
}

bool degenerate(double f_a, double f_b) {
  return std::abs(f_a - f_b) < 1e-9 * std::max(1.0, std::max(std::abs(f_a), std::abs(f_b)));
}

namespace {

template <class Point>
void merge_close(std::vector<Point>& points, double tol) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.m < b.m; });
  std::vector<Point> merged;
  for (const auto& pt : points) {
    if (!merged.empty() && std::abs(pt.m - merged.back().m) < tol) continue;
    merged.push_back(pt);
  }
  points = std::move(merged);
}

/// Minima this close to 0 whose F cannot be told apart from F(0) are m = 0 itself.
constexpr double kFlatZeroWindow = 0.05;

/// m = 0 is always stationary, but F can be flat there to O(m^4) or beyond,
/// which leaves golden section well short of it. Prefer 0 when it is at least as good.
template <class Fn>
void snap_to_zero(MinimizeResult& r, const Fn& f, double sign) {
  const double at_zero = sign * f(0.0);
  if (at_zero <= r.fx + 1e-15 * std::max(1.0, std::abs(r.fx))) {
    r.x = 0.0;
    r.fx = at_zero;
  }
}

}  // namespace

ExtremaSet find_extrema(const ModelParams& params, Method method, const ScanOptions& options) {
  params.validate();
  if (options.grid_points < 3) throw InvalidParameter("scan needs at least 3 grid points");
  const auto f = [&](double m) { return free_energy(params, m, method); };
  const std::vector<double> grid = uniform_grid(options.lower_end(params), options.m_hi, options.grid_points);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

  ExtremaSet out{params, method, {}, {}, 0, true};
  std::vector<Maximum> raw_min;
  const std::size_t last = grid.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const bool below_left = i == 0 || values[i] <= values[i - 1];
    const bool below_right = i == last || values[i] < values[i + 1];
    const bool above_left = i > 0 && values[i] >= values[i - 1];
    const bool above_right = i < last && values[i] > values[i + 1];
    if (below_left && below_right) {
      if (i == 0 || i == last) {
        raw_min.push_back({grid[i], values[i]});
        continue;
      }
      auto r = golden_section_minimize(f, grid[i - 1], grid[i + 1], options.refine_tol);
      if ((grid[i - 1] <= 0.0 && grid[i + 1] >= 0.0) || std::abs(r.x) < kFlatZeroWindow) snap_to_zero(r, f, 1.0);
      raw_min.push_back({r.x, r.fx});
    } else if (above_left && above_right) {
      const auto neg = [&](double m) { return -f(m); };
      auto r = golden_section_minimize(neg, grid[i - 1], grid[i + 1], options.refine_tol);
      if (grid[i - 1] <= 0.0 && grid[i + 1] >= 0.0) snap_to_zero(r, f, -1.0);
      out.maxima.push_back({r.x, -r.fx});
    }
  }
  for (auto& pt : raw_min) {
    if (pt.m != 0.0 && std::abs(pt.m) < kFlatZeroWindow) {
      MinimizeResult r{pt.m, pt.F, true};
      snap_to_zero(r, f, 1.0);
      pt.m = r.x;
      pt.F = r.fx;
    }
    if (std::abs(pt.m) < kZeroMagnetizationTol) {
      pt.m = 0.0;
      pt.F = f(0.0);
    }
  }
  merge_close(raw_min, options.merge_tol);
  merge_close(out.maxima, options.merge_tol);
  if (raw_min.empty()) {
    throw NumericalError(NumericalFailure::not_converged, "no minimum found on the scan interval");
  }

  double largest = -2.0;
  for (const auto& pt : raw_min)
    if (pt.m >= kZeroMagnetizationTol) largest = std::max(largest, pt.m);
  for (const auto& pt : raw_min) {
    MinimumLabel label = MinimumLabel::negative;
    if (std::abs(pt.m) < kZeroMagnetizationTol) {
      label = MinimumLabel::m0;
    } else if (pt.m > 0.0) {
      label = pt.m == largest ? MinimumLabel::m_large : MinimumLabel::m_small;
    }
    out.minima.push_back({pt.m, pt.F, label});
  }
  for (std::size_t i = 1; i < out.minima.size(); ++i) {
    if (out.minima[i].F < out.minima[out.global_min_index].F) out.global_min_index = i;
  }
  return out;
}

BarrierMetrics barrier_between(const ModelParams& params, Method method, double m_left, double m_right) {
  if (!(m_left <= m_right)) {
    throw InvalidParameter("barrier requires m_left <= m_right (mislabelled minima?)");
  }
  if (m_left == m_right) return {m_left, m_right, 0.0, 0.0, 0.0};
  const auto f = [&](double m) { return free_energy(params, m, method); };
  const double f_left = f(m_left);

  // Scan for the highest point, then refine it.
  constexpr std::size_t samples = 401;
  const auto grid = uniform_grid(m_left, m_right, samples);
  std::size_t peak = 0;
  double peak_value = f_left;
  for (std::size_t i = 1; i < samples; ++i) {
    const double v = f(grid[i]);
    if (v > peak_value) {
      peak_value = v;
      peak = i;
    }
  }
  if (peak > 0 && peak + 1 < samples) {
    const auto r = golden_section_minimize([&](double m) { return -f(m); }, grid[peak - 1], grid[peak + 1], 1e-10);
    peak_value = std::max(peak_value, -r.fx);
  }
  const double delta_F = std::max(0.0, peak_value - f_left);
  double area = 0.0;
  if (delta_F > 0.0) {
    const double integral = adaptive_simpson(
        [&](double m) { return std::max(f(m) - f_left, 0.0); }, m_left, m_right, kAreaRelTol);
    area = effective_beta(params, method) * integral;
  }
  return {m_left, m_right, delta_F, m_right - m_left, area};
}

BarrierMetrics barrier_metrics(const ExtremaSet& extrema, MinimumLabel left, MinimumLabel right) {
  const Minimum* a = extrema.find(left);
  const Minimum* b = extrema.find(right);
  if (a == nullptr || b == nullptr) {
    throw NumericalError(NumericalFailure::missing_minimum,
                         std::string("barrier needs minima '") + std::string(to_string(left)) + "' and '" +
                             std::string(to_string(right)) + "'");
  }
  return barrier_between(extrema.params, extrema.method, a->m, b->m);
}

double gap_bound(const BarrierMetrics& metrics, int n_logical) {
  return std::exp(-metrics.delta_m * metrics.delta_F * static_cast<double>(n_logical));
}

}  // namespace qac
