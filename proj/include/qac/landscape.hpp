#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qac/free_energy.hpp"

namespace qac {

/// Minima with |m| below this are the symmetric minimum m0.
inline constexpr double kZeroMagnetizationTol = 1e-6;

/// Role of a minimum in the landscape. `negative` marks minima at m < 0
/// (mirror images for even p, metastable states for odd p).
enum class MinimumLabel { m0, m_small, m_large, negative };

std::string_view to_string(MinimumLabel label);
MinimumLabel label_from_string(std::string_view name);

struct Minimum {
  double m;
  double F;
  MinimumLabel label;
};

struct Maximum {
  double m;
  double F;
};

struct ExtremaSet {
  ModelParams params;
  Method method;
  std::vector<Minimum> minima;  ///< ascending in m
  std::vector<Maximum> maxima;  ///< ascending in m
  std::size_t global_min_index = 0;
  bool converged = true;

  const Minimum* find(MinimumLabel label) const;
  const Minimum& global_minimum() const { return minima.at(global_min_index); }
};

struct ScanOptions {
  std::size_t grid_points = kDefaultGridPoints;
  double refine_tol = 1e-10;
  double merge_tol = 1e-8;
  /// Lower end of the scan. Unset means −1 for even p and 0 for odd p: for odd
  /// p the saddle-point function has no stationary points at m < 0 and falls
  /// monotonically towards m = −1.
  std::optional<double> m_lo;
  double m_hi = 1.0;

  double lower_end(const ModelParams& params) const {
    return m_lo.value_or(params.p % 2 == 0 ? -1.0 : 0.0);
  }
};

/// All local minima and maxima of F on the scan interval, each refined by
/// golden-section search and labelled by position.
ExtremaSet find_extrema(const ModelParams& params, Method method, const ScanOptions& options = {});

struct BarrierMetrics {
  double m_left;
  double m_right;
  double delta_F;  ///< max F on [m_left, m_right] minus F(m_left)
  double delta_m;  ///< m_right − m_left
  double area;     ///< β ∫ max(F − F(m_left), 0) dm over [m_left, m_right]
};

/// Relative tolerance of the barrier-area quadrature.
inline constexpr double kAreaRelTol = 1e-8;

/// Barrier between two labelled minima. Zero-temperature evaluations weight
/// the area with kZeroTemperatureProxyBeta.
BarrierMetrics barrier_metrics(const ExtremaSet& extrema, MinimumLabel left, MinimumLabel right);

/// Barrier between two explicit positions (m_left <= m_right; equal positions give a zero barrier).
BarrierMetrics barrier_between(const ModelParams& params, Method method, double m_left, double m_right);

/// Asymptotic gap estimate exp(−Δm·ΔF·N). Not a certified bound.
double gap_bound(const BarrierMetrics& metrics, int n_logical);

/// Two minima are degenerate when |ΔF| < 1e-9·max(1, |F|).
bool degenerate(double f_a, double f_b);

}  // namespace qac
