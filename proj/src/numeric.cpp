#include "qac/numeric.hpp"

#include <limits>

#include "qac/error.hpp"

namespace qac {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                       double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  const double lo = a;
  const double hi = b;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 <= f2 ? x1 : x2;
  const double fx = std::min(f1, f2);
  const double edge = 2.0 * tol + 1e-14;
  return {x, fx, (x - lo) > edge && (hi - x) > edge};
}

RootResult bisect(const std::function<double(double)>& f, Bracket bracket, double xtol, double ftol,
                  int max_iterations) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, flo, true};
  if (fhi == 0.0) return {hi, fhi, true};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError(NumericalFailure::no_sign_change, "bisection bracket has no sign change");
  }
  double mid = 0.5 * (lo + hi);
  double fmid = f(mid);
  for (int it = 0; it < max_iterations; ++it) {
    if (std::abs(fmid) < ftol || std::abs(hi - lo) < xtol) return {mid, fmid, true};
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid) return {mid, fmid, true};
    mid = next;
    fmid = f(mid);
  }
  return {mid, fmid, std::abs(hi - lo) < xtol || std::abs(fmid) < ftol};
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  // A coarse 16-panel pass sets the absolute scale for the relative tolerance.
  constexpr int panels = 16;
  const double h = (b - a) / panels;
  std::vector<double> fx(2 * panels + 1);
  for (int i = 0; i <= 2 * panels; ++i) fx[i] = f(a + 0.5 * h * i);
  double coarse = 0.0;
  double magnitude = 0.0;
  for (int i = 0; i < panels; ++i) {
    coarse += h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    magnitude += h / 6.0 * (std::abs(fx[2 * i]) + 4.0 * std::abs(fx[2 * i + 1]) + std::abs(fx[2 * i + 2]));
  }
  const double tol = rel_tol * std::max(magnitude, 1e-300);
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + h * i;
    const double whole = h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    total += simpson_step(f, lo, lo + h, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], whole, tol / panels,
                          max_depth);
  }
  return total;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) return {lo};
  std::vector<double> grid(n);
  const double span = hi - lo;
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + span * static_cast<double>(i) / last;
  grid.back() = hi;
  return grid;
}

std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace qac
