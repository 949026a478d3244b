#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace qac {

/// ln(2 cosh x) without overflow.
inline double log_2cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

/// ln Σ exp(x_i), shifted by the maximum.
double log_sum_exp(std::span<const double> values);

struct Bracket {
  double lo;
  double hi;
};

struct MinimizeResult {
  double x;
  double fx;
  bool interior;  ///< false when the minimum sits on a bracket end
};

/// Golden-section search for a minimum of f on [a, b] to interval width `tol`.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                       double tol);

struct RootResult {
  double x;
  double fx;
  bool converged;
};

/// Bisection on a bracket with f(lo), f(hi) of opposite sign. Stops when the
/// bracket is narrower than `xtol` or |f| < `ftol`.
RootResult bisect(const std::function<double(double)>& f, Bracket bracket, double xtol, double ftol = 0.0,
                  int max_iterations = 200);

/// Adaptive Simpson quadrature with a relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth = 48);

/// Uniform grid of n points on [lo, hi] with exact endpoints.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Worker count used when a caller passes 0.
std::size_t default_workers();

/// Evaluates fn(i) for i in [0, n) on `workers` threads; results keep input order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, std::size_t workers = 0) {
  std::vector<T> out(n);
  if (workers == 0) workers = default_workers();
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qac
