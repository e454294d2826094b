#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace transpec::roots {

inline std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

inline std::vector<double> lin_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

// Bisection to full double precision on a bracket with fa*fb <= 0.
template <class F>
double bisect(F&& f, double a, double b, double fa) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= std::min(a, b) || mid >= std::max(a, b)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct Run {
  double lo;
  double hi;
  bool lo_at_boundary;
  bool hi_at_boundary;
};

// Maximal runs of the grid where f > 0, with interior endpoints refined by
// bisection.
template <class F>
std::vector<Run> positive_runs(F&& f, const std::vector<double>& grid) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!(vals[i] > 0.0)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && vals[j + 1] > 0.0) ++j;
    Run r{};
    r.lo_at_boundary = (i == 0);
    r.hi_at_boundary = (j + 1 == grid.size());
    r.lo = r.lo_at_boundary ? grid[i] : bisect(f, grid[i - 1], grid[i], vals[i - 1]);
    r.hi = r.hi_at_boundary ? grid[j] : bisect(f, grid[j], grid[j + 1], vals[j]);
    runs.push_back(r);
    i = j + 1;
  }
  return runs;
}

// Sign changes of f on the grid, each refined by bisection.
template <class F>
std::vector<double> sign_changes(F&& f, const std::vector<double>& grid) {
  std::vector<double> roots;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if (prev == 0.0) {
      roots.push_back(grid[i - 1]);
    } else if ((prev > 0.0) != (cur > 0.0) && cur != 0.0) {
      roots.push_back(bisect(f, grid[i - 1], grid[i], prev));
    }
    prev = cur;
  }
  return roots;
}

// Golden-section maximization on [a, b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace transpec::roots
