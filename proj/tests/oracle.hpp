#pragma once
// Independent numerical oracles for the unit tests: plain central
// differences and a brute-force minimum scan. These deliberately share no
// code with the library so that agreement is evidence, not tautology.

#include <cmath>
#include <complex>

namespace oracle {

using Complex = std::complex<double>;

template <class F>
Complex fd1(F f, double t, double h = 1e-6) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

template <class F>
Complex fd2(F f, double t, double h = 1e-4) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

template <class F>
double fd1_real(F f, double t, double h = 1e-6) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Brute-force scan for the minimizer of g on [lo, hi], refined by ternary
// search down to width `width`.
template <class F>
double brute_min(F g, double lo, double hi, int n = 20000, double width = 1e-12) {
  double best_t = lo, best_v = g(lo);
  for (int i = 1; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    const double v = g(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  const double step = (hi - lo) / (n - 1);
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  while (b - a > width) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (g(m1) < g(m2))
      b = m2;
    else
      a = m1;
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
