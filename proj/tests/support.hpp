#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace steady::test {

// Least-squares slope of log(err) against log(h), computed independently of the library.
inline double slope(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// Composite Simpson rule with n (even) panels.
template <class F>
long double simpson(F f, long double a, long double b, long n) {
  const long double h = (b - a) / n;
  long double s = f(a) + f(b);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return s * h / 3.0L;
}

}  // namespace steady::test
