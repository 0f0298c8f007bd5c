#pragma once

#include <array>
#include <cmath>

namespace steady {

// Value and first four derivatives of a scalar function at a point.
// d[k] holds the k-th derivative (not the Taylor coefficient).
struct Jet {
  static constexpr int kOrder = 4;
  std::array<double, kOrder + 1> d{};

  static Jet constant(double v) {
    Jet j;
    j.d[0] = v;
    return j;
  }
  static Jet variable(double v) {
    Jet j;
    j.d[0] = v;
    j.d[1] = 1.0;
    return j;
  }

  double operator[](int k) const { return d[k]; }
  double& operator[](int k) { return d[k]; }
};

namespace jet_detail {
inline constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}
inline Jet operator*(double s, const Jet& a) {
  Jet r;
  for (int k = 0; k <= Jet::kOrder; ++k) r.d[k] = s * a.d[k];
  return r;
}
inline Jet operator+(double s, const Jet& a) {
  Jet r = a;
  r.d[0] += s;
  return r;
}

// Leibniz rule.
inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int n = 0; n <= Jet::kOrder; ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += jet_detail::kBinom[n][k] * a.d[k] * b.d[n - k];
    r.d[n] = acc;
  }
  return r;
}

// q = a / b from q*b = a, solved order by order.
inline Jet operator/(const Jet& a, const Jet& b) {
  Jet q;
  for (int n = 0; n <= Jet::kOrder; ++n) {
    double acc = a.d[n];
    for (int k = 0; k < n; ++k) acc -= jet_detail::kBinom[n][k] * q.d[k] * b.d[n - k];
    q.d[n] = acc / b.d[0];
  }
  return q;
}

// Faa di Bruno: outer[k] is the k-th derivative of the outer function at inner.d[0].
inline Jet compose(const std::array<double, Jet::kOrder + 1>& outer, const Jet& inner) {
  const double g1 = inner.d[1], g2 = inner.d[2], g3 = inner.d[3], g4 = inner.d[4];
  Jet r;
  r.d[0] = outer[0];
  r.d[1] = outer[1] * g1;
  r.d[2] = outer[2] * g1 * g1 + outer[1] * g2;
  r.d[3] = outer[3] * g1 * g1 * g1 + 3.0 * outer[2] * g1 * g2 + outer[1] * g3;
  r.d[4] = outer[4] * g1 * g1 * g1 * g1 + 6.0 * outer[3] * g1 * g1 * g2 +
           outer[2] * (3.0 * g2 * g2 + 4.0 * g1 * g3) + outer[1] * g4;
  return r;
}

inline Jet exp(const Jet& g) {
  const double e = std::exp(g.d[0]);
  return compose({e, e, e, e, e}, g);
}

inline Jet log(const Jet& g) {
  const double x = g.d[0];
  return compose({std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x)}, g);
}

inline Jet sqrt(const Jet& g) {
  const double s = std::sqrt(g.d[0]);
  const double x = g.d[0];
  return compose({s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x), -0.9375 / (s * x * x * x)}, g);
}

inline Jet pow(const Jet& g, double p) {
  const double x = g.d[0];
  std::array<double, Jet::kOrder + 1> outer{};
  double coeff = 1.0;
  for (int k = 0; k <= Jet::kOrder; ++k) {
    outer[k] = coeff * std::pow(x, p - k);
    coeff *= (p - k);
  }
  return compose(outer, g);
}

}  // namespace steady
