#pragma once

namespace steady {

// Polytropic gas: pi(rho, s) = rho^gamma * exp(a * s), gamma > 1, a > 0.
struct EosParams {
  double gamma = 1.4;
  double a = 1.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct PressurePartials {
  double dpi_drho;
  double dpi_ds;
};

double pressure(const EosParams& p, double rho, double s);
PressurePartials pressure_partials(const EosParams& p, double rho, double s);
double internal_energy(const EosParams& p, double rho, double s);

// Inverse of pressure() in s for rho > 0, pi > 0.
double entropy_from(const EosParams& p, double rho, double pi);

}  // namespace steady
