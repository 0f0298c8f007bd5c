#include "steady/eos.hpp"

#include <cmath>
#include <sstream>

#include "steady/error.hpp"

namespace steady {

void EosParams::validate() const {
  if (!(gamma > 1.0)) {
    std::ostringstream msg;
    msg << "eos.gamma must be > 1 (got " << gamma << ")";
    throw ConfigError(msg.str());
  }
  if (!(a > 0.0)) {
    std::ostringstream msg;
    msg << "eos.a must be > 0 (got " << a << ")";
    throw ConfigError(msg.str());
  }
}

double pressure(const EosParams& p, double rho, double s) {
  if (!(rho >= 0.0)) throw DomainError("pressure: negative density");
  if (rho == 0.0) return 0.0;
  return std::pow(rho, p.gamma) * std::exp(p.a * s);
}

PressurePartials pressure_partials(const EosParams& p, double rho, double s) {
  if (!(rho > 0.0)) throw DomainError("pressure_partials: density must be positive");
  const double pi = std::pow(rho, p.gamma) * std::exp(p.a * s);
  return {p.gamma * pi / rho, p.a * pi};
}

double internal_energy(const EosParams& p, double rho, double s) {
  if (!(rho > 0.0)) throw DomainError("internal_energy: density must be positive");
  return pressure(p, rho, s) / ((p.gamma - 1.0) * rho);
}

double entropy_from(const EosParams& p, double rho, double pi) {
  if (!(rho > 0.0) || !(pi > 0.0)) throw DomainError("entropy_from: density and pressure must be positive");
  return (std::log(pi) - p.gamma * std::log(rho)) / p.a;
}

}  // namespace steady
