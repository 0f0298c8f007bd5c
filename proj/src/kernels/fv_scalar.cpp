#include <algorithm>
#include <cmath>

#include "fv_inline.hpp"
#include "steady/kernels.hpp"

namespace steady::kernels {

namespace {

void reconstruct_scalar(const double* qm, const double* q0, const double* qp, double* minus,
                        double* plus, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) detail::reconstruct_one(qm, q0, qp, minus, plus, k);
}

void rusanov_scalar(const FaceStates& s, double* const flux[4], std::size_t n, double gamma, int axis) {
  for (std::size_t k = 0; k < n; ++k) detail::rusanov_one(s, flux, k, gamma, axis);
}

double max_wave_speed_scalar(const double* const q[4], std::size_t n, double gamma) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = detail::vmax(m, detail::wave_speed_one(q, k, gamma));
  return m;
}

void combine_scalar(double* out, const double* x, const double* y, const double* z, double a,
                    double b, double c, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a * x[k] + b * (y[k] + c * z[k]);
}

}  // namespace

const FvKernels& scalar_kernels() {
  static const FvKernels k{"scalar", reconstruct_scalar, rusanov_scalar, max_wave_speed_scalar,
                           combine_scalar};
  return k;
}

}  // namespace steady::kernels
