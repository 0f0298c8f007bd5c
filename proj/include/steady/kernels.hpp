#pragma once

#include <cstddef>
#include <string_view>

namespace steady::kernels {

// Left/right conserved states (rho, m_x, m_y, E) at a run of contiguous faces.
struct FaceStates {
  const double* left[4];
  const double* right[4];
};

// Inner loops of the finite-volume update. Every variant performs the same IEEE operations
// in the same order, so results are bitwise identical across variants.
struct FvKernels {
  const char* name;

  // Minmod-limited linear reconstruction of cell k from (qm[k], q0[k], qp[k]):
  // minus[k] = q0 - slope/2, plus[k] = q0 + slope/2.
  void (*reconstruct)(const double* qm, const double* q0, const double* qp, double* minus,
                      double* plus, std::size_t n);

  // Rusanov flux across faces with normal `axis` (0 = x, 1 = y) for a gamma-law gas.
  void (*rusanov)(const FaceStates& s, double* const flux[4], std::size_t n, double gamma, int axis);

  // max over cells of |u| + c.
  double (*max_wave_speed)(const double* const q[4], std::size_t n, double gamma);

  // out = a * x + b * (y + c * z)
  void (*combine)(double* out, const double* x, const double* y, const double* z, double a, double b,
                  double c, std::size_t n);
};

const FvKernels& scalar_kernels();
// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const FvKernels* avx2_kernels();

// Runtime selection: AVX2 when available. STEADY_SIMD=scalar forces the reference kernels.
const FvKernels& active_kernels();
const FvKernels* kernels_by_name(std::string_view name);

}  // namespace steady::kernels
