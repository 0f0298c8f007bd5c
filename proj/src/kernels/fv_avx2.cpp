#include <immintrin.h>

#include "fv_inline.hpp"
#include "steady/kernels.hpp"

namespace steady::kernels {

namespace {

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d vminmod(__m256d a, __m256d b) {
  const __m256d same_sign = _mm256_cmp_pd(_mm256_mul_pd(a, b), _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d a_smaller = _mm256_cmp_pd(vabs(a), vabs(b), _CMP_LT_OQ);
  return _mm256_and_pd(_mm256_blendv_pd(b, a, a_smaller), same_sign);
}

void reconstruct_avx2(const double* qm, const double* q0, const double* qp, double* minus,
                      double* plus, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d c = _mm256_loadu_pd(q0 + k);
    const __m256d slope = vminmod(_mm256_sub_pd(c, _mm256_loadu_pd(qm + k)),
                                  _mm256_sub_pd(_mm256_loadu_pd(qp + k), c));
    const __m256d hs = _mm256_mul_pd(half, slope);
    _mm256_storeu_pd(minus + k, _mm256_sub_pd(c, hs));
    _mm256_storeu_pd(plus + k, _mm256_add_pd(c, hs));
  }
  for (; k < n; ++k) detail::reconstruct_one(qm, q0, qp, minus, plus, k);
}

struct VPrimitive {
  __m256d un, ut, p, c;
};

inline VPrimitive vprimitive(__m256d rho, __m256d mn, __m256d mt, __m256d E, __m256d gamma) {
  const __m256d one = _mm256_set1_pd(1.0), half = _mm256_set1_pd(0.5);
  VPrimitive w;
  w.un = _mm256_div_pd(mn, rho);
  w.ut = _mm256_div_pd(mt, rho);
  const __m256d kinetic = _mm256_mul_pd(half, _mm256_add_pd(_mm256_mul_pd(mn, w.un), _mm256_mul_pd(mt, w.ut)));
  w.p = _mm256_mul_pd(_mm256_sub_pd(gamma, one), _mm256_sub_pd(E, kinetic));
  w.c = _mm256_sqrt_pd(_mm256_div_pd(_mm256_mul_pd(gamma, w.p), rho));
  return w;
}

void rusanov_avx2(const FaceStates& s, double* const flux[4], std::size_t n, double gamma, int axis) {
  const int in = axis == 0 ? 1 : 2;
  const int it = axis == 0 ? 2 : 1;
  const __m256d g = _mm256_set1_pd(gamma);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d rl = _mm256_loadu_pd(s.left[0] + k), rr = _mm256_loadu_pd(s.right[0] + k);
    const __m256d mnl = _mm256_loadu_pd(s.left[in] + k), mnr = _mm256_loadu_pd(s.right[in] + k);
    const __m256d mtl = _mm256_loadu_pd(s.left[it] + k), mtr = _mm256_loadu_pd(s.right[it] + k);
    const __m256d el = _mm256_loadu_pd(s.left[3] + k), er = _mm256_loadu_pd(s.right[3] + k);
    const VPrimitive wl = vprimitive(rl, mnl, mtl, el, g);
    const VPrimitive wr = vprimitive(rr, mnr, mtr, er, g);
    const __m256d smax = _mm256_max_pd(_mm256_add_pd(vabs(wl.un), wl.c), _mm256_add_pd(vabs(wr.un), wr.c));

    const __m256d f0 = _mm256_mul_pd(
        half, _mm256_sub_pd(_mm256_add_pd(mnl, mnr), _mm256_mul_pd(smax, _mm256_sub_pd(rr, rl))));
    const __m256d fl_n = _mm256_add_pd(_mm256_mul_pd(mnl, wl.un), wl.p);
    const __m256d fr_n = _mm256_add_pd(_mm256_mul_pd(mnr, wr.un), wr.p);
    const __m256d fn = _mm256_mul_pd(
        half, _mm256_sub_pd(_mm256_add_pd(fl_n, fr_n), _mm256_mul_pd(smax, _mm256_sub_pd(mnr, mnl))));
    const __m256d ft = _mm256_mul_pd(
        half, _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(mtl, wl.un), _mm256_mul_pd(mtr, wr.un)),
                            _mm256_mul_pd(smax, _mm256_sub_pd(mtr, mtl))));
    const __m256d fe = _mm256_mul_pd(
        half, _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(el, wl.p), wl.un),
                                          _mm256_mul_pd(_mm256_add_pd(er, wr.p), wr.un)),
                            _mm256_mul_pd(smax, _mm256_sub_pd(er, el))));
    _mm256_storeu_pd(flux[0] + k, f0);
    _mm256_storeu_pd(flux[in] + k, fn);
    _mm256_storeu_pd(flux[it] + k, ft);
    _mm256_storeu_pd(flux[3] + k, fe);
  }
  for (; k < n; ++k) detail::rusanov_one(s, flux, k, gamma, axis);
}

double max_wave_speed_avx2(const double* const q[4], std::size_t n, double gamma) {
  const __m256d g = _mm256_set1_pd(gamma);
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const VPrimitive w = vprimitive(_mm256_loadu_pd(q[0] + k), _mm256_loadu_pd(q[1] + k),
                                    _mm256_loadu_pd(q[2] + k), _mm256_loadu_pd(q[3] + k), g);
    const __m256d speed = _mm256_add_pd(
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(w.un, w.un), _mm256_mul_pd(w.ut, w.ut))), w.c);
    m = _mm256_max_pd(m, speed);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = 0.0;
  for (double v : lanes) out = detail::vmax(out, v);
  for (; k < n; ++k) out = detail::vmax(out, detail::wave_speed_one(q, k, gamma));
  return out;
}

void combine_avx2(double* out, const double* x, const double* y, const double* z, double a, double b,
                  double c, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b), vc = _mm256_set1_pd(c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d inner = _mm256_add_pd(_mm256_loadu_pd(y + k), _mm256_mul_pd(vc, _mm256_loadu_pd(z + k)));
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + k)), _mm256_mul_pd(vb, inner)));
  }
  for (; k < n; ++k) out[k] = a * x[k] + b * (y[k] + c * z[k]);
}

}  // namespace

const FvKernels& avx2_kernels_impl() {
  static const FvKernels k{"avx2", reconstruct_avx2, rusanov_avx2, max_wave_speed_avx2, combine_avx2};
  return k;
}

}  // namespace steady::kernels
