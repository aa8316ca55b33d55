#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "arborab/heights/kernels.hpp"

namespace arborab::heights::kernels {

namespace {

struct Lanes {
  double v[4];
};

// Copies up to four entries starting at i, padding with the last one.
Lanes gather(const double* src, std::size_t i, std::size_t n) {
  Lanes out{};
  for (std::size_t l = 0; l < 4; ++l) out.v[l] = src[std::min(i + l, n - 1)];
  return out;
}

void scatter(__m256d x, double* dst, std::size_t i, std::size_t n) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, x);
  for (std::size_t l = 0; l < 4 && i + l < n; ++l) dst[i + l] = tmp[l];
}

__m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

void divide(__m256d nr, __m256d ni, __m256d dr, __m256d di, __m256d& qr, __m256d& qi) {
  const __m256d s = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_max_pd(vabs(dr), vabs(di)));
  nr = _mm256_mul_pd(nr, s);
  ni = _mm256_mul_pd(ni, s);
  dr = _mm256_mul_pd(dr, s);
  di = _mm256_mul_pd(di, s);
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
  qr = _mm256_mul_pd(_mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, di)), inv);
  qi = _mm256_mul_pd(_mm256_fmsub_pd(ni, dr, _mm256_mul_pd(nr, di)), inv);
}

__attribute__((target("avx2,fma"))) void aberth_sums(const double* re, const double* im, std::size_t n,
                                                     double* sre, double* sim) {
  if (n == 0) return;
  for (std::size_t i = 0; i < n; i += 4) {
    const Lanes lr = gather(re, i, n);
    const Lanes li = gather(im, i, n);
    const __m256d zr = _mm256_loadu_pd(lr.v);
    const __m256d zi = _mm256_loadu_pd(li.v);
    const double base = static_cast<double>(i);
    const __m256d idx = _mm256_setr_pd(base, base + 1, base + 2, base + 3);
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n; ++j) {
      const __m256d self = _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(j)), _CMP_EQ_OQ);
      const __m256d dr = _mm256_sub_pd(zr, _mm256_set1_pd(re[j]));
      const __m256d di = _mm256_sub_pd(zi, _mm256_set1_pd(im[j]));
      const __m256d norm = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
      // The lane's own term becomes 0/1.
      const __m256d inv = _mm256_div_pd(_mm256_andnot_pd(self, _mm256_set1_pd(1.0)),
                                        _mm256_blendv_pd(norm, _mm256_set1_pd(1.0), self));
      ar = _mm256_fmadd_pd(dr, inv, ar);
      ai = _mm256_fnmadd_pd(di, inv, ai);
    }
    scatter(ar, sre, i, n);
    scatter(ai, sim, i, n);
  }
}

__attribute__((target("avx2,fma"))) void horner_ratio(const double* coef, std::size_t degree, const double* re,
                                                      const double* im, std::size_t n, double* nre,
                                                      double* nim) {
  if (n == 0) return;
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < n; i += 4) {
    const Lanes lr = gather(re, i, n);
    const Lanes li = gather(im, i, n);
    const __m256d zr = _mm256_loadu_pd(lr.v);
    const __m256d zi = _mm256_loadu_pd(li.v);
    const __m256d norm = _mm256_fmadd_pd(zr, zr, _mm256_mul_pd(zi, zi));
    const __m256d reversed = _mm256_cmp_pd(norm, one, _CMP_GT_OQ);
    const __m256d invn = _mm256_div_pd(one, norm);
    const __m256d wr = _mm256_blendv_pd(zr, _mm256_mul_pd(zr, invn), reversed);
    const __m256d wi = _mm256_blendv_pd(zi, _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(zi, invn)), reversed);
    __m256d pr = _mm256_setzero_pd(), pi = _mm256_setzero_pd();
    __m256d dr = _mm256_setzero_pd(), di = _mm256_setzero_pd();
    for (std::size_t k = 0; k <= degree; ++k) {
      const __m256d a = _mm256_blendv_pd(_mm256_set1_pd(coef[degree - k]), _mm256_set1_pd(coef[k]), reversed);
      const __m256d ndr = _mm256_add_pd(_mm256_fmsub_pd(dr, wr, _mm256_mul_pd(di, wi)), pr);
      const __m256d ndi = _mm256_add_pd(_mm256_fmadd_pd(dr, wi, _mm256_mul_pd(di, wr)), pi);
      dr = ndr;
      di = ndi;
      const __m256d npr = _mm256_add_pd(_mm256_fmsub_pd(pr, wr, _mm256_mul_pd(pi, wi)), a);
      const __m256d npi = _mm256_fmadd_pd(pr, wi, _mm256_mul_pd(pi, wr));
      pr = npr;
      pi = npi;
    }
    const __m256d deg = _mm256_set1_pd(static_cast<double>(degree));
    const __m256d rnumr = _mm256_fmsub_pd(zr, pr, _mm256_mul_pd(zi, pi));
    const __m256d rnumi = _mm256_fmadd_pd(zr, pi, _mm256_mul_pd(zi, pr));
    const __m256d rdenr = _mm256_sub_pd(_mm256_mul_pd(deg, pr), _mm256_fmsub_pd(wr, dr, _mm256_mul_pd(wi, di)));
    const __m256d rdeni = _mm256_sub_pd(_mm256_mul_pd(deg, pi), _mm256_fmadd_pd(wr, di, _mm256_mul_pd(wi, dr)));
    __m256d qr, qi;
    divide(_mm256_blendv_pd(pr, rnumr, reversed), _mm256_blendv_pd(pi, rnumi, reversed),
           _mm256_blendv_pd(dr, rdenr, reversed), _mm256_blendv_pd(di, rdeni, reversed), qr, qi);
    scatter(qr, nre, i, n);
    scatter(qi, nim, i, n);
  }
}

__attribute__((target("avx2,fma"))) void iterate_ratio(double c, double alpha, unsigned depth, const double* re,
                                                       const double* im, std::size_t n, double* nre,
                                                       double* nim) {
  if (n == 0) return;
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d limit = _mm256_set1_pd(kFreezeMagnitude);
  for (std::size_t i = 0; i < n; i += 4) {
    const Lanes lr = gather(re, i, n);
    const Lanes li = gather(im, i, n);
    __m256d ur = _mm256_loadu_pd(lr.v);
    __m256d ui = _mm256_loadu_pd(li.v);
    __m256d dr = _mm256_set1_pd(1.0);
    __m256d di = _mm256_setzero_pd();
    __m256d scale = _mm256_set1_pd(1.0);
    __m256d frozen = _mm256_setzero_pd();
    for (unsigned k = 0; k < depth; ++k) {
      scale = _mm256_blendv_pd(scale, _mm256_mul_pd(scale, two), frozen);
      const __m256d ndr = _mm256_mul_pd(two, _mm256_fmsub_pd(ur, dr, _mm256_mul_pd(ui, di)));
      const __m256d ndi = _mm256_mul_pd(two, _mm256_fmadd_pd(ur, di, _mm256_mul_pd(ui, dr)));
      const __m256d nur = _mm256_add_pd(_mm256_fmsub_pd(ur, ur, _mm256_mul_pd(ui, ui)), vc);
      const __m256d nui = _mm256_mul_pd(two, _mm256_mul_pd(ur, ui));
      dr = _mm256_blendv_pd(ndr, dr, frozen);
      di = _mm256_blendv_pd(ndi, di, frozen);
      ur = _mm256_blendv_pd(nur, ur, frozen);
      ui = _mm256_blendv_pd(nui, ui, frozen);
      frozen = _mm256_or_pd(frozen, _mm256_cmp_pd(_mm256_add_pd(vabs(ur), vabs(ui)), limit, _CMP_GT_OQ));
    }
    const __m256d numr = _mm256_blendv_pd(_mm256_sub_pd(ur, _mm256_set1_pd(alpha)), ur, frozen);
    __m256d qr, qi;
    divide(numr, ui, _mm256_mul_pd(scale, dr), _mm256_mul_pd(scale, di), qr, qi);
    scatter(qr, nre, i, n);
    scatter(qi, nim, i, n);
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", aberth_sums, horner_ratio, iterate_ratio};
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

}  // namespace arborab::heights::kernels
