#pragma once

#include <cstddef>

namespace arborab::heights::kernels {

// Double-precision inner loops of the root finder. Complex vectors are passed
// as separate real and imaginary arrays of length n.

/// s_i = sum_{j != i} 1 / (z_i - z_j).
using AberthSumsFn = void (*)(const double* re, const double* im, std::size_t n, double* sre, double* sim);

/// Newton ratio p(z)/p'(z) for p with coefficients coef[0..degree] (low to
/// high). Points with |z| > 1 are evaluated through the reversed polynomial.
using HornerRatioFn = void (*)(const double* coef, std::size_t degree, const double* re, const double* im,
                               std::size_t n, double* nre, double* nim);

/// Newton ratio for f^depth(z) - alpha, f = z^2 + c, by iterating f and its
/// derivative. Once |f^k(z)| passes 1e100 the orbit is frozen and the ratio
/// is taken from the dominant term u / (2^m u'), m the remaining steps.
using IterateRatioFn = void (*)(double c, double alpha, unsigned depth, const double* re, const double* im,
                                std::size_t n, double* nre, double* nim);

struct KernelTable {
  const char* name;
  AberthSumsFn aberth_sums;
  HornerRatioFn horner_ratio;
  IterateRatioFn iterate_ratio;
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelTable* avx2_kernels();
/// Best available table; ARBORAB_KERNELS=scalar forces the reference one.
const KernelTable& active_kernels();

inline constexpr double kFreezeMagnitude = 1e100;

}  // namespace arborab::heights::kernels
