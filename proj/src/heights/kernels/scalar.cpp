#include <algorithm>
#include <cmath>

#include "arborab/heights/kernels.hpp"

namespace arborab::heights::kernels {

namespace {

// Scaled complex division; the unscaled form overflows for the large
// derivatives seen near the freeze threshold.
void divide(double nr, double ni, double dr, double di, double& qr, double& qi) {
  const double s = 1.0 / std::max(std::abs(dr), std::abs(di));
  nr *= s;
  ni *= s;
  dr *= s;
  di *= s;
  const double inv = 1.0 / (dr * dr + di * di);
  qr = (nr * dr + ni * di) * inv;
  qi = (ni * dr - nr * di) * inv;
}

void aberth_sums(const double* re, const double* im, std::size_t n, double* sre, double* sim) {
  for (std::size_t i = 0; i < n; ++i) {
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dr = re[i] - re[j];
      const double di = im[i] - im[j];
      const double inv = 1.0 / (dr * dr + di * di);
      ar += dr * inv;
      ai -= di * inv;
    }
    sre[i] = ar;
    sim[i] = ai;
  }
}

void horner_ratio(const double* coef, std::size_t degree, const double* re, const double* im, std::size_t n,
                  double* nre, double* nim) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = re[i];
    const double zi = im[i];
    const bool reversed = zr * zr + zi * zi > 1.0;
    double wr = zr;
    double wi = zi;
    if (reversed) {
      const double inv = 1.0 / (zr * zr + zi * zi);
      wr = zr * inv;
      wi = -zi * inv;
    }
    double pr = 0.0, pi = 0.0, dr = 0.0, di = 0.0;
    for (std::size_t k = 0; k <= degree; ++k) {
      const double a = reversed ? coef[k] : coef[degree - k];
      const double ndr = dr * wr - di * wi + pr;
      const double ndi = dr * wi + di * wr + pi;
      dr = ndr;
      di = ndi;
      const double npr = pr * wr - pi * wi + a;
      const double npi = pr * wi + pi * wr;
      pr = npr;
      pi = npi;
    }
    // Forward: p / p'. Reversed with w = 1/z: z R / (d R - w R').
    double numr = pr, numi = pi, denr = dr, deni = di;
    if (reversed) {
      numr = zr * pr - zi * pi;
      numi = zr * pi + zi * pr;
      const double deg = static_cast<double>(degree);
      denr = deg * pr - (wr * dr - wi * di);
      deni = deg * pi - (wr * di + wi * dr);
    }
    divide(numr, numi, denr, deni, nre[i], nim[i]);
  }
}

void iterate_ratio(double c, double alpha, unsigned depth, const double* re, const double* im, std::size_t n,
                   double* nre, double* nim) {
  for (std::size_t i = 0; i < n; ++i) {
    double ur = re[i], ui = im[i];
    double dr = 1.0, di = 0.0;
    double scale = 1.0;
    bool frozen = false;
    for (unsigned k = 0; k < depth; ++k) {
      if (frozen) {
        scale *= 2.0;
        continue;
      }
      const double ndr = 2.0 * (ur * dr - ui * di);
      const double ndi = 2.0 * (ur * di + ui * dr);
      dr = ndr;
      di = ndi;
      const double nur = ur * ur - ui * ui + c;
      const double nui = 2.0 * ur * ui;
      ur = nur;
      ui = nui;
      frozen = std::abs(ur) + std::abs(ui) > kFreezeMagnitude;
    }
    const double numr = frozen ? ur : ur - alpha;
    const double numi = ui;
    const double denr = scale * dr;
    const double deni = scale * di;
    divide(numr, numi, denr, deni, nre[i], nim[i]);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", aberth_sums, horner_ratio, iterate_ratio};
  return table;
}

}  // namespace arborab::heights::kernels
