#include "qkick/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qkick {

namespace {

// Start order high enough that the downward recurrence has converged onto the
// minimal solution by the time it reaches n_max.
int recurrence_start(int n_max, double ax) {
  const double scale = std::max(static_cast<double>(n_max), ax);
  int m = n_max + 20 + static_cast<int>(14.0 * std::cbrt(scale + 1.0) + std::sqrt(40.0 * (scale + 1.0)));
  if (m % 2 != 0) ++m;  // normalization sums even orders
  return m;
}

}  // namespace

std::vector<double> bessel_j_array(int n_max, double x) {
  if (n_max < 0) {
    throw std::invalid_argument("bessel_j_array: n_max must be non-negative");
  }
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }

  const int m_start = recurrence_start(n_max, ax);
  double jp = 0.0;        // J_{k+1} (unnormalized)
  double jc = 1e-300;     // J_k seed
  double norm = 0.0;      // J_0 + 2*sum J_{2k}
  for (int k = m_start; k >= 0; --k) {
    const double jm = (2.0 * (k + 1) / ax) * jc - jp;  // J_k from J_{k+1}, J_{k+2}
    jp = jc;
    jc = jm;
    if (std::abs(jc) > 1e280) {  // rescale to avoid overflow
      const double s = 1e-280;
      jc *= s;
      jp *= s;
      norm *= s;
      for (int i = k; i <= n_max; ++i) out[static_cast<std::size_t>(i)] *= s;
    }
    if (k % 2 == 0) norm += (k == 0) ? jc : 2.0 * jc;
    if (k <= n_max) out[static_cast<std::size_t>(k)] = jc;
  }
  for (double& v : out) v /= norm;

  // J_n(-x) = (-1)^n J_n(x)
  if (x < 0.0) {
    for (int n = 1; n <= n_max; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  }
  return out;
}

double bessel_j(int n, double x) {
  const int an = std::abs(n);
  const double v = bessel_j_array(an, x)[static_cast<std::size_t>(an)];
  return (n < 0 && an % 2 != 0) ? -v : v;
}

int kick_band_limit(double c) {
  const double ac = std::abs(c);
  if (ac == 0.0) return 0;
  const int probe = static_cast<int>(ac + 18.0 * std::cbrt(ac + 1.0) + 40.0);
  const auto j = bessel_j_array(probe, ac);
  int cut = probe;
  while (cut > 0 && std::abs(j[static_cast<std::size_t>(cut)]) < 1e-18) --cut;
  return std::min(cut + 2, probe);
}

}  // namespace qkick
