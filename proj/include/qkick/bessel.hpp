// bessel.hpp — integer-order Bessel functions J_n by downward recurrence.

#pragma once

#include <vector>

namespace qkick {

// J_0(x) .. J_nmax(x) via Miller's downward recurrence with normalization
// J_0 + 2*sum_k J_{2k} = 1. Accurate to ~1e-13 for |x| <= 50, n <= 200.
std::vector<double> bessel_j_array(int n_max, double x);

// J_n(x) for any integer n (J_{-n} = (-1)^n J_n).
double bessel_j(int n, double x);

// Smallest band half-width beyond which the kick couplings |J_n(c)| stay
// below ~1e-18; matrix assembly and window checks truncate there.
int kick_band_limit(double c);

}  // namespace qkick
