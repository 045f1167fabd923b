// fractal.hpp — box-counting generalized dimensions D_q of eigenphase sets,
// and continued-fraction approximants for irrational Planck constants.

#pragma once

#include <cstdint>
#include <vector>

#include "qkick/types.hpp"

namespace qkick {

// Partition function over a cover of [-pi, pi) by ceil(2*pi/eps) boxes of
// width eps: sum of mu_i^q over occupied boxes, mu_i the fraction of
// eigenphases in box i. For q = 0 this is the occupied-box count.
double partition_sum(const std::vector<double>& spectrum, double q, double eps);

struct DqEstimate {
  double q = 0.0;
  double dq = 0.0;
  double fit_r2 = 0.0;
  std::vector<double> scales_used;
};

// Least-squares scaling exponent over the given box sizes:
//   q != 1:  D_q = slope(log sum mu^q vs log eps) / (q - 1)
//   q == 1:  D_1 = slope(sum mu log mu vs log eps)
// Scales where the occupied-box count comes within a factor 2 of the number
// of eigenphases are excluded (resolution floor). Requires at least 4 scales
// spanning at least 2 octaves.
DqEstimate dq_estimate(const std::vector<double>& spectrum, double q,
                       const std::vector<double>& eps_list);

// Default scale ladder eps_k = 2*pi/2^k, k = 3..9.
std::vector<double> default_scales();

// Continued-fraction convergents a/b of x in (0,1) with b <= b_max, in
// increasing b. Terminates early when x is hit exactly.
std::vector<RationalPlanck> convergents(double x, std::int64_t b_max);

}  // namespace qkick
