// spectrum.hpp — quasi-energy spectra: Bloch-reduced band structure at rational
// Planck constants, butterfly sweeps, bandwidths, and spectrum comparison.
//
// Quasi-energies use the branch lambda = exp(i*eps), eps in [-pi, pi).

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkick/errors.hpp"
#include "qkick/types.hpp"

namespace qkick {

// Period of the kinetic diagonal under m -> m + b'. For the kicked Harper map
// b' = b; for the resonant double-kicked rotor b' = b when a*b is even and 2b
// otherwise (the quadratic phase only repeats after two cells then).
std::int64_t kinetic_period(const MapSpec& spec, const RationalPlanck& planck);

// Reduced one-period operator at Bloch angle beta: the b' x b' fold
// U(beta)_{r,r'} = sum_s exp(i*beta*s) <r|U|r' + s*b'>, built exactly as a
// product of folded kick and kinetic factors. Unitary for every beta.
// Throws std::invalid_argument when the spec's Planck constant does not match
// the rational, or for a general double-kicked spec off resonance.
CMatrix bloch_operator(const MapSpec& spec, const RationalPlanck& planck, double beta);

// Sorted eigenphases arg(lambda) of a unitary matrix. Validates unimodularity
// (|lambda| within unimodular_tol of 1) and the eigenpair residual; throws
// EigensolverError tagged with beta_context on failure.
RVector unitary_eigenphases(const CMatrix& u, double beta_context = 0.0,
                            double unimodular_tol = 1e-10, double residual_tol = 1e-8);

// Eigenphases of a possibly non-unitary (truncated) matrix, keeping only
// eigenvalues with | |lambda| - 1 | < keep_tol. Oracle-side helper.
std::vector<double> eigenphases_filtered(const CMatrix& u, double keep_tol);

struct Band {
  double eps_min = 0.0;  // in [-pi, pi)
  double eps_max = 0.0;  // eps_min + width; may exceed pi when the band wraps
  double width = 0.0;
};

struct BandSpectrum {
  RationalPlanck planck;
  std::int64_t period = 1;               // reduced dimension b'
  std::vector<double> bloch_angles;      // uniform grid on [0, 2*pi)
  Eigen::MatrixXd eigenphases;           // n_beta rows, b' sorted phases per row
  std::vector<Band> bands;
};

struct BandOptions {
  bool refine_endpoints = true;    // golden-section refinement of narrow bands
  double refine_below_width = 1e-3;
};

// Diagonalizes bloch_operator on n_beta uniform angles and assembles bands as
// connected components of the traced eigenphases.
BandSpectrum band_structure(const MapSpec& spec, const RationalPlanck& planck,
                            int n_beta, const BandOptions& options = {});

// All sampled eigenphases of a band structure, flattened.
std::vector<double> all_eigenphases(const BandSpectrum& bs);

double max_bandwidth(const BandSpectrum& bs);

// Map family with kick strengths fixed as multiples of the swept Planck
// constant, as in butterfly plots.
struct SpecFamily {
  enum class Kind { khm, dkrm_resonant };
  Kind kind = Kind::khm;
  double ratio1 = 1.0;  // K/hbar    (k1 for the double-kicked rotor)
  double ratio2 = 1.0;  // L/hbar    (k2)

  MapSpec at(const RationalPlanck& planck) const;
};

struct ButterflyPoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double hbar = 0.0;
  double beta = 0.0;
  std::int64_t band_index = 0;
  double epsilon = 0.0;
};

// Concatenated band structures over the given rationals; rows are ordered by
// (rational, beta, branch) regardless of worker count.
std::vector<ButterflyPoint> butterfly(const SpecFamily& family,
                                      const std::vector<RationalPlanck>& rationals,
                                      int n_beta, unsigned n_workers = 1);

// Symmetric Hausdorff distance between two eigenphase sets on the circle.
// Throws std::invalid_argument when either set is empty.
double compare_spectra(const std::vector<double>& s1, const std::vector<double>& s2);

// Farey fractions a/b with b <= order, in (0, 1], as rational Planck values.
std::vector<RationalPlanck> farey_rationals(std::int64_t order);

}  // namespace qkick
