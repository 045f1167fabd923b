// dynamics.hpp — kick-by-kick evolution, diffusion exponents, and
// momentum-staircase detection.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkick/floquet.hpp"
#include "qkick/lattice.hpp"
#include "qkick/types.hpp"

namespace qkick {

struct TimeSeries {
  std::vector<std::int64_t> kicks;     // 0 .. n_kicks
  std::vector<double> variance;
  std::vector<double> survival;        // survival[0] = 1 for the reference state
  std::vector<std::pair<std::int64_t, Profile>> snapshots;
};

// Applies the one-period map n_kicks times, recording variance and survival
// against the initial state after every kick. Profiles are stored for the
// kicks listed in snapshot_at (kick 0 allowed). Throws WindowOverflowError
// carrying the kick index when the edge tail exceeds tolerance.
TimeSeries evolve(const LatticeState& initial, const MapSpec& spec, std::int64_t n_kicks,
                  const std::vector<std::int64_t>& snapshot_at = {});

// evolve from |m0> on a window of size n_start centered at zero, doubling the
// window (up to n_max) whenever the edge tail overflows.
TimeSeries evolve_auto(std::int64_t m0, const MapSpec& spec, std::int64_t n_kicks,
                       const std::vector<std::int64_t>& snapshot_at = {},
                       Eigen::Index n_start = 1024, Eigen::Index n_max = 65536);

struct DiffusionFit {
  double alpha = 0.0;
  double fit_r2 = 0.0;
};

// Log-log slope of variance vs kick number over kicks in [k_lo, k_hi].
// Requires k_lo >= 10 (transient exclusion) and positive variance throughout.
DiffusionFit diffusion_exponent(const TimeSeries& series, std::int64_t k_lo, std::int64_t k_hi);

// Step edges of the m > 0 tail of a normalized profile: sites where
// P(m)/P(m+1) > drop_threshold. Returns the gaps between consecutive edges,
// in order of position. Sites below 1e-300 of the maximum are ignored;
// fewer than 3 usable tail sites is an error.
std::vector<std::int64_t> staircase_widths(const Profile& profile, double drop_threshold);

// Most frequent plateau width, if any: widths of at least 2 sites (a run of
// adjacent edges is smooth decay, not a staircase) occurring at least
// min_count times. Empty optional means no persistent staircase.
std::optional<std::int64_t> modal_plateau_width(const std::vector<std::int64_t>& widths,
                                                std::size_t min_count = 3);

}  // namespace qkick
