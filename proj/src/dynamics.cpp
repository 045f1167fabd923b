#include "qkick/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qkick {

TimeSeries evolve(const LatticeState& initial, const MapSpec& spec, std::int64_t n_kicks,
                  const std::vector<std::int64_t>& snapshot_at) {
  if (n_kicks < 1) throw std::invalid_argument("evolve: n_kicks must be at least 1");

  std::vector<std::int64_t> snaps = snapshot_at;
  std::sort(snaps.begin(), snaps.end());
  auto wants_snapshot = [&snaps](std::int64_t kick) {
    return std::binary_search(snaps.begin(), snaps.end(), kick);
  };

  const StepOperator op(spec, initial.m_min, initial.size());
  TimeSeries ts;
  ts.kicks.reserve(static_cast<std::size_t>(n_kicks) + 1);
  ts.variance.reserve(static_cast<std::size_t>(n_kicks) + 1);
  ts.survival.reserve(static_cast<std::size_t>(n_kicks) + 1);

  LatticeState state = initial;
  ts.kicks.push_back(0);
  ts.variance.push_back(momentum_variance(state));
  ts.survival.push_back(survival_probability(state, initial));
  if (wants_snapshot(0)) ts.snapshots.emplace_back(0, momentum_profile(state));

  for (std::int64_t kick = 1; kick <= n_kicks; ++kick) {
    try {
      state = op.apply(state);
    } catch (const WindowOverflowError& e) {
      throw WindowOverflowError(kick, e.tail_mass());
    }
    ts.kicks.push_back(kick);
    ts.variance.push_back(momentum_variance(state));
    ts.survival.push_back(survival_probability(state, initial));
    if (wants_snapshot(kick)) ts.snapshots.emplace_back(kick, momentum_profile(state));
  }
  return ts;
}

TimeSeries evolve_auto(std::int64_t m0, const MapSpec& spec, std::int64_t n_kicks,
                       const std::vector<std::int64_t>& snapshot_at, Eigen::Index n_start,
                       Eigen::Index n_max) {
  for (Eigen::Index n = n_start;; n *= 2) {
    try {
      return evolve(basis_state(m0, -(n / 2), n), spec, n_kicks, snapshot_at);
    } catch (const WindowOverflowError&) {
      if (2 * n > n_max) throw;
    }
  }
}

DiffusionFit diffusion_exponent(const TimeSeries& series, std::int64_t k_lo, std::int64_t k_hi) {
  if (k_lo < 10) throw std::invalid_argument("diffusion_exponent: fit window must start at kick >= 10");
  if (k_hi <= k_lo) throw std::invalid_argument("diffusion_exponent: empty fit window");
  if (series.kicks.empty() || k_hi > series.kicks.back()) {
    throw std::invalid_argument("diffusion_exponent: fit window exceeds recorded range");
  }

  double sx = 0.0, sy = 0.0, n = 0.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < series.kicks.size(); ++i) {
    const std::int64_t k = series.kicks[i];
    if (k < k_lo || k > k_hi) continue;
    const double var = series.variance[i];
    if (!(var > 0.0)) {
      throw std::runtime_error("diffusion_exponent: non-positive variance inside fit window");
    }
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(var));
    sx += xs.back();
    sy += ys.back();
    n += 1.0;
  }
  if (xs.size() < 2) throw std::invalid_argument("diffusion_exponent: fit window holds < 2 samples");

  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DiffusionFit fit;
  fit.alpha = sxy / sxx;
  fit.fit_r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::vector<std::int64_t> staircase_widths(const Profile& profile, double drop_threshold) {
  if (!(drop_threshold > 1.0)) {
    throw std::invalid_argument("staircase_widths: drop_threshold must exceed 1");
  }
  double total = 0.0, peak = 0.0;
  for (const auto& [m, p] : profile) {
    total += p;
    peak = std::max(peak, p);
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("staircase_widths: profile is not normalized");
  }

  // m > 0 tail in increasing m, cut off where probabilities underflow.
  std::vector<std::pair<std::int64_t, double>> tail;
  for (const auto& entry : profile) {
    if (entry.first > 0) tail.push_back(entry);
  }
  std::sort(tail.begin(), tail.end());
  const double floor_p = peak * 1e-300;
  while (!tail.empty() && tail.back().second <= floor_p) tail.pop_back();
  if (tail.size() < 3) {
    throw std::runtime_error("staircase_widths: fewer than 3 usable tail sites");
  }

  std::vector<std::int64_t> edges;
  for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
    if (tail[i + 1].first != tail[i].first + 1) {
      throw std::invalid_argument("staircase_widths: tail sites must be consecutive integers");
    }
    if (tail[i].second > drop_threshold * tail[i + 1].second) {
      edges.push_back(tail[i].first);
    }
  }
  std::vector<std::int64_t> widths;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    widths.push_back(edges[i + 1] - edges[i]);
  }
  return widths;
}

std::optional<std::int64_t> modal_plateau_width(const std::vector<std::int64_t>& widths,
                                                std::size_t min_count) {
  std::map<std::int64_t, std::size_t> counts;
  for (std::int64_t w : widths) {
    if (w >= 2) ++counts[w];
  }
  std::optional<std::int64_t> best;
  std::size_t best_count = 0;
  for (const auto& [w, c] : counts) {
    if (c >= min_count && c > best_count) {
      best = w;
      best_count = c;
    }
  }
  return best;
}

}  // namespace qkick
