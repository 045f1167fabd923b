#include "qkick/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkick {

namespace {

std::vector<double> box_measures(const std::vector<double>& spectrum, double eps) {
  if (spectrum.empty()) {
    throw std::invalid_argument("partition_sum: spectrum must be non-empty");
  }
  if (!(eps > 0.0) || eps > two_pi) {
    throw std::invalid_argument("partition_sum: eps must lie in (0, 2*pi]");
  }
  const auto n_boxes = static_cast<std::size_t>(std::ceil(two_pi / eps));
  std::vector<double> mu(n_boxes, 0.0);
  const double weight = 1.0 / static_cast<double>(spectrum.size());
  for (double phase : spectrum) {
    double offset = phase + pi;
    offset -= two_pi * std::floor(offset / two_pi);  // fold onto [0, 2*pi)
    auto idx = static_cast<std::size_t>(offset / eps);
    if (idx >= n_boxes) idx = n_boxes - 1;
    mu[idx] += weight;
  }
  return mu;
}

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("least_squares: zero variance in abscissa");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace

double partition_sum(const std::vector<double>& spectrum, double q, double eps) {
  const std::vector<double> mu = box_measures(spectrum, eps);
  if (q == 0.0) {
    double count = 0.0;
    for (double m : mu) {
      if (m > 0.0) count += 1.0;
    }
    return count;
  }
  double sum = 0.0;
  for (double m : mu) {
    if (m > 0.0) sum += std::pow(m, q);
  }
  return sum;
}

DqEstimate dq_estimate(const std::vector<double>& spectrum, double q,
                       const std::vector<double>& eps_list) {
  if (eps_list.size() < 4) {
    throw std::invalid_argument("dq_estimate: need at least 4 scales");
  }
  const auto [min_it, max_it] = std::minmax_element(eps_list.begin(), eps_list.end());
  if (*max_it < 4.0 * *min_it) {
    throw std::invalid_argument("dq_estimate: scales must span at least 2 octaves");
  }

  const double n_points = static_cast<double>(spectrum.size());
  std::vector<double> log_eps, ordinate, used;
  for (double eps : eps_list) {
    const double occupied = partition_sum(spectrum, 0.0, eps);
    if (2.0 * occupied >= n_points) continue;  // resolution floor
    if (std::abs(q - 1.0) < 1e-9) {
      const std::vector<double> mu = box_measures(spectrum, eps);
      double entropy = 0.0;
      for (double m : mu) {
        if (m > 0.0) entropy += m * std::log(m);
      }
      ordinate.push_back(entropy);
    } else {
      ordinate.push_back(std::log(partition_sum(spectrum, q, eps)));
    }
    log_eps.push_back(std::log(eps));
    used.push_back(eps);
  }
  if (log_eps.size() < 2) {
    throw std::invalid_argument("dq_estimate: too few usable scales after resolution cut");
  }

  const LineFit fit = least_squares(log_eps, ordinate);
  DqEstimate est;
  est.q = q;
  est.dq = (std::abs(q - 1.0) < 1e-9) ? fit.slope : fit.slope / (q - 1.0);
  est.fit_r2 = fit.r2;
  est.scales_used = std::move(used);
  return est;
}

std::vector<double> default_scales() {
  std::vector<double> eps;
  for (int k = 3; k <= 9; ++k) {
    eps.push_back(two_pi / std::pow(2.0, k));
  }
  return eps;
}

std::vector<RationalPlanck> convergents(double x, std::int64_t b_max) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw std::invalid_argument("convergents: x must lie in (0, 1)");
  }
  if (b_max < 2) {
    throw std::invalid_argument("convergents: b_max must be at least 2");
  }
  std::vector<RationalPlanck> out;
  long double rem = static_cast<long double>(x);
  std::int64_t h_prev = 1, h = 0;  // numerators (starting from the 0/1 convergent)
  std::int64_t k_prev = 0, k = 1;  // denominators
  for (int iter = 0; iter < 64; ++iter) {
    if (rem < 1e-14L) break;  // x hit exactly
    rem = 1.0L / rem;
    const long double digit_l = std::floor(rem);
    if (digit_l > static_cast<long double>(b_max)) break;
    const std::int64_t digit = static_cast<std::int64_t>(digit_l);
    const std::int64_t h_next = digit * h + h_prev;
    const std::int64_t k_next = digit * k + k_prev;
    if (k_next > b_max) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (h > 0) out.push_back(RationalPlanck::make(h, k));
    rem -= digit_l;
  }
  return out;
}

}  // namespace qkick
