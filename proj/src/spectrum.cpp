#include "qkick/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "qkick/parallel.hpp"

namespace qkick {

namespace {

double wrap_pi(double x) {
  double r = std::remainder(x, two_pi);
  if (r >= pi) r -= two_pi;  // remainder returns [-pi, pi]; fold the closed end
  return r;
}

void require_matching_planck(double spec_value, const RationalPlanck& planck, const char* what) {
  const double target = planck.value();
  if (std::abs(spec_value - target) > 1e-12 * std::max(1.0, std::abs(target))) {
    throw std::invalid_argument(std::string(what) +
                                ": spec Planck constant does not equal 2*pi*a/b for the given rational");
  }
}

// Folded kick exp(-i*c*cos q) on one Bloch fiber: F diag(exp(-i*c*cos q_k)) F^H
// with q_k = (2*pi*k - beta)/b' and F_{rk} = exp(-i*r*q_k)/sqrt(b').
CMatrix reduced_kick(double c, std::int64_t period, double beta) {
  const Eigen::Index n = static_cast<Eigen::Index>(period);
  CMatrix f(n, n);
  CVector diag(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double qk = (two_pi * static_cast<double>(k) - beta) / static_cast<double>(n);
    diag[k] = std::polar(1.0, -c * std::cos(qk));
    for (Eigen::Index r = 0; r < n; ++r) {
      f(r, k) = std::polar(inv_sqrt, -static_cast<double>(r) * qk);
    }
  }
  return f * diag.asDiagonal() * f.adjoint();
}

// exp(+-i*pi*a*r^2/b) with the angle reduced by exact integer arithmetic.
CVector quadratic_cell_diag(int sign, const RationalPlanck& planck, std::int64_t period) {
  CVector d(static_cast<Eigen::Index>(period));
  for (std::int64_t r = 0; r < period; ++r) {
    const std::int64_t k = (planck.a * r % (2 * planck.b)) * r % (2 * planck.b);
    const double angle = pi * static_cast<double>(k) / static_cast<double>(planck.b);
    d[static_cast<Eigen::Index>(r)] = std::polar(1.0, sign > 0 ? angle : -angle);
  }
  return d;
}

CVector khm_cell_diag(double l_over_hbar, const RationalPlanck& planck, std::int64_t period) {
  CVector d(static_cast<Eigen::Index>(period));
  for (std::int64_t r = 0; r < period; ++r) {
    const std::int64_t k = (planck.a * r) % planck.b;
    const double cos_rh = std::cos(two_pi * static_cast<double>(k) / static_cast<double>(planck.b));
    d[static_cast<Eigen::Index>(r)] = std::polar(1.0, -l_over_hbar * cos_rh);
  }
  return d;
}

}  // namespace

std::int64_t kinetic_period(const MapSpec& spec, const RationalPlanck& planck) {
  if (std::holds_alternative<KhmSpec>(spec)) {
    return planck.b;
  }
  if (std::holds_alternative<DkrmResonantSpec>(spec)) {
    return (planck.a * planck.b) % 2 == 0 ? planck.b : 2 * planck.b;
  }
  const auto& gen = std::get<DkrmGeneralSpec>(spec);
  return kinetic_period(MapSpec(DkrmResonantSpec::from_general(gen)), planck);
}

CMatrix bloch_operator(const MapSpec& spec, const RationalPlanck& planck, double beta) {
  validate(spec);
  if (const auto* khm = std::get_if<KhmSpec>(&spec)) {
    require_matching_planck(khm->hbar, planck, "bloch_operator");
    const std::int64_t period = planck.b;
    const CVector kin = khm_cell_diag(khm->kinetic_argument(), planck, period);
    return kin.asDiagonal() * reduced_kick(khm->kick_argument(), period, beta);
  }
  if (const auto* res = std::get_if<DkrmResonantSpec>(&spec)) {
    require_matching_planck(res->hbar_tilde(), planck, "bloch_operator");
    const std::int64_t period = kinetic_period(spec, planck);
    const CVector d_plus = quadratic_cell_diag(+1, planck, period);
    const CVector d_minus = quadratic_cell_diag(-1, planck, period);
    CMatrix u = reduced_kick(res->k2(), period, beta) *
                (d_minus.asDiagonal() * reduced_kick(res->k1(), period, beta));
    return d_plus.asDiagonal() * u;
  }
  const auto& gen = std::get<DkrmGeneralSpec>(spec);
  if (std::abs(gen.resonance_defect()) >= DkrmResonantSpec::resonance_tol) {
    throw std::invalid_argument(
        "bloch_operator: general double-kicked spec is off resonance; no Bloch reduction exists");
  }
  return bloch_operator(MapSpec(DkrmResonantSpec::from_general(gen)), planck, beta);
}

RVector unitary_eigenphases(const CMatrix& u, double beta_context, double unimodular_tol,
                            double residual_tol) {
  Eigen::ComplexEigenSolver<CMatrix> solver(u, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw EigensolverError(beta_context);
  }
  const CVector& lambda = solver.eigenvalues();
  const CMatrix& vec = solver.eigenvectors();
  const CMatrix residual = u * vec - vec * lambda.asDiagonal();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(std::abs(lambda[i]) - 1.0) > unimodular_tol ||
        residual.col(i).norm() > residual_tol) {
      throw EigensolverError(beta_context);
    }
  }
  RVector eps(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double e = std::arg(lambda[i]);
    if (e >= pi) e -= two_pi;
    eps[i] = e;
  }
  std::sort(eps.begin(), eps.end());
  return eps;
}

std::vector<double> eigenphases_filtered(const CMatrix& u, double keep_tol) {
  Eigen::ComplexEigenSolver<CMatrix> solver(u, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigensolverError(0.0);
  }
  std::vector<double> eps;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex lambda = solver.eigenvalues()[i];
    if (std::abs(std::abs(lambda) - 1.0) < keep_tol) {
      eps.push_back(wrap_pi(std::arg(lambda)));
    }
  }
  std::sort(eps.begin(), eps.end());
  return eps;
}

namespace {

// Rotation placing the largest spectral gap at the branch boundary, so a band
// straddling +-pi is traced as one connected component.
double gap_cut_point(std::vector<double> phases) {
  std::sort(phases.begin(), phases.end());
  const std::size_t n = phases.size();
  double best_gap = two_pi - (phases.back() - phases.front());
  double cut = phases.back() + best_gap / 2.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double gap = phases[i] - phases[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      cut = phases[i - 1] + gap / 2.0;
    }
  }
  return cut;
}

struct BranchEvaluator {
  const MapSpec& spec;
  const RationalPlanck& planck;
  double cut;

  RVector operator()(double beta) const {
    const RVector raw = unitary_eigenphases(bloch_operator(spec, planck, beta), beta);
    RVector rotated(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
      rotated[i] = wrap_pi(raw[i] - cut + pi);
    }
    std::sort(rotated.begin(), rotated.end());
    return rotated;
  }
};

double golden_extremum(const std::function<double(double)>& f, double lo, double hi, bool minimize,
                       int iters = 28) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = minimize ? std::min(f1, f2) : std::max(f1, f2);
  for (int it = 0; it < iters; ++it) {
    const bool keep_left = minimize ? (f1 < f2) : (f1 > f2);
    if (keep_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
    best = minimize ? std::min({best, f1, f2}) : std::max({best, f1, f2});
  }
  return best;
}

}  // namespace

BandSpectrum band_structure(const MapSpec& spec, const RationalPlanck& planck, int n_beta,
                            const BandOptions& options) {
  if (n_beta < 2) throw std::invalid_argument("band_structure: n_beta must be at least 2");
  const std::int64_t period = kinetic_period(spec, planck);

  BandSpectrum bs;
  bs.planck = planck;
  bs.period = period;
  bs.bloch_angles.resize(static_cast<std::size_t>(n_beta));
  bs.eigenphases.resize(n_beta, static_cast<Eigen::Index>(period));

  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(n_beta) * static_cast<std::size_t>(period));
  for (int j = 0; j < n_beta; ++j) {
    const double beta = two_pi * static_cast<double>(j) / static_cast<double>(n_beta);
    bs.bloch_angles[static_cast<std::size_t>(j)] = beta;
    const RVector eps = unitary_eigenphases(bloch_operator(spec, planck, beta), beta);
    bs.eigenphases.row(j) = eps.transpose();
    all.insert(all.end(), eps.begin(), eps.end());
  }

  const double cut = gap_cut_point(all);
  const BranchEvaluator evaluate{spec, planck, cut};

  // Branch extents over the angle grid, in rotated coordinates.
  Eigen::MatrixXd rotated(n_beta, static_cast<Eigen::Index>(period));
  for (int j = 0; j < n_beta; ++j) {
    RVector row(period);
    for (Eigen::Index i = 0; i < row.size(); ++i) {
      row[i] = wrap_pi(bs.eigenphases(j, i) - cut + pi);
    }
    std::sort(row.begin(), row.end());
    rotated.row(j) = row.transpose();
  }

  struct Interval {
    double lo, hi;
  };
  std::vector<Interval> intervals;
  intervals.reserve(static_cast<std::size_t>(period));
  const double dbeta = two_pi / static_cast<double>(n_beta);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(period); ++i) {
    Eigen::Index arg_lo = 0, arg_hi = 0;
    double lo = rotated.col(i).minCoeff(&arg_lo);
    double hi = rotated.col(i).maxCoeff(&arg_hi);
    if (options.refine_endpoints && (hi - lo) < options.refine_below_width) {
      auto branch_at = [&](double beta) { return evaluate(beta)[i]; };
      const double beta_lo = bs.bloch_angles[static_cast<std::size_t>(arg_lo)];
      const double beta_hi = bs.bloch_angles[static_cast<std::size_t>(arg_hi)];
      lo = std::min(lo, golden_extremum(branch_at, beta_lo - dbeta, beta_lo + dbeta, true));
      hi = std::max(hi, golden_extremum(branch_at, beta_hi - dbeta, beta_hi + dbeta, false));
    }
    intervals.push_back({lo, hi});
  }

  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Band> bands;
  for (const Interval& iv : intervals) {
    if (!bands.empty()) {
      Band& last = bands.back();
      const double last_hi = last.eps_min + last.width;  // still in rotated frame here
      if (iv.lo <= last_hi) {
        last.width = std::max(last_hi, iv.hi) - last.eps_min;
        continue;
      }
    }
    bands.push_back({iv.lo, iv.hi, iv.hi - iv.lo});
  }
  for (Band& band : bands) {
    const double lo = wrap_pi(band.eps_min + cut - pi);
    band.eps_min = lo;
    band.eps_max = lo + band.width;
  }
  std::sort(bands.begin(), bands.end(),
            [](const Band& x, const Band& y) { return x.eps_min < y.eps_min; });
  bs.bands = std::move(bands);
  return bs;
}

std::vector<double> all_eigenphases(const BandSpectrum& bs) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bs.eigenphases.size()));
  for (Eigen::Index j = 0; j < bs.eigenphases.rows(); ++j) {
    for (Eigen::Index i = 0; i < bs.eigenphases.cols(); ++i) {
      out.push_back(bs.eigenphases(j, i));
    }
  }
  return out;
}

double max_bandwidth(const BandSpectrum& bs) {
  if (bs.bands.empty()) throw std::invalid_argument("max_bandwidth: no bands");
  double w = 0.0;
  for (const Band& band : bs.bands) w = std::max(w, band.width);
  return w;
}

MapSpec SpecFamily::at(const RationalPlanck& planck) const {
  const double hbar = planck.value();
  if (kind == Kind::khm) {
    return KhmSpec{ratio1 * hbar, ratio2 * hbar, hbar};
  }
  return DkrmResonantSpec::from_reduced(hbar, ratio1, ratio2);
}

std::vector<ButterflyPoint> butterfly(const SpecFamily& family,
                                      const std::vector<RationalPlanck>& rationals, int n_beta,
                                      unsigned n_workers) {
  std::vector<std::vector<ButterflyPoint>> chunks(rationals.size());
  parallel_for(rationals.size(), n_workers, [&](std::size_t idx) {
    const RationalPlanck& planck = rationals[idx];
    BandOptions opts;
    opts.refine_endpoints = false;  // butterfly wants sampled points, not widths
    const BandSpectrum bs = band_structure(family.at(planck), planck, n_beta, opts);
    std::vector<ButterflyPoint>& rows = chunks[idx];
    rows.reserve(bs.bloch_angles.size() * static_cast<std::size_t>(bs.period));
    for (Eigen::Index j = 0; j < bs.eigenphases.rows(); ++j) {
      for (Eigen::Index i = 0; i < bs.eigenphases.cols(); ++i) {
        rows.push_back({planck.a, planck.b, planck.value(),
                        bs.bloch_angles[static_cast<std::size_t>(j)], i, bs.eigenphases(j, i)});
      }
    }
  });
  std::vector<ButterflyPoint> out;
  for (auto& chunk : chunks) {
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  return out;
}

double compare_spectra(const std::vector<double>& s1, const std::vector<double>& s2) {
  if (s1.empty() || s2.empty()) {
    throw std::invalid_argument("compare_spectra: eigenphase sets must be non-empty");
  }
  auto one_sided = [](const std::vector<double>& from, std::vector<double> to) {
    std::sort(to.begin(), to.end());
    double worst = 0.0;
    for (double x : from) {
      auto it = std::lower_bound(to.begin(), to.end(), x);
      double best = two_pi;
      if (it != to.end()) best = std::min(best, std::abs(*it - x));
      if (it != to.begin()) best = std::min(best, std::abs(x - *std::prev(it)));
      // circular wrap between the extremes
      best = std::min(best, std::abs(x - to.front() - two_pi));
      best = std::min(best, std::abs(to.back() - x - two_pi));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(s1, s2), one_sided(s2, s1));
}

std::vector<RationalPlanck> farey_rationals(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("farey_rationals: order must be at least 1");
  std::vector<RationalPlanck> out;
  for (std::int64_t b = 1; b <= order; ++b) {
    for (std::int64_t a = 1; a <= b; ++a) {
      if (std::gcd(a, b) == 1) out.push_back(RationalPlanck{a, b});
    }
  }
  std::sort(out.begin(), out.end(), [](const RationalPlanck& x, const RationalPlanck& y) {
    return x.a * y.b < y.a * x.b;
  });
  return out;
}

}  // namespace qkick
