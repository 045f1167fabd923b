#include "qkick/lattice.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkick {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;  // caches plans per size
  return fft;
}

CVector window_phase(std::int64_t m_min, Eigen::Index n) {
  CVector phase(n);
  const double step = two_pi / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    phase[j] = std::polar(1.0, static_cast<double>(m_min) * step * static_cast<double>(j));
  }
  return phase;
}

}  // namespace

LatticeState basis_state(std::int64_t m0, std::int64_t m_min, Eigen::Index N) {
  if (N < 2) {
    throw std::invalid_argument("basis_state: lattice size must be at least 2");
  }
  if (m0 < m_min || m0 >= m_min + static_cast<std::int64_t>(N)) {
    throw std::out_of_range("basis_state: m0 = " + std::to_string(m0) +
                            " outside window [" + std::to_string(m_min) + ", " +
                            std::to_string(m_min + static_cast<std::int64_t>(N)) + ")");
  }
  LatticeState s;
  s.m_min = m_min;
  s.amplitudes = CVector::Zero(N);
  s.amplitudes[static_cast<Eigen::Index>(m0 - m_min)] = Complex(1.0, 0.0);
  return s;
}

CVector to_position(const LatticeState& state) {
  const Eigen::Index n = state.size();
  std::vector<Complex> freq(state.amplitudes.data(), state.amplitudes.data() + n);
  std::vector<Complex> time(static_cast<std::size_t>(n));
  fft_engine().inv(time, freq);  // (1/N) sum_k c_k exp(+2*pi*i*j*k/N)
  CVector grid = Eigen::Map<const CVector>(time.data(), n) * std::sqrt(static_cast<double>(n));
  grid.array() *= window_phase(state.m_min, n).array();
  return grid;
}

LatticeState to_momentum(const CVector& grid, std::int64_t m_min) {
  const Eigen::Index n = grid.size();
  if (n < 2) {
    throw std::invalid_argument("to_momentum: grid must have at least 2 points");
  }
  CVector stripped = grid.array() * window_phase(m_min, n).array().conjugate();
  std::vector<Complex> time(stripped.data(), stripped.data() + n);
  std::vector<Complex> freq(static_cast<std::size_t>(n));
  fft_engine().fwd(freq, time);  // sum_j psi_j exp(-2*pi*i*j*k/N)
  LatticeState s;
  s.m_min = m_min;
  s.amplitudes = Eigen::Map<const CVector>(freq.data(), n) / std::sqrt(static_cast<double>(n));
  return s;
}

double norm_sq(const LatticeState& state) { return state.amplitudes.squaredNorm(); }

double edge_tail_mass(const LatticeState& state) {
  const Eigen::Index n = state.size();
  const Eigen::Index margin = std::max<Eigen::Index>(1, n / 100);
  return state.amplitudes.head(margin).squaredNorm() +
         state.amplitudes.tail(margin).squaredNorm();
}

Profile momentum_profile(const LatticeState& state) {
  Profile p;
  p.reserve(static_cast<std::size_t>(state.size()));
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    p.emplace_back(state.m_at(i), std::norm(state.amplitudes[i]));
  }
  return p;
}

double mean_momentum(const LatticeState& state) {
  double mean = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    mean += static_cast<double>(state.m_at(i)) * std::norm(state.amplitudes[i]);
  }
  return mean;
}

double momentum_variance(const LatticeState& state) {
  double mean = 0.0;
  double second = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    const double m = static_cast<double>(state.m_at(i));
    mean += m * p;
    second += m * m * p;
  }
  return std::max(0.0, second - mean * mean);
}

double survival_probability(const LatticeState& state, const LatticeState& reference) {
  if (!state.same_window(reference)) {
    throw std::invalid_argument("survival_probability: states live on different windows");
  }
  return std::norm(reference.amplitudes.dot(state.amplitudes));
}

Observables observables(const LatticeState& state, const LatticeState& reference) {
  if (!state.same_window(reference)) {
    throw std::invalid_argument("observables: states live on different windows");
  }
  Observables obs;
  obs.mean_m = mean_momentum(state);
  obs.variance = momentum_variance(state);
  obs.survival = survival_probability(state, reference);
  obs.profile = momentum_profile(state);
  return obs;
}

}  // namespace qkick
