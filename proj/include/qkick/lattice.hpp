// lattice.hpp — truncated momentum-lattice states, position transforms, observables.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qkick/types.hpp"

namespace qkick {

// Wavefunction over the momentum window m = m_min .. m_min + N - 1,
// amplitudes[i] = <m_min + i | psi>.
struct LatticeState {
  std::int64_t m_min = 0;
  CVector amplitudes;

  Eigen::Index size() const { return amplitudes.size(); }
  std::int64_t m_at(Eigen::Index i) const { return m_min + static_cast<std::int64_t>(i); }
  bool same_window(const LatticeState& other) const {
    return m_min == other.m_min && size() == other.size();
  }
};

using Profile = std::vector<std::pair<std::int64_t, double>>;

struct Observables {
  double mean_m = 0.0;
  double variance = 0.0;
  double survival = 0.0;
  Profile profile;
};

// |m0> on the window [m_min, m_min + N). Throws std::out_of_range if m0 is
// outside the window, std::invalid_argument if N < 2.
LatticeState basis_state(std::int64_t m0, std::int64_t m_min, Eigen::Index N);

// Unitary transform to amplitudes on the position grid q_j = 2*pi*j/N:
// psi(q_j) = N^{-1/2} sum_m c_m exp(i*m*q_j).
CVector to_position(const LatticeState& state);

// Inverse of to_position; m_min fixes which momentum window the grid
// amplitudes fold back onto.
LatticeState to_momentum(const CVector& grid, std::int64_t m_min);

double norm_sq(const LatticeState& state);

// Probability in the outermost max(1, N/100) sites on each side. Evolution
// treats a value above the tolerance as a truncation-window failure.
double edge_tail_mass(const LatticeState& state);

inline constexpr double edge_tail_tolerance = 1e-12;

Profile momentum_profile(const LatticeState& state);

double mean_momentum(const LatticeState& state);
double momentum_variance(const LatticeState& state);

// |<reference|state>|^2.
double survival_probability(const LatticeState& state, const LatticeState& reference);

// Throws std::invalid_argument when the two states live on different windows.
Observables observables(const LatticeState& state, const LatticeState& reference);

}  // namespace qkick
