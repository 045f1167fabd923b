// classical.hpp — resonant classical limit of the double-kicked rotor, the
// classical kicked Harper map, and the canonical frame change between them.
//
// Angles live on [0, 2*pi) and are reduced after every sub-step; momenta are
// never reduced during iteration (the frame change needs the unreduced value),
// only for display.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qkick {

template <class Real>
Real wrap_angle(Real x) {
  constexpr Real tp = 2 * std::numbers::pi_v<Real>;
  Real r = std::fmod(x, tp);
  if (r < Real(0)) r += tp;
  return r;
}

template <class Real = double>
struct ClassicalState {
  Real q = 0;        // angle in [0, 2*pi)
  Real p_tilde = 0;  // rescaled momentum, unreduced
};

template <class Real = double>
struct HarperState {
  Real Q = 0;        // angle in [0, 2*pi)
  Real P_tilde = 0;  // unreduced; take mod 2*pi when plotting on the torus
};

// One composite period (two kicks): advances the pre-kick trajectory by two
// kick indices. Sub-steps in order:
//   p += Kt2 sin q;  q += p;  p += Kt1 sin q;  q -= p.
template <class Real>
ClassicalState<Real> dkrm_classical_step(ClassicalState<Real> s, Real Kt1, Real Kt2) {
  s.p_tilde += Kt2 * std::sin(s.q);
  s.q = wrap_angle(s.q + s.p_tilde);
  s.p_tilde += Kt1 * std::sin(s.q);
  s.q = wrap_angle(s.q - s.p_tilde);
  return s;
}

template <class Real>
ClassicalState<Real> dkrm_classical_step_inverse(ClassicalState<Real> s, Real Kt1, Real Kt2) {
  s.q = wrap_angle(s.q + s.p_tilde);
  s.p_tilde -= Kt1 * std::sin(s.q);
  s.q = wrap_angle(s.q - s.p_tilde);
  s.p_tilde -= Kt2 * std::sin(s.q);
  return s;
}

// Kicked Harper map over the same composite period:
//   P += Kt2 sin Q;  Q -= Kt1 sin P.
template <class Real>
HarperState<Real> harper_classical_step(HarperState<Real> s, Real Kt1, Real Kt2) {
  s.P_tilde += Kt2 * std::sin(s.Q);
  s.Q = wrap_angle(s.Q - Kt1 * std::sin(s.P_tilde));
  return s;
}

template <class Real>
HarperState<Real> harper_classical_step_inverse(HarperState<Real> s, Real Kt1, Real Kt2) {
  s.Q = wrap_angle(s.Q + Kt1 * std::sin(s.P_tilde));
  s.P_tilde -= Kt2 * std::sin(s.Q);
  return s;
}

// Canonical frame change (q, p+q) -> (Q, P). Conjugates the double-kicked
// composite step to the kicked Harper step.
template <class Real>
HarperState<Real> to_harper_frame(const ClassicalState<Real>& s) {
  return HarperState<Real>{s.q, s.p_tilde + s.q};
}

template <class Real>
std::vector<ClassicalState<Real>> dkrm_trajectory(const ClassicalState<Real>& initial, Real Kt1,
                                                  Real Kt2, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("dkrm_trajectory: n_steps must be at least 1");
  std::vector<ClassicalState<Real>> traj;
  traj.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.push_back({wrap_angle(initial.q), initial.p_tilde});
  for (int i = 0; i < n_steps; ++i) {
    traj.push_back(dkrm_classical_step(traj.back(), Kt1, Kt2));
  }
  return traj;
}

template <class Real>
std::vector<HarperState<Real>> harper_trajectory(const HarperState<Real>& initial, Real Kt1,
                                                 Real Kt2, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("harper_trajectory: n_steps must be at least 1");
  std::vector<HarperState<Real>> traj;
  traj.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.push_back({wrap_angle(initial.Q), initial.P_tilde});
  for (int i = 0; i < n_steps; ++i) {
    traj.push_back(harper_classical_step(traj.back(), Kt1, Kt2));
  }
  return traj;
}

}  // namespace qkick
