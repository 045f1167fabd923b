// floquet.hpp — one-period unitaries of the kicked maps: split-step application
// on lattice states and dense momentum-basis matrix assembly.
//
// Composed maps apply their factors right to left (rightmost factor first):
//   KHM            kinetic_khm ∘ kick(K/hbar)
//   DKRM resonant  kinetic_quadratic(+) ∘ kick(k2) ∘ kinetic_quadratic(-) ∘ kick(k1)
//   DKRM general   free(T-eta) ∘ kick(K2/hbar) ∘ free(eta) ∘ kick(K1/hbar)

#pragma once

#include <cstdint>
#include <vector>

#include "qkick/errors.hpp"
#include "qkick/lattice.hpp"
#include "qkick/types.hpp"

namespace qkick {

// exp(-i*c*cos q): transform to the position grid, multiply, transform back.
LatticeState apply_kick(const LatticeState& state, double c);

// exp(-i*(L/hbar)*cos(m*hbar)) on each |m>.
LatticeState apply_kinetic_khm(const LatticeState& state, double l_over_hbar, double hbar);

// exp(sign*i*hbar_tilde*m^2/2) on each |m>; sign = +1 or -1.
LatticeState apply_kinetic_quadratic(const LatticeState& state, int sign, double hbar_tilde);

// Free rotor evolution exp(-i*tau*hbar*m^2/2) over a time interval tau.
LatticeState apply_free(const LatticeState& state, double tau, double hbar);

// Reusable one-period split-step operator for a fixed window. Diagonal factors
// are precomputed; each apply costs one FFT round trip per kick factor.
class StepOperator {
 public:
  StepOperator(const MapSpec& spec, std::int64_t m_min, Eigen::Index N);

  // Advances one period. Throws WindowOverflowError when the edge tail of the
  // result exceeds edge_tail_tolerance.
  LatticeState apply(const LatticeState& state) const;

  std::int64_t m_min() const { return m_min_; }
  Eigen::Index size() const { return n_; }

 private:
  struct Stage {
    bool in_position;  // kick factors are diagonal on the position grid
    CVector diag;
  };
  std::vector<Stage> stages_;
  std::int64_t m_min_;
  Eigen::Index n_;
};

// One period of the map on the state's own window.
LatticeState step(const LatticeState& state, const MapSpec& spec);

// Momentum matrix of exp(-i*c*cos q) truncated to an N-site window:
// entries (-i)^{m'-m} J_{m'-m}(c), banded by kick_band_limit(c).
CMatrix dense_kick_matrix(double c, Eigen::Index N);

// Full one-period matrix U_{m'm} on the window; unitary up to truncation
// tails near the edges.
CMatrix dense_operator(const MapSpec& spec, std::int64_t m_min, Eigen::Index N);

// Periodized variant: kick couplings wrap around the window (exactly the
// matrix of the position-grid split step), so the result is unitary for any
// N. When N is a multiple of the kinetic period its spectrum is the union of
// the Bloch spectra over N/period uniform angles; spectral oracle for the
// Bloch reduction.
CMatrix dense_operator_periodic(const MapSpec& spec, std::int64_t m_min, Eigen::Index N);

// Matrix element of the quadratically conjugated kick
// exp(+i*hbar_t*m^2/2) exp(-i*c*cos q) exp(-i*hbar_t*m^2/2):
//   exp(i*hbar_t*(m'^2-m^2)/2) * (-i)^{m'-m} * J_{m'-m}(c).
Complex shifted_kick_element(std::int64_t m_prime, std::int64_t m, double c, double hbar_tilde);

// (-i)^n for any integer n.
Complex minus_i_pow(std::int64_t n);

}  // namespace qkick
