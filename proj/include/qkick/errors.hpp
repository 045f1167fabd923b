// errors.hpp — failure types surfaced by evolution and diagonalization.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qkick {

// Raised when probability mass reaches the edge of the truncated momentum
// window; the run must be repeated with a larger window.
class WindowOverflowError : public std::runtime_error {
 public:
  WindowOverflowError(std::int64_t kick_index, double tail_mass)
      : std::runtime_error("momentum window insufficient: edge-tail mass " +
                           std::to_string(tail_mass) + " at kick " +
                           std::to_string(kick_index)),
        kick_index_(kick_index),
        tail_mass_(tail_mass) {}

  std::int64_t kick_index() const { return kick_index_; }
  double tail_mass() const { return tail_mass_; }

 private:
  std::int64_t kick_index_;
  double tail_mass_;
};

class EigensolverError : public std::runtime_error {
 public:
  explicit EigensolverError(double beta)
      : std::runtime_error("eigensolver did not converge at bloch angle " + std::to_string(beta)),
        beta_(beta) {}

  double beta() const { return beta_; }

 private:
  double beta_;
};

}  // namespace qkick
