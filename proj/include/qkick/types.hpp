// types.hpp — scalar aliases, rational Planck constants, and kicked-map parameter sets.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

namespace qkick {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline bool is_finite(double x) { return std::isfinite(x); }

// exp(i*angle) with the argument reduced in extended precision; keeps
// quadratic kinetic phases accurate for momenta far from the window center.
inline Complex unit_phase(long double angle) {
  constexpr long double tp = 2.0L * std::numbers::pi_v<long double>;
  const double r = static_cast<double>(std::fmod(angle, tp));
  return Complex(std::cos(r), std::sin(r));
}

// Effective Planck constant hbar = 2*pi*a/b with gcd(a,b) = 1.
// The admissible window (0, 4*pi] corresponds to 0 < a/b <= 2.
struct RationalPlanck {
  std::int64_t a = 1;
  std::int64_t b = 1;

  static RationalPlanck make(std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) {
      throw std::invalid_argument("RationalPlanck: a and b must be positive");
    }
    const std::int64_t g = std::gcd(a, b);
    a /= g;
    b /= g;
    if (2 * b < a) {
      throw std::invalid_argument("RationalPlanck: a/b must lie in (0, 2]");
    }
    return RationalPlanck{a, b};
  }

  double value() const { return two_pi * static_cast<double>(a) / static_cast<double>(b); }

  bool operator==(const RationalPlanck&) const = default;
};

// ---------------------------------------------------------------------------
// Map parameter sets. One period of each map applies its factors right to
// left, the rightmost factor acting first.
// ---------------------------------------------------------------------------

// Kicked Harper map: exp(-i*(L/hbar)*cos(p)) * exp(-i*(K/hbar)*cos(q)).
struct KhmSpec {
  double K = 0.0;
  double L = 0.0;
  double hbar = 1.0;

  double kick_argument() const { return K / hbar; }
  double kinetic_argument() const { return L / hbar; }
};

// Double-kicked rotor over one full period:
// exp(-i*(T-eta)*p^2/(2 hbar)) * exp(-i*(K2/hbar)*cos q)
//   * exp(-i*eta*p^2/(2 hbar)) * exp(-i*(K1/hbar)*cos q).
struct DkrmGeneralSpec {
  double K1 = 0.0;
  double K2 = 0.0;
  double hbar = 1.0;
  double T = 1.0;
  double eta = 0.5;

  double resonance_defect() const { return T * hbar - 2.0 * two_pi; }
  double hbar_tilde() const { return eta * hbar; }
};

// Resonant reduction of the double-kicked rotor (T*hbar = 4*pi):
// exp(+i*hbar_t*m^2/2) * exp(-i*k2*cos q) * exp(-i*hbar_t*m^2/2) * exp(-i*k1*cos q)
// with hbar_t = eta*hbar and reduced strengths k_i = Ktilde_i/hbar_t = K_i/hbar.
class DkrmResonantSpec {
 public:
  static constexpr double resonance_tol = 1e-12;

  // Build from the rescaled Planck constant and reduced kick strengths.
  static DkrmResonantSpec from_reduced(double hbar_tilde, double k1, double k2) {
    require_positive_hbar(hbar_tilde);
    require_strength(k1);
    require_strength(k2);
    return DkrmResonantSpec(hbar_tilde, k1, k2);
  }

  // Build from the rescaled strengths Ktilde_i = eta*K_i.
  static DkrmResonantSpec from_strengths(double hbar_tilde, double Kt1, double Kt2) {
    require_positive_hbar(hbar_tilde);
    require_strength(Kt1);
    require_strength(Kt2);
    return DkrmResonantSpec(hbar_tilde, Kt1 / hbar_tilde, Kt2 / hbar_tilde);
  }

  // Reduction of a general double-kicked rotor on quantum resonance.
  static DkrmResonantSpec from_general(const DkrmGeneralSpec& g) {
    if (std::abs(g.resonance_defect()) >= resonance_tol) {
      throw std::invalid_argument(
          "DkrmResonantSpec: general parameters violate the resonance condition "
          "T*hbar = 4*pi (defect " + std::to_string(g.resonance_defect()) + ")");
    }
    require_positive_hbar(g.hbar_tilde());
    return DkrmResonantSpec(g.hbar_tilde(), g.K1 / g.hbar, g.K2 / g.hbar);
  }

  double hbar_tilde() const { return hbar_tilde_; }
  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double Kt1() const { return k1_ * hbar_tilde_; }
  double Kt2() const { return k2_ * hbar_tilde_; }

 private:
  DkrmResonantSpec(double hbar_tilde, double k1, double k2)
      : hbar_tilde_(hbar_tilde), k1_(k1), k2_(k2) {}

  static void require_positive_hbar(double h) {
    if (!is_finite(h) || h <= 0.0) {
      throw std::invalid_argument("DkrmResonantSpec: hbar_tilde must be positive");
    }
  }
  static void require_strength(double s) {
    if (!is_finite(s) || s < 0.0) {
      throw std::invalid_argument("DkrmResonantSpec: strengths must be finite and non-negative");
    }
  }

  double hbar_tilde_;
  double k1_;
  double k2_;
};

using MapSpec = std::variant<KhmSpec, DkrmResonantSpec, DkrmGeneralSpec>;

inline void validate(const KhmSpec& s) {
  if (!is_finite(s.K) || !is_finite(s.L) || s.K < 0.0 || s.L < 0.0) {
    throw std::invalid_argument("KhmSpec: strengths must be finite and non-negative");
  }
  if (!is_finite(s.hbar) || s.hbar <= 0.0) {
    throw std::invalid_argument("KhmSpec: hbar must be positive");
  }
}

inline void validate(const DkrmGeneralSpec& s) {
  if (!is_finite(s.K1) || !is_finite(s.K2) || s.K1 < 0.0 || s.K2 < 0.0) {
    throw std::invalid_argument("DkrmGeneralSpec: strengths must be finite and non-negative");
  }
  if (!is_finite(s.hbar) || s.hbar <= 0.0) {
    throw std::invalid_argument("DkrmGeneralSpec: hbar must be positive");
  }
  if (!is_finite(s.T) || !is_finite(s.eta) || !(s.eta > 0.0) || !(s.eta < s.T)) {
    throw std::invalid_argument("DkrmGeneralSpec: requires 0 < eta < T");
  }
}

inline void validate(const DkrmResonantSpec&) {}  // invariants held by construction

inline void validate(const MapSpec& spec) {
  std::visit([](const auto& s) { validate(s); }, spec);
}

}  // namespace qkick
