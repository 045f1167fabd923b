#include "qkick/floquet.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "qkick/bessel.hpp"

namespace qkick {

namespace {

constexpr long double pi_l = std::numbers::pi_v<long double>;

CVector kick_grid_diag(double c, Eigen::Index n) {
  CVector d(n);
  const double dq = two_pi / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d[j] = std::polar(1.0, -c * std::cos(dq * static_cast<double>(j)));
  }
  return d;
}

CVector khm_kinetic_diag(double l_over_hbar, double hbar, std::int64_t m_min, Eigen::Index n) {
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double m = static_cast<long double>(m_min + i);
    const double cos_mh = std::cos(static_cast<double>(std::fmod(m * static_cast<long double>(hbar), 2.0L * pi_l)));
    d[i] = std::polar(1.0, -l_over_hbar * cos_mh);
  }
  return d;
}

CVector quadratic_diag(int sign, double hbar_tilde, std::int64_t m_min, Eigen::Index n) {
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double m = static_cast<long double>(m_min + i);
    d[i] = unit_phase(static_cast<long double>(sign) * static_cast<long double>(hbar_tilde) * m * m / 2.0L);
  }
  return d;
}

CVector free_diag(double tau, double hbar, std::int64_t m_min, Eigen::Index n) {
  const long double phi = -static_cast<long double>(tau) * static_cast<long double>(hbar) / 2.0L;
  CVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double m = static_cast<long double>(m_min + i);
    d[i] = unit_phase(phi * m * m);
  }
  return d;
}

LatticeState multiply_on_grid(const LatticeState& state, const CVector& grid_diag) {
  CVector grid = to_position(state);
  grid.array() *= grid_diag.array();
  return to_momentum(grid, state.m_min);
}

LatticeState multiply_diagonal(const LatticeState& state, const CVector& diag) {
  LatticeState out;
  out.m_min = state.m_min;
  out.amplitudes = state.amplitudes.array() * diag.array();
  return out;
}

}  // namespace

LatticeState apply_kick(const LatticeState& state, double c) {
  if (!is_finite(c)) throw std::invalid_argument("apply_kick: strength must be finite");
  return multiply_on_grid(state, kick_grid_diag(c, state.size()));
}

LatticeState apply_kinetic_khm(const LatticeState& state, double l_over_hbar, double hbar) {
  return multiply_diagonal(state, khm_kinetic_diag(l_over_hbar, hbar, state.m_min, state.size()));
}

LatticeState apply_kinetic_quadratic(const LatticeState& state, int sign, double hbar_tilde) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("apply_kinetic_quadratic: sign must be +1 or -1");
  }
  return multiply_diagonal(state, quadratic_diag(sign, hbar_tilde, state.m_min, state.size()));
}

LatticeState apply_free(const LatticeState& state, double tau, double hbar) {
  return multiply_diagonal(state, free_diag(tau, hbar, state.m_min, state.size()));
}

StepOperator::StepOperator(const MapSpec& spec, std::int64_t m_min, Eigen::Index N)
    : m_min_(m_min), n_(N) {
  if (N < 2) throw std::invalid_argument("StepOperator: lattice size must be at least 2");
  validate(spec);
  if (const auto* khm = std::get_if<KhmSpec>(&spec)) {
    stages_.push_back({true, kick_grid_diag(khm->kick_argument(), N)});
    stages_.push_back({false, khm_kinetic_diag(khm->kinetic_argument(), khm->hbar, m_min, N)});
  } else if (const auto* res = std::get_if<DkrmResonantSpec>(&spec)) {
    stages_.push_back({true, kick_grid_diag(res->k1(), N)});
    stages_.push_back({false, quadratic_diag(-1, res->hbar_tilde(), m_min, N)});
    stages_.push_back({true, kick_grid_diag(res->k2(), N)});
    stages_.push_back({false, quadratic_diag(+1, res->hbar_tilde(), m_min, N)});
  } else {
    const auto& gen = std::get<DkrmGeneralSpec>(spec);
    stages_.push_back({true, kick_grid_diag(gen.K1 / gen.hbar, N)});
    stages_.push_back({false, free_diag(gen.eta, gen.hbar, m_min, N)});
    stages_.push_back({true, kick_grid_diag(gen.K2 / gen.hbar, N)});
    stages_.push_back({false, free_diag(gen.T - gen.eta, gen.hbar, m_min, N)});
  }
}

LatticeState StepOperator::apply(const LatticeState& state) const {
  if (state.m_min != m_min_ || state.size() != n_) {
    throw std::invalid_argument("StepOperator: state window does not match operator window");
  }
  LatticeState cur = state;
  for (const Stage& stage : stages_) {
    cur = stage.in_position ? multiply_on_grid(cur, stage.diag) : multiply_diagonal(cur, stage.diag);
  }
  const double tail = edge_tail_mass(cur);
  if (tail > edge_tail_tolerance) {
    throw WindowOverflowError(-1, tail);
  }
  return cur;
}

LatticeState step(const LatticeState& state, const MapSpec& spec) {
  return StepOperator(spec, state.m_min, state.size()).apply(state);
}

Complex minus_i_pow(std::int64_t n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

CMatrix dense_kick_matrix(double c, Eigen::Index N) {
  if (N < 1) throw std::invalid_argument("dense_kick_matrix: N must be positive");
  const int band = kick_band_limit(c);
  const auto j = bessel_j_array(band, c);
  CMatrix K = CMatrix::Zero(N, N);
  for (Eigen::Index row = 0; row < N; ++row) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, row - band);
    const Eigen::Index hi = std::min<Eigen::Index>(N - 1, row + band);
    for (Eigen::Index col = lo; col <= hi; ++col) {
      const std::int64_t d = std::llabs(static_cast<long long>(row - col));
      // (-i)^{m'-m} J_{m'-m}(c) depends on |m'-m| only.
      K(row, col) = minus_i_pow(d) * j[static_cast<std::size_t>(d)];
    }
  }
  return K;
}

namespace {

// Kick matrix with couplings wrapped modulo the window size.
CMatrix periodic_kick_matrix(double c, Eigen::Index N) {
  const int band = kick_band_limit(c);
  const auto j = bessel_j_array(band, c);
  CMatrix K = CMatrix::Zero(N, N);
  for (Eigen::Index row = 0; row < N; ++row) {
    for (Eigen::Index col = 0; col < N; ++col) {
      const std::int64_t d = row - col;
      const auto s_lo = static_cast<std::int64_t>(std::floor((-static_cast<double>(band) - static_cast<double>(d)) / static_cast<double>(N)));
      const auto s_hi = static_cast<std::int64_t>(std::ceil((static_cast<double>(band) - static_cast<double>(d)) / static_cast<double>(N)));
      Complex sum(0.0, 0.0);
      for (std::int64_t s = s_lo; s <= s_hi; ++s) {
        const std::int64_t image = d + s * static_cast<std::int64_t>(N);
        const std::int64_t ad = std::llabs(static_cast<long long>(image));
        if (ad <= band) sum += minus_i_pow(ad) * j[static_cast<std::size_t>(ad)];
      }
      K(row, col) = sum;
    }
  }
  return K;
}

CMatrix assemble_operator(const MapSpec& spec, std::int64_t m_min, Eigen::Index N,
                          const std::function<CMatrix(double, Eigen::Index)>& kick) {
  if (N < 2) throw std::invalid_argument("dense_operator: N must be at least 2");
  validate(spec);
  if (const auto* khm = std::get_if<KhmSpec>(&spec)) {
    const CVector kin = khm_kinetic_diag(khm->kinetic_argument(), khm->hbar, m_min, N);
    return kin.asDiagonal() * kick(khm->kick_argument(), N);
  }
  if (const auto* res = std::get_if<DkrmResonantSpec>(&spec)) {
    const CVector d_plus = quadratic_diag(+1, res->hbar_tilde(), m_min, N);
    const CVector d_minus = quadratic_diag(-1, res->hbar_tilde(), m_min, N);
    CMatrix u = kick(res->k2(), N) * (d_minus.asDiagonal() * kick(res->k1(), N));
    return d_plus.asDiagonal() * u;
  }
  const auto& gen = std::get<DkrmGeneralSpec>(spec);
  const CVector f_eta = free_diag(gen.eta, gen.hbar, m_min, N);
  const CVector f_rest = free_diag(gen.T - gen.eta, gen.hbar, m_min, N);
  CMatrix u = kick(gen.K2 / gen.hbar, N) * (f_eta.asDiagonal() * kick(gen.K1 / gen.hbar, N));
  return f_rest.asDiagonal() * u;
}

}  // namespace

CMatrix dense_operator(const MapSpec& spec, std::int64_t m_min, Eigen::Index N) {
  return assemble_operator(spec, m_min, N, dense_kick_matrix);
}

CMatrix dense_operator_periodic(const MapSpec& spec, std::int64_t m_min, Eigen::Index N) {
  return assemble_operator(spec, m_min, N, periodic_kick_matrix);
}

Complex shifted_kick_element(std::int64_t m_prime, std::int64_t m, double c, double hbar_tilde) {
  const std::int64_t d = m_prime - m;
  const long double msq_diff = static_cast<long double>(m_prime) * m_prime - static_cast<long double>(m) * m;
  const Complex conj_phase = unit_phase(static_cast<long double>(hbar_tilde) * msq_diff / 2.0L);
  return conj_phase * minus_i_pow(d) * bessel_j(static_cast<int>(d), c);
}

}  // namespace qkick
