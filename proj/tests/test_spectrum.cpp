#include <doctest.h>

#include <cmath>
#include <random>

#include "qkick/floquet.hpp"
#include "qkick/spectrum.hpp"
#include "test_helpers.hpp"

using namespace qkick;

namespace {

MapSpec khm_ratios(const RationalPlanck& planck, double k_over_h, double l_over_h) {
  const double h = planck.value();
  return KhmSpec{k_over_h * h, l_over_h * h, h};
}

MapSpec dkrm_ratios(const RationalPlanck& planck, double k1, double k2) {
  return DkrmResonantSpec::from_reduced(planck.value(), k1, k2);
}

// The defining fold: U(beta)_{r,r'} = sum_s exp(i*beta*s) <r|U|r' + s*b'>,
// with the infinite-lattice matrix elements taken from a wide dense build.
CMatrix fold_oracle(const MapSpec& spec, std::int64_t period, double beta, Eigen::Index half_cells) {
  const Eigen::Index N = static_cast<Eigen::Index>(period) * (2 * half_cells + 1);
  const std::int64_t m_min = -static_cast<std::int64_t>(period) * half_cells;
  const CMatrix u = dense_operator(spec, m_min, N);
  const Eigen::Index center = static_cast<Eigen::Index>(-m_min);
  CMatrix folded = CMatrix::Zero(period, period);
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(period); ++r) {
    for (Eigen::Index rp = 0; rp < static_cast<Eigen::Index>(period); ++rp) {
      Complex sum(0.0, 0.0);
      for (Eigen::Index s = -half_cells; s <= half_cells; ++s) {
        const Eigen::Index col = center + rp + s * static_cast<Eigen::Index>(period);
        if (col < 0 || col >= N) continue;
        sum += std::polar(1.0, beta * static_cast<double>(s)) * u(center + r, col);
      }
      folded(r, rp) = sum;
    }
  }
  return folded;
}

}  // namespace

TEST_CASE("kinetic_period parity rule") {
  const MapSpec khm = khm_ratios(RationalPlanck::make(13, 41), 1.0, 1.0);
  CHECK(kinetic_period(khm, RationalPlanck::make(13, 41)) == 41);
  CHECK(kinetic_period(dkrm_ratios(RationalPlanck::make(13, 41), 1, 1), RationalPlanck::make(13, 41)) == 82);
  CHECK(kinetic_period(dkrm_ratios(RationalPlanck::make(28, 41), 1, 1), RationalPlanck::make(28, 41)) == 41);
  CHECK(kinetic_period(dkrm_ratios(RationalPlanck::make(1, 2), 1, 1), RationalPlanck::make(1, 2)) == 2);
  CHECK(kinetic_period(dkrm_ratios(RationalPlanck::make(1, 3), 1, 1), RationalPlanck::make(1, 3)) == 6);
}

TEST_CASE("quadratic cell phases are exactly periodic over the kinetic period") {
  for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{13, 41}, {28, 41}, {59, 61}}) {
    const auto planck = RationalPlanck::make(a, b);
    const MapSpec spec = dkrm_ratios(planck, 1, 1);
    const std::int64_t period = kinetic_period(spec, planck);
    const double ht = planck.value();
    for (std::int64_t m : {std::int64_t(0), std::int64_t(3), std::int64_t(17)}) {
      const Complex phase_m = unit_phase(static_cast<long double>(ht) * m * m / 2.0L);
      const long double mp = static_cast<long double>(m + period);
      const Complex phase_mp = unit_phase(static_cast<long double>(ht) * mp * mp / 2.0L);
      CHECK(std::abs(phase_m - phase_mp) < 1e-10);
    }
  }
}

TEST_CASE("bloch_operator with zero strengths is the identity") {
  const auto planck = RationalPlanck::make(2, 5);
  const MapSpec khm = khm_ratios(planck, 0.0, 0.0);
  const CMatrix u = bloch_operator(khm, planck, 1.234);
  CHECK((u - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("bloch_operator is unitary at every angle") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  for (int trial = 0; trial < 5; ++trial) {
    const double beta = angle(rng);
    for (const auto& planck : {RationalPlanck::make(13, 41), RationalPlanck::make(3, 7)}) {
      const CMatrix u1 = bloch_operator(khm_ratios(planck, 1.0, 1.0), planck, beta);
      CHECK((u1.adjoint() * u1 - CMatrix::Identity(u1.rows(), u1.cols())).cwiseAbs().maxCoeff() < 1e-10);
      const CMatrix u2 = bloch_operator(dkrm_ratios(planck, 1.0, 1.0), planck, beta);
      CHECK((u2.adjoint() * u2 - CMatrix::Identity(u2.rows(), u2.cols())).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("bloch_operator equals the literal fold of the dense matrix") {
  const auto planck = RationalPlanck::make(1, 3);
  for (double beta : {0.0, 1.234, 5.0}) {
    const MapSpec khm = khm_ratios(planck, 1.2, 0.7);
    CHECK((bloch_operator(khm, planck, beta) - fold_oracle(khm, 3, beta, 12)).cwiseAbs().maxCoeff() < 1e-12);

    const MapSpec res = dkrm_ratios(planck, 0.9, 1.1);
    CHECK((bloch_operator(res, planck, beta) - fold_oracle(res, 6, beta, 8)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bloch_operator rejects mismatched or irrational parameters") {
  const auto planck = RationalPlanck::make(1, 3);
  CHECK_THROWS_AS(bloch_operator(MapSpec(KhmSpec{1.0, 1.0, 2.0}), planck, 0.0), std::invalid_argument);
  // off-resonance general spec has no reduction
  CHECK_THROWS_AS(bloch_operator(MapSpec(DkrmGeneralSpec{1.0, 1.0, 2.0, 5.0, 0.5}), planck, 0.0),
                  std::invalid_argument);
}

TEST_CASE("band spectra against the periodized dense oracle") {
  // The wrapped dense operator on n_beta cells carries exactly the Bloch
  // spectra of the commensurate angle grid.
  const int n_beta = 16;
  for (const auto& planck : {RationalPlanck::make(2, 5), RationalPlanck::make(13, 41)}) {
    for (int kind = 0; kind < 2; ++kind) {
      const MapSpec spec = kind == 0 ? khm_ratios(planck, 1.0, 1.0) : dkrm_ratios(planck, 1.0, 1.0);
      const std::int64_t period = kinetic_period(spec, planck);
      BandOptions opt;
      opt.refine_endpoints = false;
      const BandSpectrum bs = band_structure(spec, planck, n_beta, opt);
      const Eigen::Index N = static_cast<Eigen::Index>(period) * n_beta;
      const CMatrix dense = dense_operator_periodic(spec, 0, N);
      const std::vector<double> dense_eps = eigenphases_filtered(dense, 1e-8);
      CHECK(static_cast<Eigen::Index>(dense_eps.size()) == N);
      const double dist = compare_spectra(all_eigenphases(bs), dense_eps);
      CHECK(dist < 1e-6);
    }
  }
}

TEST_CASE("closed-form single bands at hbar = 4*pi") {
  const auto planck = RationalPlanck::make(2, 1);

  SUBCASE("kicked Harper band [-(K+L)/h, (K-L)/h]") {
    for (auto [ko, lo] : {std::pair<double, double>{1.0, 1.0}, {1.2, 0.5}, {0.3, 0.4}}) {
      const MapSpec spec = khm_ratios(planck, ko, lo);
      const BandSpectrum bs = band_structure(spec, planck, 64);
      REQUIRE(bs.bands.size() == 1);
      CHECK(std::abs(bs.bands[0].eps_min - (-(ko + lo))) < 1e-10);
      CHECK(std::abs(bs.bands[0].eps_max - (ko - lo)) < 1e-10);
    }
  }
  SUBCASE("double-kicked band +-(k1+k2)") {
    for (auto [k1, k2] : {std::pair<double, double>{1.0, 1.0}, {0.5, 1.2}, {0.3, 0.4}}) {
      const MapSpec spec = dkrm_ratios(planck, k1, k2);
      const BandSpectrum bs = band_structure(spec, planck, 64);
      REQUIRE(bs.bands.size() == 1);
      CHECK(std::abs(bs.bands[0].eps_min - (-(k1 + k2))) < 1e-10);
      CHECK(std::abs(bs.bands[0].eps_max - (k1 + k2)) < 1e-10);
    }
  }
}

TEST_CASE("band_structure of the free map collapses to zero") {
  const auto planck = RationalPlanck::make(2, 5);
  const BandSpectrum bs = band_structure(khm_ratios(planck, 0.0, 0.0), planck, 8);
  CHECK(max_bandwidth(bs) < 1e-13);
  for (double eps : all_eigenphases(bs)) CHECK(std::abs(eps) < 1e-13);
}

TEST_CASE("41 bands at hbar = 2*pi*13/41") {
  const auto planck = RationalPlanck::make(13, 41);
  BandOptions opt;
  opt.refine_endpoints = false;
  const BandSpectrum bs = band_structure(khm_ratios(planck, 1.0, 1.0), planck, 64, opt);
  CHECK(bs.bands.size() == 41);
  CHECK(max_bandwidth(bs) > 1e-3);
}

TEST_CASE("Planck-constant reflection symmetry holds for KHM and breaks for DKRM") {
  const auto h0 = RationalPlanck::make(13, 41);
  const auto h1 = RationalPlanck::make(28, 41);  // 2*pi - hbar0
  BandOptions opt;
  opt.refine_endpoints = false;

  const auto khm0 = all_eigenphases(band_structure(khm_ratios(h0, 1, 1), h0, 32, opt));
  const auto khm1 = all_eigenphases(band_structure(khm_ratios(h1, 1, 1), h1, 32, opt));
  CHECK(compare_spectra(khm0, khm1) < 1e-8);

  const auto dk0 = all_eigenphases(band_structure(dkrm_ratios(h0, 1, 1), h0, 32, opt));
  const auto dk1 = all_eigenphases(band_structure(dkrm_ratios(h1, 1, 1), h1, 32, opt));
  CHECK(compare_spectra(dk0, dk1) > 1e-2);
}

TEST_CASE("KHM reflection symmetry across random rationals") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<std::int64_t> denom(5, 23);
  int tested = 0;
  while (tested < 5) {
    const std::int64_t b = denom(rng);
    std::uniform_int_distribution<std::int64_t> numer(1, b - 1);
    const std::int64_t a = numer(rng);
    if (std::gcd(a, b) != 1 || 2 * a == b) continue;  // need a distinct mirror partner
    const auto h0 = RationalPlanck::make(a, b);
    const auto h1 = RationalPlanck::make(b - a, b);  // 2*pi - 2*pi*a/b
    BandOptions opt;
    opt.refine_endpoints = false;
    const auto s0 = all_eigenphases(band_structure(khm_ratios(h0, 1, 1), h0, 24, opt));
    const auto s1 = all_eigenphases(band_structure(khm_ratios(h1, 1, 1), h1, 24, opt));
    CHECK(compare_spectra(s0, s1) < 1e-8);
    ++tested;
  }
}

TEST_CASE("flat bands appear at exactly one of the two mirror Planck constants") {
  const auto h0 = RationalPlanck::make(13, 41);
  const auto h1 = RationalPlanck::make(28, 41);
  const BandSpectrum flat = band_structure(dkrm_ratios(h0, 1, 1), h0, 64);
  const BandSpectrum broad = band_structure(dkrm_ratios(h1, 1, 1), h1, 64);
  CHECK(max_bandwidth(flat) < 1e-12);
  CHECK(max_bandwidth(broad) > 1e-3);
}

TEST_CASE("compare_spectra") {
  const std::vector<double> s{0.1, 0.5, -2.0};
  CHECK(compare_spectra(s, s) == 0.0);
  CHECK_THROWS_AS(compare_spectra({}, s), std::invalid_argument);
  // wrap-around distance: points near the two branch ends are close
  CHECK(compare_spectra({pi - 0.01}, {-pi + 0.01}) == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(compare_spectra({0.0, 1.0}, {0.0}) == doctest::Approx(1.0));
}

TEST_CASE("butterfly concatenates band structures and matches a single rational") {
  SpecFamily family;
  family.kind = SpecFamily::Kind::khm;
  const std::vector<RationalPlanck> rats{RationalPlanck::make(1, 2), RationalPlanck::make(2, 3)};
  const auto points = butterfly(family, rats, 8, 2);
  CHECK(points.size() == static_cast<std::size_t>(8 * 2 + 8 * 3));
  // first block belongs to the first rational, ordered by beta
  CHECK(points.front().b == 2);
  CHECK(points.back().b == 3);

  BandOptions opt;
  opt.refine_endpoints = false;
  const auto bs = band_structure(family.at(rats[0]), rats[0], 8, opt);
  const auto single = butterfly(family, {rats[0]}, 8, 1);
  std::size_t idx = 0;
  for (Eigen::Index j = 0; j < bs.eigenphases.rows(); ++j) {
    for (Eigen::Index i = 0; i < bs.eigenphases.cols(); ++i, ++idx) {
      CHECK(single[idx].epsilon == doctest::Approx(bs.eigenphases(j, i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("farey_rationals") {
  const auto f5 = farey_rationals(5);
  CHECK(f5.size() == 10);  // totient sum for b <= 5
  CHECK(f5.front().a == 1);
  CHECK(f5.front().b == 5);
  CHECK(f5.back().a == 1);
  CHECK(f5.back().b == 1);
  for (std::size_t i = 1; i < f5.size(); ++i) {
    CHECK(static_cast<double>(f5[i - 1].a) / f5[i - 1].b < static_cast<double>(f5[i].a) / f5[i].b);
  }
}

TEST_CASE("RationalPlanck validation") {
  CHECK_THROWS_AS(RationalPlanck::make(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(RationalPlanck::make(5, 2), std::invalid_argument);  // a/b > 2
  const auto r = RationalPlanck::make(26, 82);
  CHECK(r.a == 13);
  CHECK(r.b == 41);
}
