// io.hpp — deterministic table emission (CSV and JSON mirror) and parsing of
// Planck-constant command-line literals.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qkick/dynamics.hpp"
#include "qkick/fractal.hpp"
#include "qkick/spectrum.hpp"
#include "qkick/types.hpp"

namespace qkick {

// %.17g: shortest representation that round-trips a double.
std::string format_g17(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);  // array of row objects

// columns: a,b,hbar,beta,band_index,epsilon
Table butterfly_table(const std::vector<ButterflyPoint>& points);
// columns: a,b,band_index,eps_min,eps_max,width
Table band_summary_table(const BandSpectrum& bs);
// columns: kick,variance,survival
Table time_series_table(const TimeSeries& ts);
// columns: m,P
Table profile_table(const Profile& profile);
// columns: q,dq,fit_r2,eps_min,eps_max
Table dq_table(const std::vector<DqEstimate>& estimates);
// columns: step,q,p_tilde (or step,Q,P_tilde when harper_frame)
Table classical_table(const std::vector<std::pair<double, double>>& states, bool harper_frame);

// Planck constant given either as a rational multiple of pi ("26pi/41",
// "4pi", "pi/2") or as a decimal. Rational literals carry the exact
// RationalPlanck; decimals do not.
struct PlanckInput {
  double value = 0.0;
  std::optional<RationalPlanck> rational;
};

PlanckInput parse_planck(const std::string& text);

// Nearest continued-fraction convergent of hbar/(2*pi) with denominator
// <= b_max; spectral commands snap decimal inputs through this.
RationalPlanck snap_to_rational(double hbar, std::int64_t b_max);

unsigned default_worker_count();

}  // namespace qkick
