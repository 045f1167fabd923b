#include "qkick/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <thread>

namespace qkick {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    os << table.header[i] << (i + 1 < table.header.size() ? "," : "\n");
  }
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

namespace {

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

void write_json(std::ostream& os, const Table& table) {
  os << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const std::string& cell = table.rows[r][i];
      os << '"' << table.header[i] << "\":";
      if (looks_numeric(cell)) {
        os << cell;
      } else {
        os << '"' << cell << '"';
      }
      if (i + 1 < table.header.size()) os << ',';
    }
    os << '}' << (r + 1 < table.rows.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

Table butterfly_table(const std::vector<ButterflyPoint>& points) {
  Table t;
  t.header = {"a", "b", "hbar", "beta", "band_index", "epsilon"};
  t.rows.reserve(points.size());
  for (const auto& p : points) {
    t.rows.push_back({std::to_string(p.a), std::to_string(p.b), format_g17(p.hbar),
                      format_g17(p.beta), std::to_string(p.band_index), format_g17(p.epsilon)});
  }
  return t;
}

Table band_summary_table(const BandSpectrum& bs) {
  Table t;
  t.header = {"a", "b", "band_index", "eps_min", "eps_max", "width"};
  for (std::size_t i = 0; i < bs.bands.size(); ++i) {
    const Band& band = bs.bands[i];
    t.rows.push_back({std::to_string(bs.planck.a), std::to_string(bs.planck.b),
                      std::to_string(i), format_g17(band.eps_min), format_g17(band.eps_max),
                      format_g17(band.width)});
  }
  return t;
}

Table time_series_table(const TimeSeries& ts) {
  Table t;
  t.header = {"kick", "variance", "survival"};
  t.rows.reserve(ts.kicks.size());
  for (std::size_t i = 0; i < ts.kicks.size(); ++i) {
    t.rows.push_back(
        {std::to_string(ts.kicks[i]), format_g17(ts.variance[i]), format_g17(ts.survival[i])});
  }
  return t;
}

Table profile_table(const Profile& profile) {
  Table t;
  t.header = {"m", "P"};
  t.rows.reserve(profile.size());
  for (const auto& [m, p] : profile) {
    t.rows.push_back({std::to_string(m), format_g17(p)});
  }
  return t;
}

Table dq_table(const std::vector<DqEstimate>& estimates) {
  Table t;
  t.header = {"q", "dq", "fit_r2", "eps_min", "eps_max"};
  for (const auto& est : estimates) {
    double lo = 0.0, hi = 0.0;
    if (!est.scales_used.empty()) {
      lo = *std::min_element(est.scales_used.begin(), est.scales_used.end());
      hi = *std::max_element(est.scales_used.begin(), est.scales_used.end());
    }
    t.rows.push_back({format_g17(est.q), format_g17(est.dq), format_g17(est.fit_r2),
                      format_g17(lo), format_g17(hi)});
  }
  return t;
}

Table classical_table(const std::vector<std::pair<double, double>>& states, bool harper_frame) {
  Table t;
  t.header = harper_frame ? std::vector<std::string>{"step", "Q", "P_tilde"}
                          : std::vector<std::string>{"step", "q", "p_tilde"};
  for (std::size_t i = 0; i < states.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_g17(states[i].first), format_g17(states[i].second)});
  }
  return t;
}

PlanckInput parse_planck(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([0-9]+)?\s*pi\s*(?:/\s*([0-9]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const std::int64_t num = m[1].matched ? std::stoll(m[1]) : 1;
    const std::int64_t den = m[2].matched ? std::stoll(m[2]) : 1;
    if (num <= 0 || den <= 0) {
      throw std::invalid_argument("parse_planck: numerator and denominator must be positive");
    }
    // A*pi/B = 2*pi * A/(2B)
    const RationalPlanck planck = RationalPlanck::make(num, 2 * den);
    return {planck.value(), planck};
  }
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !(value > 0.0)) {
    throw std::invalid_argument("parse_planck: cannot parse '" + text +
                                "' (expected e.g. 26pi/41, 4pi, or a positive decimal)");
  }
  return {value, std::nullopt};
}

RationalPlanck snap_to_rational(double hbar, std::int64_t b_max) {
  if (!(hbar > 0.0) || !(hbar <= 2.0 * two_pi)) {
    throw std::invalid_argument("snap_to_rational: hbar must lie in (0, 4*pi]");
  }
  const double x = hbar / two_pi;  // in (0, 2]
  const auto ip = static_cast<std::int64_t>(std::floor(x));
  const double frac = x - static_cast<double>(ip);

  std::vector<RationalPlanck> candidates;
  if (ip >= 1) candidates.push_back(RationalPlanck::make(ip, 1));
  if (ip + 1 <= 2) candidates.push_back(RationalPlanck::make(ip + 1, 1));
  if (frac > 1e-15 && frac < 1.0 - 1e-15) {
    for (const RationalPlanck& c : convergents(frac, b_max)) {
      candidates.push_back(RationalPlanck::make(ip * c.b + c.a, c.b));
    }
  }
  RationalPlanck best = candidates.front();
  double best_err = std::abs(x - static_cast<double>(best.a) / static_cast<double>(best.b));
  for (const RationalPlanck& c : candidates) {
    const double err = std::abs(x - static_cast<double>(c.a) / static_cast<double>(c.b));
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("QKICK_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace qkick
