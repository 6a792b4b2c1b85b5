#include "dicesim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dicesim::stats {

OutOfRangeRoll::OutOfRangeRoll(std::size_t index, std::uint64_t value, std::uint32_t sides)
    : ValidationError("roll #" + std::to_string(index) + " = " + std::to_string(value) + " is outside 1.." +
                      std::to_string(sides)),
      index_(index),
      value_(value) {}

Histogram tally(std::span<const std::uint32_t> rolls, std::uint32_t sides) {
  if (sides == 0) throw ValidationError("dice must have at least one side");
  Histogram h{sides, std::vector<std::uint64_t>(sides, 0), 0};
  for (std::size_t i = 0; i < rolls.size(); ++i) {
    const std::uint32_t face = rolls[i];
    if (face < 1 || face > sides) throw OutOfRangeRoll(i, face, sides);
    ++h.counts[face - 1];
  }
  h.total = rolls.size();
  return h;
}

Histogram raw_histogram(std::span<const std::uint32_t> words, std::uint32_t bins) {
  if (bins == 0) throw ValidationError("bin count must be positive");
  Histogram h{bins, std::vector<std::uint64_t>(bins, 0), words.size()};
  for (std::uint32_t w : words) ++h.counts[(static_cast<std::uint64_t>(w) * bins) >> 32];
  return h;
}

ChiSquare chi_square(const Histogram& h) {
  if (h.total == 0) throw ValidationError("chi-square needs at least one observation");
  const double expected = static_cast<double>(h.total) / h.sides;
  double stat = 0.0;
  for (std::uint64_t observed : h.counts) {
    const double diff = static_cast<double>(observed) - expected;
    stat += diff * diff / expected;
  }
  return ChiSquare{stat, h.sides - 1};
}

BiasReport modulo_bias(std::uint32_t sides, std::uint32_t domain_bits) {
  if (sides < 1) throw ValidationError("dice must have at least one side");
  if (domain_bits < 1 || domain_bits > 63) throw ValidationError("domain bits must be in 1..63");
  const std::uint64_t domain = std::uint64_t{1} << domain_bits;
  BiasReport r;
  r.sides = sides;
  r.domain_bits = domain_bits;
  r.quotient = domain / sides;
  r.remainder = domain % sides;
  r.preimages.resize(sides);
  for (std::uint32_t f = 0; f < sides; ++f) r.preimages[f] = r.quotient + (f < r.remainder ? 1 : 0);
  const auto [lo, hi] = std::minmax_element(r.preimages.begin(), r.preimages.end());
  r.max_min_ratio = *lo == 0 ? INFINITY : static_cast<double>(*hi) / static_cast<double>(*lo);
  return r;
}

double alpha_value(Alpha a) {
  switch (a) {
    case Alpha::P05: return 0.05;
    case Alpha::P01: return 0.01;
    case Alpha::P001: return 0.001;
  }
  return 0.0;
}

Alpha alpha_from_value(double a) {
  for (Alpha candidate : {Alpha::P05, Alpha::P01, Alpha::P001}) {
    if (std::abs(alpha_value(candidate) - a) < 1e-12) return candidate;
  }
  throw ValidationError("alpha must be one of 0.05, 0.01, 0.001");
}

UniformityReport uniformity_report(const Histogram& h, Alpha alpha) {
  if (h.total < 10ull * h.sides) {
    throw ValidationError("need at least " + std::to_string(10ull * h.sides) + " rolls for a " +
                          std::to_string(h.sides) + "-sided test (10 per face), got " + std::to_string(h.total));
  }
  const ChiSquare cs = chi_square(h);
  UniformityReport r;
  r.statistic = cs.statistic;
  r.dof = cs.dof;
  r.critical = critical_value(cs.dof, alpha);
  r.alpha = alpha;
  r.pass = r.statistic < r.critical;
  return r;
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream os;
  os << "face,count,expected\n";
  const double expected = h.sides ? static_cast<double>(h.total) / h.sides : 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", expected);
  for (std::uint32_t f = 0; f < h.sides; ++f) os << (f + 1) << ',' << h.counts[f] << ',' << buf << '\n';
  return os.str();
}

std::string ascii_chart(const Histogram& h, int width) {
  std::ostringstream os;
  const std::uint64_t peak = h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  const int label = static_cast<int>(std::to_string(h.sides).size());
  char buf[64];
  for (std::uint32_t f = 0; f < h.sides; ++f) {
    const int bar = peak == 0 ? 0 : static_cast<int>((h.counts[f] * static_cast<std::uint64_t>(width) + peak / 2) / peak);
    std::snprintf(buf, sizeof buf, "%*u |", label, f + 1);
    os << buf << std::string(static_cast<std::size_t>(bar), '#') << ' ' << h.counts[f] << '\n';
  }
  return os.str();
}

std::string bias_report_text(const BiasReport& r) {
  std::ostringstream os;
  os << "d=" << r.sides << " over " << r.domain_bits << "-bit words\n";
  os << "quotient=" << r.quotient << " remainder=" << r.remainder << '\n';
  if (r.remainder == 0) {
    os << "faces 1.." << r.sides << ": " << r.quotient << " preimages each (uniform)\n";
  } else {
    os << "faces 1.." << r.remainder << ": " << r.quotient + 1 << " preimages\n";
    os << "faces " << r.remainder + 1 << ".." << r.sides << ": " << r.quotient << " preimages\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.max_min_ratio);
  os << "max/min probability ratio=" << buf << '\n';
  return os.str();
}

}  // namespace dicesim::stats
