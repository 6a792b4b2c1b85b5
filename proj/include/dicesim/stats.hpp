#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dicesim/errors.hpp"

namespace dicesim::stats {

struct Histogram {
  std::uint32_t sides = 0;
  std::vector<std::uint64_t> counts;  // counts[f - 1] for face f
  std::uint64_t total = 0;
};

/// Thrown by tally() for a face outside 1..sides.
class OutOfRangeRoll : public ValidationError {
 public:
  OutOfRangeRoll(std::size_t index, std::uint64_t value, std::uint32_t sides);
  std::size_t index() const noexcept { return index_; }
  std::uint64_t value() const noexcept { return value_; }

 private:
  std::size_t index_;
  std::uint64_t value_;
};

Histogram tally(std::span<const std::uint32_t> rolls, std::uint32_t sides);

/// Buckets raw 32-bit words into `bins` equal-width bins (bin = w * bins >> 32),
/// reported as faces 1..bins.
Histogram raw_histogram(std::span<const std::uint32_t> words, std::uint32_t bins = 256);

struct ChiSquare {
  double statistic = 0.0;
  std::uint32_t dof = 0;
};

/// Pearson statistic against the uniform expectation N/d. Throws
/// ValidationError when N = 0.
ChiSquare chi_square(const Histogram& h);

/// Exact preimage counts of x -> (x mod d) + 1 over all k-bit words x.
struct BiasReport {
  std::uint32_t sides = 0;
  std::uint32_t domain_bits = 0;
  std::uint64_t quotient = 0;   // floor(2^k / d)
  std::uint64_t remainder = 0;  // 2^k mod d; faces 1..remainder get one extra
  std::vector<std::uint64_t> preimages;
  double max_min_ratio = 1.0;
};

/// sides >= 1, 1 <= domain_bits <= 63.
BiasReport modulo_bias(std::uint32_t sides, std::uint32_t domain_bits);

enum class Alpha : std::uint8_t { P05, P01, P001 };

double alpha_value(Alpha a);
Alpha alpha_from_value(double a);  // accepts 0.05, 0.01, 0.001

inline constexpr std::uint32_t kMaxTabulatedDof = 99;

/// Upper critical value of the chi-square distribution from the built-in
/// table, dof 1..99.
double critical_value(std::uint32_t dof, Alpha alpha);

struct UniformityReport {
  bool pass = false;
  double statistic = 0.0;
  double critical = 0.0;
  std::uint32_t dof = 0;
  Alpha alpha = Alpha::P05;
};

/// Pass iff statistic < critical value. Rejects N < 10 * sides (expected
/// count per face below 10 makes the approximation unreliable).
UniformityReport uniformity_report(const Histogram& h, Alpha alpha);

std::string histogram_csv(const Histogram& h);
std::string ascii_chart(const Histogram& h, int width = 50);
std::string bias_report_text(const BiasReport& r);

}  // namespace dicesim::stats
