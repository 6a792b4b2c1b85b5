#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace dicesim::timing {

inline constexpr std::uint64_t kSysclkHz = 12'000'000;

/// Derived clock domains of the top module. Declaration order is also the
/// tie-break order for edges that land on the same sysclk cycle.
enum class Domain : std::uint8_t { Hz1000, Hz1500, Hz500, Hz10, S5 };

inline constexpr std::size_t kDomainCount = 5;
inline constexpr std::array<Domain, kDomainCount> kDomainOrder{
    Domain::Hz1000, Domain::Hz1500, Domain::Hz500, Domain::Hz10, Domain::S5};

/// Sysclk cycles per output toggle (the divider's terminal count + 1).
constexpr std::uint64_t half_period(Domain d) {
  switch (d) {
    case Domain::Hz1000: return 6000;
    case Domain::Hz1500: return 4000;
    case Domain::Hz500: return 12000;
    case Domain::Hz10: return 600024;
    case Domain::S5: return 30001200;
  }
  return 0;
}

constexpr bool is_valid(Domain d) { return static_cast<std::uint8_t>(d) < kDomainCount; }

std::string_view name(Domain d);
std::optional<Domain> domain_from_name(std::string_view s);

enum class Edge : std::uint8_t { Rising, Falling };

struct TickEvent {
  std::uint64_t sysclk_index = 0;  // cycles since the last reset, 1-based
  Domain domain = Domain::Hz1000;
  Edge edge = Edge::Rising;

  friend constexpr bool operator==(const TickEvent&, const TickEvent&) = default;
};

/// Exact reduced rational in Hz.
struct Frequency {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend constexpr bool operator==(const Frequency&, const Frequency&) = default;
};

Frequency frequency_of(Domain d);

struct ClockDomain {
  Domain domain = Domain::Hz1000;
  std::uint64_t half_period_sysclk = 0;
  bool level = false;
  std::uint64_t counter = 0;  // always < half_period_sysclk
};

/// Event-driven emulation of the five counter/toggle dividers. Jumps from one
/// toggle boundary to the next instead of iterating every sysclk cycle; the
/// emitted tick sequence is the same as cycle-by-cycle stepping.
class Scheduler {
 public:
  Scheduler();

  /// Asynchronous reset: all counters, levels and the cycle index go to zero.
  void reset();

  std::vector<TickEvent> advance(std::uint64_t cycles);

  /// Streaming form of advance(); `on_tick` is called once per edge in order.
  template <class OnTick>
  void advance(std::uint64_t cycles, OnTick&& on_tick);

  std::uint64_t elapsed() const noexcept { return elapsed_; }
  const ClockDomain& domain(Domain d) const { return domains_[static_cast<std::size_t>(d)]; }

 private:
  std::array<ClockDomain, kDomainCount> domains_{};
  std::uint64_t elapsed_ = 0;
};

template <class OnTick>
void Scheduler::advance(std::uint64_t cycles, OnTick&& on_tick) {
  std::uint64_t remaining = cycles;
  while (true) {
    std::uint64_t step = UINT64_MAX;
    for (const auto& c : domains_) {
      step = std::min(step, c.half_period_sysclk - c.counter);
    }
    if (step > remaining) {
      for (auto& c : domains_) c.counter += remaining;
      elapsed_ += remaining;
      return;
    }
    remaining -= step;
    elapsed_ += step;
    for (auto& c : domains_) {
      c.counter += step;
      if (c.counter == c.half_period_sysclk) {
        c.counter = 0;
        c.level = !c.level;
        on_tick(TickEvent{elapsed_, c.domain, c.level ? Edge::Rising : Edge::Falling});
      }
    }
  }
}

}  // namespace dicesim::timing
