#include "dicesim/timing.hpp"

#include <numeric>

namespace dicesim::timing {

std::string_view name(Domain d) {
  switch (d) {
    case Domain::Hz1000: return "HZ1000";
    case Domain::Hz1500: return "HZ1500";
    case Domain::Hz500: return "HZ500";
    case Domain::Hz10: return "HZ10";
    case Domain::S5: return "S5";
  }
  return "?";
}

std::optional<Domain> domain_from_name(std::string_view s) {
  for (Domain d : kDomainOrder) {
    if (name(d) == s) return d;
  }
  return std::nullopt;
}

Frequency frequency_of(Domain d) {
  const std::uint64_t den = 2 * half_period(d);
  const std::uint64_t g = std::gcd(kSysclkHz, den);
  return Frequency{kSysclkHz / g, den / g};
}

Scheduler::Scheduler() { reset(); }

void Scheduler::reset() {
  for (std::size_t i = 0; i < kDomainCount; ++i) {
    const Domain d = kDomainOrder[i];
    domains_[i] = ClockDomain{d, half_period(d), false, 0};
  }
  elapsed_ = 0;
}

std::vector<TickEvent> Scheduler::advance(std::uint64_t cycles) {
  std::vector<TickEvent> out;
  advance(cycles, [&out](const TickEvent& e) { out.push_back(e); });
  return out;
}

}  // namespace dicesim::timing
