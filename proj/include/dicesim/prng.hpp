#pragma once

#include <cstdint>

namespace dicesim::prng {

/// 32-bit seed accumulator fed with 16-bit ADC samples at 10 Hz.
struct SeedRegister {
  std::uint32_t value = 0;

  friend constexpr bool operator==(const SeedRegister&, const SeedRegister&) = default;
};

/// Old low half moves to the high half, the new sample becomes the low half.
constexpr SeedRegister seed_shift(SeedRegister seed, std::uint16_t adc) {
  return SeedRegister{(seed.value << 16) | adc};
}

/// Right-left-right shift/XOR triple (7, 9, 13). Linear over GF(2) and
/// bijective, so 0 is the only fixed point that maps to 0.
constexpr std::uint32_t xorshift_step(std::uint32_t x) {
  std::uint32_t t = x ^ (x >> 7);
  t ^= t << 9;
  return t ^ (t >> 13);
}

namespace detail {

// Inverse of y = x ^ (x >> k): x = y ^ (y >> k) ^ (y >> 2k) ^ ...
constexpr std::uint32_t undo_xor_right(std::uint32_t y, unsigned k) {
  std::uint32_t x = y;
  for (unsigned s = k; s < 32; s += k) x ^= y >> s;
  return x;
}

constexpr std::uint32_t undo_xor_left(std::uint32_t y, unsigned k) {
  std::uint32_t x = y;
  for (unsigned s = k; s < 32; s += k) x ^= y << s;
  return x;
}

}  // namespace detail

constexpr std::uint32_t xorshift_inverse(std::uint32_t y) {
  return detail::undo_xor_right(detail::undo_xor_left(detail::undo_xor_right(y, 13), 9), 7);
}

/// Applies xorshift_step n times in O(log n) via precomputed powers of the
/// 32x32 GF(2) transition matrix.
std::uint32_t xorshift_jump(std::uint32_t x, std::uint64_t n);

enum class Mode : std::uint8_t {
  Stateless,  // output = xorshift(seed); no state carried between calls
  Feedback,   // output = xorshift(rand_reg); rand_reg <- output
};

struct PrngState {
  Mode mode = Mode::Stateless;
  std::uint32_t rand_reg = 0;

  friend constexpr bool operator==(const PrngState&, const PrngState&) = default;
};

/// Feedback-mode state with an explicit starting register. Throws
/// ValidationError for 0, whose orbit is stuck at 0.
PrngState make_feedback(std::uint32_t seed);

struct RandResult {
  PrngState state;
  std::uint32_t value = 0;
  bool degenerate = false;  // feedback register is 0 and will stay 0
};

constexpr RandResult next_rand(PrngState state, SeedRegister seed) {
  if (state.mode == Mode::Stateless) {
    return RandResult{state, xorshift_step(seed.value), false};
  }
  const std::uint32_t out = xorshift_step(state.rand_reg);
  state.rand_reg = out;
  return RandResult{state, out, out == 0};
}

}  // namespace dicesim::prng
