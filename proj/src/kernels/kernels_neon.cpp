#include <arm_neon.h>

#include "dicesim/kernels.hpp"

namespace dicesim::kernels::neon {
namespace {

inline uint32x4_t step4(uint32x4_t x) {
  uint32x4_t t = veorq_u32(x, vshrq_n_u32(x, 7));
  t = veorq_u32(t, vshlq_n_u32(t, 9));
  return veorq_u32(t, vshrq_n_u32(t, 13));
}

// vshlq_u32 with a negative count shifts right.
inline uint32x4_t undo4(uint32x4_t y, int k, bool right) {
  uint32x4_t x = y;
  for (int s = k; s < 32; s += k) x = veorq_u32(x, vshlq_u32(y, vdupq_n_s32(right ? -s : s)));
  return x;
}

}  // namespace

void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) vst1q_u32(out.data() + i, step4(vld1q_u32(in.data() + i)));
  scalar::xorshift_batch(in.subspan(i), out.subspan(i));
}

void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) {
    const uint32x4_t y = vld1q_u32(in.data() + i);
    vst1q_u32(out.data() + i, undo4(undo4(undo4(y, 13, true), 9, false), 7, true));
  }
  scalar::xorshift_inverse_batch(in.subspan(i), out.subspan(i));
}

}  // namespace dicesim::kernels::neon
