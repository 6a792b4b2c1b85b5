#include "dicesim/prng.hpp"

#include <array>

#include "dicesim/errors.hpp"

namespace dicesim::prng {
namespace {

// Column j holds the image of basis vector (1 << j).
struct BitMatrix32 {
  std::array<std::uint32_t, 32> cols{};

  std::uint32_t apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    while (x != 0) {
      const int j = __builtin_ctz(x);
      y ^= cols[j];
      x &= x - 1;
    }
    return y;
  }

  BitMatrix32 compose(const BitMatrix32& rhs) const {  // this * rhs
    BitMatrix32 out;
    for (int j = 0; j < 32; ++j) out.cols[j] = apply(rhs.cols[j]);
    return out;
  }
};

struct JumpTable {
  std::array<BitMatrix32, 64> pow2{};  // pow2[i] = T^(2^i)

  JumpTable() {
    for (int j = 0; j < 32; ++j) pow2[0].cols[j] = xorshift_step(1u << j);
    for (int i = 1; i < 64; ++i) pow2[i] = pow2[i - 1].compose(pow2[i - 1]);
  }
};

const JumpTable& jump_table() {
  static const JumpTable table;
  return table;
}

}  // namespace

std::uint32_t xorshift_jump(std::uint32_t x, std::uint64_t n) {
  if (n < 16) {
    for (; n > 0; --n) x = xorshift_step(x);
    return x;
  }
  const auto& t = jump_table();
  for (int i = 0; n != 0; ++i, n >>= 1) {
    if (n & 1) x = t.pow2[i].apply(x);
  }
  return x;
}

PrngState make_feedback(std::uint32_t seed) {
  if (seed == 0) {
    throw ValidationError("feedback mode needs a nonzero seed (0 is a fixed point of xorshift)");
  }
  return PrngState{Mode::Feedback, seed};
}

}  // namespace dicesim::prng
