#include "dicesim/rolls.hpp"

#include "dicesim/device.hpp"
#include "dicesim/kernels.hpp"

namespace dicesim::rolls {

std::vector<std::uint32_t> raw_words(prng::Mode mode, std::uint32_t seed, std::size_t count) {
  std::vector<std::uint32_t> words(count);
  if (mode == prng::Mode::Feedback) {
    prng::PrngState state = prng::make_feedback(seed);
    for (auto& w : words) {
      const auto r = prng::next_rand(state, {});
      state = r.state;
      w = r.value;
    }
    return words;
  }
  // Seed register trajectory is sequential; the xorshift over it is not.
  device::AdcNoise noise(seed);
  prng::SeedRegister reg;
  for (auto& w : words) {
    reg = prng::seed_shift(reg, noise.next());
    w = reg.value;
  }
  kernels::xorshift_batch(words, words);
  return words;
}

std::vector<std::uint32_t> to_faces(std::span<const std::uint32_t> words, std::uint32_t sides) {
  std::vector<std::uint32_t> faces(words.size());
  kernels::reduce_to_faces(words, sides, faces);
  return faces;
}

}  // namespace dicesim::rolls
