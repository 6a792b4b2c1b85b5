#include "dicesim/kernels.hpp"
#include "dicesim/prng.hpp"

namespace dicesim::kernels::scalar {

void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = prng::xorshift_step(in[i]);
}

void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = prng::xorshift_inverse(in[i]);
}

void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces) {
  for (std::size_t i = 0; i < words.size(); ++i) faces[i] = words[i] % sides + 1;
}

}  // namespace dicesim::kernels::scalar
