#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dicesim/prng.hpp"

namespace dicesim::rolls {

inline constexpr std::uint32_t kDefaultSeed = 1;

/// Raw 32-bit generator outputs.
///   Feedback:  successive xorshift iterates starting from `seed` (nonzero);
///              the first word is xorshift_step(seed).
///   Stateless: each word is xorshift_step of the seed register after one
///              more 16-bit sample from the synthetic ADC source seeded with
///              `seed`, i.e. what the device computes once per 10 Hz poll.
std::vector<std::uint32_t> raw_words(prng::Mode mode, std::uint32_t seed, std::size_t count);

/// (w mod sides) + 1 for every word.
std::vector<std::uint32_t> to_faces(std::span<const std::uint32_t> words, std::uint32_t sides);

}  // namespace dicesim::rolls
