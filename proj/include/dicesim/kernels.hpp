#pragma once

// Batch kernels for the data-parallel loops: bulk xorshift, its inverse, and
// the modulo reduction of raw words to dice faces. Every kernel has a scalar
// reference; vector variants must produce bit-identical output and are
// chosen at runtime from what the CPU reports.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace dicesim::kernels {

enum class Isa : std::uint8_t { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);
std::optional<Isa> isa_from_name(std::string_view s);

/// True when the variant is compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available variant, unless overridden by force_isa() or the
/// DICESIM_ISA environment variable (scalar|avx2|neon).
Isa active_isa();

/// Pins dispatch to `isa` (must be available) or clears the pin.
void force_isa(std::optional<Isa> isa);

// out[i] = xorshift_step(in[i]); in and out must have equal size and may alias.
void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);

// faces[i] = (words[i] % sides) + 1; sides >= 1.
void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces);

namespace scalar {
void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces);
}  // namespace scalar

#if defined(DICESIM_HAVE_AVX2)
namespace avx2 {
void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces);
}  // namespace avx2
#endif

#if defined(DICESIM_HAVE_NEON)
namespace neon {
void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out);
}  // namespace neon
#endif

}  // namespace dicesim::kernels
