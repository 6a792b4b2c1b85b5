#include <atomic>
#include <cstdlib>
#include <string>

#include "dicesim/errors.hpp"
#include "dicesim/kernels.hpp"

namespace dicesim::kernels {
namespace {

constexpr int kNoOverride = -1;
std::atomic<int> g_forced{kNoOverride};

Isa detect() {
#if defined(DICESIM_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
#if defined(DICESIM_HAVE_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

Isa from_environment() {
  const char* env = std::getenv("DICESIM_ISA");
  if (env != nullptr) {
    if (auto isa = isa_from_name(env); isa && isa_available(*isa)) return *isa;
  }
  return detect();
}

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw ValidationError("kernel input and output spans differ in size");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

std::optional<Isa> isa_from_name(std::string_view s) {
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_name(isa) == s) return isa;
  }
  return std::nullopt;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(DICESIM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DICESIM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced != kNoOverride) return static_cast<Isa>(forced);
  static const Isa chosen = from_environment();
  return chosen;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw ValidationError("ISA '" + std::string(isa_name(*isa)) + "' is not available on this CPU");
  }
  g_forced.store(isa ? static_cast<int>(*isa) : kNoOverride, std::memory_order_relaxed);
}

void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  check_sizes(in.size(), out.size());
  switch (active_isa()) {
#if defined(DICESIM_HAVE_AVX2)
    case Isa::Avx2: return avx2::xorshift_batch(in, out);
#endif
#if defined(DICESIM_HAVE_NEON)
    case Isa::Neon: return neon::xorshift_batch(in, out);
#endif
    default: return scalar::xorshift_batch(in, out);
  }
}

void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  check_sizes(in.size(), out.size());
  switch (active_isa()) {
#if defined(DICESIM_HAVE_AVX2)
    case Isa::Avx2: return avx2::xorshift_inverse_batch(in, out);
#endif
#if defined(DICESIM_HAVE_NEON)
    case Isa::Neon: return neon::xorshift_inverse_batch(in, out);
#endif
    default: return scalar::xorshift_inverse_batch(in, out);
  }
}

void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces) {
  check_sizes(words.size(), faces.size());
  if (sides == 0) throw ValidationError("dice must have at least one side");
  switch (active_isa()) {
#if defined(DICESIM_HAVE_AVX2)
    case Isa::Avx2: return avx2::reduce_to_faces(words, sides, faces);
#endif
    // NEON has no vector integer divide; the scalar loop is used there.
    default: return scalar::reduce_to_faces(words, sides, faces);
  }
}

}  // namespace dicesim::kernels
