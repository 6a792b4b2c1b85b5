// Compiled with -mavx2. Only reached through dispatch after a CPUID check.

#include <immintrin.h>

#include "dicesim/kernels.hpp"

namespace dicesim::kernels::avx2 {
namespace {

inline __m256i step8(__m256i x) {
  __m256i t = _mm256_xor_si256(x, _mm256_srli_epi32(x, 7));
  t = _mm256_xor_si256(t, _mm256_slli_epi32(t, 9));
  return _mm256_xor_si256(t, _mm256_srli_epi32(t, 13));
}

inline __m256i undo_right8(__m256i y, int k) {
  __m256i x = y;
  for (int s = k; s < 32; s += k) x = _mm256_xor_si256(x, _mm256_srl_epi32(y, _mm_cvtsi32_si128(s)));
  return x;
}

inline __m256i undo_left8(__m256i y, int k) {
  __m256i x = y;
  for (int s = k; s < 32; s += k) x = _mm256_xor_si256(x, _mm256_sll_epi32(y, _mm_cvtsi32_si128(s)));
  return x;
}

inline __m256i inverse8(__m256i y) { return undo_right8(undo_left8(undo_right8(y, 13), 9), 7); }

// Four unsigned 32-bit lanes -> exact doubles (flip the sign bit, convert as
// signed, add 2^31 back).
inline __m256d u32x4_to_pd(__m128i v) {
  const __m128i flipped = _mm_xor_si128(v, _mm_set1_epi32(INT32_MIN));
  return _mm256_add_pd(_mm256_cvtepi32_pd(flipped), _mm256_set1_pd(2147483648.0));
}

// x mod d for four lanes, d >= 2. For x < 2^32 the correctly rounded x/d is
// never within 1/d of the next integer, so truncating it gives floor(x/d).
inline __m128i mod4(__m128i x, __m256d dd, __m128i di) {
  const __m256d q = _mm256_div_pd(u32x4_to_pd(x), dd);
  const __m128i qi = _mm256_cvttpd_epi32(q);
  return _mm_sub_epi32(x, _mm_mullo_epi32(qi, di));
}

}  // namespace

void xorshift_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  std::size_t i = 0;
  for (; i + 8 <= in.size(); i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), step8(x));
  }
  scalar::xorshift_batch(in.subspan(i), out.subspan(i));
}

void xorshift_inverse_batch(std::span<const std::uint32_t> in, std::span<std::uint32_t> out) {
  std::size_t i = 0;
  for (; i + 8 <= in.size(); i += 8) {
    const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), inverse8(y));
  }
  scalar::xorshift_inverse_batch(in.subspan(i), out.subspan(i));
}

void reduce_to_faces(std::span<const std::uint32_t> words, std::uint32_t sides,
                     std::span<std::uint32_t> faces) {
  if (sides < 2) {
    scalar::reduce_to_faces(words, sides, faces);
    return;
  }
  const __m256d dd = _mm256_set1_pd(static_cast<double>(sides));
  const __m128i di = _mm_set1_epi32(static_cast<int>(sides));
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 8 <= words.size(); i += 8) {
    const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    const __m128i lo = mod4(_mm256_castsi256_si128(w), dd, di);
    const __m128i hi = mod4(_mm256_extracti128_si256(w, 1), dd, di);
    const __m256i r = _mm256_add_epi32(_mm256_set_m128i(hi, lo), one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(faces.data() + i), r);
  }
  scalar::reduce_to_faces(words.subspan(i), sides, faces.subspan(i));
}

}  // namespace dicesim::kernels::avx2
