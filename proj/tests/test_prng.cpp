#include <doctest.h>

#include <random>

#include "dicesim/errors.hpp"
#include "dicesim/prng.hpp"
#include "oracles/bitvec_xorshift.hpp"

using namespace dicesim::prng;

TEST_CASE("seed_shift") {
  CHECK(seed_shift({0x00000000}, 0x0000).value == 0x00000000u);
  CHECK(seed_shift({0xAAAA5555}, 0x1234).value == 0x55551234u);

  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const SeedRegister prior{static_cast<std::uint32_t>(rng())};
    const auto s1 = static_cast<std::uint16_t>(rng());
    const auto s2 = static_cast<std::uint16_t>(rng());
    CHECK(seed_shift(seed_shift(prior, s1), s2).value == ((std::uint32_t{s1} << 16) | s2));
  }
}

TEST_CASE("xorshift_step examples agree with the bit-vector oracle") {
  // Frozen from the oracle.
  CHECK(xorshift_step(0x00000000u) == 0x00000000u);
  CHECK(xorshift_step(0x00000001u) == 0x00000201u);
  CHECK(xorshift_step(0x80000000u) == 0x81040800u);
  CHECK(xorshift_step(0xFFFFFFFFu) == 0xFE07F000u);
  for (std::uint32_t x : {0u, 1u, 0x80000000u, 0xFFFFFFFFu, 0x201u, 0xDEADBEEFu}) {
    CHECK(xorshift_step(x) == oracle::xorshift(x));
  }
  static_assert(xorshift_step(1) == 0x201);
}

TEST_CASE("xorshift_inverse") {
  CHECK(xorshift_inverse(0) == 0);
  CHECK(xorshift_inverse(0x00000201u) == 0x00000001u);
  std::mt19937 rng(1234);
  for (int i = 0; i < 100000; ++i) {
    const std::uint32_t x = rng();
    CHECK_EQ(xorshift_inverse(xorshift_step(x)), x);
    CHECK_EQ(xorshift_step(xorshift_inverse(x)), x);
  }
}

TEST_CASE("xorshift is linear over GF(2)") {
  std::mt19937 rng(42);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t a = rng();
    const std::uint32_t b = rng();
    CHECK_EQ(xorshift_step(a ^ b), xorshift_step(a) ^ xorshift_step(b));
  }
}

TEST_CASE("no nonzero word maps to zero") {
  std::mt19937 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t x = rng() | 1u;
    CHECK(xorshift_step(x) != 0);
  }
}

TEST_CASE("xorshift_jump equals iteration") {
  std::mt19937 rng(77);
  for (std::uint64_t n : {0ull, 1ull, 2ull, 15ull, 16ull, 17ull, 1000ull, 65537ull, 600024ull}) {
    const std::uint32_t x = rng();
    std::uint32_t y = x;
    for (std::uint64_t i = 0; i < n; ++i) y = xorshift_step(y);
    CHECK_MESSAGE(xorshift_jump(x, n) == y, "n=" << n);
  }
  CHECK(xorshift_jump(0, 123456789) == 0);
  // Composition: jump(jump(x, a), b) == jump(x, a + b).
  const std::uint32_t x = 0x1234567u;
  CHECK(xorshift_jump(xorshift_jump(x, 1'200'048), 987'654'321) == xorshift_jump(x, 988'854'369));
}

TEST_CASE("next_rand stateless") {
  const PrngState st{Mode::Stateless, 0};
  const auto a = next_rand(st, {0x00000001});
  CHECK(a.value == 0x00000201u);
  CHECK(a.state == st);
  const auto b = next_rand(a.state, {0x00000001});
  CHECK(b.value == a.value);
  CHECK_FALSE(a.degenerate);
}

TEST_CASE("next_rand feedback") {
  auto st = make_feedback(1);
  const auto a = next_rand(st, {});
  CHECK(a.value == 0x00000201u);
  CHECK(a.state.rand_reg == 0x00000201u);
  const auto b = next_rand(a.state, {});
  CHECK(b.value == xorshift_step(0x00000201u));
  CHECK(b.value == 0x00040825u);

  const auto zero = next_rand(PrngState{Mode::Feedback, 0}, {0xFFFF});
  CHECK(zero.degenerate);
  CHECK(zero.value == 0);
  CHECK(next_rand(zero.state, {}).value == 0);

  CHECK_THROWS_AS(make_feedback(0), dicesim::ValidationError);
}
