#pragma once

#include <cstdint>

namespace dicesim {

// 4-bit display codes: 0-9 numerals, 0xD the letter "d", 0xF blank.
inline constexpr std::uint8_t kCodeLetterD = 0xD;
inline constexpr std::uint8_t kCodeBlank = 0xF;

/// One 4-digit group of display codes, most significant position first.
struct DigitCodes {
  std::uint8_t thou = 0;
  std::uint8_t huns = 0;
  std::uint8_t tens = 0;
  std::uint8_t ones = 0;

  friend constexpr bool operator==(const DigitCodes&, const DigitCodes&) = default;
};

}  // namespace dicesim
