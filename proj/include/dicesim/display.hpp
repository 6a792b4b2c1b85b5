#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "dicesim/digits.hpp"

namespace dicesim::display {

/// Packed 16-bit display word: thou [15:12], huns [11:8], tens [7:4], ones [3:0].
struct BcdWord {
  std::uint16_t packed = 0;

  static constexpr BcdWord pack(DigitCodes d) {
    return BcdWord{static_cast<std::uint16_t>(((d.thou & 0xF) << 12) | ((d.huns & 0xF) << 8) |
                                              ((d.tens & 0xF) << 4) | (d.ones & 0xF))};
  }

  constexpr DigitCodes unpack() const {
    return DigitCodes{static_cast<std::uint8_t>(packed >> 12), static_cast<std::uint8_t>((packed >> 8) & 0xF),
                      static_cast<std::uint8_t>((packed >> 4) & 0xF), static_cast<std::uint8_t>(packed & 0xF)};
  }

  /// Code at logical position 0 (thou) .. 3 (ones).
  constexpr std::uint8_t digit(int position) const {
    return static_cast<std::uint8_t>((packed >> (12 - 4 * position)) & 0xF);
  }

  friend constexpr bool operator==(const BcdWord&, const BcdWord&) = default;
};

/// Chooses between the dice-selection digits and the roll digits. In roll
/// mode leading zeros are blanked: thou if 0, huns if huns and thou are 0,
/// tens if tens, huns and thou are 0; ones is blanked on its own when 0.
BcdWord bcd_select(bool setmode, DigitCodes set, DigitCodes rand);

// Active-low segment patterns, bit order g f e d c b a (bit 6 = g).
inline constexpr std::array<std::uint8_t, 16> kGlyphs{
    0x40, 0x79, 0x24, 0x30, 0x19, 0x12, 0x02, 0x78,  // 0-7
    0x00, 0x10, 0x7F, 0x7F, 0x7F, 0x21, 0x7F, 0x7F,  // 8, 9, A-C blank, d, E blank, blank
};

constexpr std::uint8_t glyph(std::uint8_t code) { return kGlyphs[code & 0xF]; }

/// One multiplexing step of the 4-digit common-anode display.
struct DisplayFrame {
  std::uint8_t active_digit = 0;  // logical position 0 (thou) .. 3 (ones)
  std::uint8_t segment_bits = 0x7F;
  bool dp_bit = false;            // active-low; 0 lights the colon
  std::uint8_t anode_bits = 0xF;  // one-cold, physical an[3:0]

  friend constexpr bool operator==(const DisplayFrame&, const DisplayFrame&) = default;
};

/// Physical anode driven for a logical digit. The top module wires the
/// Segment output reversed ({an[0],an[1],an[2],an[3]}), so thou lands on an[3].
constexpr std::uint8_t anode_for(std::uint8_t active_digit) {
  return static_cast<std::uint8_t>(~(1u << (3 - active_digit)) & 0xF);
}

/// Digit scanner clocked at 500 Hz. Reset latches "dddd".
class Multiplexer {
 public:
  static constexpr BcdWord kResetWord{0xDDDD};

  void reset() {
    next_digit_ = 0;
    latched_ = kResetWord;
  }

  /// Latches `bcd`, drives the next digit position and advances the scan.
  DisplayFrame step(BcdWord bcd, bool upright);

  /// Frame that would be driven now without advancing.
  DisplayFrame current(bool upright) const { return frame_for(next_digit_, upright); }

  BcdWord latched() const { return latched_; }

 private:
  DisplayFrame frame_for(std::uint8_t position, bool upright) const;

  std::uint8_t next_digit_ = 0;
  BcdWord latched_ = kResetWord;
};

/// Human-readable rendering: numerals as-is, 0xD as 'd', everything without a
/// numeral or letter glyph as a space.
std::string render_word(BcdWord bcd);

}  // namespace dicesim::display
