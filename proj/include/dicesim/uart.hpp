#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dicesim::uart {

// 8N1, LSB first, one bit per 1 kHz clock edge.
inline constexpr std::size_t kFrameBits = 10;
inline constexpr std::uint32_t kBaud = 1000;

enum class TxPhase : std::uint8_t { Idle, Start, Transfer, Stop };

struct TxState {
  TxPhase fsm = TxPhase::Idle;
  std::uint8_t bit_index = 0;
  std::uint8_t shift_data = 0;
  bool ap_valid = false;
  bool tx_level = true;

  friend constexpr bool operator==(const TxState&, const TxState&) = default;
};

/// One 1 kHz rising edge of the transmitter. The returned state's tx_level is
/// the line level driven for the following bit period. `data` is latched only
/// when leaving IDLE, so changes mid-frame have no effect.
TxState tx_step(TxState state, bool ap_ready, std::uint8_t data);

/// Packs the hundreds-position and tens-position roll digits into one byte.
constexpr std::uint8_t payload_pack(std::uint8_t huns_rand, std::uint8_t tens_rand) {
  return static_cast<std::uint8_t>(((huns_rand & 0xF) << 4) | (tens_rand & 0xF));
}

/// The message-rate gate: toggles every 1 kHz edge, cleared by reset.
constexpr bool uart_ready_gate(bool prev, bool rstn) { return rstn ? !prev : false; }

/// start(0), data LSB first, stop(1).
std::array<std::uint8_t, kFrameBits> frame_bits(std::uint8_t byte);

struct Diagnostic {
  enum class Kind : std::uint8_t { FramingError, TruncatedFrame };
  Kind kind = Kind::FramingError;
  std::size_t bit_offset = 0;  // offset of the start bit of the bad frame
  std::size_t stop_offset = 0; // offset of the offending stop bit (framing errors)
};

/// Incremental receiver fed one sampled bit per bit period.
class StreamDecoder {
 public:
  struct Byte {
    std::uint8_t value;
    std::size_t start_offset;
  };

  /// Returns a byte when a valid stop bit completes a frame.
  std::optional<Byte> push(bool bit);

  /// Ends the stream; an unfinished frame is reported as truncated.
  void finish();

  /// Drops any partial frame without a diagnostic (used on device reset).
  void resync();

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t position() const { return position_; }

 private:
  enum class Phase : std::uint8_t { Idle, Data, Stop };
  Phase phase_ = Phase::Idle;
  std::uint8_t bits_ = 0;
  std::uint8_t value_ = 0;
  std::size_t start_ = 0;
  std::size_t position_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

struct DecodeResult {
  std::vector<std::uint8_t> bytes;
  std::vector<std::size_t> start_offsets;
  std::vector<Diagnostic> diagnostics;

  std::size_t framing_errors() const;
};

/// Decodes a bit stream sampled at the bit rate. After a framing error the
/// decoder stays frame-aligned: the bit after the bad stop bit may start the
/// next frame.
DecodeResult decode_stream(std::span<const std::uint8_t> bits);

/// Frames every byte back to back as a '0'/'1' string.
std::string encode_bits(std::span<const std::uint8_t> bytes);

/// Parses a '0'/'1' string; returns nullopt on any other character.
std::optional<std::vector<std::uint8_t>> parse_bits(std::string_view text);

}  // namespace dicesim::uart
