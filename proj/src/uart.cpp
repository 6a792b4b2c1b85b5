#include "dicesim/uart.hpp"

#include <algorithm>

namespace dicesim::uart {

TxState tx_step(TxState s, bool ap_ready, std::uint8_t data) {
  s.ap_valid = false;
  switch (s.fsm) {
    case TxPhase::Idle:
      if (ap_ready) {
        s.shift_data = data;
        s.bit_index = 0;
        s.fsm = TxPhase::Start;
        s.tx_level = false;
      } else {
        s.tx_level = true;
      }
      break;
    case TxPhase::Start:
      s.tx_level = (s.shift_data & 1u) != 0;
      s.bit_index = 1;
      s.fsm = TxPhase::Transfer;
      break;
    case TxPhase::Transfer:
      s.tx_level = ((s.shift_data >> s.bit_index) & 1u) != 0;
      if (s.bit_index == 7) {
        s.fsm = TxPhase::Stop;
      } else {
        ++s.bit_index;
      }
      break;
    case TxPhase::Stop:
      s.tx_level = true;
      s.ap_valid = true;
      s.bit_index = 0;
      s.fsm = TxPhase::Idle;
      break;
  }
  return s;
}

std::array<std::uint8_t, kFrameBits> frame_bits(std::uint8_t byte) {
  std::array<std::uint8_t, kFrameBits> bits{};
  bits[0] = 0;
  for (int i = 0; i < 8; ++i) bits[1 + i] = (byte >> i) & 1u;
  bits[9] = 1;
  return bits;
}

std::optional<StreamDecoder::Byte> StreamDecoder::push(bool bit) {
  const std::size_t here = position_++;
  switch (phase_) {
    case Phase::Idle:
      if (!bit) {
        phase_ = Phase::Data;
        start_ = here;
        bits_ = 0;
        value_ = 0;
      }
      break;
    case Phase::Data:
      value_ |= static_cast<std::uint8_t>((bit ? 1u : 0u) << bits_);
      if (++bits_ == 8) phase_ = Phase::Stop;
      break;
    case Phase::Stop:
      if (bit) {
        phase_ = Phase::Idle;
        return Byte{value_, start_};
      }
      // Frames from the transmitter are back to back, so the next bit may
      // already be the following start bit.
      diagnostics_.push_back({Diagnostic::Kind::FramingError, start_, here});
      phase_ = Phase::Idle;
      break;
  }
  return std::nullopt;
}

void StreamDecoder::finish() {
  if (phase_ == Phase::Data || phase_ == Phase::Stop) {
    diagnostics_.push_back({Diagnostic::Kind::TruncatedFrame, start_, position_});
  }
  phase_ = Phase::Idle;
}

void StreamDecoder::resync() { phase_ = Phase::Idle; }

std::size_t DecodeResult::framing_errors() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.kind == Diagnostic::Kind::FramingError;
  }));
}

DecodeResult decode_stream(std::span<const std::uint8_t> bits) {
  DecodeResult result;
  StreamDecoder decoder;
  for (std::uint8_t b : bits) {
    if (auto byte = decoder.push(b != 0)) {
      result.bytes.push_back(byte->value);
      result.start_offsets.push_back(byte->start_offset);
    }
  }
  decoder.finish();
  result.diagnostics = decoder.diagnostics();
  return result;
}

std::string encode_bits(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * kFrameBits);
  for (std::uint8_t b : bytes) {
    for (std::uint8_t bit : frame_bits(b)) out.push_back(bit ? '1' : '0');
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> parse_bits(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      return std::nullopt;
    }
  }
  return bits;
}

}  // namespace dicesim::uart
