#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicesim/device.hpp"
#include "dicesim/display.hpp"

namespace dicesim::trace {

// ---------------------------------------------------------------------------
// Input scripts
//
//   <t_us> <SIGNAL> <value>     one event per line
//   # comment                   '#' starts a comment anywhere on a line
//
// SIGNAL is TILT, BTNU, BTND, RESET (value 0/1; RESET 1 asserts reset) or
// ADC (value 0..65535, decimal or 0x-prefixed hex). Timestamps must be
// non-decreasing; events with equal timestamps apply in file order.

enum class Signal : std::uint8_t { Tilt, BtnU, BtnD, Reset, Adc };

std::string_view signal_name(Signal s);

struct TraceEvent {
  std::uint64_t t_us = 0;
  Signal signal = Signal::Tilt;
  std::uint32_t value = 0;
  std::size_t line = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Throws ParseError naming the line and field.
std::vector<TraceEvent> parse_trace(std::string_view text);

// ---------------------------------------------------------------------------
// Replay

inline constexpr std::uint64_t kCyclesPerUs = timing::kSysclkHz / 1'000'000;
inline constexpr std::uint64_t kDefaultTailUs = 1'000'000;

struct ReplayConfig {
  device::DeviceConfig device;
  /// End of simulation; defaults to the last event time + 1 s.
  std::optional<std::uint64_t> duration_us;
  bool record_frames = false;
  bool record_waveform = false;
};

struct SettledRoll {
  std::uint64_t t_us = 0;
  std::uint32_t diceval = 0;
  std::uint32_t out = 0;
  DigitCodes digits;
};

struct UartByte {
  std::uint64_t t_us = 0;  // start bit
  std::uint8_t value = 0;
};

struct DisplayWordRecord {
  std::uint64_t t_us = 0;
  display::BcdWord word;
};

struct LevelEdge {
  std::uint64_t t_us = 0;
  bool level = false;
};

struct FrameRecord {
  std::uint64_t t_us = 0;
  display::DisplayFrame frame;
};

struct FinalState {
  std::uint64_t t_us = 0;
  device::DeviceSnapshot device;
};

/// Everything observable from one replay.
struct RunLog {
  std::vector<SettledRoll> settled_rolls;
  std::vector<UartByte> uart_bytes;
  std::vector<std::uint64_t> uart_framing_errors;  // start-bit times
  std::vector<DisplayWordRecord> display_words;    // on change
  std::vector<LevelEdge> onpin_edges;
  std::vector<LevelEdge> dp_edges;
  std::vector<FrameRecord> frames;         // only with record_frames
  std::vector<LevelEdge> uart_waveform;    // only with record_waveform
  std::optional<FinalState> final_state;
};

/// Steps a device through the events at exact sysclk timing. Inputs hold
/// their last written level between events. An event at t_us takes effect
/// after every clock edge at or before t_us * 12 sysclk cycles, so an edge
/// coinciding with an input change samples the old level. While RESET is
/// asserted the clocks are held; on release they restart from zero.
///
/// A settled roll is logged when upright goes false -> true, except the
/// first such transition after a reset (the unit settling at boot without
/// having been tossed).
RunLog replay(std::span<const TraceEvent> events, const ReplayConfig& config);

// ---------------------------------------------------------------------------
// Emitters (schema version 1)

enum class LogFormat : std::uint8_t { Csv, Jsonl };

/// Accepts "csv" or "jsonl"; throws ValidationError otherwise.
LogFormat parse_format(std::string_view s);

inline constexpr int kLogSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader = "kind,t_us,diceval,out,byte,word,text,level";

std::string emit_log(const RunLog& log, LogFormat format);
std::string emit_uart_csv(const RunLog& log);      // t_us,byte_hex
std::string emit_waveform_csv(const RunLog& log);  // t_us,level
std::string emit_frames_csv(const RunLog& log);    // t_us,digit,anodes,segments,dp

}  // namespace dicesim::trace
