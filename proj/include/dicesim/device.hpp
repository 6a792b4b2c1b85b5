#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dicesim/digits.hpp"
#include "dicesim/display.hpp"
#include "dicesim/prng.hpp"
#include "dicesim/timing.hpp"
#include "dicesim/uart.hpp"

namespace dicesim::device {

// ---------------------------------------------------------------------------
// Tilt vote

inline constexpr int kUprightThreshold = 7;
inline constexpr std::uint16_t kTiltWindowMask = 0x3FF;  // 10 samples

struct TiltState {
  std::uint16_t window = 0;  // newest sample in bit 0
  std::uint8_t sumtilt = 0;
  bool upright = false;

  friend constexpr bool operator==(const TiltState&, const TiltState&) = default;
};

enum class TiltSemantics : std::uint8_t {
  Faithful,   // vote on the window as it was before this sample was shifted in
  Intuitive,  // vote on the window including this sample
};

/// One 10 Hz poll of the tilt switch.
TiltState tilt_update(TiltState state, bool sample, TiltSemantics semantics = TiltSemantics::Faithful);

// ---------------------------------------------------------------------------
// Dice selection

inline constexpr std::array<std::uint8_t, 8> kDiceSides{2, 4, 6, 8, 10, 12, 20, 100};

constexpr bool is_supported_dice(std::uint32_t sides) {
  for (auto s : kDiceSides) {
    if (s == sides) return true;
  }
  return false;
}

struct DiceRow {
  std::uint8_t diceval;
  DigitCodes digits;  // "dNN_" label shown in set mode
};

/// Case table mapping dselect 0..7 to the dice and its label. Throws
/// std::out_of_range for anything else.
DiceRow dice_table(int dselect);

struct SelectionState {
  bool setmode = false;
  std::uint8_t dselect = 0;
  std::uint8_t diceval = 2;
  DigitCodes set{};  // reset clears these to 0; refreshed on every upright poll
  bool keepon = true;
  bool btn_up_latched = false;
  bool btn_down_latched = false;

  friend constexpr bool operator==(const SelectionState&, const SelectionState&) = default;
};

/// One 10 Hz poll of the buttons. Buttons only act while upright; both
/// together disable keep-awake, one alone steps dselect with wraparound.
/// There is no edge detection, so a held button re-fires every poll.
SelectionState selection_update(SelectionState state, bool upright, bool btn_up, bool btn_down);

// ---------------------------------------------------------------------------
// Roll digits

struct RollDigits {
  std::uint16_t out = 0;  // last computed roll, 1..diceval
  DigitCodes live{};      // feeds the display and the UART payload
  DigitCodes held{};      // survives reset; frozen while upright

  friend constexpr bool operator==(const RollDigits&, const RollDigits&) = default;
};

/// While tumbling, map the raw word to 1..diceval and split it into
/// hundreds/tens/units shown in the thou/huns/tens positions (ones blank).
/// While upright, the held digits are shown unchanged.
RollDigits roll_update(RollDigits state, std::uint32_t rand, std::uint32_t diceval, bool upright);

// ---------------------------------------------------------------------------
// Keep-awake

struct PowerState {
  bool onsig = false;
  bool clk5 = false;

  friend constexpr bool operator==(const PowerState&, const PowerState&) = default;
};

/// One rising edge of the 5 s clock. rstn is sampled here only.
constexpr PowerState keepawake_update(PowerState state, bool keepon, bool rstn) {
  if (!rstn) return PowerState{true, false};
  if (keepon) return PowerState{!state.onsig, !state.clk5};
  return PowerState{false, false};
}

// ---------------------------------------------------------------------------
// Synthetic ADC source

/// Reproducible stand-in for accelerometer noise when a trace supplies no ADC
/// samples: x <- 1664525 x + 1013904223 (mod 2^32), sample = x >> 16.
class AdcNoise {
 public:
  static constexpr std::uint32_t kDefaultSeed = 0x2D1CE5EDu;
  static constexpr std::uint32_t kMultiplier = 1664525u;
  static constexpr std::uint32_t kIncrement = 1013904223u;

  explicit AdcNoise(std::uint32_t seed = kDefaultSeed) : state_(seed) {}

  std::uint16_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return static_cast<std::uint16_t>(state_ >> 16);
  }

 private:
  std::uint32_t state_;
};

// ---------------------------------------------------------------------------
// Top-level device

struct DeviceConfig {
  prng::Mode prng_mode = prng::Mode::Stateless;
  TiltSemantics tilt = TiltSemantics::Faithful;
  std::uint32_t adc_seed = AdcNoise::kDefaultSeed;
  // Feedback mode only: explicit starting register (must be nonzero). When
  // absent the register loads from the first nonzero seed observed.
  std::optional<std::uint32_t> feedback_seed;
};

/// External input levels as seen at a tick.
struct Inputs {
  bool tilt = false;
  bool btn_up = false;
  bool btn_down = false;
  std::optional<std::uint16_t> adc;  // last written ADC level, if any
};

struct DeviceOutputs {
  bool onpin = false;
  bool led1 = false;  // raw tilt input
  bool led0 = false;  // clk5
  bool dp = false;    // upright
  display::BcdWord word{};
  bool uart_tx = true;
  std::optional<display::DisplayFrame> frame;  // set on 500 Hz rising edges
};

struct DeviceSnapshot {
  prng::SeedRegister seed;
  std::uint32_t rand = 0;
  TiltState tilt;
  SelectionState selection;
  RollDigits roll;
  PowerState power;
  bool uart_ready = false;
  uart::TxState tx;
  display::BcdWord word;
};

/// The dice unit's control logic stepped by clock ticks. Within one 10 Hz
/// tick the sub-updates run in order (seed shift, tilt vote, selection, roll)
/// and each sees the previous one's result.
class Device {
 public:
  explicit Device(DeviceConfig config = {});

  /// Asynchronous reset. The keep-awake block and the held roll digits have
  /// no reset branch and keep their values.
  void reset();

  /// Applies one clock edge. Throws ValidationError for an unknown domain.
  DeviceOutputs step(const timing::TickEvent& tick, const Inputs& inputs);

  /// Outputs for the current state without advancing.
  DeviceOutputs outputs(const Inputs& inputs) const;

  DeviceSnapshot snapshot() const;

  const TiltState& tilt() const { return tilt_; }
  const SelectionState& selection() const { return selection_; }
  const RollDigits& roll() const { return roll_; }
  const PowerState& power() const { return power_; }
  prng::SeedRegister seed() const { return seed_; }
  std::uint32_t rand() const { return rand_; }
  bool rand_degenerate() const;
  const DeviceConfig& config() const { return config_; }

 private:
  void on_poll(std::uint64_t sysclk_index, const Inputs& inputs);
  std::uint32_t rand_for_poll(std::uint64_t sysclk_index);
  display::BcdWord word() const;

  DeviceConfig config_;
  AdcNoise noise_;

  prng::SeedRegister seed_;
  prng::PrngState prng_;
  bool feedback_loaded_ = false;
  std::uint64_t feedback_anchor_ = 0;
  std::uint32_t rand_ = 0;

  TiltState tilt_;
  SelectionState selection_;
  RollDigits roll_;
  PowerState power_;

  display::Multiplexer mux_;
  bool uart_ready_ = false;
  uart::TxState tx_;
};

}  // namespace dicesim::device
