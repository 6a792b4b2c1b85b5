#include "dicesim/device.hpp"

#include <bit>
#include <stdexcept>

#include "dicesim/errors.hpp"

namespace dicesim::device {

TiltState tilt_update(TiltState state, bool sample, TiltSemantics semantics) {
  const std::uint16_t shifted = static_cast<std::uint16_t>(((state.window << 1) | (sample ? 1u : 0u)) & kTiltWindowMask);
  // The hardware sums the register with a blocking assignment in the same
  // clocked block as the non-blocking shift, so it sees the pre-shift bits.
  const std::uint16_t voted = semantics == TiltSemantics::Faithful ? state.window : shifted;
  TiltState next;
  next.window = shifted;
  next.sumtilt = static_cast<std::uint8_t>(std::popcount(static_cast<unsigned>(voted & kTiltWindowMask)));
  next.upright = next.sumtilt >= kUprightThreshold;
  return next;
}

DiceRow dice_table(int dselect) {
  constexpr std::uint8_t D = kCodeLetterD;
  constexpr std::uint8_t B = kCodeBlank;
  switch (dselect) {
    case 0: return {2, {D, 2, B, B}};
    case 1: return {4, {D, 4, B, B}};
    case 2: return {6, {D, 6, B, B}};
    case 3: return {8, {D, 8, B, B}};
    case 4: return {10, {D, 1, 0, B}};
    case 5: return {12, {D, 1, 2, B}};
    case 6: return {20, {D, 2, 0, B}};
    case 7: return {100, {D, 1, 0, 0}};
    default: throw std::out_of_range("dselect must be in 0..7, got " + std::to_string(dselect));
  }
}

SelectionState selection_update(SelectionState s, bool upright, bool btn_up, bool btn_down) {
  s.btn_up_latched = btn_up;
  s.btn_down_latched = btn_down;
  if (!upright) {
    s.setmode = false;
    return s;
  }
  if (s.btn_up_latched && s.btn_down_latched) {
    s.keepon = false;
  } else if (s.btn_up_latched) {
    s.setmode = true;
    s.dselect = static_cast<std::uint8_t>(s.dselect == 7 ? 0 : s.dselect + 1);
  } else if (s.btn_down_latched) {
    s.setmode = true;
    s.dselect = static_cast<std::uint8_t>(s.dselect == 0 ? 7 : s.dselect - 1);
  }
  const DiceRow row = dice_table(s.dselect);
  s.diceval = row.diceval;
  s.set = row.digits;
  return s;
}

RollDigits roll_update(RollDigits s, std::uint32_t rand, std::uint32_t diceval, bool upright) {
  if (!upright) {
    if (diceval == 0) throw std::invalid_argument("diceval must be nonzero");
    s.out = static_cast<std::uint16_t>(rand % diceval + 1);
    std::uint32_t rest = s.out;
    s.held.ones = kCodeBlank;
    s.held.tens = static_cast<std::uint8_t>(rest % 10);  // units digit
    rest /= 10;
    s.held.huns = static_cast<std::uint8_t>(rest % 10);  // tens digit
    rest /= 10;
    s.held.thou = static_cast<std::uint8_t>(rest % 10);  // hundreds digit
  }
  s.live = s.held;
  return s;
}

// ---------------------------------------------------------------------------

Device::Device(DeviceConfig config) : config_(config), noise_(config.adc_seed) {
  if (config_.prng_mode == prng::Mode::Feedback && config_.feedback_seed) {
    (void)prng::make_feedback(*config_.feedback_seed);  // validates nonzero
  }
  reset();
}

void Device::reset() {
  noise_ = AdcNoise(config_.adc_seed);
  seed_ = {};
  prng_ = prng::PrngState{config_.prng_mode, 0};
  feedback_loaded_ = false;
  feedback_anchor_ = 0;
  if (config_.prng_mode == prng::Mode::Feedback && config_.feedback_seed) {
    prng_ = prng::make_feedback(*config_.feedback_seed);
    feedback_loaded_ = true;
  }
  rand_ = 0;

  tilt_ = {};
  selection_ = {};
  roll_.live = {};
  mux_.reset();
  uart_ready_ = false;
  tx_ = {};
}

bool Device::rand_degenerate() const {
  return config_.prng_mode == prng::Mode::Feedback && (!feedback_loaded_ || prng_.rand_reg == 0);
}

std::uint32_t Device::rand_for_poll(std::uint64_t sysclk_index) {
  if (config_.prng_mode == prng::Mode::Stateless) {
    return prng::next_rand(prng_, seed_).value;
  }
  if (!feedback_loaded_) {
    if (seed_.value == 0) return 0;
    prng_.rand_reg = seed_.value;
    feedback_anchor_ = sysclk_index;
    feedback_loaded_ = true;
  }
  // The register steps once per sysclk edge; catch up since the last poll.
  prng_.rand_reg = prng::xorshift_jump(prng_.rand_reg, sysclk_index - feedback_anchor_);
  feedback_anchor_ = sysclk_index;
  return prng_.rand_reg;
}

void Device::on_poll(std::uint64_t sysclk_index, const Inputs& inputs) {
  // The synthetic stream advances every poll so it stays aligned to ticks.
  const std::uint16_t synthetic = noise_.next();
  seed_ = prng::seed_shift(seed_, inputs.adc.value_or(synthetic));
  rand_ = rand_for_poll(sysclk_index);
  tilt_ = tilt_update(tilt_, inputs.tilt, config_.tilt);
  selection_ = selection_update(selection_, tilt_.upright, inputs.btn_up, inputs.btn_down);
  roll_ = roll_update(roll_, rand_, selection_.diceval, tilt_.upright);
}

display::BcdWord Device::word() const { return display::bcd_select(selection_.setmode, selection_.set, roll_.live); }

DeviceOutputs Device::step(const timing::TickEvent& tick, const Inputs& inputs) {
  if (!timing::is_valid(tick.domain)) {
    throw ValidationError("tick with unknown clock domain " + std::to_string(static_cast<int>(tick.domain)));
  }
  std::optional<display::DisplayFrame> frame;
  if (tick.edge == timing::Edge::Rising) {
    switch (tick.domain) {
      case timing::Domain::Hz10:
        on_poll(tick.sysclk_index, inputs);
        break;
      case timing::Domain::S5:
        power_ = keepawake_update(power_, selection_.keepon, true);
        break;
      case timing::Domain::Hz500:
        frame = mux_.step(word(), tilt_.upright);
        break;
      case timing::Domain::Hz1000:
        // Both blocks sample uart_ready as it was before this edge.
        tx_ = uart::tx_step(tx_, uart_ready_, uart::payload_pack(roll_.live.huns, roll_.live.tens));
        uart_ready_ = uart::uart_ready_gate(uart_ready_, true);
        break;
      case timing::Domain::Hz1500:
        break;
    }
  }
  DeviceOutputs out = outputs(inputs);
  out.frame = frame;
  return out;
}

DeviceOutputs Device::outputs(const Inputs& inputs) const {
  DeviceOutputs out;
  out.onpin = power_.onsig;
  out.led1 = inputs.tilt;
  out.led0 = power_.clk5;
  out.dp = tilt_.upright;
  out.word = word();
  out.uart_tx = tx_.tx_level;
  return out;
}

DeviceSnapshot Device::snapshot() const {
  return DeviceSnapshot{seed_, rand_, tilt_, selection_, roll_, power_, uart_ready_, tx_, word()};
}

}  // namespace dicesim::device
