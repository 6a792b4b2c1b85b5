#include "dicesim/trace.hpp"

#include <charconv>
#include <array>
#include <vector>

#include "dicesim/errors.hpp"
#include "dicesim/timing.hpp"

namespace dicesim::trace {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<Signal> signal_from_name(std::string_view s) {
  for (Signal sig : {Signal::Tilt, Signal::BtnU, Signal::BtnD, Signal::Reset, Signal::Adc}) {
    if (signal_name(sig) == s) return sig;
  }
  return std::nullopt;
}

}  // namespace

std::string_view signal_name(Signal s) {
  switch (s) {
    case Signal::Tilt: return "TILT";
    case Signal::BtnU: return "BTNU";
    case Signal::BtnD: return "BTND";
    case Signal::Reset: return "RESET";
    case Signal::Adc: return "ADC";
  }
  return "?";
}

std::vector<TraceEvent> parse_trace(std::string_view text) {
  std::vector<TraceEvent> events;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw ParseError(line_no, "line", "expected '<t_us> <SIGNAL> <value>', got " + std::to_string(fields.size()) +
                                            " fields");
    }

    const auto t = parse_unsigned(fields[0]);
    if (!t) throw ParseError(line_no, "t_us", "not a non-negative integer: '" + std::string(fields[0]) + "'");
    const auto sig = signal_from_name(fields[1]);
    if (!sig) throw ParseError(line_no, "signal", "unknown signal '" + std::string(fields[1]) + "'");
    const auto value = parse_unsigned(fields[2]);
    if (!value) throw ParseError(line_no, "value", "not a non-negative integer: '" + std::string(fields[2]) + "'");

    const std::uint64_t limit = *sig == Signal::Adc ? 0xFFFF : 1;
    if (*value > limit) {
      throw ParseError(line_no, "value",
                       std::string(signal_name(*sig)) + " value " + std::to_string(*value) + " exceeds " +
                           std::to_string(limit));
    }
    if (*t > UINT64_MAX / kCyclesPerUs) throw ParseError(line_no, "t_us", "timestamp too large");
    if (!events.empty() && *t < events.back().t_us) {
      throw ParseError(line_no, "t_us",
                       "timestamp " + std::to_string(*t) + " is earlier than previous " +
                           std::to_string(events.back().t_us));
    }
    events.push_back(TraceEvent{*t, *sig, static_cast<std::uint32_t>(*value), line_no});
  }
  return events;
}

// ---------------------------------------------------------------------------

namespace {

class Replayer {
 public:
  explicit Replayer(const ReplayConfig& config) : config_(config), device_(config.device) {
    last_onpin_ = device_.power().onsig;
    last_dp_ = device_.tilt().upright;
    last_tx_ = true;
    if (config_.record_waveform) log_.uart_waveform.push_back({0, true});
  }

  void run_until(std::uint64_t abs_cycle) {
    if (!in_reset_ && abs_cycle > now_) {
      scheduler_.advance(abs_cycle - now_, [this](const timing::TickEvent& tick) { on_tick(tick); });
    }
    now_ = abs_cycle;
  }

  void apply(const TraceEvent& ev) {
    switch (ev.signal) {
      case Signal::Tilt: inputs_.tilt = ev.value != 0; break;
      case Signal::BtnU: inputs_.btn_up = ev.value != 0; break;
      case Signal::BtnD: inputs_.btn_down = ev.value != 0; break;
      case Signal::Adc: inputs_.adc = static_cast<std::uint16_t>(ev.value); break;
      case Signal::Reset:
        if (ev.value != 0 && !in_reset_) {
          enter_reset();
        } else if (ev.value == 0 && in_reset_) {
          in_reset_ = false;
          base_ = now_;
        }
        break;
    }
  }

  RunLog finish() {
    log_.final_state = FinalState{now_ / kCyclesPerUs, device_.snapshot()};
    return std::move(log_);
  }

 private:
  std::uint64_t t_us(std::uint64_t abs_cycle) const { return abs_cycle / kCyclesPerUs; }

  void enter_reset() {
    in_reset_ = true;
    scheduler_.reset();
    device_.reset();
    decoder_.resync();
    been_upright_ = false;
    have_word_ = false;
    const auto out = device_.outputs(inputs_);
    note_level(log_.dp_edges, last_dp_, out.dp, t_us(now_));
    note_level(log_.onpin_edges, last_onpin_, out.onpin, t_us(now_));
    if (config_.record_waveform && out.uart_tx != last_tx_) {
      last_tx_ = out.uart_tx;
      log_.uart_waveform.push_back({t_us(now_), last_tx_});
    }
    bit_index_ = 0;
  }

  static void note_level(std::vector<LevelEdge>& edges, bool& last, bool level, std::uint64_t t) {
    if (level != last) {
      last = level;
      edges.push_back({t, level});
    }
  }

  void on_tick(const timing::TickEvent& tick) {
    const std::uint64_t abs = base_ + tick.sysclk_index;
    const std::uint64_t t = t_us(abs);
    const bool was_upright = device_.tilt().upright;
    const device::DeviceOutputs out = device_.step(tick, inputs_);
    if (tick.edge != timing::Edge::Rising) return;

    switch (tick.domain) {
      case timing::Domain::Hz10: {
        if (!was_upright && out.dp) {
          if (been_upright_) {
            const auto& roll = device_.roll();
            log_.settled_rolls.push_back({t, device_.selection().diceval, roll.out, roll.held});
          }
          been_upright_ = true;
        }
        if (!have_word_ || out.word != last_word_) {
          have_word_ = true;
          last_word_ = out.word;
          log_.display_words.push_back({t, out.word});
        }
        note_level(log_.dp_edges, last_dp_, out.dp, t);
        break;
      }
      case timing::Domain::S5:
        note_level(log_.onpin_edges, last_onpin_, out.onpin, t);
        break;
      case timing::Domain::Hz500:
        if (config_.record_frames && out.frame) log_.frames.push_back({t, *out.frame});
        break;
      case timing::Domain::Hz1000: {
        if (config_.record_waveform && out.uart_tx != last_tx_) log_.uart_waveform.push_back({t, out.uart_tx});
        last_tx_ = out.uart_tx;
        bit_times_[bit_index_ % bit_times_.size()] = t;
        ++bit_index_;
        const std::size_t errors_before = decoder_.diagnostics().size();
        if (auto byte = decoder_.push(out.uart_tx)) {
          log_.uart_bytes.push_back({start_time(), byte->value});
        }
        if (decoder_.diagnostics().size() > errors_before) log_.uart_framing_errors.push_back(start_time());
        break;
      }
      case timing::Domain::Hz1500:
        break;
    }
  }

  // Time of the start bit of the frame that just completed (10 bits back).
  std::uint64_t start_time() const {
    return bit_times_[(bit_index_ + bit_times_.size() - uart::kFrameBits) % bit_times_.size()];
  }

  const ReplayConfig& config_;
  device::Device device_;
  timing::Scheduler scheduler_;
  device::Inputs inputs_;
  uart::StreamDecoder decoder_;
  RunLog log_;

  std::uint64_t now_ = 0;   // absolute sysclk cycles processed
  std::uint64_t base_ = 0;  // absolute cycle of scheduler index 0
  bool in_reset_ = false;

  bool been_upright_ = false;
  bool have_word_ = false;
  display::BcdWord last_word_{};
  bool last_onpin_ = false;
  bool last_dp_ = false;
  bool last_tx_ = true;
  std::array<std::uint64_t, 16> bit_times_{};
  std::size_t bit_index_ = 0;
};

}  // namespace

RunLog replay(std::span<const TraceEvent> events, const ReplayConfig& config) {
  const std::uint64_t last = events.empty() ? 0 : events.back().t_us;
  const std::uint64_t duration = config.duration_us.value_or(last + kDefaultTailUs);
  if (duration < last) {
    throw ValidationError("duration " + std::to_string(duration) + " us ends before the last event at " +
                          std::to_string(last) + " us");
  }
  Replayer r(config);
  for (const TraceEvent& ev : events) {
    r.run_until(ev.t_us * kCyclesPerUs);
    r.apply(ev);
  }
  r.run_until(duration * kCyclesPerUs);
  return r.finish();
}

}  // namespace dicesim::trace
