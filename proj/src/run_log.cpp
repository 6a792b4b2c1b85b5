#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dicesim/errors.hpp"
#include "dicesim/trace.hpp"

namespace dicesim::trace {
namespace {

// One row of the unified log; unset fields are left empty (CSV) or omitted
// (JSONL). Rank orders records that share a timestamp.
struct Record {
  std::string_view kind{};
  int rank = 0;
  std::uint64_t t_us = 0;
  std::optional<std::uint32_t> diceval{};
  std::optional<std::uint32_t> out{};
  std::optional<std::uint8_t> byte{};
  std::optional<std::uint16_t> word{};
  std::optional<std::string> text{};
  std::optional<int> level{};
};

std::string hex(std::uint32_t v, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*X", width, v);
  return buf;
}

std::string describe(const device::DeviceSnapshot& s) {
  std::ostringstream os;
  os << "seed=" << hex(s.seed.value, 8) << ";rand=" << hex(s.rand, 8) << ";tiltlog=" << hex(s.tilt.window, 3)
     << ";sumtilt=" << int(s.tilt.sumtilt) << ";upright=" << int(s.tilt.upright)
     << ";setmode=" << int(s.selection.setmode) << ";dselect=" << int(s.selection.dselect)
     << ";keepon=" << int(s.selection.keepon) << ";onsig=" << int(s.power.onsig) << ";clk5=" << int(s.power.clk5)
     << ";held=" << hex(display::BcdWord::pack(s.roll.held).packed, 4);
  return os.str();
}

std::vector<Record> collect(const RunLog& log) {
  std::vector<Record> rows;
  for (const auto& r : log.settled_rolls) {
    rows.push_back({.kind = "ROLL", .rank = 0, .t_us = r.t_us, .diceval = r.diceval, .out = r.out});
  }
  for (const auto& w : log.display_words) {
    rows.push_back({.kind = "DISPLAY", .rank = 1, .t_us = w.t_us, .word = w.word.packed,
                    .text = display::render_word(w.word)});
  }
  for (const auto& e : log.dp_edges) rows.push_back({.kind = "DP", .rank = 2, .t_us = e.t_us, .level = e.level});
  for (const auto& e : log.onpin_edges) {
    rows.push_back({.kind = "ONPIN", .rank = 3, .t_us = e.t_us, .level = e.level});
  }
  for (const auto& b : log.uart_bytes) rows.push_back({.kind = "UART", .rank = 4, .t_us = b.t_us, .byte = b.value});
  for (std::uint64_t t : log.uart_framing_errors) rows.push_back({.kind = "UART_ERROR", .rank = 5, .t_us = t});
  std::stable_sort(rows.begin(), rows.end(), [](const Record& a, const Record& b) {
    return a.t_us != b.t_us ? a.t_us < b.t_us : a.rank < b.rank;
  });
  if (log.final_state) {
    const auto& s = log.final_state->device;
    rows.push_back({.kind = "FINAL", .rank = 6, .t_us = log.final_state->t_us, .diceval = s.selection.diceval,
                    .out = s.roll.out, .word = s.word.packed, .text = describe(s)});
  }
  return rows;
}

template <class T, class F>
void csv_field(std::ostream& os, const std::optional<T>& v, F&& fmt) {
  os << ',';
  if (v) os << fmt(*v);
}

}  // namespace

LogFormat parse_format(std::string_view s) {
  if (s == "csv") return LogFormat::Csv;
  if (s == "jsonl") return LogFormat::Jsonl;
  throw ValidationError("unknown log format '" + std::string(s) + "' (expected csv or jsonl)");
}

std::string emit_log(const RunLog& log, LogFormat format) {
  std::ostringstream os;
  const auto rows = collect(log);
  if (format == LogFormat::Csv) {
    os << kCsvHeader << '\n';
    for (const Record& r : rows) {
      os << r.kind << ',' << r.t_us;
      csv_field(os, r.diceval, [](auto v) { return std::to_string(v); });
      csv_field(os, r.out, [](auto v) { return std::to_string(v); });
      csv_field(os, r.byte, [](auto v) { return hex(v, 2); });
      csv_field(os, r.word, [](auto v) { return hex(v, 4); });
      csv_field(os, r.text, [](const std::string& v) { return '"' + v + '"'; });
      csv_field(os, r.level, [](auto v) { return std::to_string(v); });
      os << '\n';
    }
    return os.str();
  }

  nlohmann::ordered_json header{{"kind", "HEADER"}, {"schema", "dicesim-runlog"}, {"version", kLogSchemaVersion}};
  os << header.dump() << '\n';
  for (const Record& r : rows) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["t_us"] = r.t_us;
    if (r.diceval) j["diceval"] = *r.diceval;
    if (r.out) j["out"] = *r.out;
    if (r.byte) j["byte"] = hex(*r.byte, 2);
    if (r.word) j["word"] = hex(*r.word, 4);
    if (r.text) j["text"] = *r.text;
    if (r.level) j["level"] = *r.level;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::string emit_uart_csv(const RunLog& log) {
  std::ostringstream os;
  os << "t_us,byte_hex\n";
  for (const auto& b : log.uart_bytes) os << b.t_us << ',' << hex(b.value, 2) << '\n';
  return os.str();
}

std::string emit_waveform_csv(const RunLog& log) {
  std::ostringstream os;
  os << "t_us,level\n";
  for (const auto& e : log.uart_waveform) os << e.t_us << ',' << int(e.level) << '\n';
  return os.str();
}

std::string emit_frames_csv(const RunLog& log) {
  std::ostringstream os;
  os << "t_us,digit,anodes,segments,dp\n";
  for (const auto& f : log.frames) {
    os << f.t_us << ',' << int(f.frame.active_digit) << ',' << hex(f.frame.anode_bits, 1) << ','
       << hex(f.frame.segment_bits, 2) << ',' << int(f.frame.dp_bit) << '\n';
  }
  return os.str();
}

}  // namespace dicesim::trace
