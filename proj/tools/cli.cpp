#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dicesim/device.hpp"
#include "dicesim/errors.hpp"
#include "dicesim/rolls.hpp"
#include "dicesim/stats.hpp"
#include "dicesim/trace.hpp"
#include "dicesim/uart.hpp"

namespace dicesim::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit status carried out of a subcommand that ran to completion.
struct Status {
  int code = kExitOk;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

prng::Mode parse_mode(const std::string& s) {
  if (s == "stateless") return prng::Mode::Stateless;
  if (s == "feedback") return prng::Mode::Feedback;
  throw ValidationError("mode must be stateless or feedback");
}

std::optional<std::uint64_t> parse_number(std::string_view s, int base = 10) {
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// One value per line, first CSV field; a non-numeric first line is a header.
std::vector<std::uint32_t> parse_column(const std::string& text, int base) {
  std::vector<std::uint32_t> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view field = trim(line);
    if (field.empty()) continue;
    field = trim(field.substr(0, field.find(',')));
    const auto v = parse_number(field, base);
    if (!v) {
      if (line_no == 1) continue;
      throw ParseError(line_no, "value", "not a number: '" + std::string(field) + "'");
    }
    if (*v > UINT32_MAX) throw ParseError(line_no, "value", "exceeds 32 bits");
    values.push_back(static_cast<std::uint32_t>(*v));
  }
  return values;
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string trace;
  std::string out_dir;
  std::string mode = "stateless";
  std::string tilt = "faithful";
  std::string format = "csv";
  std::optional<std::uint64_t> duration_us;
  std::uint32_t adc_seed = device::AdcNoise::kDefaultSeed;
  std::optional<std::uint32_t> seed;
  bool waveform = false;
  bool frames = false;
};

Status cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  trace::ReplayConfig cfg;
  cfg.device.prng_mode = parse_mode(o.mode);
  cfg.device.tilt = o.tilt == "intuitive" ? device::TiltSemantics::Intuitive : device::TiltSemantics::Faithful;
  cfg.device.adc_seed = o.adc_seed;
  cfg.device.feedback_seed = o.seed;
  if (o.seed && cfg.device.prng_mode == prng::Mode::Feedback) (void)prng::make_feedback(*o.seed);
  cfg.duration_us = o.duration_us;
  cfg.record_waveform = o.waveform;
  cfg.record_frames = o.frames;
  const trace::LogFormat format = trace::parse_format(o.format);

  const auto events = trace::parse_trace(read_file(o.trace));
  const trace::RunLog log = trace::replay(events, cfg);

  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const char* log_name = format == trace::LogFormat::Csv ? "log.csv" : "log.jsonl";
  write_file_atomic(dir / log_name, trace::emit_log(log, format));
  write_file_atomic(dir / "uart.csv", trace::emit_uart_csv(log));
  if (o.waveform) write_file_atomic(dir / "uart_wave.csv", trace::emit_waveform_csv(log));
  if (o.frames) write_file_atomic(dir / "frames.csv", trace::emit_frames_csv(log));

  out << "events=" << events.size() << " rolls=" << log.settled_rolls.size()
      << " uart_bytes=" << log.uart_bytes.size() << " -> " << (dir / log_name).string() << '\n';
  return {};
}

// ---------------------------------------------------------------------------

struct RollsOptions {
  std::uint32_t sides = 0;
  std::uint64_t count = 0;
  std::string mode = "feedback";
  std::uint32_t seed = rolls::kDefaultSeed;
  bool raw = false;
  std::string out_path;
};

Status cmd_rolls(const RollsOptions& o, std::ostream& out) {
  if (!o.raw && !device::is_supported_dice(o.sides)) {
    throw ValidationError("unsupported dice d" + std::to_string(o.sides) + " (choose 2,4,6,8,10,12,20,100)");
  }
  if (o.count < 1) throw ValidationError("count must be at least 1");
  const prng::Mode mode = parse_mode(o.mode);
  const auto words = rolls::raw_words(mode, o.seed, o.count);

  std::ostringstream csv;
  if (o.raw) {
    csv << "word\n";
    char buf[16];
    for (std::uint32_t w : words) {
      std::snprintf(buf, sizeof buf, "0x%08X", w);
      csv << buf << '\n';
    }
  } else {
    csv << "face\n";
    for (std::uint32_t f : rolls::to_faces(words, o.sides)) csv << f << '\n';
  }
  if (o.out_path.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(o.out_path, csv.str());
  }
  return {};
}

// ---------------------------------------------------------------------------

struct StatsOptions {
  std::string rolls_path;
  std::uint32_t sides = 0;
  double alpha = 0.05;
  std::string bias;
  std::uint32_t bits = 32;
  bool raw = false;
  std::uint32_t bins = 256;
  std::string hist_out;
};

std::uint32_t parse_bias_arg(std::string s) {
  if (s.rfind("d=", 0) == 0) s = s.substr(2);
  const auto v = parse_number(s);
  if (!v || *v < 1 || *v > UINT32_MAX) throw ValidationError("--bias expects d=<sides>, got '" + s + "'");
  return static_cast<std::uint32_t>(*v);
}

Status cmd_stats(const StatsOptions& o, std::ostream& out) {
  if (!o.bias.empty()) out << stats::bias_report_text(stats::modulo_bias(parse_bias_arg(o.bias), o.bits));
  if (o.rolls_path.empty()) {
    if (o.bias.empty()) throw ValidationError("nothing to do: give --rolls and/or --bias");
    return {};
  }

  const stats::Alpha alpha = stats::alpha_from_value(o.alpha);
  const std::string text = read_file(o.rolls_path);
  stats::Histogram h;
  if (o.raw) {
    h = stats::raw_histogram(parse_column(text, 16), o.bins);
  } else {
    if (o.sides < 1) throw ValidationError("--sides is required with --rolls");
    h = stats::tally(parse_column(text, 10), o.sides);
  }

  if (o.hist_out.empty()) {
    out << stats::histogram_csv(h);
  } else {
    write_file_atomic(o.hist_out, stats::histogram_csv(h));
  }
  out << stats::ascii_chart(h);

  if (h.sides - 1 > stats::kMaxTabulatedDof) {
    const auto cs = stats::chi_square(h);
    out << "chi-square=" << cs.statistic << " dof=" << cs.dof
        << " verdict=n/a (critical values tabulated for dof <= 99; use fewer --bins)\n";
    return {};
  }
  const auto r = stats::uniformity_report(h, alpha);
  char line[160];
  std::snprintf(line, sizeof line, "chi-square=%.4f dof=%u critical(%g)=%.3f %s\n", r.statistic, r.dof,
                stats::alpha_value(r.alpha), r.critical, r.pass ? "PASS" : "FAIL");
  out << line;
  return {r.pass ? kExitOk : kExitAnalysisFail};
}

// ---------------------------------------------------------------------------

Status cmd_uart(const std::string& action, const std::vector<std::string>& data, std::ostream& out,
                std::ostream& err) {
  if (action == "encode") {
    std::vector<std::uint8_t> bytes;
    for (const auto& s : data) {
      const auto v = parse_number(s, 16);
      if (!v || *v > 0xFF) throw ValidationError("not a hex byte: '" + s + "'");
      bytes.push_back(static_cast<std::uint8_t>(*v));
    }
    out << uart::encode_bits(bytes) << '\n';
    return {};
  }
  if (action == "decode") {
    std::string joined;
    for (const auto& s : data) joined += s;
    const auto bits = uart::parse_bits(joined);
    if (!bits) throw ValidationError("bit stream may only contain '0' and '1'");
    const auto result = uart::decode_stream(*bits);
    std::string line;
    for (std::uint8_t b : result.bytes) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%02X", b);
      if (!line.empty()) line += ' ';
      line += buf;
    }
    out << line << '\n';
    for (const auto& d : result.diagnostics) {
      if (d.kind == uart::Diagnostic::Kind::FramingError) {
        err << "framing error: frame at bit " << d.bit_offset << " has stop bit 0 at bit " << d.stop_offset << '\n';
      } else {
        err << "truncated frame at bit " << d.bit_offset << '\n';
      }
    }
    return {result.framing_errors() > 0 ? kExitAnalysisFail : kExitOk};
  }
  throw ValidationError("uart action must be encode or decode");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavioral simulator and statistics toolkit for the FPGA digital dice", "dicesim"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Replay a trace through the device and write run logs");
  simulate->add_option("--trace", sim.trace, "Input trace file")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_option("--mode", sim.mode, "PRNG mode")->check(CLI::IsMember({"stateless", "feedback"}));
  simulate->add_option("--tilt", sim.tilt, "Tilt vote semantics")->check(CLI::IsMember({"faithful", "intuitive"}));
  simulate->add_option("--format", sim.format, "Run log format")->check(CLI::IsMember({"csv", "jsonl"}));
  simulate->add_option("--duration-us", sim.duration_us, "Simulated duration (default: last event + 1 s)");
  simulate->add_option("--adc-seed", sim.adc_seed, "Seed of the synthetic ADC source");
  simulate->add_option("--seed", sim.seed, "Explicit feedback register seed (nonzero)");
  simulate->add_flag("--waveform", sim.waveform, "Also write uart_wave.csv");
  simulate->add_flag("--frames", sim.frames, "Also write frames.csv (500 Hz multiplex frames)");

  RollsOptions ro;
  auto* rolls_cmd = app.add_subcommand("rolls", "Generate dice rolls as CSV");
  rolls_cmd->add_option("-d,--sides", ro.sides, "Dice sides (2,4,6,8,10,12,20,100)");
  rolls_cmd->add_option("-n,--count", ro.count, "Number of rolls")->required();
  rolls_cmd->add_option("--mode", ro.mode, "PRNG mode")->check(CLI::IsMember({"stateless", "feedback"}));
  rolls_cmd->add_option("--seed", ro.seed, "Generator seed (default 1)");
  rolls_cmd->add_flag("--raw", ro.raw, "Emit raw 32-bit words instead of faces");
  rolls_cmd->add_option("-o,--out", ro.out_path, "Output file (default: stdout)");

  StatsOptions so;
  auto* stats_cmd = app.add_subcommand("stats", "Histogram, chi-square verdict and modulo-bias report");
  stats_cmd->add_option("--rolls", so.rolls_path, "CSV of faces (or raw words with --raw)");
  stats_cmd->add_option("-d,--sides", so.sides, "Dice sides of the input");
  stats_cmd->add_option("--alpha", so.alpha, "Significance level: 0.05, 0.01 or 0.001");
  stats_cmd->add_option("--bias", so.bias, "Print the exact modulo-bias report, e.g. d=20");
  stats_cmd->add_option("--bits", so.bits, "Word width for --bias (default 32)");
  stats_cmd->add_flag("--raw", so.raw, "Input holds raw words; bucket them into --bins bins");
  stats_cmd->add_option("--bins", so.bins, "Bin count for --raw (default 256)");
  stats_cmd->add_option("--hist-out", so.hist_out, "Write the histogram CSV here instead of stdout");

  std::string uart_action;
  std::vector<std::string> uart_data;
  auto* uart_cmd = app.add_subcommand("uart", "Encode bytes to 8N1 bits or decode bits to bytes");
  uart_cmd->add_option("action", uart_action, "encode | decode")->required();
  uart_cmd->add_option("data", uart_data, "Hex bytes (encode) or a 0/1 string (decode)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dicesim: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Status st;
    if (simulate->parsed()) {
      st = cmd_simulate(sim, out);
    } else if (rolls_cmd->parsed()) {
      st = cmd_rolls(ro, out);
    } else if (stats_cmd->parsed()) {
      st = cmd_stats(so, out);
    } else {
      st = cmd_uart(uart_action, uart_data, out, err);
    }
    return st.code;
  } catch (const IoError& e) {
    err << "dicesim: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "dicesim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "dicesim: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace dicesim::cli
