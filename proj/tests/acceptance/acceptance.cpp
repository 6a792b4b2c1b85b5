// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   dicesim_acceptance [work_dir]
// work_dir receives the files compared by criterion 10.

#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dicesim/device.hpp"
#include "dicesim/prng.hpp"
#include "dicesim/rolls.hpp"
#include "dicesim/stats.hpp"
#include "dicesim/timing.hpp"
#include "dicesim/trace.hpp"
#include "dicesim/uart.hpp"
#include "oracles/bitvec_xorshift.hpp"
#include "oracles/cycle_clock.hpp"

namespace fs = std::filesystem;
using namespace dicesim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

fs::path g_work;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

// ---------------------------------------------------------------------------

Outcome xorshift_oracle() {
  Outcome o;
  std::mt19937 rng(20240601);
  std::vector<std::uint32_t> inputs{0u, 1u, 0x80000000u, 0xFFFFFFFFu};
  for (int i = 0; i < 100000; ++i) inputs.push_back(rng());
  std::size_t mismatches = 0;
  for (auto x : inputs) mismatches += prng::xorshift_step(x) != oracle::xorshift(x);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.detail = o.pass ? std::to_string(inputs.size()) + " words, 0 mismatches" : o.detail;
  return o;
}

Outcome bijectivity() {
  Outcome o;
  std::mt19937 rng(99);
  std::size_t failures = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const std::uint32_t x = rng();
    failures += prng::xorshift_inverse(prng::xorshift_step(x)) != x;
  }
  std::size_t nonlinear = 0;
  for (int i = 0; i < 10'000; ++i) {
    const std::uint32_t a = rng(), b = rng();
    nonlinear += prng::xorshift_step(a ^ b) != (prng::xorshift_step(a) ^ prng::xorshift_step(b));
  }
  o.require(failures == 0, std::to_string(failures) + " round-trip failures");
  o.require(nonlinear == 0, std::to_string(nonlinear) + " linearity failures");
  if (o.pass) o.detail = "1e6 round trips, 1e4 linear pairs";
  return o;
}

// Writes rolls and the histogram through the CLI so criterion 10 can compare
// the files.
Outcome uniformity(const fs::path& dir) {
  Outcome o;
  fs::create_directories(dir);
  const auto words = rolls::raw_words(prng::Mode::Feedback, 1, 200000);
  char buf[160];
  std::string detail;
  for (auto [sides, crit] : {std::pair{20u, 43.82}, std::pair{6u, 20.52}}) {
    const auto h = stats::tally(rolls::to_faces(words, sides), sides);
    const auto rep = stats::uniformity_report(h, stats::Alpha::P001);
    o.require(rep.dof == sides - 1, "wrong dof");
    o.require(std::abs(rep.critical - crit) < 0.005, "critical value mismatch");
    o.require(rep.statistic < crit, "d" + std::to_string(sides) + " chi-square too large");
    std::snprintf(buf, sizeof buf, "d%u chi2=%.4f<%.2f ", sides, rep.statistic, crit);
    detail += buf;

    const auto rolls_csv = dir / ("rolls_d" + std::to_string(sides) + ".csv");
    const auto hist_csv = dir / ("hist_d" + std::to_string(sides) + ".csv");
    const int rc1 = run_cli({"rolls", "-d", std::to_string(sides), "-n", "200000", "--mode", "feedback", "--seed", "1",
                             "-o", rolls_csv.string()});
    const int rc2 = run_cli({"stats", "--rolls", rolls_csv.string(), "-d", std::to_string(sides), "--alpha", "0.001",
                             "--hist-out", hist_csv.string()});
    o.require(rc1 == 0 && rc2 == 0, "cli rolls/stats exit " + std::to_string(rc1) + "/" + std::to_string(rc2));
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome modulo_bias_exact() {
  Outcome o;
  std::vector<std::uint32_t> words(1u << 16);
  for (std::uint32_t w = 0; w < words.size(); ++w) words[w] = w;
  for (std::uint32_t d : device::kDiceSides) {
    std::vector<std::uint64_t> counts(d, 0);
    for (auto w : words) ++counts[w % d];
    o.require(counts == stats::modulo_bias(d, 16).preimages, "d" + std::to_string(d) + " 16-bit tally mismatch");
    o.require(stats::tally(rolls::to_faces(words, d), d).counts == counts, "kernel tally mismatch");
  }
  const auto b20 = stats::modulo_bias(20, 32);
  for (int f = 0; f < 20; ++f) o.require(b20.preimages[f] == (f < 16 ? 214748365u : 214748364u), "d20 32-bit");
  const auto b6 = stats::modulo_bias(6, 32);
  for (int f = 0; f < 6; ++f) o.require(b6.preimages[f] == (f < 4 ? 715827883u : 715827882u), "d6 32-bit");
  if (o.pass) o.detail = "8 dice x 65536 words; d6/d20 32-bit counts exact";
  return o;
}

Outcome tilt_debounce() {
  Outcome o;
  int checked = 0;
  for (unsigned w = 0; w < 1024; ++w) {
    for (bool s : {false, true}) {
      const auto next = device::tilt_update({static_cast<std::uint16_t>(w), 0, false}, s);
      o.require(next.upright == (std::popcount(w) >= 7), "window " + std::to_string(w));
      o.require(next.window == (((w << 1) | s) & 0x3FF), "shift " + std::to_string(w));
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " cases";
  return o;
}

Outcome selection_fsm() {
  Outcome o;
  device::SelectionState s;
  std::vector<int> seen;
  for (int i = 0; i < 8; ++i) {
    s = device::selection_update(s, true, true, false);
    seen.push_back(s.diceval);
  }
  o.require(seen == std::vector<int>{4, 6, 8, 10, 12, 20, 100, 2}, "up sequence");
  o.require(s.dselect == 0, "up did not wrap to 0");
  s = device::selection_update(s, true, false, true);
  o.require(s.dselect == 7 && s.diceval == 100, "down from 0");
  s = device::selection_update(s, true, true, true);
  o.require(!s.keepon && s.dselect == 7, "both buttons");
  if (o.pass) o.detail = "4,6,8,10,12,20,100,2; down->d100; both->keepon=0";
  return o;
}

Outcome uart_roundtrip() {
  Outcome o;
  std::vector<std::uint8_t> bytes(256);
  for (int i = 0; i < 256; ++i) bytes[i] = static_cast<std::uint8_t>(i);
  const auto bits = *uart::parse_bits(uart::encode_bits(bytes));
  o.require(bits.size() == 2560, "frame length");
  auto r = uart::decode_stream(bits);
  o.require(r.bytes == bytes, "decode mismatch");
  o.require(r.framing_errors() == 0, "unexpected framing error");
  for (std::size_t i = 0; i < r.start_offsets.size(); ++i) o.require(r.start_offsets[i] == 10 * i, "offset");

  // The transmitter itself also spends exactly 10 periods per frame.
  for (int b = 0; b < 256; ++b) {
    uart::TxState s;
    int periods = 0;
    do {
      s = uart::tx_step(s, periods == 0, static_cast<std::uint8_t>(b));
      ++periods;
    } while (s.fsm != uart::TxPhase::Idle);
    o.require(periods == 10, "tx frame length for " + std::to_string(b));
  }

  auto corrupted = bits;
  corrupted[10 * 77 + 9] = 0;
  r = uart::decode_stream(corrupted);
  o.require(r.framing_errors() == 1, std::to_string(r.framing_errors()) + " framing errors after corruption");
  if (o.pass) o.detail = "256 bytes, 10 periods each, 1 framing error on corruption";
  return o;
}

Outcome timing_periods() {
  Outcome o;
  timing::Scheduler sched;
  std::array<std::uint64_t, timing::kDomainCount> falls{};
  sched.advance(12'000'000, [&](const timing::TickEvent& t) {
    if (t.edge == timing::Edge::Falling) ++falls[static_cast<std::size_t>(t.domain)];
  });
  o.require(falls[static_cast<std::size_t>(timing::Domain::Hz1000)] == 1000, "HZ1000 periods");
  o.require(falls[static_cast<std::size_t>(timing::Domain::Hz500)] == 500, "HZ500 periods");
  o.require(falls[static_cast<std::size_t>(timing::Domain::Hz10)] == 9, "HZ10 periods");
  o.require(timing::frequency_of(timing::Domain::Hz10) == timing::Frequency{250000, 25001}, "HZ10 frequency");

  timing::Scheduler fresh;
  oracle::CycleClock clock;
  o.require(fresh.advance(1'000'000) == clock.run(1'000'000), "event-driven vs cycle oracle");
  if (o.pass) o.detail = "1000/500/9 periods; 1e6-cycle oracle match";
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 9 scenario, built from the clock constants rather than typed in.

constexpr std::uint64_t kReleaseUs = 1000;
constexpr std::uint64_t kPollUs = 2 * timing::half_period(timing::Domain::Hz10) / trace::kCyclesPerUs;  // 100004
constexpr std::uint64_t kFirstPollUs = kReleaseUs + timing::half_period(timing::Domain::Hz10) / trace::kCyclesPerUs;
constexpr std::uint64_t poll_us(int k) { return kFirstPollUs + kPollUs * static_cast<std::uint64_t>(k); }

constexpr int kFirstPress = 16;   // after 1.5 s upright
constexpr int kPresses = 6;       // d2 -> d20
constexpr int kShakeFirst = 34;   // 15 polls, 1.5 s
constexpr int kShakeLast = 48;
constexpr int kBothButtons = 130;  // ~13 s, between S5 edges
constexpr std::uint64_t kDurationUs = 30'000'000;

std::string scenario_trace() {
  std::ostringstream t;
  t << "# reset, upright, select d20, shake, settle, disable keep-awake\n";
  t << "0 TILT 1\n0 RESET 1\n" << kReleaseUs << " RESET 0\n";
  const std::uint64_t half = kPollUs / 2;
  for (int i = 0; i < kPresses; ++i) {
    const int k = kFirstPress + 3 * i;
    t << poll_us(k) - half / 2 << " BTNU 1\n" << poll_us(k) + half / 2 << " BTNU 0\n";
  }
  for (int k = kShakeFirst; k <= kShakeLast; ++k) {
    t << poll_us(k) - half << " TILT " << ((k - kShakeFirst) % 2) << "\n";
  }
  t << poll_us(kShakeLast) + half << " TILT 1\n";
  t << poll_us(kBothButtons) - half << " BTNU 1\n" << poll_us(kBothButtons) - half << " BTND 1\n";
  t << poll_us(kBothButtons) + half << " BTNU 0\n" << poll_us(kBothButtons) + half << " BTND 0\n";
  return t.str();
}

std::string expected_render(std::uint32_t out) {
  std::string n = std::to_string(out);
  return std::string(3 - n.size(), ' ') + n + " ";
}

Outcome end_to_end(const fs::path& dir) {
  Outcome o;
  fs::create_directories(dir);
  const auto trace_path = dir / "scenario.trace";
  const std::string text = scenario_trace();
  std::ofstream(trace_path) << text;

  const auto events = trace::parse_trace(text);
  trace::ReplayConfig cfg;
  cfg.duration_us = kDurationUs;
  const auto log = trace::replay(events, cfg);

  o.require(run_cli({"simulate", "--trace", trace_path.string(), "--out", (dir / "run").string(), "--duration-us",
                     std::to_string(kDurationUs)}) == 0,
            "cli simulate failed");

  // Exactly one settled roll, on the selected d20.
  o.require(log.settled_rolls.size() == 1, std::to_string(log.settled_rolls.size()) + " settled rolls");
  if (!o.pass) return o;
  const auto& roll = log.settled_rolls[0];
  o.require(roll.diceval == 20, "diceval " + std::to_string(roll.diceval));
  o.require(roll.out >= 1 && roll.out <= 20, "roll out of range");

  // The display after settling shows the number right-aligned in the middle
  // three positions with the ones position blank.
  std::string shown;
  for (const auto& w : log.display_words) {
    if (w.t_us <= roll.t_us) shown = display::render_word(w.word);
  }
  o.require(shown == expected_render(roll.out), "display '" + shown + "' for roll " + std::to_string(roll.out));
  o.require(display::render_word(log.final_state->device.word) == expected_render(roll.out), "final display");

  o.require(!log.uart_bytes.empty(), "no UART bytes");
  o.require(log.uart_bytes.back().value == uart::payload_pack(roll.digits.huns, roll.digits.tens), "final UART byte");
  o.require(log.uart_framing_errors.empty(), "UART framing errors");

  // dp follows an independent vote over the per-poll tilt samples: the level
  // each poll sees is the last one written strictly before it.
  auto tilt_at = [&](std::uint64_t t) {
    bool level = false;
    for (const auto& e : events) {
      if (e.signal == trace::Signal::Tilt && e.t_us < t) level = e.value != 0;
    }
    return level;
  };
  unsigned window = 0;
  bool upright = false;
  std::vector<trace::LevelEdge> predicted;
  for (int k = 0; poll_us(k) <= kDurationUs; ++k) {
    const bool next = std::popcount(window) >= 7;
    window = ((window << 1) | (tilt_at(poll_us(k)) ? 1u : 0u)) & 0x3FF;
    if (next != upright) predicted.push_back({poll_us(k), next});
    upright = next;
  }
  bool same = predicted.size() == log.dp_edges.size();
  for (std::size_t i = 0; same && i < predicted.size(); ++i) {
    same = predicted[i].t_us == log.dp_edges[i].t_us && predicted[i].level == log.dp_edges[i].level;
  }
  o.require(same, "dp edges differ from the vote oracle");
  o.require(log.dp_edges.size() == 3, "expected boot rise, shake fall, settle rise");
  if (!o.pass) return o;
  const auto& fall = log.dp_edges[1];
  const auto& rise = log.dp_edges[2];
  o.require(!fall.level && rise.level, "dp edge levels");
  o.require(fall.t_us > poll_us(kShakeFirst) && fall.t_us < poll_us(kShakeLast), "dp did not drop during the shake");
  // The vote lags the shake by a few polls, so the colon stays lit past its
  // end until the settle.
  o.require(rise.t_us > poll_us(kShakeLast), "dp back to 1 before the shake ended");
  o.require(rise.t_us - fall.t_us >= 1'000'000, "colon lit for less than 1 s");
  o.require(rise.t_us == roll.t_us, "settle time differs from roll time");

  // Keep-awake: edges every 5.0002 s; after the both-button poll the next
  // edge forces 0 and nothing follows.
  const std::uint64_t s5_period = 2 * timing::half_period(timing::Domain::S5) / trace::kCyclesPerUs;
  const auto& on = log.onpin_edges;
  o.require(on.size() >= 2, "too few onpin edges");
  for (std::size_t i = 1; i < on.size(); ++i) o.require(on[i].t_us - on[i - 1].t_us == s5_period, "onpin interval");
  o.require(!on.back().level, "onpin not left at 0");
  o.require(on.back().t_us > poll_us(kBothButtons), "no forced-off edge after both buttons");
  o.require(on.back().t_us + 2 * s5_period <= kDurationUs, "too short to show onpin stays 0");
  o.require(!log.final_state->device.power.onsig, "final onsig");

  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "roll %u/d20 shown '%s', UART 0x%02X, colon %.2f s, onpin edges %zu", roll.out,
                  shown.c_str(), log.uart_bytes.back().value, (rise.t_us - fall.t_us) / 1e6, on.size());
    o.detail = buf;
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path a = g_work / "run_a";
  const fs::path b = g_work / "run_b";
  for (const auto& dir : {a, b}) {
    fs::remove_all(dir);
    const auto u = uniformity(dir / "c3");
    const auto e = end_to_end(dir / "c9");
    o.require(u.pass && e.pass, "rerun failed: " + u.detail + e.detail);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    o.require(fs::exists(b / rel), "missing " + rel.string());
    o.require(slurp(entry.path()) == slurp(b / rel), "differs: " + rel.string());
    ++compared;
  }
  o.require(compared == 7, "only " + std::to_string(compared) + " files compared");
  if (o.pass) o.detail = std::to_string(compared) + " files byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "dicesim_acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "xorshift oracle equivalence", 1, xorshift_oracle},
      {2, "bijectivity and linearity", 5, bijectivity},
      {3, "chi-square uniformity d20/d6", 5, [] { return uniformity(g_work / "c3"); }},
      {4, "modulo-bias exactness", 5, modulo_bias_exact},
      {5, "tilt debounce exhaustive", 1, tilt_debounce},
      {6, "selection FSM", 1, selection_fsm},
      {7, "UART round trip", 1, uart_roundtrip},
      {8, "clock dividers", 10, timing_periods},
      {9, "end-to-end scenario", 10, [] { return end_to_end(g_work / "c9"); }},
      {10, "determinism of 3 and 9", 20, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over time budget)";
    }
    std::printf("%s %2d %-30s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
