#include "dicesim/display.hpp"

namespace dicesim::display {

BcdWord bcd_select(bool setmode, DigitCodes set, DigitCodes rand) {
  if (setmode) return BcdWord::pack(set);

  DigitCodes out;
  out.thou = rand.thou == 0 ? kCodeBlank : rand.thou;
  out.huns = (rand.huns == 0 && rand.thou == 0) ? kCodeBlank : rand.huns;
  out.tens = (rand.tens == 0 && rand.huns == 0 && rand.thou == 0) ? kCodeBlank : rand.tens;
  out.ones = rand.ones == 0 ? kCodeBlank : rand.ones;
  return BcdWord::pack(out);
}

DisplayFrame Multiplexer::step(BcdWord bcd, bool upright) {
  latched_ = bcd;
  const DisplayFrame frame = frame_for(next_digit_, upright);
  next_digit_ = static_cast<std::uint8_t>((next_digit_ + 1) % 4);
  return frame;
}

DisplayFrame Multiplexer::frame_for(std::uint8_t position, bool upright) const {
  return DisplayFrame{position, glyph(latched_.digit(position)), upright, anode_for(position)};
}

std::string render_word(BcdWord bcd) {
  std::string text(4, ' ');
  for (int i = 0; i < 4; ++i) {
    const std::uint8_t code = bcd.digit(i);
    if (code <= 9) {
      text[i] = static_cast<char>('0' + code);
    } else if (code == kCodeLetterD) {
      text[i] = 'd';
    }
  }
  return text;
}

}  // namespace dicesim::display
