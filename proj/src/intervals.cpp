#include "iw/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace iw {

IntervalSet make_intervals(std::vector<std::pair<Rat, Rat>> raw) {
  for (auto& [lo, hi] : raw) {
    if (lo < 0 || hi > 1)
      throw std::invalid_argument("interval escapes [0,1): [" + rat_str(lo) +
                                  ", " + rat_str(hi) + ")");
  }
  std::erase_if(raw, [](const auto& p) { return !(p.first < p.second); });
  std::sort(raw.begin(), raw.end());
  IntervalSet out;
  for (auto& p : raw) {
    if (!out.parts.empty() && p.first <= out.parts.back().second) {
      if (out.parts.back().second < p.second) out.parts.back().second = p.second;
    } else {
      out.parts.push_back(std::move(p));
    }
  }
  return out;
}

IntervalSet parse_intervals(const std::string& text) {
  std::vector<std::pair<Rat, Rat>> raw;
  size_t i = 0;
  auto skip_filler = [&] {
    // whitespace, commas, ascii "u" or the UTF-8 union sign between intervals
    while (i < text.size()) {
      unsigned char ch = text[i];
      if (std::isspace(ch) || ch == ',' || ch == 'u' || ch == 'U') {
        ++i;
      } else if (text.compare(i, 3, "\xE2\x88\xAA") == 0) {
        i += 3;
      } else {
        break;
      }
    }
  };
  skip_filler();
  while (i < text.size()) {
    if (text[i] != '[')
      throw std::invalid_argument("expected '[' at position " +
                                  std::to_string(i) + " of " + text);
    size_t comma = text.find(',', i);
    if (comma == std::string::npos)
      throw std::invalid_argument("interval missing ',' in " + text);
    size_t close = text.find(')', comma);
    if (close == std::string::npos)
      throw std::invalid_argument("interval missing ')' in " + text);
    raw.emplace_back(parse_rat(text.substr(i + 1, comma - i - 1)),
                     parse_rat(text.substr(comma + 1, close - comma - 1)));
    i = close + 1;
    skip_filler();
  }
  return make_intervals(std::move(raw));
}

std::string print_intervals(const IntervalSet& s) {
  if (s.parts.empty()) return "{}";
  std::string out;
  for (size_t i = 0; i < s.parts.size(); ++i) {
    if (i) out += " u ";
    out += "[" + rat_str(s.parts[i].first) + ", " + rat_str(s.parts[i].second) + ")";
  }
  return out;
}

Rat measure_of(const IntervalSet& s) {
  Rat total = 0;
  for (const auto& [lo, hi] : s.parts) total += hi - lo;
  return total;
}

IntervalSet clip(const IntervalSet& s, const Rat& lo, const Rat& hi) {
  IntervalSet out;
  for (const auto& [a, b] : s.parts) {
    Rat l = std::max(a, lo), h = std::min(b, hi);
    if (l < h) out.parts.emplace_back(l, h);
  }
  return out;  // already sorted and separated
}

}  // namespace iw
