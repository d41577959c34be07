// Canonical JSON text fragments: sorted-key writers across the harness emit
// floats with 17 significant digits (enough to round-trip a double exactly)
// so that write(parse(x)) is byte-identical for canonical files.
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace a2bench {

inline std::string format_double_17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

inline std::string json_string(const std::string& s) {
  return "\"" + json_escape(s) + "\"";
}

}  // namespace a2bench
