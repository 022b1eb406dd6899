#include "glassydicke/io_util.hpp"

#include <cmath>
#include <cstdio>

namespace glassydicke {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::key(const std::string& k) {
  if (!body_.empty()) body_ += ',';
  body_ += '"';
  body_ += json_escape(k);
  body_ += "\":";
}

void JsonWriter::put(const std::string& k, double v) {
  key(k);
  body_ += std::isfinite(v) ? fmt17(v) : "null";
}

void JsonWriter::put(const std::string& k, long v) {
  key(k);
  body_ += std::to_string(v);
}

void JsonWriter::put(const std::string& k, std::uint64_t v) {
  key(k);
  body_ += std::to_string(v);
}

void JsonWriter::put(const std::string& k, bool v) {
  key(k);
  body_ += v ? "true" : "false";
}

void JsonWriter::put(const std::string& k, const std::string& v) {
  key(k);
  body_ += '"';
  body_ += json_escape(v);
  body_ += '"';
}

void JsonWriter::put_raw(const std::string& k, const std::string& json) {
  key(k);
  body_ += json;
}

std::string JsonWriter::str() const { return "{" + body_ + "}"; }

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::isfinite(v[i]) ? fmt17(v[i]) : "null";
  }
  return out + "]";
}

std::string json_array(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "]";
}

}  // namespace glassydicke
