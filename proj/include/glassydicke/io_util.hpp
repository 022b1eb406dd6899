#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace glassydicke {

// Lossless float formatting used in every text output.
std::string fmt17(double v);

// Minimal single-line JSON object builder; floats printed with fmt17,
// non-finite values as null.
class JsonWriter {
 public:
  void put(const std::string& key, double v);
  void put(const std::string& key, long v);
  void put(const std::string& key, int v) { put(key, static_cast<long>(v)); }
  void put(const std::string& key, std::uint64_t v);
  void put(const std::string& key, bool v);
  void put(const std::string& key, const std::string& v);
  void put_raw(const std::string& key, const std::string& json);
  std::string str() const;

 private:
  void key(const std::string& k);
  std::string body_;
};

std::string json_array(const std::vector<double>& v);
std::string json_array(const std::vector<std::uint64_t>& v);
std::string json_escape(const std::string& s);

}  // namespace glassydicke
