#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace recordstats {

// Shortest round-trip decimal representation (digits < 0), or a fixed number
// of significant digits. Locale-independent.
std::string format_double(double value, int digits = -1);

// Writes the "# key=value" metadata block that precedes every CSV header.
class CsvMetaWriter {
 public:
  explicit CsvMetaWriter(std::ostream& os) : os_(os) {}
  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, std::uint64_t value);
  std::ostream& stream() { return os_; }

 private:
  std::ostream& os_;
};

struct OutputManifest {
  std::string command;
  std::string invocation;
  std::uint64_t seed = 0;
  std::vector<std::string> files;
  nlohmann::json extra;
};

// Writes manifest.json into `dir`.
void write_manifest(const std::filesystem::path& dir, const OutputManifest& manifest);

}  // namespace recordstats
