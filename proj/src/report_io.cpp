#include "recordstats/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "recordstats/version.hpp"

namespace recordstats {

std::string format_double(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::to_chars_result res{};
  if (digits < 0) {
    res = std::to_chars(buf, buf + sizeof(buf), value);
  } else {
    res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  }
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void CsvMetaWriter::meta(const std::string& key, const std::string& value) {
  os_ << "# " << key << '=' << value << '\n';
}

void CsvMetaWriter::meta(const std::string& key, std::uint64_t value) {
  os_ << "# " << key << '=' << value << '\n';
}

void write_manifest(const std::filesystem::path& dir, const OutputManifest& manifest) {
  nlohmann::json j{
      {"schema_version", kSchemaVersion},
      {"tool_version", std::string(kVersion)},
      {"command", manifest.command},
      {"invocation", manifest.invocation},
      {"seed", manifest.seed},
      {"files", manifest.files},
  };
  if (!manifest.extra.is_null()) j["details"] = manifest.extra;
  std::ofstream os(dir / "manifest.json");
  if (!os) throw std::runtime_error("cannot write manifest in " + dir.string());
  os << j.dump(2) << '\n';
}

}  // namespace recordstats
