#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace pgkit {

// 64-bit FNV-1a digest; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Record of one CLI invocation: what ran, with which parameters and inputs,
// and digests of everything written. Result digests depend only on inputs
// and tool version; wall-clock timings are recorded separately and never
// feed into digests.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> inputs;   // name -> fnv1a64 hex of content
  std::map<std::string, std::string> outputs;  // artifact -> fnv1a64 hex of bytes written
  std::map<std::string, double> timings_ms;

  nlohmann::ordered_json to_json() const;
};

}  // namespace pgkit
