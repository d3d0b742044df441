#include "pgkit/manifest.hpp"

#include <array>
#include <cstdio>

#include "pgkit/version.hpp"

namespace pgkit {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return std::string(buf.data());
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "pgkit";
  j["version"] = kVersion;
  j["command"] = command;
  j["parameters"] = parameters;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["timings_ms"] = timings_ms;
  return j;
}

}  // namespace pgkit
