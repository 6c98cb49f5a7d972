#include "ekbench/report.hpp"

#include <cstdio>

namespace ekbench {

std::uint64_t fnv64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

nlohmann::ordered_json render_report(const std::string& command, const std::string& config_text,
                                     nlohmann::ordered_json payload) {
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv64(command + "\n" + config_text)));
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["configDigest"] = digest;
  j["payload"] = std::move(payload);
  return j;
}

std::string report_text(const nlohmann::ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace ekbench
