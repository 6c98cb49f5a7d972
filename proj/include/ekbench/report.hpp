#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ekbench {

inline constexpr const char* kToolName = "ekbench";
inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the bytes; fingerprints the effective configuration so a
// report can be matched to the exact invocation that produced it.
std::uint64_t fnv64(const std::string& bytes);

// Wraps a payload in the standard envelope: tool, version, subcommand,
// config digest, payload.  Carries no timestamps, so equal inputs render
// byte-identical text.
nlohmann::ordered_json render_report(const std::string& command, const std::string& config_text,
                                     nlohmann::ordered_json payload);

// dump(2) plus a trailing newline, the single serialization used for
// every report the tool prints.
std::string report_text(const nlohmann::ordered_json& report);

}  // namespace ekbench
