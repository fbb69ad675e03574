#pragma once

// Command layer behind the CLI. Every command is fully described by its name
// and a parameter object, which is what a run manifest stores; executing the
// same pair again yields the same output bytes.

#include <json.hpp>

#include <string>
#include <vector>

namespace pushpull {

using Json = nlohmann::ordered_json;

std::string tool_version();

/// 17 significant digits, '.' as decimal separator (round-trip safe).
std::string format_real(double value);

struct CommandOutput {
    std::string body;
    int exit_code = 0; ///< 0 success, 1 failed verification
};

/// Fills in every default so the returned object is the full parameter set.
/// Throws std::invalid_argument for unknown commands or malformed values.
Json complete_parameters(const std::string& command, const Json& given);

/// Runs `command` with a complete parameter set. Throws std::domain_error /
/// std::invalid_argument for invalid parameters and CapacityError when a
/// request is too large.
CommandOutput execute(const std::string& command, const Json& parameters);

/// {command, parameters, master_seed, tool_version, timestamp, outputs}
Json make_manifest(const std::string& command, const Json& parameters,
                   const std::vector<std::string>& outputs);

} // namespace pushpull
