#pragma once

#include <stdexcept>
#include <string>

namespace gspec {

/// Config/schema violation; maps to exit code 1. The message names the
/// offending field.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Executes a run config (JSON text). Overrides, when non-empty/non-negative,
/// replace the config's out_dir and seed. Artifacts are staged in a temp
/// directory and moved into out_dir only on success.
/// Returns 0 on success/PASS, 2 on a check FAIL. Throws ConfigError (exit 1)
/// on invalid configs.
/// expected_command, when non-empty, must match the config's command field.
int run_config_text(const std::string& json_text, const std::string& out_override,
                    int seed_override, const std::string& expected_command = "");

int run_config_file(const std::string& config_path, const std::string& out_override,
                    int seed_override, const std::string& expected_command = "");

}  // namespace gspec
