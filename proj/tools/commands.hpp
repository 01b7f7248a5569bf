#pragma once

#include <filesystem>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace cli {

// Non-OK status from the library.
struct ApiError : std::runtime_error {
    ApiError(skb_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    skb_status status;
};

struct RunOptions {
    std::filesystem::path out_dir;
    int workers = 1;
};

struct CommandResult {
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json invariant_report = nlohmann::json::object();
    bool invariants_ok = true;
};

CommandResult run_coupling_nv(const Config& cfg, const RunOptions& opt);
CommandResult run_coupling_transmon(const Config& cfg, const RunOptions& opt);
CommandResult run_field_map(const Config& cfg, const RunOptions& opt);
CommandResult run_dynamics(const Config& cfg, const RunOptions& opt);
CommandResult run_thiele(const Config& cfg, const RunOptions& opt);
CommandResult run_regime(const Config& cfg, const RunOptions& opt);

}  // namespace cli
