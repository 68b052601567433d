#ifndef SDR_CONFIG_HPP
#define SDR_CONFIG_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sdr/match.hpp"
#include "sdr/pipeline.hpp"

namespace sdr {

// Full tool configuration. Defaults are the documented baseline; a config
// file overrides defaults, and command-line flags override the file.
struct Config {
    PipelineOptions pipeline;
    MatchMode match_mode = MatchMode::geometry;
    std::uint64_t seed = 1;
    int threads = 0;  // worker threads for batch commands; 0 = logical cores
};

// Resolve the `threads` setting: values < 1 become the logical core count.
int resolve_threads(int threads);

// Apply the (partial) JSON object on top of `base`. Unknown keys are
// rejected so typos do not silently fall back to defaults.
Config config_from_json(const nlohmann::json& j, Config base = {});

nlohmann::json to_json(const Config& config);

Config load_config(const std::filesystem::path& path, Config base = {});

// Enum spellings used in config files and flags.
std::string to_string(EvolveMethod m);
std::string to_string(BasisMode m);
std::string to_string(MatchMode m);
std::string to_string(SpacingPolicy p);
EvolveMethod evolve_method_from_string(const std::string& s);
BasisMode basis_mode_from_string(const std::string& s);
MatchMode match_mode_from_string(const std::string& s);
SpacingPolicy spacing_policy_from_string(const std::string& s);

}  // namespace sdr

#endif
