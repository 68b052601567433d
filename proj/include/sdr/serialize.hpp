#ifndef SDR_SERIALIZE_HPP
#define SDR_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sdr/basis.hpp"
#include "sdr/dots.hpp"
#include "sdr/evolve.hpp"
#include "sdr/match.hpp"
#include "sdr/register.hpp"
#include "sdr/waveform.hpp"

namespace sdr {

// Round to `digits` significant decimal digits through a %.Ng format/parse
// cycle, so the value that lands in JSON is exactly the one read back.
double round_sig(double v, int digits);

// Serialized file schemas (all JSON objects with sorted keys, LF endings):
//   DotCloud        {"version", "source", "epsilon", "width", "height",
//                    "points": [[x, y], ...]}            points: 9 digits
//   HardwareProfile {"area_width", ..., "t_max"}
//   AtomRegister    {"version", "profile", "positions_um", "alpha",
//                    "provenance"}                 positions_um: 9 digits
//   WaveformSet     {"omega": [[t, v], ...], "delta_g", "delta_l", "phi",
//                    "duration"}
//   EvolutionSummary{"densities", "norm_drift", "steps"}      12 digits
//   MatchResult     {"best", "mode", "ranking": [{"id", "distance"}, ...]}
//                                                   distances: 12 digits

nlohmann::json to_json(const DotCloud& cloud);
DotCloud dotcloud_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HardwareProfile& profile);
HardwareProfile profile_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AtomRegister& reg);
AtomRegister register_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Waveform& w);
Waveform waveform_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WaveformSet& set);
WaveformSet waveformset_from_json(const nlohmann::json& j);

// The serializable slice of an EvolutionResult (the state itself goes to the
// binary dump, never to JSON).
struct EvolutionSummary {
    std::vector<double> densities;
    double norm_drift = 0.0;
    std::int64_t steps = 0;
};

nlohmann::json to_json(const EvolutionSummary& summary);
EvolutionSummary evolution_summary_from_json(const nlohmann::json& j);
EvolutionSummary summarize(const EvolutionResult& result);

nlohmann::json to_json(const MatchResult& result);
MatchResult matchresult_from_json(const nlohmann::json& j);

// File helpers. JSON files end with a trailing newline.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// Binary state dump: 8-byte magic "SDRSTATE", u32 version, u32 dimension,
// then little-endian interleaved (re, im) double pairs in basis order.
void write_state_dump(const std::filesystem::path& path, const QuantumState& state);
Eigen::VectorXcd read_state_dump(const std::filesystem::path& path);

}  // namespace sdr

#endif
