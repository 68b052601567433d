#include "sdr/config.hpp"

#include <thread>

#include "sdr/errors.hpp"
#include "sdr/serialize.hpp"

namespace sdr {

using nlohmann::json;

std::string to_string(EvolveMethod m) { return m == EvolveMethod::krylov ? "krylov" : "rk4"; }
std::string to_string(BasisMode m) { return m == BasisMode::full ? "full" : "blockade"; }
std::string to_string(MatchMode m) {
    return m == MatchMode::geometry ? "geometry" : "density_weighted";
}
std::string to_string(SpacingPolicy p) { return p == SpacingPolicy::merge ? "merge" : "strict"; }

EvolveMethod evolve_method_from_string(const std::string& s) {
    if (s == "krylov") return EvolveMethod::krylov;
    if (s == "rk4") return EvolveMethod::rk4;
    throw InputError("unknown method '" + s + "' (expected krylov or rk4)");
}

BasisMode basis_mode_from_string(const std::string& s) {
    if (s == "full") return BasisMode::full;
    if (s == "blockade") return BasisMode::blockade;
    throw InputError("unknown basis mode '" + s + "' (expected full or blockade)");
}

MatchMode match_mode_from_string(const std::string& s) {
    if (s == "geometry") return MatchMode::geometry;
    if (s == "density_weighted") return MatchMode::density_weighted;
    throw InputError("unknown match mode '" + s + "' (expected geometry or density_weighted)");
}

SpacingPolicy spacing_policy_from_string(const std::string& s) {
    if (s == "merge") return SpacingPolicy::merge;
    if (s == "strict") return SpacingPolicy::strict;
    throw InputError("unknown spacing policy '" + s + "' (expected merge or strict)");
}

Config config_from_json(const json& j, Config base) {
    static const char* known[] = {
        "profile",     "threshold",  "threshold_absolute", "spacing",  "min_contour_points",
        "budget",      "eps_min",    "eps_max",            "alpha",    "spacing_policy",
        "duration",    "dt",         "method",             "basis",    "blockade_radius",
        "match_mode",  "seed",       "threads"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InputError("unknown config key '" + key + "'");
    }

    Config c = std::move(base);
    PipelineOptions& p = c.pipeline;
    if (j.contains("profile")) p.profile = profile_from_json(j.at("profile"));
    p.threshold = j.value("threshold", p.threshold);
    p.threshold_absolute = j.value("threshold_absolute", p.threshold_absolute);
    p.spacing = j.value("spacing", p.spacing);
    p.min_contour_points = j.value("min_contour_points", p.min_contour_points);
    p.budget = j.value("budget", p.budget);
    p.eps_min = j.value("eps_min", p.eps_min);
    p.eps_max = j.value("eps_max", p.eps_max);
    p.alpha = j.value("alpha", p.alpha);
    if (j.contains("spacing_policy")) {
        p.spacing_policy = spacing_policy_from_string(j.at("spacing_policy").get<std::string>());
    }
    p.duration = j.value("duration", p.duration);
    p.dt = j.value("dt", p.dt);
    if (j.contains("method")) {
        p.method = evolve_method_from_string(j.at("method").get<std::string>());
    }
    if (j.contains("basis")) p.basis_mode = basis_mode_from_string(j.at("basis").get<std::string>());
    p.blockade_radius = j.value("blockade_radius", p.blockade_radius);
    if (j.contains("match_mode")) {
        c.match_mode = match_mode_from_string(j.at("match_mode").get<std::string>());
    }
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    return c;
}

json to_json(const Config& config) {
    const PipelineOptions& p = config.pipeline;
    return json{{"profile", to_json(p.profile)},
                {"threshold", p.threshold},
                {"threshold_absolute", p.threshold_absolute},
                {"spacing", p.spacing},
                {"min_contour_points", p.min_contour_points},
                {"budget", p.budget},
                {"eps_min", p.eps_min},
                {"eps_max", p.eps_max},
                {"alpha", p.alpha},
                {"spacing_policy", to_string(p.spacing_policy)},
                {"duration", p.duration},
                {"dt", p.dt},
                {"method", to_string(p.method)},
                {"basis", to_string(p.basis_mode)},
                {"blockade_radius", p.blockade_radius},
                {"match_mode", to_string(config.match_mode)},
                {"seed", config.seed},
                {"threads", config.threads}};
}

Config load_config(const std::filesystem::path& path, Config base) {
    return config_from_json(read_json_file(path), std::move(base));
}

int resolve_threads(int threads) {
    if (threads >= 1) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace sdr
