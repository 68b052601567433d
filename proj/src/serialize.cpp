#include "sdr/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

using nlohmann::json;

double round_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

namespace {

json points_to_json(const std::vector<Vec2>& pts, int digits) {
    json arr = json::array();
    for (const Vec2& p : pts) {
        arr.push_back(json::array({round_sig(p.x, digits), round_sig(p.y, digits)}));
    }
    return arr;
}

std::vector<Vec2> points_from_json(const json& arr) {
    std::vector<Vec2> pts;
    pts.reserve(arr.size());
    for (const auto& p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return pts;
}

// Wraps nlohmann's .at() access so schema problems surface as InputError.
template <typename F>
auto parsing(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace

json to_json(const DotCloud& cloud) {
    return json{{"version", 1},
                {"source", cloud.source},
                {"epsilon", round_sig(cloud.epsilon, 9)},
                {"width", cloud.width},
                {"height", cloud.height},
                {"points", points_to_json(cloud.points, 9)}};
}

DotCloud dotcloud_from_json(const json& j) {
    return parsing("dot cloud", [&] {
        DotCloud c;
        c.source = j.at("source").get<std::string>();
        c.epsilon = j.at("epsilon").get<double>();
        c.width = j.at("width").get<int>();
        c.height = j.at("height").get<int>();
        c.points = points_from_json(j.at("points"));
        return c;
    });
}

json to_json(const HardwareProfile& profile) {
    return json{{"area_width", profile.area_width},
                {"area_height", profile.area_height},
                {"min_spacing", profile.min_spacing},
                {"max_atoms", profile.max_atoms},
                {"c6", profile.c6},
                {"omega_max", profile.omega_max},
                {"delta_abs_max", profile.delta_abs_max},
                {"t_max", profile.t_max}};
}

HardwareProfile profile_from_json(const json& j) {
    return parsing("hardware profile", [&] {
        HardwareProfile p;
        p.area_width = j.value("area_width", p.area_width);
        p.area_height = j.value("area_height", p.area_height);
        p.min_spacing = j.value("min_spacing", p.min_spacing);
        p.max_atoms = j.value("max_atoms", p.max_atoms);
        p.c6 = j.value("c6", p.c6);
        p.omega_max = j.value("omega_max", p.omega_max);
        p.delta_abs_max = j.value("delta_abs_max", p.delta_abs_max);
        p.t_max = j.value("t_max", p.t_max);
        p.check();
        return p;
    });
}

json to_json(const AtomRegister& reg) {
    json alpha = json::array();
    for (const double a : reg.local_scale) alpha.push_back(a);
    return json{{"version", 1},
                {"profile", to_json(reg.profile)},
                {"positions_um", points_to_json(reg.positions, 9)},
                {"alpha", alpha},
                {"provenance", reg.provenance}};
}

AtomRegister register_from_json(const json& j) {
    return parsing("atom register", [&] {
        AtomRegister r;
        r.profile = profile_from_json(j.at("profile"));
        r.positions = points_from_json(j.at("positions_um"));
        r.local_scale = j.at("alpha").get<std::vector<double>>();
        r.provenance = j.at("provenance").get<std::string>();
        if (r.local_scale.size() != r.positions.size()) {
            throw InputError("atom register alpha count does not match positions");
        }
        return r;
    });
}

json to_json(const Waveform& w) {
    json arr = json::array();
    for (const auto& s : w.samples) arr.push_back(json::array({s.t, s.v}));
    return arr;
}

Waveform waveform_from_json(const json& j) {
    return parsing("waveform", [&] {
        Waveform w;
        for (const auto& s : j) w.samples.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
        w.check();
        return w;
    });
}

json to_json(const WaveformSet& set) {
    return json{{"omega", to_json(set.omega)},
                {"delta_g", to_json(set.delta_g)},
                {"delta_l", to_json(set.delta_l)},
                {"phi", to_json(set.phi)},
                {"duration", set.duration}};
}

WaveformSet waveformset_from_json(const json& j) {
    return parsing("waveform set", [&] {
        WaveformSet set;
        set.omega = waveform_from_json(j.at("omega"));
        set.delta_g = waveform_from_json(j.at("delta_g"));
        set.delta_l = waveform_from_json(j.at("delta_l"));
        set.phi = waveform_from_json(j.at("phi"));
        set.duration = j.at("duration").get<double>();
        return set;
    });
}

json to_json(const EvolutionSummary& summary) {
    json densities = json::array();
    for (const double d : summary.densities) densities.push_back(round_sig(d, 12));
    return json{{"densities", densities},
                {"norm_drift", round_sig(summary.norm_drift, 12)},
                {"steps", summary.steps}};
}

EvolutionSummary evolution_summary_from_json(const json& j) {
    return parsing("evolution summary", [&] {
        EvolutionSummary s;
        s.densities = j.at("densities").get<std::vector<double>>();
        s.norm_drift = j.at("norm_drift").get<double>();
        s.steps = j.at("steps").get<std::int64_t>();
        return s;
    });
}

EvolutionSummary summarize(const EvolutionResult& result) {
    return {result.densities, result.norm_drift, result.step_count};
}

json to_json(const MatchResult& result) {
    json ranking = json::array();
    for (const auto& e : result.ranking) {
        ranking.push_back(json{{"id", e.id}, {"distance", round_sig(e.distance, 12)}});
    }
    return json{{"best", result.best},
                {"mode", result.mode == MatchMode::geometry ? "geometry" : "density_weighted"},
                {"ranking", ranking}};
}

MatchResult matchresult_from_json(const json& j) {
    return parsing("match result", [&] {
        MatchResult r;
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "geometry") {
            r.mode = MatchMode::geometry;
        } else if (mode == "density_weighted") {
            r.mode = MatchMode::density_weighted;
        } else {
            throw InputError("unknown match mode: " + mode);
        }
        for (const auto& e : j.at("ranking")) {
            r.ranking.push_back(
                {e.at("id").get<std::string>(), e.at("distance").get<double>()});
        }
        if (!r.ranking.empty()) r.best = r.ranking.front().id;
        return r;
    });
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw InputError("write failed: " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_state_dump(const std::filesystem::path& path, const QuantumState& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write state dump: " + path.string());
    const char magic[8] = {'S', 'D', 'R', 'S', 'T', 'A', 'T', 'E'};
    out.write(magic, 8);
    const std::uint32_t version = 1;
    const std::uint32_t dim = std::uint32_t(state.amplitudes.size());
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        const double re = state.amplitudes[i].real();
        const double im = state.amplitudes[i].imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!out) throw InputError("write failed: " + path.string());
}

Eigen::VectorXcd read_state_dump(const std::filesystem::path& path) {
    const std::string bytes = read_text_file(path);
    if (bytes.size() < 16 || std::memcmp(bytes.data(), "SDRSTATE", 8) != 0) {
        throw InputError("not a state dump: " + path.string());
    }
    std::uint32_t version = 0, dim = 0;
    std::memcpy(&version, bytes.data() + 8, 4);
    std::memcpy(&dim, bytes.data() + 12, 4);
    if (version != 1) throw InputError("unsupported state dump version");
    if (bytes.size() != 16 + std::size_t(dim) * 16) {
        throw InputError("state dump truncated: " + path.string());
    }
    Eigen::VectorXcd amps(dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
        double re = 0.0, im = 0.0;
        std::memcpy(&re, bytes.data() + 16 + std::size_t(i) * 16, 8);
        std::memcpy(&im, bytes.data() + 16 + std::size_t(i) * 16 + 8, 8);
        amps[Eigen::Index(i)] = {re, im};
    }
    return amps;
}

}  // namespace sdr
