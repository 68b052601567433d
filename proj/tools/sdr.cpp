// sdr — sparse-dot image encoding, Rydberg-register evolution, and
// dot-pattern matching. Subcommands: encode, simulate, match, db-build,
// db-verify. Standard output carries exactly one machine-readable JSON line
// per run (including failures); human-readable text goes to standard error
// unless --json is given.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdr/config.hpp"
#include "sdr/dots.hpp"
#include "sdr/errors.hpp"
#include "sdr/evolve.hpp"
#include "sdr/image.hpp"
#include "sdr/match.hpp"
#include "sdr/pipeline.hpp"
#include "sdr/register.hpp"
#include "sdr/serialize.hpp"
#include "sdr/store.hpp"
#include "sdr/svg.hpp"
#include "sdr/waveform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sdr;

namespace {

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int fail(const std::exception& e, const std::string& command) {
    int code = 1;
    std::string type = "internal_error";
    if (dynamic_cast<const InputError*>(&e)) {
        code = 2, type = "input_error";
    } else if (dynamic_cast<const BudgetError*>(&e)) {
        code = 3, type = "budget_error";
    } else if (dynamic_cast<const HardwareError*>(&e)) {
        code = 4, type = "hardware_error";
    } else if (dynamic_cast<const NormDriftError*>(&e)) {
        code = 5, type = "norm_drift_error";
    } else if (dynamic_cast<const EmptyDatabaseError*>(&e)) {
        code = command == "db-build" ? 7 : 6, type = "empty_database_error";
    } else if (dynamic_cast<const DatabaseError*>(&e)) {
        code = 2, type = "database_error";
    }
    emit(json{{"error", {{"type", type}, {"message", e.what()}, {"exit_code", code}}}});
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

json rounded_array(const std::vector<double>& values, int digits) {
    json arr = json::array();
    for (double v : values) arr.push_back(round_sig(v, digits));
    return arr;
}

std::string bitstring(std::uint64_t bits, std::size_t n_atoms) {
    std::string s(n_atoms, '0');
    for (std::size_t j = 0; j < n_atoms; ++j) {
        if ((bits >> j) & 1u) s[j] = '1';
    }
    return s;
}

int cmd_encode(const Config& cfg, const std::string& input, const std::string& out,
               const std::string& plot, bool json_mode) {
    const GrayImage img = load_image(input);
    const DotCloud cloud = encode_image(img, cfg.pipeline, fs::path(input).stem().string());
    if (!out.empty()) write_json_file(out, to_json(cloud));
    if (!plot.empty()) write_text_file(plot, svg_dot_plot(cloud.points));

    int polylines = 0;
    for (int id : cloud.source_ids) polylines = std::max(polylines, id + 1);
    json summary{{"atoms", cloud.size()},
                 {"epsilon", round_sig(cloud.epsilon, 9)},
                 {"polylines", polylines},
                 {"width", cloud.width},
                 {"height", cloud.height}};
    if (!out.empty()) summary["out"] = out;
    if (!json_mode) {
        std::cerr << "encoded " << cloud.size() << " dots (epsilon " << cloud.epsilon << " px) from "
                  << cloud.width << "x" << cloud.height << " image\n";
    }
    emit(summary);
    return 0;
}

int cmd_simulate(const Config& cfg, const std::string& dots, const std::string& out,
                 const std::string& plot, const std::string& waveforms, const std::string& state,
                 int shots, bool json_mode) {
    const DotCloud cloud = dotcloud_from_json(read_json_file(dots));
    std::optional<WaveformSet> waves;
    if (!waveforms.empty()) waves = waveformset_from_json(read_json_file(waveforms));

    const SimulationOutput sim = simulate_cloud(cloud, cfg.pipeline, waves);

    if (!out.empty()) {
        write_json_file(out, json{{"version", 1},
                                  {"cloud", to_json(cloud)},
                                  {"register", to_json(sim.reg)},
                                  {"result", to_json(summarize(sim.result))}});
    }
    if (!plot.empty()) {
        write_text_file(plot, svg_density_plot(sim.reg.positions, sim.result.densities,
                                               sim.reg.profile.area_width,
                                               sim.reg.profile.area_height));
    }
    if (!state.empty()) write_state_dump(state, sim.result.final_state);

    json summary{{"atoms", sim.reg.size()},
                 {"basis", to_string(sim.basis->mode)},
                 {"dim", sim.basis->size()},
                 {"steps", sim.result.step_count},
                 {"norm_drift", round_sig(sim.result.norm_drift, 12)},
                 {"densities", rounded_array(sim.result.densities, 12)}};
    if (!out.empty()) summary["out"] = out;
    if (shots > 0) {
        const auto samples =
            sample_bitstrings(sim.result.final_state, std::size_t(shots), cfg.seed);
        std::map<std::string, int> counts;
        for (std::uint64_t bits : samples) ++counts[bitstring(bits, sim.reg.size())];
        summary["samples"] = json(counts);
        summary["seed"] = cfg.seed;
    }
    if (!json_mode) {
        std::cerr << "evolved " << sim.reg.size() << " atoms (" << to_string(sim.basis->mode)
                  << " basis, dim " << sim.basis->size() << ") over " << sim.waves.duration
                  << " us in " << sim.result.step_count << " steps\n";
    }
    emit(summary);
    return 0;
}

int cmd_match(const Config& cfg, const std::string& query_path, const std::string& db_dir, int top,
              bool json_mode) {
    const Database db = load_database(db_dir);
    WeightedCloud query = load_query_cloud(query_path, cfg.match_mode);
    query.points = normalize_points(std::move(query.points));

    MatchResult result = match_query(query, load_entry_clouds(db), cfg.match_mode);
    if (top > 0 && std::size_t(top) < result.ranking.size()) result.ranking.resize(top);

    if (!json_mode) {
        std::cerr << "best match: " << result.best << " (distance "
                  << result.ranking.front().distance << ", " << to_string(result.mode) << ")\n";
    }
    emit(to_json(result));
    return 0;
}

int cmd_db_build(const Config& cfg, const std::string& images, const std::string& out,
                 bool evolve_entries, bool json_mode) {
    const Database db =
        build_database(images, out, cfg.pipeline, evolve_entries, resolve_threads(cfg.threads));
    if (!json_mode) {
        for (const DatabaseEntry& e : db.entries) {
            std::cerr << "built " << e.id << ": " << e.atom_count << " atoms (" << e.kind << ")\n";
        }
        for (const SkipRecord& s : db.skipped) {
            std::cerr << "skipped " << s.file << ": " << s.reason << "\n";
        }
    }
    emit(json{{"entries", db.entries.size()},
              {"skipped", db.skipped.size()},
              {"evolved", db.evolved},
              {"manifest", (fs::path(out) / "manifest.json").string()}});
    return 0;
}

int cmd_db_verify(const std::string& db_dir, bool json_mode) {
    const Database db = load_database(db_dir);
    if (!json_mode) {
        std::cerr << "database ok: " << db.entries.size() << " entries, " << db.skipped.size()
                  << " recorded skips\n";
    }
    emit(json{{"ok", true},
              {"entries", db.entries.size()},
              {"skipped", db.skipped.size()},
              {"evolved", db.evolved}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // --config (or SDR_CONFIG) must be applied before the other flags so that
    // file values act as flag defaults: defaults < file < flags.
    std::string config_path;
    bool json_mode = false;
    if (const char* env = std::getenv("SDR_CONFIG"); env != nullptr && *env != '\0') {
        config_path = env;
    }
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            config_path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        } else if (arg == "--json") {
            json_mode = true;
        }
    }

    Config cfg;
    if (!config_path.empty()) {
        try {
            cfg = load_config(config_path, cfg);
        } catch (const std::exception& e) {
            return fail(e, "");
        }
    }

    CLI::App app{"sparse-dot image encoding, Rydberg evolution, and matching"};
    app.require_subcommand(1);

    std::string config_opt;  // parsed again for help/validation only
    bool json_opt = false;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_opt, "JSON config file (also via SDR_CONFIG)");
        cmd->add_option("--seed", cfg.seed, "Deterministic sampling seed")->capture_default_str();
        cmd->add_flag("--json", json_opt, "Suppress human-readable text on standard error");
        cmd->add_option("--threads", cfg.threads,
                        "Worker threads for batch commands (0 = logical cores)")
            ->capture_default_str();
    };
    add_common(&app);

    HardwareProfile& prof = cfg.pipeline.profile;
    const auto add_profile = [&](CLI::App* cmd) {
        cmd->add_option("--area-width", prof.area_width, "Device area width, um")
            ->capture_default_str();
        cmd->add_option("--area-height", prof.area_height, "Device area height, um")
            ->capture_default_str();
        cmd->add_option("--min-spacing", prof.min_spacing, "Minimum atom spacing, um")
            ->capture_default_str();
        cmd->add_option("--max-atoms", prof.max_atoms, "Register capacity")->capture_default_str();
        cmd->add_option("--omega-max", prof.omega_max, "Peak Rabi frequency, rad/us")
            ->capture_default_str();
        cmd->add_option("--delta-max", prof.delta_abs_max, "Peak |detuning|, rad/us")
            ->capture_default_str();
        cmd->add_option("--t-max", prof.t_max, "Longest evolution, us")->capture_default_str();
        cmd->add_option("--c6", prof.c6, "van der Waals coefficient, rad/us*um^6")
            ->capture_default_str();
    };

    PipelineOptions& pipe = cfg.pipeline;
    const auto add_encode_opts = [&](CLI::App* cmd) {
        cmd->add_option("--budget", pipe.budget, "Atom budget for the epsilon search")
            ->capture_default_str();
        cmd->add_option("--threshold", pipe.threshold, "Edge threshold (fraction of max gradient)")
            ->capture_default_str();
        cmd->add_flag("--absolute-threshold", pipe.threshold_absolute,
                      "Treat --threshold as raw gradient units");
        cmd->add_option("--spacing", pipe.spacing, "Resample spacing, px")->capture_default_str();
        cmd->add_option("--min-contour-points", pipe.min_contour_points,
                        "Drop traced contours shorter than this")
            ->capture_default_str();
        cmd->add_option("--eps-min", pipe.eps_min, "Lower epsilon bracket, px")
            ->capture_default_str();
        cmd->add_option("--eps-max", pipe.eps_max, "Upper epsilon bracket, px")
            ->capture_default_str();
    };

    std::string method_str = to_string(pipe.method);
    std::string basis_str = to_string(pipe.basis_mode);
    std::string policy_str = to_string(pipe.spacing_policy);
    const auto add_simulate_opts = [&](CLI::App* cmd) {
        cmd->add_option("--duration", pipe.duration, "Evolution time, us")->capture_default_str();
        cmd->add_option("--dt", pipe.dt, "Integration step, us")->capture_default_str();
        cmd->add_option("--method", method_str, "Integrator: krylov or rk4")
            ->capture_default_str()
            ->check(CLI::IsMember({"krylov", "rk4"}));
        cmd->add_option("--basis", basis_str, "State space: full or blockade")
            ->capture_default_str()
            ->check(CLI::IsMember({"full", "blockade"}));
        cmd->add_option("--spacing-policy", policy_str, "Min-spacing conflicts: merge or strict")
            ->capture_default_str()
            ->check(CLI::IsMember({"merge", "strict"}));
        cmd->add_option("--blockade-radius", pipe.blockade_radius,
                        "um; 0 derives (c6/omega_max)^(1/6)")
            ->capture_default_str();
        cmd->add_option("--alpha", pipe.alpha, "Local-detuning scale for every atom")
            ->capture_default_str();
    };

    CLI::App* enc = app.add_subcommand("encode", "Compress an image into a dot cloud");
    std::string enc_input, enc_out, enc_plot;
    enc->add_option("--input", enc_input, "Input image (.pgm or .png)")->required();
    enc->add_option("--out", enc_out, "Write the dot-cloud JSON here");
    enc->add_option("--plot", enc_plot, "Write an SVG dot scatter here");
    add_encode_opts(enc);
    add_common(enc);

    CLI::App* sim = app.add_subcommand("simulate", "Evolve a dot cloud as a Rydberg register");
    std::string sim_dots, sim_out, sim_plot, sim_waves, sim_state;
    int sim_shots = 0;
    sim->add_option("--dots", sim_dots, "Dot-cloud JSON from encode")->required();
    sim->add_option("--out", sim_out, "Write cloud+register+result JSON here");
    sim->add_option("--plot", sim_plot, "Write a density-colored SVG here");
    sim->add_option("--waveforms", sim_waves, "Drive schedule JSON (default: adiabatic ramp)");
    sim->add_option("--state", sim_state, "Write the final state as a binary dump");
    sim->add_option("--shots", sim_shots, "Sample this many bitstrings from the final state");
    add_simulate_opts(sim);
    add_profile(sim);
    add_common(sim);

    CLI::App* mat = app.add_subcommand("match", "Rank database entries against a query");
    std::string mat_query, mat_db, mode_str = to_string(cfg.match_mode);
    int mat_top = 5;
    mat->add_option("--query", mat_query, "Query file (.dots.json or .evolved.json)")->required();
    mat->add_option("--db", mat_db, "Database directory (holds manifest.json)")->required();
    mat->add_option("--top", mat_top, "Ranking length (0 = all)")->capture_default_str();
    mat->add_option("--mode", mode_str, "geometry or density_weighted")
        ->capture_default_str()
        ->check(CLI::IsMember({"geometry", "density_weighted"}));
    add_common(mat);

    CLI::App* dbb = app.add_subcommand("db-build", "Encode every image in a directory");
    std::string dbb_images, dbb_out;
    bool dbb_evolve = false;
    dbb->add_option("--images", dbb_images, "Directory of .pgm/.png images")->required();
    dbb->add_option("--out", dbb_out, "Database directory to create")->required();
    dbb->add_flag("--evolve", dbb_evolve, "Also simulate each entry (stores densities)");
    add_encode_opts(dbb);
    add_simulate_opts(dbb);
    add_profile(dbb);
    add_common(dbb);

    CLI::App* dbv = app.add_subcommand("db-verify", "Validate a database's manifest and files");
    std::string dbv_db;
    dbv->add_option("--db", dbv_db, "Database directory")->required();
    add_common(dbv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit(json{{"error",
                   {{"type", "usage_error"}, {"message", e.what()}, {"exit_code", 2}}}});
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        pipe.method = evolve_method_from_string(method_str);
        pipe.basis_mode = basis_mode_from_string(basis_str);
        pipe.spacing_policy = spacing_policy_from_string(policy_str);
        cfg.match_mode = match_mode_from_string(mode_str);

        if (command == "encode") return cmd_encode(cfg, enc_input, enc_out, enc_plot, json_mode);
        if (command == "simulate") {
            return cmd_simulate(cfg, sim_dots, sim_out, sim_plot, sim_waves, sim_state, sim_shots,
                                json_mode);
        }
        if (command == "match") return cmd_match(cfg, mat_query, mat_db, mat_top, json_mode);
        if (command == "db-build") {
            return cmd_db_build(cfg, dbb_images, dbb_out, dbb_evolve, json_mode);
        }
        if (command == "db-verify") return cmd_db_verify(dbv_db, json_mode);
        throw InputError("unknown command: " + command);
    } catch (const std::exception& e) {
        return fail(e, command);
    }
}
