#include "sdr/store.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <thread>

#include "sdr/errors.hpp"
#include "sdr/serialize.hpp"
#include "sdr/sha256.hpp"

namespace sdr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now_iso8601() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return ext == ".pgm" || ext == ".png";
}

json manifest_to_json(const Database& db) {
    json entries = json::array();
    for (const auto& e : db.entries) {
        entries.push_back(json{{"id", e.id},
                               {"kind", e.kind},
                               {"file", e.file},
                               {"atom_count", e.atom_count},
                               {"epsilon", round_sig(e.epsilon, 9)},
                               {"checksum", e.checksum}});
    }
    json skipped = json::array();
    for (const auto& s : db.skipped) {
        skipped.push_back(json{{"file", s.file}, {"reason", s.reason}});
    }
    return json{{"schema_version", db.schema_version},
                {"generated_at", db.generated_at},
                {"profile", to_json(db.profile)},
                {"evolved", db.evolved},
                {"entries", entries},
                {"skipped", skipped}};
}

struct BuildOutcome {
    bool ok = false;
    std::string reason;     // when !ok
    std::string file_name;  // entry file name under entries/
    int atom_count = 0;
    double epsilon = 0.0;
    std::string payload;  // serialized entry JSON
};

BuildOutcome build_one(const fs::path& image_path, const std::string& id,
                       const PipelineOptions& opts, bool evolve_entries) {
    BuildOutcome out;
    try {
        const GrayImage img = load_image(image_path);
        const DotCloud cloud = encode_image(img, opts, id);
        out.epsilon = cloud.epsilon;
        if (evolve_entries) {
            const SimulationOutput sim = simulate_cloud(cloud, opts);
            json j{{"version", 1},
                   {"cloud", to_json(cloud)},
                   {"register", to_json(sim.reg)},
                   {"result", to_json(summarize(sim.result))}};
            out.payload = j.dump(2) + "\n";
            out.file_name = id + ".evolved.json";
            out.atom_count = int(sim.reg.size());
        } else {
            out.payload = to_json(cloud).dump(2) + "\n";
            out.file_name = id + ".dots.json";
            out.atom_count = int(cloud.size());
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.reason = e.what();
    }
    return out;
}

}  // namespace

Database build_database(const fs::path& image_dir, const fs::path& out_root,
                        const PipelineOptions& opts, bool evolve_entries, int threads) {
    if (!fs::is_directory(image_dir)) {
        throw InputError("image directory not found: " + image_dir.string());
    }

    std::vector<fs::path> images;
    for (const auto& entry : fs::directory_iterator(image_dir)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) {
            images.push_back(entry.path());
        }
    }
    if (images.empty()) {
        throw InputError("no .pgm or .png images under " + image_dir.string());
    }
    std::sort(images.begin(), images.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    Database db;
    db.root = out_root;
    db.profile = opts.profile;
    db.evolved = evolve_entries;
    db.generated_at = utc_now_iso8601();

    // Duplicate stems across extensions would collide on id; keep the first.
    std::vector<std::string> ids(images.size());
    std::vector<bool> duplicate(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        ids[i] = images[i].stem().string();
        for (std::size_t k = 0; k < i; ++k) {
            if (!duplicate[k] && ids[k] == ids[i]) duplicate[i] = true;
        }
    }

    std::vector<BuildOutcome> outcomes(images.size());
    const int workers = std::clamp(threads, 1, int(images.size()));
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < images.size(); i = next.fetch_add(1)) {
            if (duplicate[i]) {
                outcomes[i].reason = "duplicate id '" + ids[i] + "'";
            } else {
                outcomes[i] = build_one(images[i], ids[i], opts, evolve_entries);
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    fs::create_directories(out_root / "entries");
    for (std::size_t i = 0; i < images.size(); ++i) {
        const BuildOutcome& o = outcomes[i];
        if (!o.ok) {
            db.skipped.push_back({images[i].filename().string(), o.reason});
            continue;
        }
        const std::string rel = "entries/" + o.file_name;
        write_text_file(out_root / rel, o.payload);
        db.entries.push_back(
            {ids[i], evolve_entries ? "evolved" : "dots", rel, o.atom_count, o.epsilon,
             sha256_hex(o.payload)});
    }
    if (db.entries.empty()) {
        throw EmptyDatabaseError("no database entries could be built from " + image_dir.string());
    }

    write_json_file(out_root / "manifest.json", manifest_to_json(db));
    return db;
}

Database load_database(const fs::path& root) {
    const fs::path manifest_path = root / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw InputError("database manifest not found: " + manifest_path.string());
    }
    const json j = read_json_file(manifest_path);

    Database db;
    db.root = root;
    try {
        db.schema_version = j.at("schema_version").get<int>();
        if (db.schema_version != 1) {
            throw DatabaseError("unsupported manifest schema version " +
                                std::to_string(db.schema_version));
        }
        db.generated_at = j.value("generated_at", "");
        db.profile = profile_from_json(j.at("profile"));
        db.evolved = j.value("evolved", false);
        for (const auto& e : j.at("entries")) {
            db.entries.push_back({e.at("id").get<std::string>(), e.at("kind").get<std::string>(),
                                  e.at("file").get<std::string>(), e.at("atom_count").get<int>(),
                                  e.at("epsilon").get<double>(),
                                  e.at("checksum").get<std::string>()});
        }
        for (const auto& s : j.value("skipped", json::array())) {
            db.skipped.push_back(
                {s.at("file").get<std::string>(), s.at("reason").get<std::string>()});
        }
    } catch (const json::exception& e) {
        throw DatabaseError("malformed manifest: " + std::string(e.what()));
    }

    for (std::size_t i = 0; i < db.entries.size(); ++i) {
        const DatabaseEntry& e = db.entries[i];
        for (std::size_t k = 0; k < i; ++k) {
            if (db.entries[k].id == e.id) {
                throw DatabaseError("duplicate entry id '" + e.id + "' in manifest");
            }
        }
        if (e.kind != "dots" && e.kind != "evolved") {
            throw DatabaseError("entry '" + e.id + "' has unknown kind '" + e.kind + "'");
        }
        if (e.atom_count > db.profile.max_atoms) {
            throw DatabaseError("entry '" + e.id + "' exceeds max_atoms of the manifest profile");
        }
        const fs::path file = root / e.file;
        if (!fs::exists(file)) {
            throw DatabaseError("entry '" + e.id + "' file missing: " + file.string());
        }
        if (sha256_file_hex(file) != e.checksum) {
            throw DatabaseError("entry '" + e.id + "' failed its checksum");
        }
    }
    return db;
}

std::vector<std::pair<std::string, WeightedCloud>> load_entry_clouds(const Database& db) {
    std::vector<std::pair<std::string, WeightedCloud>> out;
    out.reserve(db.entries.size());
    for (const DatabaseEntry& e : db.entries) {
        const json j = read_json_file(db.root / e.file);
        WeightedCloud cloud;
        try {
            if (e.kind == "evolved") {
                const AtomRegister reg = register_from_json(j.at("register"));
                const EvolutionSummary sum = evolution_summary_from_json(j.at("result"));
                cloud.points = normalize_points(reg.positions);
                cloud.weights = sum.densities;
            } else {
                const DotCloud dots = dotcloud_from_json(j);
                cloud.points = normalize_points(dots.points);
                cloud.weights.assign(cloud.points.size(), 1.0);
            }
        } catch (const json::exception& ex) {
            throw DatabaseError("entry '" + e.id + "' is malformed: " + ex.what());
        }
        if (cloud.weights.size() != cloud.points.size()) {
            throw DatabaseError("entry '" + e.id + "' weight count does not match points");
        }
        out.emplace_back(e.id, std::move(cloud));
    }
    return out;
}

WeightedCloud load_query_cloud(const fs::path& path, MatchMode mode) {
    const json j = read_json_file(path);
    WeightedCloud cloud;
    if (j.contains("register")) {
        const AtomRegister reg = register_from_json(j.at("register"));
        const EvolutionSummary sum = evolution_summary_from_json(j.at("result"));
        cloud.points = reg.positions;
        cloud.weights = sum.densities;
    } else {
        const DotCloud dots = dotcloud_from_json(j);
        if (mode == MatchMode::density_weighted) {
            throw InputError(
                "density_weighted matching needs an evolved query (simulate the dot cloud "
                "first); got a plain dot cloud: " +
                path.string());
        }
        cloud.points = dots.points;
        cloud.weights.assign(cloud.points.size(), 1.0);
    }
    return cloud;
}

}  // namespace sdr
