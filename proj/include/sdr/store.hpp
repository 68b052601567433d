#ifndef SDR_STORE_HPP
#define SDR_STORE_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sdr/match.hpp"
#include "sdr/pipeline.hpp"

namespace sdr {

struct DatabaseEntry {
    std::string id;
    std::string kind;  // "dots" or "evolved"
    std::string file;  // path relative to the database root
    int atom_count = 0;
    double epsilon = 0.0;
    std::string checksum;  // SHA-256 of the file bytes, lowercase hex
};

struct SkipRecord {
    std::string file;
    std::string reason;
};

// Layout on disk: <root>/manifest.json plus <root>/entries/<id>.dots.json
// or <id>.evolved.json. The manifest records the profile, every entry with
// its checksum, and the images skipped during the build.
struct Database {
    std::filesystem::path root;
    int schema_version = 1;
    HardwareProfile profile;
    std::string generated_at;  // ISO-8601 UTC; excluded from determinism checks
    bool evolved = false;
    std::vector<DatabaseEntry> entries;
    std::vector<SkipRecord> skipped;
};

// Encode (and optionally evolve) every readable image under image_dir in
// lexicographic filename order. Per-image failures become skip records;
// EmptyDatabaseError only when nothing succeeds. `threads` parallelizes the
// per-image work without changing the output.
Database build_database(const std::filesystem::path& image_dir,
                        const std::filesystem::path& out_root, const PipelineOptions& opts,
                        bool evolve_entries, int threads = 1);

// Read and fully validate a manifest: schema version, unique ids, files
// present, checksums matching, atom counts within the profile.
Database load_database(const std::filesystem::path& root);

// Normalized match inputs for every entry: dots entries carry unit weights,
// evolved entries carry their Rydberg densities.
std::vector<std::pair<std::string, WeightedCloud>> load_entry_clouds(const Database& db);

// Parse a query file (.dots.json or .evolved.json) into a raw weighted
// cloud (not yet normalized). density_weighted mode requires an evolved
// query.
WeightedCloud load_query_cloud(const std::filesystem::path& path, MatchMode mode);

}  // namespace sdr

#endif
