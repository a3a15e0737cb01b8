#pragma once

#include <optional>
#include <string>

#include "fp/ints.hpp"

namespace fp {

struct RunConfig {
    enum class Command { count, sweep, circle, verify, decomp };
    enum class Format { csv, json };

    Command command = Command::count;
    std::string pairs_spec;
    u64 limit = 0;                 // 0 = derive from the expanded pairs
    std::optional<u64> Q;          // circle: arc level (default 3)
    std::optional<u64> N;          // circle: grid size (default g + 2cd + 1)
    u64 points_per_arc = 0;        // 0 = auto (32 per oscillation)
    u64 grid_mult = 16;            // kernel integral grid multiplier
    u64 minor_samples = 2048;      // minor-arc sup sample count
    std::string out_path;          // empty = stdout
    Format format = Format::csv;
    int threads = 1;
    std::string cache_path;        // empty = FP_CACHE_DIR or in-memory
    bool require_cache = false;    // fail instead of building a missing cache
    u64 seed = 1;
    u64 segment_size = 1ull << 20;
    std::string manifest_path;     // empty = <out>.manifest.json or fp-manifest.json
};

// Exit codes: 0 ok, 2 validation, 3 verification failure, 4 resource.
// A manifest is written even on failure; failures also print machine-
// readable error JSON on stdout.
int run(const RunConfig& cfg);

const char* command_name(RunConfig::Command cmd);

} // namespace fp
