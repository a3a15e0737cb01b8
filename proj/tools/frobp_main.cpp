// frobp — exact prime counts over two-generator numerical semigroups plus
// circle-method diagnostics. See README.md for the output formats.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fp/errors.hpp"
#include "fp/runner.hpp"

namespace {

fp::u64 parse_count(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        if (s.find_first_of("eE.") != std::string::npos) {
            double v = std::stod(s, &pos);
            if (pos != s.size() || v < 0 || v != (double)(fp::u64)v)
                throw std::invalid_argument(s);
            return (fp::u64)v;
        }
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return (fp::u64)v;
    } catch (const std::exception&) {
        throw fp::InvalidConfig("cannot parse " + what + ": '" + s + "'");
    }
}

struct RawArgs {
    std::string pairs;
    std::string limit;
    std::string Q;
    std::string N;
    std::string points_per_arc;
    std::string grid_mult = "16";
    std::string samples = "2048";
    std::string out;
    std::string format = "csv";
    std::string threads = "1";
    std::string cache;
    std::string seed = "1";
    std::string segment_size;
    std::string manifest;
    bool require_cache = false;
};

void add_common(CLI::App* cmd, RawArgs& raw) {
    cmd->add_option("--pairs", raw.pairs, "pair family spec (see README)")
        ->required();
    cmd->add_option("--limit", raw.limit,
                    "sieve limit (accepts 1e6 style); default: derived");
    cmd->add_option("--out", raw.out, "output file (default: stdout)");
    cmd->add_option("--format", raw.format, "csv or json");
    cmd->add_option("--threads", raw.threads, "worker threads");
    cmd->add_option("--cache", raw.cache, "sieve cache file path");
    cmd->add_option("--seed", raw.seed, "seed for random pair families");
    cmd->add_option("--segment-size", raw.segment_size,
                    "sieve segment size (multiple of 128)");
    cmd->add_option("--manifest", raw.manifest, "manifest path override");
    cmd->add_flag("--require-cache", raw.require_cache,
                  "fail instead of building a missing cache");
}

fp::RunConfig to_config(fp::RunConfig::Command command, const RawArgs& raw) {
    fp::RunConfig cfg;
    cfg.command = command;
    cfg.pairs_spec = raw.pairs;
    if (!raw.limit.empty()) cfg.limit = parse_count(raw.limit, "--limit");
    if (!raw.Q.empty()) cfg.Q = parse_count(raw.Q, "--Q");
    if (!raw.N.empty()) cfg.N = parse_count(raw.N, "--N");
    if (!raw.points_per_arc.empty())
        cfg.points_per_arc = parse_count(raw.points_per_arc, "--points-per-arc");
    cfg.grid_mult = parse_count(raw.grid_mult, "--grid-mult");
    cfg.minor_samples = parse_count(raw.samples, "--samples");
    cfg.out_path = raw.out;
    if (raw.format == "csv")
        cfg.format = fp::RunConfig::Format::csv;
    else if (raw.format == "json")
        cfg.format = fp::RunConfig::Format::json;
    else
        throw fp::InvalidConfig("--format must be csv or json");
    cfg.threads = (int)parse_count(raw.threads, "--threads");
    cfg.cache_path = raw.cache;
    cfg.require_cache = raw.require_cache;
    cfg.seed = parse_count(raw.seed, "--seed");
    if (!raw.segment_size.empty())
        cfg.segment_size = parse_count(raw.segment_size, "--segment-size");
    cfg.manifest_path = raw.manifest;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Frobenius-semigroup prime counts and circle diagnostics"};
    app.require_subcommand(1);

    RawArgs raw;
    auto* count = app.add_subcommand("count", "per-pair count reports");
    add_common(count, raw);
    auto* sweep = app.add_subcommand("sweep", "count reports over a family");
    add_common(sweep, raw);
    auto* decomp =
        app.add_subcommand("decomp", "psi decomposition over progressions");
    add_common(decomp, raw);
    auto* verify =
        app.add_subcommand("verify", "run the invariant suite, nonzero on failure");
    add_common(verify, raw);
    auto* circle =
        app.add_subcommand("circle", "exponential-sum and arc diagnostics");
    add_common(circle, raw);
    circle->add_option("--Q", raw.Q, "arc level (default 3)");
    circle->add_option("--N", raw.N, "grid size (default g + 2cd + 1)");
    circle->add_option("--points-per-arc", raw.points_per_arc,
                       "nodes per major arc (default: 32 per oscillation)");
    circle->add_option("--grid-mult", raw.grid_mult,
                       "kernel grid multiplier (>= 16)");
    circle->add_option("--samples", raw.samples, "minor-arc sup samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        fp::RunConfig::Command command;
        if (count->parsed()) command = fp::RunConfig::Command::count;
        else if (sweep->parsed()) command = fp::RunConfig::Command::sweep;
        else if (decomp->parsed()) command = fp::RunConfig::Command::decomp;
        else if (verify->parsed()) command = fp::RunConfig::Command::verify;
        else command = fp::RunConfig::Command::circle;
        return fp::run(to_config(command, raw));
    } catch (const std::exception& e) {
        std::cerr << "frobp: " << e.what() << "\n";
        return 2;
    }
}
