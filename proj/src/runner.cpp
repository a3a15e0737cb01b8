#include "fp/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "fp/circle.hpp"
#include "fp/counts.hpp"
#include "fp/pairs_spec.hpp"
#include "fp/report.hpp"
#include "fp/sieve.hpp"

namespace fp {

namespace {

constexpr const char* kToolVersion = "0.1.0";

u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(u64 v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)v);
    return buf;
}

std::string canonical_config(const RunConfig& cfg) {
    std::string s;
    s += std::string("cmd=") + command_name(cfg.command);
    s += ";pairs=" + cfg.pairs_spec;
    s += ";limit=" + std::to_string(cfg.limit);
    s += ";Q=" + (cfg.Q ? std::to_string(*cfg.Q) : std::string("-"));
    s += ";N=" + (cfg.N ? std::to_string(*cfg.N) : std::string("-"));
    s += ";ppa=" + std::to_string(cfg.points_per_arc);
    s += ";gm=" + std::to_string(cfg.grid_mult);
    s += ";ms=" + std::to_string(cfg.minor_samples);
    s += ";fmt=" + std::string(cfg.format == RunConfig::Format::csv ? "csv" : "json");
    s += ";seed=" + std::to_string(cfg.seed);
    s += ";seg=" + std::to_string(cfg.segment_size);
    return s;
}

void write_text(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::fwrite(data.data(), 1, data.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + path);
    out.write(data.data(), (std::streamsize)data.size());
    if (!out) throw Error("short write to output file: " + path);
}

struct ManifestState {
    nlohmann::json j;
    std::string path;

    void finish(const std::string& status, double wall_s) {
        j["status"] = status;
        j["wall_time_s"] = wall_s;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (out) {
            std::string s = j.dump(2);
            s += "\n";
            out.write(s.data(), (std::streamsize)s.size());
        } else {
            std::cerr << "frobp: cannot write manifest to " << path << "\n";
        }
    }
};

int classify_exit(const std::exception& e) {
    if (dynamic_cast<const LimitTooLarge*>(&e)) return 4;
    if (dynamic_cast<const ResourceUnavailable*>(&e)) return 4;
    if (dynamic_cast<const fp::Error*>(&e)) return 2;
    return 4;  // IO and unexpected failures count as resource problems
}

const char* classify_type(const std::exception& e) {
    if (dynamic_cast<const NotCoprime*>(&e)) return "not_coprime";
    if (dynamic_cast<const BadOrder*>(&e)) return "bad_order";
    if (dynamic_cast<const OutOfRange*>(&e)) return "out_of_range";
    if (dynamic_cast<const LimitTooLarge*>(&e)) return "limit_too_large";
    if (dynamic_cast<const GridTooCoarse*>(&e)) return "grid_too_coarse";
    if (dynamic_cast<const EmptyFamily*>(&e)) return "empty_family";
    if (dynamic_cast<const InvalidConfig*>(&e)) return "invalid_config";
    if (dynamic_cast<const ResourceUnavailable*>(&e)) return "resource_unavailable";
    return "error";
}

// Circle-experiment JSON for one pair.
nlohmann::json circle_experiment(const SieveCache& cache,
                                 const SemigroupPair& pair,
                                 const RunConfig& cfg) {
    const u64 Q = cfg.Q.value_or(3);
    const u128 span = (u128)pair.g() + 2 * (u128)pair.c() * pair.d();
    const u64 N = cfg.N.value_or((u64)span + 1);

    double psi_exact = psi_cd(cache, pair);
    double circle_value = circle_identity(cache, pair, N, cfg.threads);

    ArcPartition arcs = build_arcs(pair, Q);
    MajorArcResult major =
        major_arc_integral(cache, pair, arcs, cfg.points_per_arc, cfg.threads);
    QuadratureResult minor =
        minor_arc_quadrature(cache, pair, arcs, 32, cfg.threads);
    MinorSup sup = minor_arc_sup(cache, pair, arcs, cfg.minor_samples,
                                 cfg.threads);
    KernelBound kb = kernel_bound_integral(pair, cfg.grid_mult, cfg.threads);

    std::vector<std::string> flags = arcs.flags;
    for (const auto& fl : major.total.flags) flags.push_back(fl);
    for (const auto& fl : minor.flags) flags.push_back(fl);
    for (const auto& fl : sup.flags) flags.push_back(fl);

    nlohmann::json per_q = nlohmann::json::array();
    for (u64 q = 1; q < major.per_q.size(); ++q)
        per_q.push_back(nlohmann::json{{"q", q}, {"value", major.per_q[q]}});

    return nlohmann::json{
        {"pair", {{"c", pair.c()}, {"d", pair.d()}, {"g", pair.g()}}},
        {"Q", Q},
        {"N", N},
        {"psi_cd_exact", psi_exact},
        {"circle_value", circle_value},
        {"major_value", major.total.value},
        {"major_imag", major.total.imag},
        {"major_per_q", per_q},
        {"minor_value", minor.value},
        {"decomposition_total", major.total.value + minor.value},
        {"sup_est", sup.sup_est},
        {"bound", sup.bound},
        {"l1_h", kb.l1_h},
        {"kernel_int", kb.kernel_int},
        {"l1_h_over_log2g", kb.ratio_log2},
        {"h_max", kb.h_max},
        {"arcs_disjoint", arcs.disjoint},
        {"major_measure", arcs.major_measure()},
        {"minor_measure", arcs.minor_measure()},
        {"flags", flags}};
}

// Invariant suite behind the `verify` command. Circle identity is checked
// on pairs with g + 2cd <= 1e5 (transform cost stays bounded); the other
// checks run on every pair.
nlohmann::json verify_pair(const SieveCache& cache, const SemigroupPair& pair,
                           const RunConfig& cfg, bool& ok) {
    nlohmann::json j{{"c", pair.c()}, {"d", pair.d()}, {"g", pair.g()}};

    bool sylvester = pair.sylvester_symmetry_holds();
    bool count_half =
        pair.count_representable_upto(pair.g()) == (pair.g() + 1) / 2;
    j["sylvester_ok"] = sylvester;
    j["count_half_ok"] = count_half;

    double psi_exact = psi_cd(cache, pair);
    u128 span = (u128)pair.g() + 2 * (u128)pair.c() * pair.d();
    bool circle_checked = span <= 100000;
    bool circle_ok = true;
    if (circle_checked) {
        double value = circle_identity(cache, pair, (u64)span + 1, cfg.threads);
        circle_ok = std::abs(value - psi_exact) <=
                    1e-8 * std::max(1.0, std::abs(psi_exact));
        j["circle_value"] = value;
        j["psi_cd"] = psi_exact;
    }
    j["circle_checked"] = circle_checked;
    j["circle_ok"] = circle_ok;

    ApDecomposition ap = ap_decomposition(cache, pair);
    bool ap_ok = std::abs(ap.ap_discrepancy) <= ap.bound + 1e-9;
    j["ap_sum"] = ap.ap_sum;
    j["ap_discrepancy"] = ap.ap_discrepancy;
    j["ap_bound"] = ap.bound;
    j["ap_ok"] = ap_ok;

    PartialSummation ps = partial_summation_check(cache, pair);
    bool ps_ok = ps.gap <= 1e-6 * (double)ps.lhs + 1e-6;
    j["partial_lhs"] = ps.lhs;
    j["partial_rhs"] = ps.rhs;
    j["partial_gap"] = ps.gap;
    j["partial_ok"] = ps_ok;

    bool pair_ok = sylvester && count_half && circle_ok && ap_ok && ps_ok;
    j["ok"] = pair_ok;
    ok = pair_ok;
    return j;
}

} // namespace

const char* command_name(RunConfig::Command cmd) {
    switch (cmd) {
        case RunConfig::Command::count: return "count";
        case RunConfig::Command::sweep: return "sweep";
        case RunConfig::Command::circle: return "circle";
        case RunConfig::Command::verify: return "verify";
        case RunConfig::Command::decomp: return "decomp";
    }
    return "unknown";
}

int run(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    };

    ManifestState manifest;
    manifest.path = !cfg.manifest_path.empty() ? cfg.manifest_path
                    : !cfg.out_path.empty()    ? cfg.out_path + ".manifest.json"
                                               : "fp-manifest.json";
    manifest.j = nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"tool", {{"name", "frobp"}, {"version", kToolVersion}}},
        {"command", command_name(cfg.command)},
        {"config_hash", hex64(fnv1a(canonical_config(cfg)))},
        {"pairs_spec", cfg.pairs_spec},
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"output", cfg.out_path.empty() ? "<stdout>" : cfg.out_path},
    };

    try {
        if (cfg.threads < 1) throw InvalidConfig("threads must be >= 1");

        // Expand the family first: the sieve limit depends on it.
        std::vector<std::string> notes;
        u64 cdmax = cfg.limit > 0 ? cfg.limit : 1000000;
        std::vector<SemigroupPair> pairs =
            expand_pairs(cfg.pairs_spec, cdmax, cfg.seed, &notes);
        for (const auto& n : notes) std::cerr << "frobp: " << n << "\n";

        // count/sweep/decomp/verify need the AP tail d*(c-1) = g + c;
        // circle needs g only.
        u64 required = 0;
        for (const auto& p : pairs) {
            u64 need = cfg.command == RunConfig::Command::circle
                           ? p.g()
                           : p.d() * (p.c() - 1);
            required = std::max(required, need);
        }
        u64 limit = cfg.limit > 0 ? cfg.limit : required;
        if (limit < required)
            throw InvalidConfig(
                "limit " + std::to_string(limit) + " too small; this command "
                "needs " + std::to_string(required) +
                " (largest d*(c-1) over the family)");
        manifest.j["limit"] = limit;

        // Sieve: explicit --cache path, else FP_CACHE_DIR, else in-memory.
        std::string cache_path = cfg.cache_path;
        if (cache_path.empty()) {
            if (const char* dir = std::getenv("FP_CACHE_DIR")) {
                cache_path = std::string(dir) + "/fpsieve-" +
                             std::to_string(limit) + "-" +
                             std::to_string(cfg.segment_size) + ".bin";
            }
        }
        SieveCache cache;
        bool loaded = false;
        if (!cache_path.empty()) {
            if (auto c = SieveCache::load_if_matching(cache_path, limit,
                                                      cfg.segment_size)) {
                cache = std::move(*c);
                loaded = true;
            } else if (cfg.require_cache) {
                throw ResourceUnavailable("sieve cache missing or mismatched at " +
                                          cache_path + " and building is disabled");
            }
        }
        if (!loaded) {
            SieveCache::Options opt;
            opt.segment_size = cfg.segment_size;
            opt.threads = cfg.threads;
            cache = SieveCache::build(limit, opt);
            if (!cache_path.empty()) {
                cache.save(cache_path);
                std::cerr << "frobp: sieve cache written to " << cache_path
                          << "\n";
            }
        }
        manifest.j["cache"] = nlohmann::json{
            {"path", cache_path.empty() ? "<memory>" : cache_path},
            {"loaded", loaded},
            {"format", "FPSIEVE1"},
            {"limit", limit},
            {"segment_size", cfg.segment_size}};

        int exit_code = 0;
        switch (cfg.command) {
            case RunConfig::Command::count:
            case RunConfig::Command::sweep: {
                auto rows = ratio_sweep(cache, pairs, cfg.threads);
                if (cfg.format == RunConfig::Format::csv)
                    write_text(cfg.out_path, sweep_csv(rows));
                else
                    write_text(cfg.out_path, sweep_json(rows).dump(2) + "\n");
                break;
            }
            case RunConfig::Command::decomp: {
                auto rows = ratio_sweep(cache, pairs, cfg.threads);
                if (cfg.format == RunConfig::Format::csv)
                    write_text(cfg.out_path, decomp_csv(rows));
                else
                    write_text(cfg.out_path, decomp_json(rows).dump(2) + "\n");
                break;
            }
            case RunConfig::Command::circle: {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& p : pairs)
                    arr.push_back(circle_experiment(cache, p, cfg));
                nlohmann::json doc{{"schema_version", kSchemaVersion},
                                   {"experiments", arr}};
                write_text(cfg.out_path, doc.dump(2) + "\n");
                break;
            }
            case RunConfig::Command::verify: {
                nlohmann::json arr = nlohmann::json::array();
                u64 failures = 0;
                for (const auto& p : pairs) {
                    bool ok = false;
                    arr.push_back(verify_pair(cache, p, cfg, ok));
                    if (!ok) ++failures;
                }
                nlohmann::json doc{{"schema_version", kSchemaVersion},
                                   {"pairs_checked", pairs.size()},
                                   {"failures", failures},
                                   {"results", arr}};
                write_text(cfg.out_path, doc.dump(2) + "\n");
                manifest.j["failures"] = failures;
                if (failures > 0) exit_code = 3;
                break;
            }
        }

        manifest.finish(exit_code == 0 ? "ok" : "verification_failed",
                        elapsed());
        return exit_code;
    } catch (const std::exception& e) {
        int code = classify_exit(e);
        nlohmann::json err{
            {"error",
             {{"type", classify_type(e)}, {"message", e.what()},
              {"exit_code", code}}}};
        std::string payload = err.dump(2) + "\n";
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fflush(stdout);
        manifest.j["error"] = err["error"];
        manifest.finish("error", elapsed());
        return code;
    }
}

} // namespace fp
