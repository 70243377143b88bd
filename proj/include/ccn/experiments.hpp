#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ccn/certificates.hpp"
#include "ccn/clique_color.hpp"
#include "ccn/graph.hpp"
#include "ccn/profile.hpp"

namespace ccn {

// One command execution, self-describing enough to re-run.  Payload holds
// the deterministic result; wall_ms stays out of serialized payloads so a
// re-run with the same flags reproduces files byte for byte.
struct ExperimentRecord {
    std::string command;
    int n = 0;
    double p = 0;
    std::uint64_t seed = 0;
    std::optional<ResolvedThresholds> thresholds;
    nlohmann::json payload;
    double wall_ms = 0;

    nlohmann::json to_json(bool include_wall) const;
};

// ---- sweep ------------------------------------------------------------------

enum class SweepMode { exact, heuristic };

struct SweepOptions {
    std::vector<int> n_grid;
    int seeds_per_n = 20;
    double p = 0.5;
    SweepMode mode = SweepMode::heuristic;
    std::uint64_t base_seed = 1;
    int jobs = 1;
    ExactLimits exact_limits;
    GreedyLimits greedy_limits;
};

inline constexpr int kExactSweepMaxN = 64;

struct SweepCell {
    int n = 0;
    int index = 0; // seed index within the n row
    std::uint64_t seed = 0;
    std::string status; // "proved" | "gap" | "ok"
    int lower = 0, upper = 0;
    int chi = 0; // the value the summary aggregates (= upper)
    bool valid = false;
    double wall_ms = 0;
};

struct FitResult {
    double a = 0, b = 0; // chi ~ a*log2(n) + b over per-n sample means
    std::vector<double> residuals;
};

struct SweepSummary {
    struct PerN {
        int n = 0;
        int samples = 0;
        double mean = 0;
        int min = 0, max = 0;
    };
    std::vector<PerN> per_n;
    std::optional<FitResult> fit; // absent when the grid cannot determine a line
};

struct SweepResult {
    SweepOptions options;
    std::vector<SweepCell> cells; // grid order: n_grid order, then seed index
    SweepSummary summary;
};

SweepResult run_sweep(const SweepOptions& opt);

SweepSummary summarize_sweep(const SweepOptions& opt, const std::vector<SweepCell>& cells);

void write_sweep_csv(const SweepResult& r, std::ostream& out);
void write_sweep_jsonl(const SweepResult& r, std::ostream& out);

// plain-text plot script for the CSV written by write_sweep_csv
std::string gnuplot_script(const SweepResult& r, const std::string& csv_path);

// ---- certify ----------------------------------------------------------------

struct CertifyOptions {
    int n = 512;
    double p = 0.5;
    int seeds = 20;
    std::uint64_t base_seed = 1;
    int avoidance_trials = 50; // sampled sets per size
    int jobs = 1;
    ConstructBudget budget;
};

struct RefuteRun {
    int num_classes = 0;
    std::string reached;
    std::string failure;
    bool witness_found = false;
    bool witness_valid = false;   // witness re-checked against the verifier
    bool fallback_invalid = false; // verify_coloring found its own witness
};

struct CertifySeedResult {
    int index = 0;
    std::uint64_t seed = 0;
    bool avoidance_holds = false;
    int avoidance_min = 0;
    bool bad_vertex_holds = false;
    int bad_vertex_count = 0;
    bool half_significant = false;
    bool construct_attempted = false;
    std::string construct_stage;
    bool construct_ok = false;
    bool construct_witness_valid = false;
    std::vector<RefuteRun> refutes;
    nlohmann::json record; // full audit record for jsonl output
};

struct CertifyResult {
    CertifyOptions options;
    ResolvedThresholds thresholds;
    std::vector<CertifySeedResult> per_seed;
    nlohmann::json aggregate; // exact counts for every rate
};

CertifyResult run_certify(const CertifyOptions& opt, const ParameterProfile& profile);

void write_certify_jsonl(const CertifyResult& r, std::ostream& out);
void write_certify_csv(const CertifyResult& r, std::ostream& out);

} // namespace ccn
