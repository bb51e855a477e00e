// pipeline.hpp
// Single-pass orchestration: sieve -> twin scan -> per-checkpoint histogram
// fit -> inverse-log slope model, plus comma-delimited report files and
// ingestion of externally published prime/twin counts.
//
// Reporting conventions (fixed, and stated in the run metadata):
//   * reported prime count (pi1)  = raw primes <= N minus 1;
//   * reported twin count  (pi2)  = analyzed pairs plus the skipped first
//     pair (3,5), i.e. the standard twin count;
//   * twin-count checkpoint ordinals likewise count (3,5) as pair #1.
// These match the embedded benchmark table exactly (see reference_table.hpp);
// `verify_reference` cross-checks them at matching checkpoints and records
// the raw-count offset that was observed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twinsieve/decay_fit.hpp"
#include "twinsieve/hl_model.hpp"
#include "twinsieve/prime_sieve.hpp"
#include "twinsieve/twin_scan.hpp"

namespace twinsieve {

struct RunConfig {
    std::uint64_t limit = 0;
    std::uint64_t segment_size = kDefaultSegmentSize;
    unsigned workers = 1;
    // Empty means "one checkpoint at the limit".
    std::vector<CheckpointSpec> checkpoints;
    std::filesystem::path output_dir;
    FitOptions fit_options;
    bool emit_raw_counts = false;    // add raw-count columns to summary.csv
    bool verify_reference = false;   // cross-check against the benchmark table
};

// One summary line, column order mirroring the benchmark table layout
// (twin count, slope, statistical error, prime count, bound) plus a status.
struct CheckpointRow {
    std::uint64_t pi2 = 0;
    double slope = 0.0;        // NaN when the fit failed
    double stat_error = 0.0;   // NaN when the fit failed
    std::uint64_t pi1 = 0;
    std::uint64_t n = 0;
    std::string status;        // "ok" | "incomplete" | "fit_failed"
    // Raw counts behind the reported ones (emitted only with emit_raw_counts).
    std::uint64_t raw_pi1 = 0;
    std::uint64_t raw_pi2 = 0;
    std::uint64_t discarded_singletons = 0;
};

struct CheckpointReport {
    CheckpointSnapshot snapshot;
    std::optional<SlopeFit> fit;   // empty when the fit failed
    CheckpointRow row;
};

struct RunResult {
    std::vector<CheckpointReport> reports;   // ascending effective bound
    std::optional<ModelFit> model;           // skipped if < 2 usable rows
    SieveStats sieve_stats;
    // raw prime count minus benchmark prime count at the first checkpoint
    // that matches a benchmark row (only with verify_reference).
    std::optional<long long> reference_offset;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;               // never written into report files
};

// Validates the config, executes the single sieve pass, fits every
// checkpoint, and fits the slope model over rows with status "ok".
// Throws std::invalid_argument on bad configs.  Fit failures at individual
// checkpoints are recorded in the row status, not thrown.
RunResult run(const RunConfig& config);

// Writes summary.csv, one hist_<N>.csv per checkpoint, slope_model.csv and
// run_meta.txt into config.output_dir (created if missing).  Output is a
// pure function of config and result: no timestamps, no wall times.
// Throws std::runtime_error if the directory or a file cannot be written.
void write_reports(const RunConfig& config, const RunResult& result);

// run() followed by write_reports().
RunResult run_and_write(const RunConfig& config);

// ---- external published counts ------------------------------------------

// One usable point derived from a published (N, pi1, pi2) row after the
// adjustment pi1 -> pi1 - 2, pi2 -> pi2 - 1.
struct ExternalPoint {
    std::uint64_t n = 0;
    double log_prime_count = 0.0;   // ln(pi1 - 2)
    double m0 = 0.0;                // (pi2-1) / ((pi1-2) - 2*(pi2-1))
};

struct ExternalIngest {
    std::vector<ExternalPoint> points;
    std::vector<std::string> issues;   // line-numbered skipped/flagged rows
};

// Parses `N,pi1,pi2` rows ('#' comments and blank lines permitted).
// Malformed, non-monotone, underflowing, or domain-invalid rows are skipped
// and reported in `issues`; an input without data rows yields a warning.
ExternalIngest ingest_external(std::istream& in);
ExternalIngest ingest_external_file(const std::filesystem::path& file);

// Writes external_m0.csv (x, m0, model slope C/x, N) into `dir`.
void write_external_points(const ExternalIngest& ingest,
                           const std::filesystem::path& dir,
                           const std::optional<ModelFit>& model);

// Parses a checkpoint argument of the form "twin:<k>" or "n:<N>".
// Throws std::invalid_argument on anything else.
CheckpointSpec parse_checkpoint_arg(const std::string& text);

// Reports reals at 17 significant digits (lossless double round-trip).
std::string format_real(double value);

}  // namespace twinsieve
