// twinsieve CLI: one single-pass run of the sieve -> twin scan -> fit
// pipeline, with report files written to --out.  The summary table goes to
// stdout; warnings, wall time, and throughput go to stderr so the report
// directory stays a pure function of the configuration.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twinsieve/pipeline.hpp"

namespace {

void print_summary(const twinsieve::RunResult& result) {
    std::printf("%10s  %10s  %10s  %12s  %12s  %s\n", "pi2", "slope",
                "stat_error", "pi1", "N", "status");
    for (const twinsieve::CheckpointReport& report : result.reports) {
        const twinsieve::CheckpointRow& row = report.row;
        std::printf("%10" PRIu64 "  %10.6f  %10.5f  %12" PRIu64
                    "  %12" PRIu64 "  %s\n",
                    row.pi2, row.slope, row.stat_error, row.pi1, row.n,
                    row.status.c_str());
    }
    if (result.model)
        std::printf("slope model: C = %.6f +/- %.6f over %zu checkpoints\n",
                    result.model->coefficient,
                    result.model->coefficient_error,
                    result.model->points_used);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "twinsieve: single-pass twin-prime separation statistics pipeline"};

    std::uint64_t limit = 0;
    std::vector<std::string> checkpoint_args;
    std::uint64_t segment_size = twinsieve::kDefaultSegmentSize;
    unsigned workers = 1;
    std::string weighting = "counts";
    std::string out_dir = "twinsieve_out";
    std::string external_file;
    bool raw_counts = false;
    bool verify_reference = false;

    app.add_option("--limit", limit, "inclusive sieve bound")->required();
    app.add_option("--checkpoint", checkpoint_args,
                   "checkpoint twin:<k> or n:<N> (repeatable)");
    app.add_option("--segment-size", segment_size,
                   "integers per sieve segment")
        ->capture_default_str();
    app.add_option("--workers", workers, "sieving threads")
        ->capture_default_str();
    app.add_option("--weighting", weighting,
                   "histogram fit weighting")
        ->check(CLI::IsMember({"counts", "uniform"}))
        ->capture_default_str();
    app.add_option("--out", out_dir, "report directory")
        ->capture_default_str();
    app.add_option("--external", external_file,
                   "published counts file (N,pi1,pi2) for the m0 comparison");
    app.add_flag("--raw-counts", raw_counts,
                 "add raw count columns to summary.csv");
    app.add_flag("--verify-reference", verify_reference,
                 "cross-check checkpoints against the built-in benchmark "
                 "table and record the count-offset convention");

    CLI11_PARSE(app, argc, argv);

    try {
        twinsieve::RunConfig config;
        config.limit = limit;
        config.segment_size = segment_size;
        config.workers = workers;
        config.output_dir = out_dir;
        config.emit_raw_counts = raw_counts;
        config.verify_reference = verify_reference;
        config.fit_options.weighting =
            weighting == "uniform"
                ? twinsieve::FitOptions::Weighting::Uniform
                : twinsieve::FitOptions::Weighting::Counts;
        for (const std::string& arg : checkpoint_args)
            config.checkpoints.push_back(
                twinsieve::parse_checkpoint_arg(arg));

        twinsieve::RunResult result = twinsieve::run_and_write(config);

        for (const std::string& warning : result.warnings)
            std::fprintf(stderr, "warning: %s\n", warning.c_str());
        double rate = result.wall_seconds > 0.0
                          ? static_cast<double>(
                                result.sieve_stats.candidates) /
                                result.wall_seconds
                          : 0.0;
        std::fprintf(stderr,
                     "sieve pass: %.3f s wall, %" PRIu64
                     " candidates (%.3g candidates/s), %" PRIu64
                     " segments\n",
                     result.wall_seconds, result.sieve_stats.candidates,
                     rate, result.sieve_stats.segments);

        print_summary(result);

        if (!external_file.empty()) {
            twinsieve::ExternalIngest ingest =
                twinsieve::ingest_external_file(external_file);
            for (const std::string& issue : ingest.issues)
                std::fprintf(stderr, "external: %s\n", issue.c_str());
            twinsieve::write_external_points(ingest, config.output_dir,
                                             result.model);
            std::printf("external comparison: %zu usable rows -> %s\n",
                        ingest.points.size(),
                        (config.output_dir / "external_m0.csv")
                            .string()
                            .c_str());
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
