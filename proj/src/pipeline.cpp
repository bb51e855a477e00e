// pipeline.cpp
// Orchestration, report writing, and published-count ingestion.

#include "twinsieve/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "twinsieve/errors.hpp"
#include "twinsieve/reference_table.hpp"

namespace twinsieve {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_uint(std::uint64_t value) { return std::to_string(value); }

void require_stream(const std::ofstream& out, const std::filesystem::path& p) {
    if (!out.good())
        throw std::runtime_error("cannot write output file: " + p.string());
}

std::ofstream open_report(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    require_stream(out, p);
    return out;
}

std::string weighting_name(const FitOptions& opts) {
    return opts.weighting == FitOptions::Weighting::Counts ? "counts"
                                                           : "uniform";
}

std::string checkpoint_name(const CheckpointSpec& spec) {
    return (spec.kind == CheckpointSpec::Kind::TwinCount ? "twin:" : "n:") +
           format_uint(spec.value);
}

std::vector<CheckpointSpec> effective_checkpoints(const RunConfig& config) {
    std::vector<CheckpointSpec> specs = config.checkpoints;
    if (specs.empty())
        specs.push_back({CheckpointSpec::Kind::Limit, config.limit});
    // Stable per-kind ascending order; the scanner enforces strictness.
    std::stable_sort(specs.begin(), specs.end(),
                     [](const CheckpointSpec& a, const CheckpointSpec& b) {
                         if (a.kind != b.kind) return a.kind < b.kind;
                         return a.value < b.value;
                     });
    for (const CheckpointSpec& spec : specs)
        if (spec.kind == CheckpointSpec::Kind::Limit &&
            spec.value > config.limit)
            throw std::invalid_argument(
                "checkpoint bound exceeds the run limit: " +
                checkpoint_name(spec));
    return specs;
}

CheckpointRow make_row(const CheckpointSnapshot& snap,
                       const std::optional<SlopeFit>& fit) {
    CheckpointRow row;
    row.n = snap.n_effective;
    row.raw_pi1 = snap.primes_seen;
    row.raw_pi2 = snap.twins_analyzed;
    row.discarded_singletons = snap.discarded_singletons;
    row.pi1 = snap.primes_seen > 0 ? snap.primes_seen - 1 : 0;
    row.pi2 = snap.n_effective >= 5 ? snap.twins_analyzed + 1
                                    : snap.twins_analyzed;
    if (fit) {
        row.slope = fit->m;
        row.stat_error = fit->std_error;
    } else {
        row.slope = kNaN;
        row.stat_error = kNaN;
    }
    if (!snap.complete)
        row.status = "incomplete";
    else if (fit)
        row.status = "ok";
    else
        row.status = "fit_failed";
    return row;
}

std::optional<SlopeFit> try_fit(const CheckpointSnapshot& snap,
                                const FitOptions& opts,
                                std::vector<std::string>& warnings) {
    try {
        return fit_constrained(to_frequency_table(snap.histogram), opts);
    } catch (const FitConvergenceError& e) {
        warnings.push_back("checkpoint " + checkpoint_name(snap.spec) +
                           ": fit did not converge (last iterate " +
                           format_real(e.last_iterate()) + ")");
    } catch (const std::exception& e) {
        warnings.push_back("checkpoint " + checkpoint_name(snap.spec) +
                           ": fit skipped: " + e.what());
    }
    return std::nullopt;
}

void check_reference(RunResult& result) {
    bool matched = false;
    for (const CheckpointReport& report : result.reports) {
        const ReferenceRow* ref = nullptr;
        for (const ReferenceRow& candidate : reference_rows())
            if (candidate.n == report.row.n) ref = &candidate;
        if (!ref) continue;
        if (!matched) {
            matched = true;
            result.reference_offset = static_cast<long long>(report.row.raw_pi1) -
                                      static_cast<long long>(ref->prime_count);
        }
        if (report.row.pi1 != ref->prime_count)
            result.warnings.push_back(
                "reference check: prime count mismatch at N=" +
                format_uint(report.row.n) + " (reported " +
                format_uint(report.row.pi1) + ", benchmark " +
                format_uint(ref->prime_count) + ")");
        if (report.row.pi2 != ref->twin_count)
            result.warnings.push_back(
                "reference check: twin count mismatch at N=" +
                format_uint(report.row.n) + " (reported " +
                format_uint(report.row.pi2) + ", benchmark " +
                format_uint(ref->twin_count) + ")");
    }
    if (!matched)
        result.warnings.push_back(
            "reference check: no checkpoint matches a benchmark row");
}

std::vector<SlopePoint> usable_points(const RunResult& result) {
    std::vector<SlopePoint> points;
    for (const CheckpointReport& report : result.reports) {
        if (report.row.status != "ok" || !report.fit) continue;
        if (report.row.pi1 < 2) continue;  // needs a positive abscissa
        points.push_back({std::log(static_cast<double>(report.row.pi1)),
                          report.fit->m, report.fit->std_error});
    }
    return points;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

RunResult run(const RunConfig& config) {
    SieveConfig sieve_cfg{config.limit, config.segment_size, config.workers};
    validate(sieve_cfg);
    std::vector<CheckpointSpec> specs = effective_checkpoints(config);

    TwinScanner scanner(specs);
    PrimeStream stream(sieve_cfg);

    auto start = std::chrono::steady_clock::now();
    stream.run([&scanner](std::span<const std::uint64_t> batch) {
        scanner.feed(batch);
    });
    scanner.finish(config.limit);
    auto stop = std::chrono::steady_clock::now();

    RunResult result;
    result.sieve_stats = stream.stats();
    result.wall_seconds = std::chrono::duration<double>(stop - start).count();

    for (const CheckpointSnapshot& snap : scanner.snapshots()) {
        CheckpointReport report;
        report.snapshot = snap;
        report.fit = try_fit(snap, config.fit_options, result.warnings);
        report.row = make_row(snap, report.fit);
        if (!snap.complete)
            result.warnings.push_back(
                "checkpoint " + checkpoint_name(snap.spec) +
                " not reached before the limit; statistics cover the whole "
                "range and the row is marked incomplete");
        result.reports.push_back(std::move(report));
    }

    std::vector<SlopePoint> points = usable_points(result);
    if (points.size() >= 2)
        result.model = fit_inverse_log(points);
    else
        result.warnings.push_back(
            "model fit skipped: fewer than two usable checkpoints");

    if (config.verify_reference) check_reference(result);
    return result;
}

namespace {

void write_summary(const RunConfig& config, const RunResult& result,
                   const std::filesystem::path& dir) {
    std::filesystem::path path = dir / "summary.csv";
    std::ofstream out = open_report(path);
    out << "pi2,slope,stat_error,pi1,N,status";
    if (config.emit_raw_counts)
        out << ",raw_pi1,raw_pi2,discarded_singletons";
    out << "\n";
    for (const CheckpointReport& report : result.reports) {
        const CheckpointRow& row = report.row;
        out << format_uint(row.pi2) << ',' << format_real(row.slope) << ','
            << format_real(row.stat_error) << ',' << format_uint(row.pi1)
            << ',' << format_uint(row.n) << ',' << row.status;
        if (config.emit_raw_counts)
            out << ',' << format_uint(row.raw_pi1) << ','
                << format_uint(row.raw_pi2) << ','
                << format_uint(row.discarded_singletons);
        out << "\n";
    }
    require_stream(out, path);
}

void write_histogram(const CheckpointReport& report,
                     const std::filesystem::path& path) {
    std::ofstream out = open_report(path);
    out << "separation,count,rel_freq,ln_rel_freq,fit_ln_freq,fit_rel_freq\n";
    const SeparationHistogram& hist = report.snapshot.histogram;
    double total = static_cast<double>(hist.total_events());
    for (const auto& [separation, count] : hist.entries()) {
        double rel = static_cast<double>(count) / total;
        double fit_ln = kNaN, fit_rel = kNaN;
        if (report.fit) {
            fit_ln = fitted_log_frequency(*report.fit,
                                          static_cast<double>(separation));
            fit_rel = std::exp(fit_ln);
        }
        out << format_uint(separation) << ',' << format_uint(count) << ','
            << format_real(rel) << ',' << format_real(std::log(rel)) << ','
            << format_real(fit_ln) << ',' << format_real(fit_rel) << "\n";
    }
    require_stream(out, path);
}

void write_model(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::path path = dir / "slope_model.csv";
    std::ofstream out = open_report(path);
    out << "# model: slope = C / x with x = ln(reported prime count)\n";
    if (result.model) {
        out << "# C = " << format_real(result.model->coefficient) << " +/- "
            << format_real(result.model->coefficient_error) << "\n";
        out << "# points_used = " << result.model->points_used << "\n";
    } else {
        out << "# model fit skipped: fewer than two usable checkpoints\n";
    }
    out << "x,slope,stat_error,model_slope\n";
    for (const CheckpointReport& report : result.reports) {
        if (report.row.status != "ok" || !report.fit || report.row.pi1 < 2)
            continue;
        double x = std::log(static_cast<double>(report.row.pi1));
        double model_slope =
            result.model ? result.model->coefficient / x : kNaN;
        out << format_real(x) << ',' << format_real(report.fit->m) << ','
            << format_real(report.fit->std_error) << ','
            << format_real(model_slope) << "\n";
    }
    require_stream(out, path);
}

void write_meta(const RunConfig& config, const RunResult& result,
                const std::vector<std::filesystem::path>& hist_names,
                const std::filesystem::path& dir) {
    std::filesystem::path path = dir / "run_meta.txt";
    std::ofstream out = open_report(path);
    out << "tool: twinsieve\n";
    out << "limit: " << config.limit << "\n";
    out << "segment_size: " << config.segment_size << "\n";
    out << "workers: " << config.workers << "\n";
    out << "weighting: " << weighting_name(config.fit_options) << "\n";
    out << "checkpoints:";
    if (config.checkpoints.empty())
        out << " n:" << config.limit << " (implicit)";
    for (const CheckpointSpec& spec : config.checkpoints)
        out << ' ' << checkpoint_name(spec);
    out << "\n";
    out << "raw_counts: " << (config.emit_raw_counts ? "on" : "off") << "\n";
    out << "convention: reported pi1 = raw prime count - 1\n";
    out << "convention: reported pi2 counts the first twin pair (3,5)\n";
    out << "convention: twin checkpoint ordinals also count (3,5)\n";
    if (config.verify_reference) {
        if (result.reference_offset)
            out << "reference_offset: " << *result.reference_offset
                << " (raw prime count minus benchmark pi1 at the first "
                   "matching checkpoint)\n";
        else
            out << "reference_offset: no matching benchmark checkpoint\n";
    } else {
        out << "reference_offset: not checked\n";
    }
    out << "segments: " << result.sieve_stats.segments << "\n";
    out << "candidates: " << result.sieve_stats.candidates << "\n";
    out << "checkpoint_rows: " << result.reports.size() << "\n";
    for (const std::filesystem::path& name : hist_names)
        out << "histogram_file: " << name.string() << "\n";
    if (result.model) {
        out << "model_C: " << format_real(result.model->coefficient) << "\n";
        out << "model_C_error: "
            << format_real(result.model->coefficient_error) << "\n";
        out << "model_points: " << result.model->points_used << "\n";
    } else {
        out << "model_C: skipped\n";
    }
    for (const std::string& warning : result.warnings)
        out << "warning: " << warning << "\n";
    require_stream(out, path);
}

}  // namespace

void write_reports(const RunConfig& config, const RunResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory: " +
                                 config.output_dir.string() + ": " +
                                 ec.message());

    write_summary(config, result, config.output_dir);

    std::vector<std::filesystem::path> hist_names;
    std::vector<std::string> used;
    for (const CheckpointReport& report : result.reports) {
        std::string stem = "hist_" + format_uint(report.row.n);
        std::string name = stem + ".csv";
        // Distinct checkpoints can land on the same effective bound.
        for (int k = 2; std::count(used.begin(), used.end(), name); k++)
            name = stem + "_" + std::to_string(k) + ".csv";
        used.push_back(name);
        write_histogram(report, config.output_dir / name);
        hist_names.emplace_back(name);
    }

    write_model(result, config.output_dir);
    write_meta(config, result, hist_names, config.output_dir);
}

RunResult run_and_write(const RunConfig& config) {
    RunResult result = run(config);
    write_reports(config, result);
    return result;
}

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                             text.front() == '\r'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                             text.back() == '\r'))
        text.remove_suffix(1);
    return text;
}

bool parse_uint(std::string_view text, std::uint64_t& value) {
    text = trim(text);
    if (text.empty()) return false;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool split_row(std::string_view line, std::array<std::uint64_t, 3>& fields) {
    std::size_t start = 0;
    for (int i = 0; i < 3; i++) {
        std::size_t comma = line.find(',', start);
        bool last = (i == 2);
        if (last != (comma == std::string_view::npos)) return false;
        std::string_view field =
            last ? line.substr(start) : line.substr(start, comma - start);
        if (!parse_uint(field, fields[static_cast<std::size_t>(i)]))
            return false;
        start = comma + 1;
    }
    return true;
}

}  // namespace

ExternalIngest ingest_external(std::istream& in) {
    ExternalIngest out;
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::uint64_t> last_n;
    while (std::getline(in, line)) {
        lineno++;
        std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        std::array<std::uint64_t, 3> fields{};
        if (!split_row(text, fields)) {
            // A literal header row is tolerated silently.
            std::string lowered(text);
            lowered.erase(std::remove(lowered.begin(), lowered.end(), ' '),
                          lowered.end());
            std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (lowered == "n,pi1,pi2") continue;
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": malformed row skipped");
            continue;
        }
        auto [n, pi1, pi2] = fields;
        if (last_n && n <= *last_n) {
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": N not strictly increasing; row skipped");
            continue;
        }
        if (pi2 == 0) {
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": pi2 = 0 underflows the adjustment; row "
                                 "flagged invalid");
            continue;
        }
        if (pi1 < 3) {
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": pi1 < 3 leaves no adjusted primes; row "
                                 "flagged invalid");
            continue;
        }
        std::uint64_t adj1 = pi1 - 2, adj2 = pi2 - 1;
        if (adj2 == 0) {
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": adjusted twin count is zero; row flagged "
                                 "invalid");
            continue;
        }
        if (adj1 <= 2 * adj2) {
            out.issues.push_back("line " + std::to_string(lineno) +
                                 ": adjusted prime count <= twice adjusted "
                                 "twin count; row flagged as domain-invalid");
            continue;
        }
        ExternalPoint point;
        point.n = n;
        point.log_prime_count = std::log(static_cast<double>(adj1));
        point.m0 = naive_slope(adj1, adj2);
        out.points.push_back(point);
        last_n = n;
    }
    if (out.points.empty())
        out.issues.push_back("no data rows found");
    return out;
}

ExternalIngest ingest_external_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in.good())
        throw std::runtime_error("cannot read external count file: " +
                                 file.string());
    return ingest_external(in);
}

void write_external_points(const ExternalIngest& ingest,
                           const std::filesystem::path& dir,
                           const std::optional<ModelFit>& model) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory: " +
                                 dir.string() + ": " + ec.message());
    std::filesystem::path path = dir / "external_m0.csv";
    std::ofstream out = open_report(path);
    out << "# x = ln(pi1 - 2), m0 = (pi2 - 1) / ((pi1 - 2) - 2*(pi2 - 1))\n";
    if (model)
        out << "# model_slope = C / x with C = "
            << format_real(model->coefficient) << "\n";
    else
        out << "# model_slope unavailable: no fitted C\n";
    out << "x,m0,model_slope,N\n";
    for (const ExternalPoint& point : ingest.points) {
        double model_slope =
            model ? model->coefficient / point.log_prime_count : kNaN;
        out << format_real(point.log_prime_count) << ','
            << format_real(point.m0) << ',' << format_real(model_slope) << ','
            << format_uint(point.n) << "\n";
    }
    require_stream(out, path);
}

CheckpointSpec parse_checkpoint_arg(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument(
            "checkpoint must look like twin:<k> or n:<N>, got: " + text);
    std::string_view prefix = std::string_view(text).substr(0, colon);
    std::string_view value_text = std::string_view(text).substr(colon + 1);
    std::uint64_t value = 0;
    if (!parse_uint(value_text, value))
        throw std::invalid_argument("checkpoint value is not a positive "
                                    "integer: " + text);
    CheckpointSpec spec;
    if (prefix == "twin") {
        if (value < 2)
            throw std::invalid_argument(
                "twin checkpoint ordinal must be >= 2 (ordinal 1 is the "
                "skipped pair (3,5)): " + text);
        spec.kind = CheckpointSpec::Kind::TwinCount;
    } else if (prefix == "n") {
        if (value < 2)
            throw std::invalid_argument("limit checkpoint must be >= 2: " +
                                        text);
        spec.kind = CheckpointSpec::Kind::Limit;
    } else {
        throw std::invalid_argument(
            "checkpoint kind must be 'twin' or 'n', got: " + text);
    }
    spec.value = value;
    return spec;
}

}  // namespace twinsieve
