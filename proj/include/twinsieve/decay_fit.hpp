// decay_fit.hpp
// One-parameter constrained fit of the separation frequency table.
//
// Model: ln f(s) = -m*s + ln(m), i.e. an exponential decay whose intercept
// is tied to its slope so that the implied density integrates to one.
// The single parameter m is found by driving dS/dm to zero, where
//   S(m) = sum_s w_s * (ln f_s + m*s - ln m)^2
// and w_s is the bin count (default) or 1 (uniform weighting).

#pragma once

#include <cstdint>

#include "twinsieve/sep_stats.hpp"

namespace twinsieve {

struct FitOptions {
    enum class Weighting {
        Counts,   // w_s = count(s): every recorded event weighs equally
        Uniform,  // w_s = 1: every bin weighs equally
    };
    Weighting weighting = Weighting::Counts;
    double tolerance = 1e-12;  // stationarity target: |dS/dm| <= tolerance*S
    int max_iterations = 200;
};

struct SlopeFit {
    double m = 0.0;               // decay constant, > 0
    double std_error = 0.0;       // Gauss-Newton estimate for m
    double objective = 0.0;       // weighted SSR at the optimum
    std::size_t bins_used = 0;
    double mean_separation = 0.0; // 1/m
};

// Fits the constrained decay law. Requires >= 2 rows with rel_freq in (0,1].
// Throws InsufficientDataError / std::domain_error on bad input and
// FitConvergenceError (carrying the last iterate) when the optimizer fails.
SlopeFit fit_constrained(const FrequencyTable& table, const FitOptions& opts = {});

// Expected number of singleton primes until the next pair: 1/m.
double mean_separation(const SlopeFit& fit);

// Weighted objective S(m) for an arbitrary slope (diagnostics: lets callers
// probe that the fitted m is a local minimum). Same input checks as the fit.
double fit_objective(const FrequencyTable& table, double m,
                     const FitOptions& opts = {});

// Model prediction -m*s + ln(m) for overlay output.
double fitted_log_frequency(const SlopeFit& fit, double s);

}  // namespace twinsieve
