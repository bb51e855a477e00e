// hl_model.hpp
// Analytic reference model for prime and twin-prime abundance.
//
// Provides smooth estimates of the prime count and twin-pair count below a
// bound (logarithmic-integral forms and their first-order simplifications),
// the mean singleton separation implied by those counts, and the inverse-log
// slope law  m = C / ln(prime count)  together with a weighted one-parameter
// fit of C against measured slopes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace twinsieve {

// Twin-prime density constant (product over odd primes of p(p-2)/(p-1)^2).
inline constexpr double kTwinPrimeConstant = 0.661618;

// Integral estimate of the prime count below `limit`:  ∫_2^limit dx / ln x.
// Requires limit >= 2; returns 0 at limit == 2.  `tolerance` is the relative
// accuracy target of the adaptive quadrature.
double prime_count_estimate(double limit, double tolerance = 1e-6);

// Integral estimate of the twin-pair count below `limit`:
//   2 * kTwinPrimeConstant * ∫_2^limit dx / ln^2 x.
double twin_count_estimate(double limit, double tolerance = 1e-6);

// First-order closed forms: limit / ln(limit) and
// 2 * kTwinPrimeConstant * limit / ln^2(limit).  Require limit > 1.
double prime_count_simple(double limit);
double twin_count_simple(double limit);

// Mean separation implied by raw counts: (primes - 2*twins) / twins.
// Requires twins >= 1 and primes >= 2*twins.
double naive_separation(std::uint64_t primes, std::uint64_t twins);

// Slope implied by raw counts: twins / (primes - 2*twins).
// Requires twins >= 1 and primes > 2*twins.
double naive_slope(std::uint64_t primes, std::uint64_t twins);

// Model mean separation at a bound.  The exact form is
//   (ln limit - 4*kTwinPrimeConstant) / (2*kTwinPrimeConstant);
// the simplified form drops the constant shift:  ln limit / (2 * constant).
// Both require limit >= 2 (the exact form may be negative for small limits).
double separation_estimate(double limit);
double separation_estimate_simplified(double limit);

// Model slope as a function of the prime count:
//   2 * kTwinPrimeConstant / ln(prime_count).  Requires prime_count > 1.
double slope_estimate(double prime_count);

// Recover ln(limit) from a prime count via ln(pc) + ln(ln(pc)).
// Requires prime_count > e so the outer logarithm stays positive.
double log_n_from_prime_count(double prime_count);

// One measured slope with its abscissa x = ln(prime count) and its
// statistical error, as produced by the decay fit.
struct SlopePoint {
    double log_prime_count = 0.0;
    double slope = 0.0;
    double std_error = 0.0;
};

// Result of fitting m = C / x by weighted least squares (weights 1/sigma^2).
struct ModelFit {
    double coefficient = 0.0;
    double coefficient_error = 0.0;
    std::size_t points_used = 0;
};

// Closed-form weighted fit of the inverse-log slope law.  Requires at least
// two points (throws InsufficientDataError otherwise); every point needs
// log_prime_count > 0 and std_error > 0 (std::domain_error otherwise).
ModelFit fit_inverse_log(std::span<const SlopePoint> points);

// Bundle of model quantities evaluated for one (limit, primes, twins) triple.
struct ReferenceEstimates {
    double prime_count = 0.0;              // integral estimate
    double twin_count = 0.0;               // integral estimate
    double separation_from_counts = 0.0;   // (primes - 2*twins) / twins
    double slope_from_counts = 0.0;        // twins / (primes - 2*twins)
    double separation_exact = 0.0;
    double separation_simplified = 0.0;
    double slope_from_prime_count = 0.0;   // uses the observed prime count
};

ReferenceEstimates reference_estimates(double limit, std::uint64_t primes,
                                       std::uint64_t twins,
                                       double tolerance = 1e-6);

}  // namespace twinsieve
