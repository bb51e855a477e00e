// hl_model.cpp
// Logarithmic-integral quadrature (adaptive Simpson with Richardson
// correction in long double) plus the closed-form model expressions.

#include "twinsieve/hl_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twinsieve/errors.hpp"

namespace twinsieve {

namespace {

using Integrand = long double (*)(long double);

long double inv_log(long double x) { return 1.0L / std::log(x); }

long double inv_log_sq(long double x) {
    long double l = std::log(x);
    return 1.0L / (l * l);
}

long double simpson(long double a, long double b, long double fa,
                    long double fm, long double fb) {
    return (fa + 4.0L * fm + fb) * (b - a) / 6.0L;
}

long double adapt(Integrand f, long double a, long double b, long double fa,
                  long double fm, long double fb, long double whole,
                  long double tol, int depth) {
    long double m = 0.5L * (a + b);
    long double lm = 0.5L * (a + m);
    long double rm = 0.5L * (m + b);
    long double flm = f(lm);
    long double frm = f(rm);
    long double left = simpson(a, m, fa, flm, fm);
    long double right = simpson(m, b, fm, frm, fb);
    long double delta = left + right - whole;
    // The classic rule accepts at |delta| <= 15*tol, but that trusts the
    // asymptotic error estimate near the steep left endpoint more than it
    // deserves.  Accepting only at |delta| <= tol keeps the delivered
    // accuracy within the requested tolerance with margin to spare.
    if (depth <= 0 || std::fabs(delta) <= tol)
        return left + right + delta / 15.0L;
    return adapt(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

double integrate(Integrand f, double a, double b, double rel_tol) {
    if (b <= a) return 0.0;
    long double la = a, lb = b;
    long double m = 0.5L * (la + lb);
    long double fa = f(la), fm = f(m), fb = f(lb);
    long double whole = simpson(la, lb, fa, fm, fb);
    long double tol = std::fabs(whole) * static_cast<long double>(rel_tol);
    if (tol < 1e-30L) tol = 1e-30L;
    return static_cast<double>(adapt(f, la, lb, fa, fm, fb, whole, tol, 60));
}

void require_limit(double limit, double minimum, const char* what) {
    if (!(limit >= minimum)) throw std::domain_error(what);
}

void require_tolerance(double tolerance) {
    if (!(tolerance > 0.0))
        throw std::invalid_argument("quadrature tolerance must be positive");
}

}  // namespace

double prime_count_estimate(double limit, double tolerance) {
    require_limit(limit, 2.0, "prime_count_estimate needs limit >= 2");
    require_tolerance(tolerance);
    return integrate(inv_log, 2.0, limit, tolerance);
}

double twin_count_estimate(double limit, double tolerance) {
    require_limit(limit, 2.0, "twin_count_estimate needs limit >= 2");
    require_tolerance(tolerance);
    return 2.0 * kTwinPrimeConstant *
           integrate(inv_log_sq, 2.0, limit, tolerance);
}

double prime_count_simple(double limit) {
    require_limit(limit, std::nextafter(1.0, 2.0),
                  "prime_count_simple needs limit > 1");
    return limit / std::log(limit);
}

double twin_count_simple(double limit) {
    require_limit(limit, std::nextafter(1.0, 2.0),
                  "twin_count_simple needs limit > 1");
    double l = std::log(limit);
    return 2.0 * kTwinPrimeConstant * limit / (l * l);
}

double naive_separation(std::uint64_t primes, std::uint64_t twins) {
    if (twins == 0)
        throw std::domain_error("naive_separation needs twins >= 1");
    if (primes < 2 * twins)
        throw std::domain_error(
            "naive_separation needs primes >= 2 * twins");
    return static_cast<double>(primes - 2 * twins) /
           static_cast<double>(twins);
}

double naive_slope(std::uint64_t primes, std::uint64_t twins) {
    if (twins == 0) throw std::domain_error("naive_slope needs twins >= 1");
    if (primes <= 2 * twins)
        throw std::domain_error("naive_slope needs primes > 2 * twins");
    return static_cast<double>(twins) /
           static_cast<double>(primes - 2 * twins);
}

double separation_estimate(double limit) {
    require_limit(limit, 2.0, "separation_estimate needs limit >= 2");
    return (std::log(limit) - 4.0 * kTwinPrimeConstant) /
           (2.0 * kTwinPrimeConstant);
}

double separation_estimate_simplified(double limit) {
    require_limit(limit, 2.0,
                  "separation_estimate_simplified needs limit >= 2");
    return std::log(limit) / (2.0 * kTwinPrimeConstant);
}

double slope_estimate(double prime_count) {
    if (!(prime_count > 1.0))
        throw std::domain_error("slope_estimate needs prime_count > 1");
    return 2.0 * kTwinPrimeConstant / std::log(prime_count);
}

double log_n_from_prime_count(double prime_count) {
    if (!(prime_count > std::numbers::e))
        throw std::domain_error("log_n_from_prime_count needs count > e");
    double l = std::log(prime_count);
    return l + std::log(l);
}

ModelFit fit_inverse_log(std::span<const SlopePoint> points) {
    if (points.size() < 2)
        throw InsufficientDataError("inverse-log fit needs at least two points");
    double num = 0.0, den = 0.0;
    for (const SlopePoint& p : points) {
        if (!(p.std_error > 0.0))
            throw std::domain_error("inverse-log fit needs std_error > 0");
        if (!(p.log_prime_count > 0.0))
            throw std::domain_error(
                "inverse-log fit needs log_prime_count > 0");
        double var = p.std_error * p.std_error;
        num += p.slope / (var * p.log_prime_count);
        den += 1.0 / (var * p.log_prime_count * p.log_prime_count);
    }
    ModelFit fit;
    fit.coefficient = num / den;
    fit.coefficient_error = 1.0 / std::sqrt(den);
    fit.points_used = points.size();
    return fit;
}

ReferenceEstimates reference_estimates(double limit, std::uint64_t primes,
                                       std::uint64_t twins,
                                       double tolerance) {
    ReferenceEstimates est;
    est.prime_count = prime_count_estimate(limit, tolerance);
    est.twin_count = twin_count_estimate(limit, tolerance);
    est.separation_from_counts = naive_separation(primes, twins);
    est.slope_from_counts = naive_slope(primes, twins);
    est.separation_exact = separation_estimate(limit);
    est.separation_simplified = separation_estimate_simplified(limit);
    est.slope_from_prime_count = slope_estimate(static_cast<double>(primes));
    return est;
}

}  // namespace twinsieve
