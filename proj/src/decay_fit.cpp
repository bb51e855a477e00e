// decay_fit.cpp
// Scalar solve: bracket the stationarity condition dS/dm = 0 inside
// [1e-6, 10] starting from 1/(weighted mean separation), then bisect.
// Either the stationarity test |dS/dm| <= tol*S or a machine-collapsed
// bracket counts as converged.

#include "twinsieve/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "twinsieve/errors.hpp"

namespace twinsieve {

namespace {

constexpr double kBracketLow = 1e-6;
constexpr double kBracketHigh = 10.0;

struct LogResiduals {
    std::vector<double> s;
    std::vector<double> lnf;
    std::vector<double> w;
    double weight_sum = 0.0;
    double weighted_sep_sum = 0.0;

    // g = dS/dm / 2 = sum w*r*(s - 1/m) with r = lnf + m*s - ln m
    double gradient_half(double m, double* objective = nullptr) const {
        double lm = std::log(m);
        double inv = 1.0 / m;
        double g = 0.0, obj = 0.0;
        for (std::size_t i = 0; i < s.size(); i++) {
            double r = lnf[i] + m * s[i] - lm;
            g += w[i] * r * (s[i] - inv);
            obj += w[i] * r * r;
        }
        if (objective) *objective = obj;
        return g;
    }

    double curvature_weight(double m) const {  // sum w*(s - 1/m)^2
        double inv = 1.0 / m;
        double c = 0.0;
        for (std::size_t i = 0; i < s.size(); i++)
            c += w[i] * (s[i] - inv) * (s[i] - inv);
        return c;
    }
};

LogResiduals build_residuals(const FrequencyTable& table,
                             const FitOptions& opts) {
    if (table.rows.size() < 2)
        throw InsufficientDataError("fit needs at least two frequency bins");
    LogResiduals data;
    data.s.reserve(table.rows.size());
    data.lnf.reserve(table.rows.size());
    data.w.reserve(table.rows.size());
    for (const FrequencyRow& row : table.rows) {
        if (!(row.rel_freq > 0.0) || row.rel_freq > 1.0)
            throw std::domain_error("rel_freq must lie in (0, 1]");
        double weight = 1.0;
        if (opts.weighting == FitOptions::Weighting::Counts) {
            if (row.count == 0)
                throw std::domain_error("count weighting needs counts >= 1");
            weight = static_cast<double>(row.count);
        }
        data.s.push_back(static_cast<double>(row.separation));
        data.lnf.push_back(std::log(row.rel_freq));
        data.w.push_back(weight);
        data.weight_sum += weight;
        data.weighted_sep_sum += weight * static_cast<double>(row.separation);
    }
    return data;
}

}  // namespace

SlopeFit fit_constrained(const FrequencyTable& table, const FitOptions& opts) {
    if (!(opts.tolerance > 0.0))
        throw std::invalid_argument("fit tolerance must be positive");
    if (opts.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    LogResiduals data = build_residuals(table, opts);

    // Seed at the reciprocal weighted mean separation: exact for ideal
    // geometric data, close everywhere else.
    double mean_sep = data.weighted_sep_sum / data.weight_sum;
    double seed = mean_sep > 0.0 ? 1.0 / mean_sep : kBracketHigh;
    seed = std::clamp(seed, kBracketLow, kBracketHigh);

    double a = seed, b = seed;
    double ga = data.gradient_half(a);
    double gb = ga;
    while (ga > 0.0 && a > kBracketLow) {
        a = std::max(kBracketLow, a * 0.5);
        ga = data.gradient_half(a);
    }
    while (gb < 0.0 && b < kBracketHigh) {
        b = std::min(kBracketHigh, b * 2.0);
        gb = data.gradient_half(b);
    }
    if (!(ga <= 0.0) || !(gb >= 0.0))
        throw FitConvergenceError(
            "no stationary point bracketed in [1e-6, 10]", seed);

    double m = seed, objective = 0.0;
    bool converged = false;
    for (int iter = 0; iter < opts.max_iterations; iter++) {
        m = 0.5 * (a + b);
        double g = data.gradient_half(m, &objective);
        if (std::abs(2.0 * g) <= opts.tolerance * objective) {
            converged = true;
            break;
        }
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * m) {
            converged = true;  // bracket at machine resolution
            break;
        }
        if (g <= 0.0)
            a = m;
        else
            b = m;
    }
    if (!converged)
        throw FitConvergenceError("slope fit did not converge", m);

    SlopeFit fit;
    fit.m = m;
    fit.objective = objective;
    fit.bins_used = table.rows.size();
    fit.mean_separation = 1.0 / m;
    double denom = data.curvature_weight(m);
    fit.std_error = std::sqrt(objective /
                              static_cast<double>(fit.bins_used - 1) / denom);
    return fit;
}

double mean_separation(const SlopeFit& fit) { return fit.mean_separation; }

double fit_objective(const FrequencyTable& table, double m,
                     const FitOptions& opts) {
    if (!(m > 0.0))
        throw std::domain_error("objective needs m > 0");
    LogResiduals data = build_residuals(table, opts);
    double objective = 0.0;
    data.gradient_half(m, &objective);
    return objective;
}

double fitted_log_frequency(const SlopeFit& fit, double s) {
    return -fit.m * s + std::log(fit.m);
}

}  // namespace twinsieve
