#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "semibound/errors.hpp"

namespace semibound {

// Shared numerical knobs. Solvers stop on |f| <= abs_tol or a bracket
// narrower than rel_tol relative to the current iterate.
struct NumericConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_iterations = 200;
    double probability_clamp = 1e-12; // minimum distance of a probability from {0,1}

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(probability_clamp > 0.0))
            throw Error("NumericConfig: tolerances must be strictly positive");
        if (!(probability_clamp < 1e-3))
            throw Error("NumericConfig: probability_clamp must be below 1e-3");
        if (max_iterations <= 0)
            throw Error("NumericConfig: max_iterations must be positive");
    }
};

// Bracketed root finder: bisection alternating with secant steps taken from
// the bracket endpoints. Requires a sign change on [lo, hi].
template <typename F>
double find_root(F&& f, double lo, double hi, const NumericConfig& cfg = {}) {
    cfg.validate();
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw NoRootInBracket("find_root: no sign change on the bracket");

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        double cand = 0.5 * (lo + hi);
        if (it % 2 == 1) {
            // secant through the bracket endpoints, kept inside the bracket
            const double denom = fhi - flo;
            if (denom != 0.0) {
                const double s = hi - fhi * (hi - lo) / denom;
                if (s > lo && s < hi) cand = s;
            }
        }
        x = cand;
        const double fx = f(x);
        if (std::abs(fx) <= cfg.abs_tol) return x;
        if (std::signbit(fx) == std::signbit(fhi)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (hi - lo <= cfg.rel_tol * (std::abs(x) + 1.0)) break;
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximizer on [lo, hi]; assumes a well-behaved objective and
// is always preceded by a coarse scan where unimodality is not guaranteed.
template <typename F>
double maximize_scalar(F&& f, double lo, double hi, const NumericConfig& cfg = {}) {
    cfg.validate();
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 4 * cfg.max_iterations; ++it) {
        if (b - a <= cfg.rel_tol * (std::abs(a) + std::abs(b) + 1.0)) break;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Coarse grid scan followed by golden-section refinement between the
// neighbours of the best grid point.
template <typename F>
double grid_then_golden_maximize(F&& f, double lo, double hi, int grid_points,
                                 const NumericConfig& cfg = {}) {
    if (grid_points < 3) grid_points = 3;
    double best_x = lo;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / grid_points;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double step = (hi - lo) / grid_points;
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    return maximize_scalar(f, a, b, cfg);
}

// Neumaier-compensated accumulation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Binomial coefficient; exact in double up to n = 50, log-space beyond.
inline double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double choose(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 50) {
        double c = 1.0;
        k = std::min(k, n - k);
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        return c;
    }
    return std::exp(log_choose(n, k));
}

// Binomial pmf C(n,t) p^(n-t) (1-p)^t, evaluated in log space for large n.
inline double binomial_pmf(int n, int t, double p) {
    if (t < 0 || t > n) return 0.0;
    if (p <= 0.0) return t == n ? 1.0 : 0.0; // degenerate guard; callers clamp p
    if (p >= 1.0) return t == 0 ? 1.0 : 0.0;
    if (n <= 50) return choose(n, t) * std::pow(p, n - t) * std::pow(1.0 - p, t);
    const double lp = log_choose(n, t) + (n - t) * std::log(p) + t * std::log1p(-p);
    return std::exp(lp);
}

// Standard normal density and CDF.
inline double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779399461;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Counter-based generator: a fixed (seed, index) pair always yields the same
// draw, independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform_from_index(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace semibound
