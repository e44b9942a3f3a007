#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "semibound/moments.hpp"

namespace semibound::oracle {

// Finite law with sorted support; the workhorse for certifying bounds by
// exact expectation instead of trusting closed forms.
struct DiscreteLaw {
    struct Atom {
        double value;
        double prob;
    };
    std::vector<Atom> atoms;

    double mean() const;
    double variance() const;
};

DiscreteLaw make_law(std::vector<DiscreteLaw::Atom> atoms);
DiscreteLaw law_from(const TwoPointDistribution& d);

// Exact N-fold convolution of an iid law. Atoms closer than
// rel_tol * max|value| are merged; throws TooLarge past 1e6 atoms.
DiscreteLaw convolve_iid(const DiscreteLaw& law, int count_n, const NumericConfig& cfg = {});

// sum of max(0, value - q) * prob with compensated accumulation
double exact_expected_loss(const DiscreteLaw& law, double q);

// Pr(X > q) (strict) or Pr(X >= q)
double exact_tail(const DiscreteLaw& law, double q, bool strict);

struct McEstimate {
    double mean;
    double std_error;
    long long samples;
    std::uint64_t seed;
};

// Seeded estimate of E(sum of count_n iid draws - q)^+. Draws are keyed by
// (seed, sample, coordinate), so the result is bitwise reproducible
// regardless of evaluation order.
McEstimate mc_expected_loss(const DiscreteLaw& law, int count_n, double q, long long samples,
                            std::uint64_t seed);

// (m - q) Phi(d) + s phi(d) with d = (m - q)/s
double normal_expected_loss(double mean, double std_dev, double q);

// Adaptive Simpson integral, used to cross-check closed forms.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

// Random k-point law matching (mean, std_dev) exactly; returns false when the
// sampled support admits no probability vector. Deterministic in (seed, index).
bool random_matching_law(const MomentSpec& spec, std::uint64_t seed, std::uint64_t index,
                         DiscreteLaw& out);

struct AdversarialReport {
    long long laws_tested = 0;
    double worst_loss_gap = 0.0; // max over laws of exact loss - loss bound
    double worst_tail_gap = 0.0; // max over laws of tail bound - exact tail
};

// Random feasible iid laws must never beat the sharp bounds: exact expected
// loss stays below the loss bound and exact tail above the tail bound.
AdversarialReport adversarial_search(const MomentSpec& spec, int count_n, double threshold_q,
                                     long long num_laws, std::uint64_t seed);

} // namespace semibound::oracle
