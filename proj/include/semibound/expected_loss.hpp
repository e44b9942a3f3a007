#pragma once

#include <utility>
#include <vector>

#include "semibound/bounds_iid.hpp"
#include "semibound/moments.hpp"

namespace semibound {

// Law of the sum of count_n iid two-point variables: atom t has value
// (N-t) low + t high with probability C(N,t) beta^(N-t) (1-beta)^t.
struct BinomialConvolution {
    struct Atom {
        double value;
        double prob;
    };

    TwoPointDistribution marginal;
    int count_n;
    std::vector<Atom> atoms; // t = 0..N, strictly increasing values
};

BinomialConvolution binomial_convolution(const TwoPointDistribution& marginal, int count_n);

// deltas[0] = 1 > deltas[1] > ... > deltas[N-1] > deltas[N] = 0. Interior
// entries are the beta values at which convolution atom k crosses zero, so
// that for beta in [deltas[k], deltas[k-1]] atoms t >= k are positive.
struct ThresholdSequence {
    std::vector<double> deltas;
};

ThresholdSequence thresholds(const ShiftedSpec& shifted);

// Expected positive part of the shifted convolution at a given beta,
// evaluated piece-wise:
//   N mu sum_{t=k}^{N} pmf(t) + N sigma sqrt(beta(1-beta)) C(N-1,k-1) (1-beta)^(k-1) beta^(N-k)
double loss_objective(const ShiftedSpec& shifted, double beta, const NumericConfig& cfg = {});

// The two boundary pieces of the objective, valid on [deltas[1], 1] and
// [0, deltas[N-1]] respectively.
std::pair<double, double> loss_bound_pieces(const ShiftedSpec& shifted, double beta);

// Closed-form optimizers of the boundary pieces.
double beta_hat_one(double shifted_mean, double sigma, int count_n);
double beta_hat_two(double shifted_mean, double sigma, int count_n);

// Sharp upper bound on the expected positive part of the shifted sum. The
// attaining distribution is the iid two-point law (in shifted coordinates)
// at the optimizing beta.
BoundReport optimal_loss_bound(const ShiftedSpec& shifted);

// Improved upper bound on E|sum - q| via (x)^+ = (x + |x|)/2:
//   2 * optimal_loss_bound - (N mean - q).
BoundReport abs_sum_upper(const SumSpec& s);

} // namespace semibound
