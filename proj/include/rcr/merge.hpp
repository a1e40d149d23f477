#pragma once

#include "rcr/bucket_order.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr {

/// Slack on `deviation <= threshold` so that thresholds written as decimals
/// (0.01, 0.2, ...) accept deviations computed as P - 0.5 in floating point.
inline constexpr double kMergeTolerance = 1e-12;

/// Largest |P(l, l') - 1/2| over items l, l' in buckets first..last (0-based, inclusive).
double deviation_bar(const PairwiseMatrix& P, const BucketRanking& pi, int first, int last);

/// Repeatedly merges the bucket span with the smallest deviation among spans
/// whose deviation is within threshold. Output is monotone in threshold.
BucketRanking naive_merge(const Permutation& median, const PairwiseMatrix& P, double threshold);

/// Same loop, but picks the admissible span with the largest deviation.
BucketRanking downward_merge(const Permutation& median, const PairwiseMatrix& P, double threshold);

}  // namespace rcr
