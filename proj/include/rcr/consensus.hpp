#pragma once

#include <vector>

#include "rcr/bucket_order.hpp"
#include "rcr/permutation.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr {

struct MedianResult {
    Permutation median;               ///< argmin with the smallest PermIndex
    double objective = 0.0;           ///< expected distance of the median
    std::vector<PermIndex> argmin_set;  ///< every permutation within kArgminTolerance of the minimum
};

inline constexpr double kArgminTolerance = 1e-12;

/// Expected distance E_p[d(sigma, Sigma)] for every sigma in S_n, indexed by
/// PermIndex. Evaluated through pairwise / rank marginals in O(n! n^2).
std::vector<double> expected_distances(const RankingDistribution& p, Metric metric);

/// Exact minimizer of the expected distance over S_n.
MedianResult metric_median(const RankingDistribution& p, Metric metric);

/// Kemeny median of a strictly stochastically transitive matrix by counting
/// wins: rank(i) = 1 + #{k : P(i, k) < 1/2}. Throws on non-SST input.
Permutation kemeny_median_sst(const PairwiseMatrix& P);

/// Items sorted by expected rank, ties broken by item id.
Permutation borda(const RankingDistribution& p);

/// Expected half-symmetric Hausdorff distance between a bucket-ranking output
/// and a permutation drawn from p. Accuracy of location is 1 - loss.
double loss(const BucketRanking& output, const RankingDistribution& p);
inline double accuracy_of_location(const BucketRanking& output, const RankingDistribution& p) {
    return 1.0 - loss(output, p);
}

}  // namespace rcr
