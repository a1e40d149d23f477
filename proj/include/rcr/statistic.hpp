#pragma once

#include <functional>
#include <string>

#include "rcr/bucket_order.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr {

/// A location statistic mapping a ranking distribution to a bucket ranking.
struct Statistic {
    std::string label;
    std::function<BucketRanking(const RankingDistribution&)> apply;

    BucketRanking operator()(const RankingDistribution& p) const { return apply(p); }
};

Statistic kemeny_statistic();
Statistic borda_statistic();
/// Merge plug-ins on the Kemeny median.
Statistic naive_merge_statistic(double threshold);
Statistic downward_merge_statistic(double threshold);
/// Always the single all-items bucket.
Statistic constant_bucket_statistic();

/// Parses "kemeny", "borda", "naive_merge:<theta>", "downward_merge:<theta>",
/// "constant_bucket".
Statistic parse_statistic(const std::string& spec);

}  // namespace rcr
