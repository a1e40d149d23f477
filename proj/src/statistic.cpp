#include "rcr/statistic.hpp"

#include <sstream>
#include <stdexcept>

#include "rcr/consensus.hpp"
#include "rcr/merge.hpp"

namespace rcr {

namespace {

std::string threshold_label(const std::string& name, double threshold) {
    std::ostringstream os;
    os << name << ':' << threshold;
    return os.str();
}

}  // namespace

Statistic kemeny_statistic() {
    return {"kemeny", [](const RankingDistribution& p) {
                return from_permutation(metric_median(p, Metric::kendall).median);
            }};
}

Statistic borda_statistic() {
    return {"borda", [](const RankingDistribution& p) { return from_permutation(borda(p)); }};
}

Statistic naive_merge_statistic(double threshold) {
    return {threshold_label("naive_merge", threshold), [threshold](const RankingDistribution& p) {
                return naive_merge(metric_median(p, Metric::kendall).median, pairwise_matrix(p), threshold);
            }};
}

Statistic downward_merge_statistic(double threshold) {
    return {threshold_label("downward_merge", threshold), [threshold](const RankingDistribution& p) {
                return downward_merge(metric_median(p, Metric::kendall).median, pairwise_matrix(p), threshold);
            }};
}

Statistic constant_bucket_statistic() {
    return {"constant_bucket", [](const RankingDistribution& p) { return BucketRanking::single_bucket(p.items()); }};
}

Statistic parse_statistic(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    auto threshold = [&]() {
        if (colon == std::string::npos) throw std::invalid_argument("statistic '" + name + "' needs a threshold, e.g. " + name + ":0.05");
        std::size_t used = 0;
        const double t = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument("bad threshold in statistic '" + spec + "'");
        if (!(t >= 0.0 && t <= 0.5)) throw std::invalid_argument("merge threshold must be in [0, 0.5]: " + spec);
        return t;
    };
    const bool thresholded = name == "naive_merge" || name == "downward_merge";
    if (!thresholded && colon != std::string::npos) throw std::invalid_argument("statistic '" + name + "' takes no threshold");
    if (name == "kemeny") return kemeny_statistic();
    if (name == "borda") return borda_statistic();
    if (name == "naive_merge") return naive_merge_statistic(threshold());
    if (name == "downward_merge") return downward_merge_statistic(threshold());
    if (name == "constant_bucket") return constant_bucket_statistic();
    throw std::invalid_argument("unknown statistic: " + spec);
}

}  // namespace rcr
