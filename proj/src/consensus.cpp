#include "rcr/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcr {

namespace {

/// marginals[i * n + (r - 1)] = P(item i+1 has rank r).
std::vector<double> rank_marginals(const RankingDistribution& p) {
    const int n = p.items();
    const auto N = static_cast<std::size_t>(n);
    const auto& perms = all_permutations(n);
    std::vector<double> m(N * N, 0.0);
    for (std::size_t k = 0; k < perms.size(); ++k) {
        if (p[k] == 0.0) continue;
        const auto& r = perms[k].ranks();
        for (std::size_t i = 0; i < N; ++i) m[i * N + static_cast<std::size_t>(r[i] - 1)] += p[k];
    }
    return m;
}

}  // namespace

std::vector<double> expected_distances(const RankingDistribution& p, Metric metric) {
    const int n = p.items();
    if (n < 2) throw std::invalid_argument("expected_distances: need at least 2 items");
    const auto N = static_cast<std::size_t>(n);
    const auto& perms = all_permutations(n);
    const double scale = static_cast<double>(distance_scale(metric, n));
    std::vector<double> out(perms.size());

    if (metric == Metric::kendall) {
        const auto P = pairwise_matrix(p);
        for (std::size_t k = 0; k < perms.size(); ++k) {
            const auto& r = perms[k].ranks();
            double acc = 0.0;
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = i + 1; j < N; ++j) {
                    const int a = static_cast<int>(i) + 1, b = static_cast<int>(j) + 1;
                    acc += r[i] < r[j] ? P(b, a) : P(a, b);
                }
            out[k] = acc / scale;
        }
        return out;
    }

    const auto m = rank_marginals(p);
    for (std::size_t k = 0; k < perms.size(); ++k) {
        const auto& r = perms[k].ranks();
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t s = 0; s < N; ++s) {
                const double w = m[i * N + s];
                if (w == 0.0) continue;
                const int diff = r[i] - static_cast<int>(s) - 1;
                acc += w * (metric == Metric::spearman_rho ? 3.0 * diff * diff : std::abs(diff));
            }
        out[k] = acc / scale;
    }
    return out;
}

MedianResult metric_median(const RankingDistribution& p, Metric metric) {
    const auto values = expected_distances(p, metric);
    const auto best = std::min_element(values.begin(), values.end());
    MedianResult result;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (values[k] <= *best + kArgminTolerance) result.argmin_set.push_back(k);
    result.median = from_index(result.argmin_set.front(), p.items());
    result.objective = values[result.argmin_set.front()];
    return result;
}

Permutation kemeny_median_sst(const PairwiseMatrix& P) {
    if (!is_sst(P, true)) throw std::invalid_argument("kemeny_median_sst: matrix is not strictly stochastically transitive");
    const int n = P.items();
    std::vector<int> ranks(static_cast<std::size_t>(n), 1);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
            if (k != i && P(i, k) < 0.5) ++ranks[static_cast<std::size_t>(i - 1)];
    return Permutation(std::move(ranks));
}

Permutation borda(const RankingDistribution& p) {
    const int n = p.items();
    const auto N = static_cast<std::size_t>(n);
    const auto m = rank_marginals(p);
    std::vector<double> mean(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t s = 0; s < N; ++s) mean[i] += static_cast<double>(s + 1) * m[i * N + s];
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return mean[static_cast<std::size_t>(a)] < mean[static_cast<std::size_t>(b)];
    });
    std::vector<int> ranks(N);
    for (std::size_t pos = 0; pos < N; ++pos) ranks[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
    return Permutation(std::move(ranks));
}

double loss(const BucketRanking& output, const RankingDistribution& p) {
    if (output.size() != p.items()) throw std::invalid_argument("loss: statistic and distribution have different n");
    const auto& perms = all_permutations(p.items());
    double acc = 0.0;
    for (std::size_t k = 0; k < perms.size(); ++k) {
        if (p[k] == 0.0) continue;
        acc += p[k] * hausdorff_half(output, from_permutation(perms[k]));
    }
    return acc;
}

}  // namespace rcr
