#include "rcr/merge.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace rcr {

namespace {

enum class Pick { smallest, largest };

struct Span {
    int first;
    int last;
    double deviation;
};

BucketRanking merge_span(const BucketRanking& pi, int first, int last) {
    std::vector<std::vector<int>> out;
    const auto& b = pi.buckets();
    for (int k = 0; k < first; ++k) out.push_back(b[static_cast<std::size_t>(k)]);
    std::vector<int> merged;
    for (int k = first; k <= last; ++k)
        merged.insert(merged.end(), b[static_cast<std::size_t>(k)].begin(), b[static_cast<std::size_t>(k)].end());
    out.push_back(std::move(merged));
    for (int k = last + 1; k < pi.bucket_count(); ++k) out.push_back(b[static_cast<std::size_t>(k)]);
    return BucketRanking(std::move(out));
}

BucketRanking run_merge(const Permutation& median, const PairwiseMatrix& P, double threshold, Pick pick) {
    if (!(threshold >= 0.0 && threshold <= 0.5)) throw std::invalid_argument("merge: threshold must be in [0, 0.5]");
    if (median.size() != P.items()) throw std::invalid_argument("merge: median and matrix have different n");
    BucketRanking pi = from_permutation(median);
    while (true) {
        // Candidate spans first < last; scanning (first, last) lexicographically
        // and replacing only on strict improvement keeps the smallest pair on ties.
        std::optional<Span> chosen;
        for (int i = 0; i < pi.bucket_count(); ++i) {
            for (int j = i + 1; j < pi.bucket_count(); ++j) {
                const double dev = deviation_bar(P, pi, i, j);
                if (dev > threshold + kMergeTolerance) continue;
                const bool better = !chosen || (pick == Pick::smallest ? dev < chosen->deviation
                                                                      : dev > chosen->deviation);
                if (better) chosen = Span{i, j, dev};
            }
        }
        if (!chosen) return pi;
        pi = merge_span(pi, chosen->first, chosen->last);
    }
}

}  // namespace

double deviation_bar(const PairwiseMatrix& P, const BucketRanking& pi, int first, int last) {
    if (first < 0 || last >= pi.bucket_count() || first > last) {
        throw std::out_of_range("deviation_bar: bucket span out of range");
    }
    std::vector<int> items;
    for (int k = first; k <= last; ++k) {
        const auto& b = pi.buckets()[static_cast<std::size_t>(k)];
        items.insert(items.end(), b.begin(), b.end());
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < items.size(); ++a)
        for (std::size_t b = a + 1; b < items.size(); ++b) worst = std::max(worst, std::abs(P(items[a], items[b]) - 0.5));
    return worst;
}

BucketRanking naive_merge(const Permutation& median, const PairwiseMatrix& P, double threshold) {
    return run_merge(median, P, threshold, Pick::smallest);
}

BucketRanking downward_merge(const Permutation& median, const PairwiseMatrix& P, double threshold) {
    return run_merge(median, P, threshold, Pick::largest);
}

}  // namespace rcr
