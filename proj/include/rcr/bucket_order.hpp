#pragma once

#include <string>
#include <vector>

#include "rcr/permutation.hpp"

namespace rcr {

/// Ordered partition of items 1..n into non-empty buckets. Items in the same
/// bucket are tied; earlier buckets are strictly preferred.
class BucketRanking {
public:
    BucketRanking() = default;
    explicit BucketRanking(std::vector<std::vector<int>> buckets);

    /// One bucket holding every item.
    static BucketRanking single_bucket(int n);

    int size() const noexcept { return n_; }
    int bucket_count() const noexcept { return static_cast<int>(buckets_.size()); }
    const std::vector<std::vector<int>>& buckets() const noexcept { return buckets_; }

    /// 0-based bucket position of a 1-based item.
    int bucket_of(int item) const { return bucket_of_.at(static_cast<std::size_t>(item - 1)); }
    bool precedes(int i, int j) const { return bucket_of(i) < bucket_of(j); }
    bool tied(int i, int j) const { return bucket_of(i) == bucket_of(j); }

    std::string to_string() const;

    /// Buckets are compared as sorted item sets.
    friend bool operator==(const BucketRanking& a, const BucketRanking& b) {
        return a.n_ == b.n_ && a.bucket_of_ == b.bucket_of_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> buckets_;
    std::vector<int> bucket_of_;
};

/// All-singleton bucket order of a permutation.
BucketRanking from_permutation(const Permutation& sigma);

/// Linear extensions of the strict part: every way of breaking the ties.
std::vector<Permutation> compatible_permutations(const BucketRanking& pi);

/// compatible_permutations(a) is a subset of compatible_permutations(b).
bool is_stricter(const BucketRanking& a, const BucketRanking& b);

/// Ordered Bell (Fubini) number: sum_k k! S(n, k).
std::uint64_t count_bucket_orders(int n);

/// Every bucket order of n items, n <= 6.
std::vector<BucketRanking> enumerate_bucket_orders(int n);

/// Mean rank of each item: preceding bucket sizes + (own size + 1) / 2.
std::vector<double> mean_ranks(const BucketRanking& pi);

/// Per pair i<j (lexicographic): +1/2 if i ahead, 0 if tied, -1/2 if behind.
std::vector<double> profile_vector(const BucketRanking& pi);

/// max over sigma2 in pi2 of min over sigma1 in pi1 of Kendall tau. O(n^2).
double hausdorff_ns(const BucketRanking& pi1, const BucketRanking& pi2);

/// Unnormalized hausdorff_ns: number of pairs that cost a flip.
int hausdorff_ns_count(const BucketRanking& pi1, const BucketRanking& pi2);

/// Average of the two directed distances. O(n^2).
double hausdorff_half(const BucketRanking& pi1, const BucketRanking& pi2);

/// The three equivalent forms of the average Hausdorff distance, normalized
/// by n(n-1)/2: set counting, indicator sum, and profile-vector L1. Each is
/// an integer number of half-pairs divided by n(n-1), so equal values are
/// bitwise equal.
double hausdorff_half_by_sets(const BucketRanking& pi1, const BucketRanking& pi2);
double hausdorff_half_by_indicators(const BucketRanking& pi1, const BucketRanking& pi2);
double hausdorff_half_by_profile(const BucketRanking& pi1, const BucketRanking& pi2);

enum class HausdorffDirection { forward, backward };

/// Literal max-min over compatible permutation sets. forward evaluates
/// (pi1, pi2); backward evaluates (pi2, pi1). n <= 5.
double hausdorff_oracle(const BucketRanking& pi1, const BucketRanking& pi2,
                        HausdorffDirection direction = HausdorffDirection::forward);

enum class HausdorffVariant { ns, half };
HausdorffVariant parse_hausdorff_variant(const std::string& name);
std::string to_string(HausdorffVariant variant);

double hausdorff(HausdorffVariant variant, const BucketRanking& pi1, const BucketRanking& pi2);

}  // namespace rcr
