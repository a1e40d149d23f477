#include "rcr/bucket_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rcr {

namespace {

void check_same_size(const BucketRanking& a, const BucketRanking& b) {
    if (a.size() != b.size()) throw std::invalid_argument("bucket rankings have different sizes");
    if (a.size() < 2) throw std::invalid_argument("Hausdorff distance needs at least 2 items");
}

double pair_count(int n) { return static_cast<double>(n) * (n - 1) / 2.0; }

}  // namespace

BucketRanking::BucketRanking(std::vector<std::vector<int>> buckets) : buckets_(std::move(buckets)) {
    for (const auto& b : buckets_) {
        if (b.empty()) throw std::invalid_argument("bucket ranking contains an empty bucket");
        n_ += static_cast<int>(b.size());
    }
    if (n_ < 1) throw std::invalid_argument("bucket ranking must cover at least one item");
    bucket_of_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
        std::sort(buckets_[k].begin(), buckets_[k].end());
        for (int item : buckets_[k]) {
            if (item < 1 || item > n_ || bucket_of_[static_cast<std::size_t>(item - 1)] != -1) {
                throw std::invalid_argument("buckets must partition 1..n");
            }
            bucket_of_[static_cast<std::size_t>(item - 1)] = static_cast<int>(k);
        }
    }
}

BucketRanking BucketRanking::single_bucket(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return BucketRanking({all});
}

std::string BucketRanking::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
        os << (k ? "," : "") << '{';
        for (std::size_t t = 0; t < buckets_[k].size(); ++t) os << (t ? "," : "") << buckets_[k][t];
        os << '}';
    }
    os << ')';
    return os.str();
}

BucketRanking from_permutation(const Permutation& sigma) {
    std::vector<std::vector<int>> buckets;
    buckets.reserve(static_cast<std::size_t>(sigma.size()));
    for (int item : sigma.ordering()) buckets.push_back({item});
    return BucketRanking(std::move(buckets));
}

std::vector<Permutation> compatible_permutations(const BucketRanking& pi) {
    if (pi.size() > kMaxItems) throw std::out_of_range("compatible_permutations: n must be <= 8");
    // Walk the cartesian product of per-bucket orderings.
    auto buckets = pi.buckets();
    std::vector<Permutation> out;
    const int n = pi.size();
    while (true) {
        std::vector<int> ranks(static_cast<std::size_t>(n));
        int r = 1;
        for (const auto& b : buckets)
            for (int item : b) ranks[static_cast<std::size_t>(item - 1)] = r++;
        out.emplace_back(std::move(ranks));
        std::size_t k = 0;
        for (; k < buckets.size(); ++k) {
            if (std::next_permutation(buckets[k].begin(), buckets[k].end())) break;
        }
        if (k == buckets.size()) break;
    }
    std::sort(out.begin(), out.end(),
              [](const Permutation& a, const Permutation& b) { return a.ranks() < b.ranks(); });
    return out;
}

bool is_stricter(const BucketRanking& a, const BucketRanking& b) {
    if (a.size() != b.size()) throw std::invalid_argument("bucket rankings have different sizes");
    // Subset of linear extensions <=> every strict relation of b also holds in a.
    const int n = a.size();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (b.precedes(i, j) && !a.precedes(i, j)) return false;
    return true;
}

std::uint64_t count_bucket_orders(int n) {
    if (n < 1 || n > kMaxItems) throw std::out_of_range("count_bucket_orders: n must be in [1, 8]");
    // a(m) = sum_{k=1..m} C(m, k) a(m - k), a(0) = 1.
    std::vector<std::uint64_t> a(static_cast<std::size_t>(n) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::uint64_t binom = 1;
        for (int k = 1; k <= m; ++k) {
            binom = binom * static_cast<std::uint64_t>(m - k + 1) / static_cast<std::uint64_t>(k);
            a[static_cast<std::size_t>(m)] += binom * a[static_cast<std::size_t>(m - k)];
        }
    }
    return a[static_cast<std::size_t>(n)];
}

std::vector<BucketRanking> enumerate_bucket_orders(int n) {
    if (n < 1 || n > 6) throw std::out_of_range("enumerate_bucket_orders: n must be in [1, 6]");
    std::vector<BucketRanking> out;
    // Each item gets a bucket label in [0, n); keep labelings that are surjective onto [0, k).
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    while (true) {
        const int k = *std::max_element(label.begin(), label.end()) + 1;
        std::vector<std::vector<int>> buckets(static_cast<std::size_t>(k));
        for (int i = 0; i < n; ++i) buckets[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i + 1);
        if (std::none_of(buckets.begin(), buckets.end(), [](const auto& b) { return b.empty(); })) {
            out.emplace_back(std::move(buckets));
        }
        int pos = n - 1;
        while (pos >= 0 && ++label[static_cast<std::size_t>(pos)] == n) label[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

std::vector<double> mean_ranks(const BucketRanking& pi) {
    std::vector<double> out(static_cast<std::size_t>(pi.size()));
    int preceding = 0;
    for (const auto& b : pi.buckets()) {
        const double r = preceding + (static_cast<double>(b.size()) + 1.0) / 2.0;
        for (int item : b) out[static_cast<std::size_t>(item - 1)] = r;
        preceding += static_cast<int>(b.size());
    }
    return out;
}

std::vector<double> profile_vector(const BucketRanking& pi) {
    const auto r = mean_ranks(pi);
    std::vector<double> out;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) out.push_back(r[i] < r[j] ? 0.5 : (r[i] == r[j] ? 0.0 : -0.5));
    return out;
}

double hausdorff_ns(const BucketRanking& pi1, const BucketRanking& pi2) {
    return hausdorff_ns_count(pi1, pi2) / pair_count(pi1.size());
}

int hausdorff_ns_count(const BucketRanking& pi1, const BucketRanking& pi2) {
    check_same_size(pi1, pi2);
    // A pair costs one flip when it is strict in pi1 and either reversed in
    // pi2 or tied in pi2 (pi2's tie-break can then pick the opposite order).
    const int n = pi1.size();
    int count = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (pi1.tied(i, j)) continue;
            const int s1 = pi1.bucket_of(i) - pi1.bucket_of(j);
            const int s2 = pi2.bucket_of(i) - pi2.bucket_of(j);
            if (s2 == 0 || (s1 < 0) != (s2 < 0)) ++count;
        }
    }
    return count;
}

double hausdorff_half(const BucketRanking& pi1, const BucketRanking& pi2) {
    return hausdorff_half_by_profile(pi1, pi2);
}

double hausdorff_half_by_sets(const BucketRanking& pi1, const BucketRanking& pi2) {
    check_same_size(pi1, pi2);
    const auto r1 = mean_ranks(pi1);
    const auto r2 = mean_ranks(pi2);
    const std::size_t n = r1.size();
    std::size_t opposite = 0, only_tied_in_1 = 0, only_tied_in_2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d1 = r1[i] - r1[j];
            const double d2 = r2[i] - r2[j];
            if (d1 != 0.0 && d1 * d2 < 0.0) ++opposite;
            if (d1 == 0.0 && d2 != 0.0) ++only_tied_in_1;
            if (d2 == 0.0 && d1 != 0.0) ++only_tied_in_2;
        }
    }
    const auto half_units = 2 * opposite + only_tied_in_1 + only_tied_in_2;
    return static_cast<double>(half_units) / (2.0 * pair_count(static_cast<int>(n)));
}

double hausdorff_half_by_indicators(const BucketRanking& pi1, const BucketRanking& pi2) {
    check_same_size(pi1, pi2);
    const auto r1 = mean_ranks(pi1);
    const auto r2 = mean_ranks(pi2);
    const std::size_t n = r1.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d1 = r1[i] - r1[j];
            const double d2 = r2[i] - r2[j];
            sum += (d1 * d2 < 0.0 ? 1.0 : 0.0) + 0.5 * ((d1 == 0.0) && (d2 != 0.0)) +
                   0.5 * ((d2 == 0.0) && (d1 != 0.0));
        }
    }
    return (2.0 * sum) / (2.0 * pair_count(static_cast<int>(n)));
}

double hausdorff_half_by_profile(const BucketRanking& pi1, const BucketRanking& pi2) {
    check_same_size(pi1, pi2);
    const auto a = profile_vector(pi1);
    const auto b = profile_vector(pi2);
    double l1 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) l1 += std::abs(a[k] - b[k]);
    return (2.0 * l1) / (2.0 * pair_count(pi1.size()));
}

double hausdorff_oracle(const BucketRanking& pi1, const BucketRanking& pi2, HausdorffDirection direction) {
    check_same_size(pi1, pi2);
    if (pi1.size() > 5) throw std::out_of_range("hausdorff_oracle: n must be <= 5");
    const auto& from = direction == HausdorffDirection::forward ? pi1 : pi2;
    const auto& to = direction == HausdorffDirection::forward ? pi2 : pi1;
    const auto set1 = compatible_permutations(from);
    const auto set2 = compatible_permutations(to);
    int worst = 0;
    for (const auto& s2 : set2) {
        int best = std::numeric_limits<int>::max();
        for (const auto& s1 : set1) best = std::min(best, discordant_pairs(s1, s2));
        worst = std::max(worst, best);
    }
    return worst / pair_count(pi1.size());
}

HausdorffVariant parse_hausdorff_variant(const std::string& name) {
    if (name == "ns") return HausdorffVariant::ns;
    if (name == "half") return HausdorffVariant::half;
    throw std::invalid_argument("unknown Hausdorff variant '" + name + "' (expected ns or half)");
}

std::string to_string(HausdorffVariant variant) { return variant == HausdorffVariant::ns ? "ns" : "half"; }

double hausdorff(HausdorffVariant variant, const BucketRanking& pi1, const BucketRanking& pi2) {
    return variant == HausdorffVariant::ns ? hausdorff_ns(pi1, pi2) : hausdorff_half(pi1, pi2);
}

}  // namespace rcr
