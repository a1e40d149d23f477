#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcr/permutation.hpp"

namespace rcr {

/// Dense probability vector over S_n, indexed by PermIndex.
class RankingDistribution {
public:
    RankingDistribution() = default;
    /// Validates non-negativity and |sum - 1| <= 1e-12.
    RankingDistribution(int n, std::vector<double> probs);

    static RankingDistribution uniform(int n);
    static RankingDistribution point_mass(const Permutation& sigma);

    int items() const noexcept { return n_; }
    std::size_t size() const noexcept { return probs_.size(); }
    const std::vector<double>& probs() const noexcept { return probs_; }
    double operator[](PermIndex k) const { return probs_[k]; }
    double prob(const Permutation& sigma) const { return probs_.at(index_of(sigma)); }

    friend bool operator==(const RankingDistribution&, const RankingDistribution&) = default;

private:
    int n_ = 0;
    std::vector<double> probs_;
};

/// Convex combination weight * a + (1 - weight) * b.
RankingDistribution mixture(const RankingDistribution& a, const RankingDistribution& b, double weight);

/// Total variation: half the L1 distance.
double total_variation(const RankingDistribution& p, const RankingDistribution& q);

/// P(i, j) = probability that item i is ranked ahead of item j; P(i, i) = 1/2.
class PairwiseMatrix {
public:
    PairwiseMatrix() = default;
    /// Row-major n x n entries; validates complementarity and the diagonal.
    PairwiseMatrix(int n, std::vector<double> entries);

    int items() const noexcept { return n_; }
    /// 1-based items.
    double operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))];
    }
    const std::vector<double>& entries() const noexcept { return entries_; }

private:
    int n_ = 0;
    std::vector<double> entries_;
};

PairwiseMatrix pairwise_matrix(const RankingDistribution& p);

/// Exact sequential-choice probabilities for positive item weights.
RankingDistribution plackett_luce(const std::vector<double>& weights);

/// Weights exp(z) with z standard normal, drawn from a seeded generator.
std::vector<double> random_plackett_luce_weights(int n, std::uint64_t seed);

enum class NamedKind { uniform_ish, pointmass_ish, bucket_ish };

NamedKind parse_named_kind(const std::string& name);
std::string to_string(NamedKind kind);

inline constexpr double kDefaultMix = 0.95;

/// Hand-crafted families mixed with the uniform distribution:
///   uniform_ish   -> uniform
///   pointmass_ish -> (1 - mix) U + mix delta(center)
///   bucket_ish    -> (1 - mix) U + mix ((1 + gap)/2 delta(center) + (1 - gap)/2 delta(neighbor))
/// where neighbor swaps the items at ranks `swap_rank` and `swap_rank + 1` of center.
RankingDistribution make_named(NamedKind kind, const Permutation& center, double mix = kDefaultMix,
                               double gap = 0.1, int swap_rank = 1);

/// Center permutation with the items at ranks r and r+1 exchanged.
Permutation adjacent_swap(const Permutation& center, int rank);

/// Stochastic transitivity: P_ij >= 1/2 and P_jk >= 1/2 imply P_ik >= 1/2
/// (all inequalities strict when `strict`).
bool is_sst(const PairwiseMatrix& P, bool strict);

}  // namespace rcr
