#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcr {

/// Largest n for which S_n is enumerated densely (8! = 40320 permutations).
inline constexpr int kMaxItems = 8;

/// A ranking of n items stored as item -> rank. Item ids and ranks are 1-based
/// at the interface; ranks()[i] is the rank of item i+1. Lower rank = preferred.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> ranks);
    Permutation(std::initializer_list<int> ranks) : Permutation(std::vector<int>(ranks)) {}

    static Permutation identity(int n);

    int size() const noexcept { return static_cast<int>(ranks_.size()); }
    /// Rank of 1-based item id.
    int rank_of(int item) const { return ranks_.at(static_cast<std::size_t>(item - 1)); }
    const std::vector<int>& ranks() const noexcept { return ranks_; }

    /// Items ordered from most to least preferred (1-based ids).
    std::vector<int> ordering() const;

    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> ranks_;
};

/// Lexicographic rank of a permutation's rank vector within S_n.
using PermIndex = std::size_t;

std::size_t factorial(int n);

/// All n! permutations in lexicographic order of rank vectors, so that
/// position == index_of(result[position]).
std::vector<Permutation> enumerate(int n);

/// Cached enumerate(n); the returned reference stays valid for the program's lifetime.
const std::vector<Permutation>& all_permutations(int n);

PermIndex index_of(const Permutation& sigma);
Permutation from_index(PermIndex index, int n);

/// Order reversal: rank r becomes n + 1 - r.
Permutation reverse(const Permutation& sigma);

enum class Metric { kendall, spearman_rho, spearman_footrule };

Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

/// Distances are stored as an integer count over a fixed per-(metric, n)
/// denominator so that bound computations can be carried out exactly.
///   kendall:   discordant pairs            / (n(n-1)/2)
///   rho:       3 * sum (rank diff)^2       / (n(n^2-1))
///   footrule:  sum |rank diff|             / floor(n^2/2)
std::int64_t distance_units(Metric metric, const Permutation& a, const Permutation& b);
std::int64_t distance_scale(Metric metric, int n);
double distance(Metric metric, const Permutation& a, const Permutation& b);

double kendall_tau(const Permutation& a, const Permutation& b);
double spearman_rho(const Permutation& a, const Permutation& b);
double spearman_footrule(const Permutation& a, const Permutation& b);

/// Number of discordant pairs (unnormalized Kendall distance).
int discordant_pairs(const Permutation& a, const Permutation& b);

/// Dense n! x n! table of distance_units, indexed by PermIndex. n <= 6.
class DistanceTable {
public:
    DistanceTable(Metric metric, int n);

    Metric metric() const noexcept { return metric_; }
    int items() const noexcept { return n_; }
    std::size_t perms() const noexcept { return count_; }
    std::int64_t scale() const noexcept { return scale_; }

    std::int64_t units(PermIndex a, PermIndex b) const { return table_[a * count_ + b]; }
    double operator()(PermIndex a, PermIndex b) const {
        return static_cast<double>(units(a, b)) / static_cast<double>(scale_);
    }
    /// Largest attainable distance in units.
    std::int64_t max_units() const noexcept { return max_units_; }

private:
    Metric metric_;
    int n_;
    std::size_t count_;
    std::int64_t scale_;
    std::int64_t max_units_ = 0;
    std::vector<std::int64_t> table_;
};

}  // namespace rcr
