#include "rcr/ranking_dist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rcr {

RankingDistribution::RankingDistribution(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
    if (n < 1 || n > kMaxItems) throw std::out_of_range("distribution: n must be in [1, 8]");
    if (probs_.size() != factorial(n)) throw std::invalid_argument("distribution: probs must have n! entries");
    double sum = 0.0;
    for (double v : probs_) {
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("distribution: negative or non-finite entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

RankingDistribution RankingDistribution::uniform(int n) {
    const std::size_t count = factorial(n);
    return RankingDistribution(n, std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

RankingDistribution RankingDistribution::point_mass(const Permutation& sigma) {
    std::vector<double> probs(factorial(sigma.size()), 0.0);
    probs[index_of(sigma)] = 1.0;
    return RankingDistribution(sigma.size(), std::move(probs));
}

RankingDistribution mixture(const RankingDistribution& a, const RankingDistribution& b, double weight) {
    if (a.items() != b.items()) throw std::invalid_argument("mixture: distributions have different n");
    if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("mixture: weight must be in [0, 1]");
    std::vector<double> probs(a.size());
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = weight * a[k] + (1.0 - weight) * b[k];
    return RankingDistribution(a.items(), std::move(probs));
}

double total_variation(const RankingDistribution& p, const RankingDistribution& q) {
    if (p.items() != q.items()) throw std::invalid_argument("total_variation: distributions have different n");
    double l1 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) l1 += std::abs(p[k] - q[k]);
    return 0.5 * l1;
}

PairwiseMatrix::PairwiseMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("pairwise matrix: n must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("pairwise matrix: expected n*n entries");
    }
    for (int i = 1; i <= n; ++i) {
        if ((*this)(i, i) != 0.5) throw std::invalid_argument("pairwise matrix: diagonal must be 1/2");
        for (int j = 1; j <= n; ++j) {
            const double v = (*this)(i, j);
            if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("pairwise matrix: entries must lie in [0, 1]");
            if (std::abs(v + (*this)(j, i) - 1.0) > 1e-9) {
                throw std::invalid_argument("pairwise matrix: P(i,j) + P(j,i) must equal 1");
            }
        }
    }
}

PairwiseMatrix pairwise_matrix(const RankingDistribution& p) {
    const int n = p.items();
    const auto& perms = all_permutations(n);
    const auto N = static_cast<std::size_t>(n);
    std::vector<double> ahead(N * N, 0.0);
    for (std::size_t k = 0; k < perms.size(); ++k) {
        if (p[k] == 0.0) continue;
        const auto& r = perms[k].ranks();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) (r[i] < r[j] ? ahead[i * N + j] : ahead[j * N + i]) += p[k];
    }
    for (std::size_t i = 0; i < N; ++i) {
        ahead[i * N + i] = 0.5;
        for (std::size_t j = i + 1; j < N; ++j) {
            // Force exact complementarity; accumulated sums can drift by an ulp.
            ahead[i * N + j] = std::clamp(ahead[i * N + j], 0.0, 1.0);
            ahead[j * N + i] = 1.0 - ahead[i * N + j];
        }
    }
    return PairwiseMatrix(n, std::move(ahead));
}

RankingDistribution plackett_luce(const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size());
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("plackett_luce: weights must be positive");
    }
    const auto& perms = all_permutations(n);
    std::vector<double> probs(perms.size());
    double total = 0.0;
    for (std::size_t k = 0; k < perms.size(); ++k) {
        const auto order = perms[k].ordering();
        double remaining = 0.0;
        for (double w : weights) remaining += w;
        double prob = 1.0;
        for (int item : order) {
            const double w = weights[static_cast<std::size_t>(item - 1)];
            prob *= w / remaining;
            remaining -= w;
        }
        probs[k] = prob;
        total += prob;
    }
    for (double& v : probs) v /= total;
    return RankingDistribution(n, std::move(probs));
}

std::vector<double> random_plackett_luce_weights(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& v : w) v = std::exp(normal(rng));
    return w;
}

NamedKind parse_named_kind(const std::string& name) {
    if (name == "uniform-ish" || name == "uniform_ish" || name == "uniform") return NamedKind::uniform_ish;
    if (name == "pointmass-ish" || name == "pointmass_ish" || name == "pointmass") return NamedKind::pointmass_ish;
    if (name == "bucket-ish" || name == "bucket_ish" || name == "bucket") return NamedKind::bucket_ish;
    throw std::invalid_argument("unknown distribution kind: " + name);
}

std::string to_string(NamedKind kind) {
    switch (kind) {
        case NamedKind::uniform_ish: return "uniform-ish";
        case NamedKind::pointmass_ish: return "pointmass-ish";
        case NamedKind::bucket_ish: return "bucket-ish";
    }
    return "?";
}

Permutation adjacent_swap(const Permutation& center, int rank) {
    const int n = center.size();
    if (rank < 1 || rank >= n) throw std::invalid_argument("adjacent_swap: rank must be in [1, n-1]");
    std::vector<int> r = center.ranks();
    for (int& x : r) {
        if (x == rank) x = rank + 1;
        else if (x == rank + 1) x = rank;
    }
    return Permutation(std::move(r));
}

RankingDistribution make_named(NamedKind kind, const Permutation& center, double mix, double gap, int swap_rank) {
    if (!(mix >= 0.0 && mix <= 1.0)) throw std::invalid_argument("make_named: mix must be in [0, 1]");
    if (!(gap >= 0.0 && gap <= 1.0)) throw std::invalid_argument("make_named: gap must be in [0, 1]");
    const int n = center.size();
    const auto uniform = RankingDistribution::uniform(n);
    switch (kind) {
        case NamedKind::uniform_ish:
            return uniform;
        case NamedKind::pointmass_ish:
            return mixture(RankingDistribution::point_mass(center), uniform, mix);
        case NamedKind::bucket_ish: {
            if (n < 2) throw std::invalid_argument("make_named: bucket-ish needs at least 2 items");
            std::vector<double> pair(factorial(n), 0.0);
            pair[index_of(center)] = 0.5 + gap / 2.0;
            pair[index_of(adjacent_swap(center, swap_rank))] = 0.5 - gap / 2.0;
            return mixture(RankingDistribution(n, std::move(pair)), uniform, mix);
        }
    }
    throw std::invalid_argument("make_named: unknown kind");
}

bool is_sst(const PairwiseMatrix& P, bool strict) {
    const int n = P.items();
    auto holds = [strict](double v) { return strict ? v > 0.5 : v >= 0.5; };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j == i || !holds(P(i, j))) continue;
            for (int k = 1; k <= n; ++k) {
                if (k == i || k == j) continue;
                if (holds(P(j, k)) && !holds(P(i, k))) return false;
            }
        }
    if (strict) {
        // Strict transitivity only yields a unique order when no pair is tied.
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (P(i, j) == 0.5) return false;
    }
    return true;
}

}  // namespace rcr
