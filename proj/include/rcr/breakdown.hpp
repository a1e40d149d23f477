#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rcr/permutation.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr {

using Rational = boost::multiprecision::cpp_rational;

/// Breakdown budgets are on the L1 scale ||p - q||_1 = 2 TV(p, q): the
/// reverse-mass attack with budget eps moves eps / 2 of probability mass.
struct BoundResult {
    bool breakable = true;        ///< false when no permutation is at distance >= delta
    double value = 0.0;           ///< epsilon, or +inf when unbreakable
    Rational exact = 0;           ///< the same value in exact arithmetic
    bool condition_ok = true;     ///< upper bound: eps+ <= 2 p(center); always true for the lower bound
    Permutation center;           ///< the median being attacked
    std::optional<Permutation> target;              ///< minimizing sigma of the outer min
    std::optional<RankingDistribution> witness;     ///< reverse-mass attack at budget `value`
};

/// Exact evaluation of the sandwich bounds for one distribution. Expected
/// distances are computed once in exact arithmetic from the binary values of p.
class BreakdownAnalyzer {
public:
    /// Upper bound uses Kendall tau; lower bound uses (attack_metric, median_metric).
    BreakdownAnalyzer(const RankingDistribution& p, Metric attack_metric = Metric::kendall,
                      Metric median_metric = Metric::kendall);

    /// min over sigma with d(sigma, s*) >= delta, max over nu with d(nu, s*) < delta, of
    /// E_p[d(S, sigma) - d(S, nu)] / (d(s*, sigma) - d(s*, nu)); Kendall, s* = Kemeny median.
    /// n <= 6.
    BoundResult epsilon_plus(double delta) const;

    /// min over sigma with m(sigma, s*) >= delta, max over nu != sigma, of
    /// E_p[d(S, sigma) - d(S, nu)] / max_s' (d(s', sigma) - d(s', nu)); s* = d-median. n <= 5.
    BoundResult epsilon_minus(double delta) const;

    const Permutation& kemeny_center() const noexcept { return kemeny_center_; }

private:
    RankingDistribution p_;
    Metric attack_metric_;
    Metric median_metric_;
    std::vector<Rational> exact_p_;
    DistanceTable kendall_;
    std::vector<Rational> kendall_expect_;  // units
    PermIndex kemeny_center_index_;
    Permutation kemeny_center_;
    // Lazily built for the lower bound.
    mutable std::optional<DistanceTable> median_table_;
    mutable std::optional<DistanceTable> attack_table_;
    mutable std::vector<Rational> median_expect_;
    mutable std::vector<std::int64_t> lower_denominators_;
    mutable PermIndex median_center_index_ = 0;

    void prepare_lower() const;
};

BoundResult epsilon_plus(const RankingDistribution& p, double delta);
BoundResult epsilon_minus(const RankingDistribution& p, double delta, Metric attack_metric = Metric::kendall,
                          Metric median_metric = Metric::kendall);

/// Exact expected distances in metric units for every permutation.
std::vector<Rational> exact_expected_units(const std::vector<Rational>& p, const DistanceTable& table);

/// Exact copy of p's binary values.
std::vector<Rational> to_exact(const RankingDistribution& p);

/// Indices attaining the exact minimum of the expected Kendall distance.
std::vector<PermIndex> exact_kemeny_argmin(const std::vector<Rational>& p, int n);

/// p - (eps/2) delta(s*) + (eps/2) delta(reverse(s*)), s* the Kemeny median of p.
/// Requires eps <= 2 p(s*).
RankingDistribution reverse_attack(const RankingDistribution& p, double eps);
std::vector<Rational> reverse_attack_exact(const RankingDistribution& p, const Rational& eps);

struct BoundCurvePoint {
    double delta = 0.0;
    BoundResult lower;
    BoundResult upper;
};

/// Raw (non-isotonic) lower and upper bound curves, Kendall for both metrics.
std::vector<BoundCurvePoint> breakdown_curve_bounds(const RankingDistribution& p, const std::vector<double>& deltas);

/// Attainable Kendall distances k / (n(n-1)/2), k = 0..n(n-1)/2.
std::vector<double> attainable_delta_grid(int n);

}  // namespace rcr
