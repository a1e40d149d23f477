#include "doctest.h"

#include <cmath>

#include "rcr/breakdown.hpp"
#include "rcr/consensus.hpp"

using namespace rcr;

namespace {

// Minimum Kendall distance from `center` over the exact Kemeny argmin of q.
double argmin_shift(const std::vector<Rational>& q, int n, const Permutation& center, bool worst) {
    double out = worst ? 2.0 : -1.0;
    for (PermIndex k : exact_kemeny_argmin(q, n)) {
        const double d = kendall_tau(center, from_index(k, n));
        out = worst ? std::min(out, d) : std::max(out, d);
    }
    return out;
}

std::vector<double> positive_grid(int n) {
    auto g = attainable_delta_grid(n);
    g.erase(g.begin());
    return g;
}

}  // namespace

TEST_CASE("attainable grid") {
    const auto g = attainable_delta_grid(4);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == 0.0);
    CHECK(g[1] == doctest::Approx(1.0 / 6.0));
    CHECK(g.back() == 1.0);
}

TEST_CASE("uniform distribution breaks for free") {
    for (int n = 2; n <= 5; ++n) {
        const BreakdownAnalyzer a(RankingDistribution::uniform(n));
        for (double d : positive_grid(n)) {
            CHECK(a.epsilon_plus(d).exact == 0);
            CHECK(a.epsilon_minus(d).exact == 0);
        }
    }
}

TEST_CASE("point mass needs a full budget") {
    for (int n = 2; n <= 5; ++n) {
        const BreakdownAnalyzer a(RankingDistribution::point_mass(reverse(Permutation::identity(n))));
        for (double d : positive_grid(n)) {
            const auto up = a.epsilon_plus(d);
            CHECK(up.exact == 1);
            CHECK(up.condition_ok);
            CHECK(a.epsilon_minus(d).value <= 1.0);
        }
    }
}

TEST_CASE("delta zero and unreachable delta") {
    const auto p = plackett_luce(random_plackett_luce_weights(4, 1));
    const BreakdownAnalyzer a(p);
    CHECK(a.epsilon_plus(0.0).value == 0.0);
    CHECK(a.epsilon_minus(0.0).value == 0.0);
    const auto far = a.epsilon_plus(1.0 + 1e-6);
    CHECK_FALSE(far.breakable);
    CHECK(std::isinf(far.value));
    CHECK_FALSE(a.epsilon_minus(1.0 + 1e-6).breakable);
}

TEST_CASE("lower bound size limit") {
    const BreakdownAnalyzer a(RankingDistribution::uniform(6));
    CHECK_NOTHROW(a.epsilon_plus(0.2));
    CHECK_THROWS_AS(a.epsilon_minus(0.2), std::out_of_range);
}

TEST_CASE("reverse attack") {
    const auto p = make_named(NamedKind::bucket_ish, Permutation::identity(4), 0.95, 0.1);
    CHECK(reverse_attack(p, 0.0) == p);
    const auto q = reverse_attack(p, 0.3);
    CHECK(total_variation(p, q) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK_THROWS_AS(reverse_attack(p, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(reverse_attack(p, 2.0), std::invalid_argument);

    const Permutation s0{2, 3, 1, 4};
    const auto flipped = reverse_attack(RankingDistribution::point_mass(s0), 2.0);
    CHECK(flipped == RankingDistribution::point_mass(reverse(s0)));
}

TEST_CASE("reverse attack moves the Kemeny objectives monotonically") {
    const auto p = plackett_luce(random_plackett_luce_weights(4, 9));
    const auto center = metric_median(p, Metric::kendall).median;
    const PermIndex c = index_of(center), r = index_of(reverse(center));
    double prev_c = -1.0, prev_r = 2.0;
    for (double eps = 0.0; eps <= 2.0 * p[c]; eps += p[c] / 5.0) {
        const auto e = expected_distances(reverse_attack(p, eps), Metric::kendall);
        CHECK(e[c] >= prev_c - 1e-15);
        CHECK(e[r] <= prev_r + 1e-15);
        prev_c = e[c];
        prev_r = e[r];
    }
}

TEST_CASE("sandwich and witness on seeded Plackett-Luce distributions") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto p = plackett_luce(random_plackett_luce_weights(4, seed));
        const BreakdownAnalyzer a(p);
        const auto exact_p = to_exact(p);
        const PermIndex c = index_of(a.kemeny_center());
        for (double d : positive_grid(4)) {
            CAPTURE(seed);
            CAPTURE(d);
            const auto up = a.epsilon_plus(d), lo = a.epsilon_minus(d);
            if (!up.condition_ok) continue;
            CHECK(lo.exact <= up.exact);
            const Rational budget = up.exact + Rational(1, 1000000000);
            if (budget > 2 * exact_p[c]) continue;
            CHECK(argmin_shift(reverse_attack_exact(p, budget), 4, a.kemeny_center(), true) >= d - 1e-12);
        }
    }
}

TEST_CASE("bounds on the bucket-ish family") {
    const auto p = make_named(NamedKind::bucket_ish, Permutation::identity(4), 0.95, 0.1);
    const BreakdownAnalyzer a(p);
    const auto first = a.epsilon_plus(1.0 / 6.0);
    CHECK(first.condition_ok);
    CHECK(first.value == doctest::Approx(0.095));
    CHECK(a.epsilon_minus(1.0 / 6.0).value == doctest::Approx(0.095));
    CHECK(a.epsilon_plus(2.0 / 6.0).value == doctest::Approx(0.95));
    REQUIRE(first.target.has_value());
    CHECK(*first.target == Permutation{2, 1, 3, 4});
    REQUIRE(first.witness.has_value());
    CHECK(total_variation(p, *first.witness) == doctest::Approx(first.value / 2));
}

TEST_CASE("bounds are invariant under relabeling items") {
    const auto p = plackett_luce({0.4, 1.7, 0.9, 1.2});
    const auto q = plackett_luce({1.2, 0.9, 1.7, 0.4});
    const BreakdownAnalyzer a(p), b(q);
    for (double d : positive_grid(4)) {
        CHECK(a.epsilon_plus(d).value == doctest::Approx(b.epsilon_plus(d).value).epsilon(1e-12));
        CHECK(a.epsilon_minus(d).value == doctest::Approx(b.epsilon_minus(d).value).epsilon(1e-12));
    }
}

TEST_CASE("curve bounds") {
    const auto curve = breakdown_curve_bounds(RankingDistribution::uniform(3), {0.0, 1.0 / 3.0, 1.0});
    REQUIRE(curve.size() == 3);
    for (const auto& pt : curve) {
        CHECK(pt.lower.value == 0.0);
        CHECK(pt.upper.value == 0.0);
    }
    const auto pm = breakdown_curve_bounds(RankingDistribution::point_mass({1, 2, 3}), {1.0 / 3.0, 2.0 / 3.0, 1.0});
    for (const auto& pt : pm) CHECK(pt.upper.value == 1.0);
    CHECK_THROWS_AS(breakdown_curve_bounds(RankingDistribution::uniform(3), {1.5}), std::invalid_argument);
}

TEST_CASE("alternative metrics for the lower bound") {
    const auto p = plackett_luce(random_plackett_luce_weights(4, 21));
    for (Metric m : {Metric::kendall, Metric::spearman_rho, Metric::spearman_footrule})
        for (Metric d : {Metric::kendall, Metric::spearman_rho, Metric::spearman_footrule}) {
            const auto lo = epsilon_minus(p, 0.25, m, d);
            CHECK(lo.breakable);
            CHECK(lo.value >= 0.0);
            CHECK(std::isfinite(lo.value));
        }
}
