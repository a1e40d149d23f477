#include "doctest.h"

#include <cmath>
#include <random>

#include "rcr/ranking_dist.hpp"

using namespace rcr;

TEST_CASE("distribution validation") {
    CHECK_NOTHROW(RankingDistribution(2, {0.25, 0.75}));
    CHECK_THROWS_AS(RankingDistribution(2, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(RankingDistribution(2, {1.1, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(RankingDistribution(3, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(RankingDistribution(2, {NAN, 1.0}), std::invalid_argument);
}

TEST_CASE("total variation examples") {
    const auto u = RankingDistribution::uniform(3);
    CHECK(total_variation(u, u) == 0.0);
    CHECK(total_variation(RankingDistribution::point_mass({1, 2, 3}), RankingDistribution::point_mass({2, 1, 3})) == 1.0);
    CHECK(total_variation(RankingDistribution::uniform(2), RankingDistribution::point_mass({1, 2})) == 0.5);
    CHECK_THROWS_AS(total_variation(u, RankingDistribution::uniform(2)), std::invalid_argument);
}

TEST_CASE("pairwise matrix examples") {
    const auto pm = pairwise_matrix(RankingDistribution::point_mass(Permutation::identity(4)));
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) CHECK(pm(i, j) == 1.0);

    const auto u = pairwise_matrix(RankingDistribution::uniform(4));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) CHECK(u(i, j) == doctest::Approx(0.5));

    const auto two = pairwise_matrix(RankingDistribution(2, {0.6, 0.4}));
    CHECK(two(1, 2) == doctest::Approx(0.6));
    CHECK(two(2, 1) == doctest::Approx(0.4));
}

TEST_CASE("pairwise matrix validation") {
    CHECK_THROWS_AS(PairwiseMatrix(2, {0.5, 0.7, 0.7, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(PairwiseMatrix(2, {0.4, 0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(PairwiseMatrix(2, {0.5, 0.7, 0.3, 0.5}));
}

TEST_CASE("pairwise matrix is linear in the distribution") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w01(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 3;
        const auto a = plackett_luce(random_plackett_luce_weights(n, rng()));
        const auto b = plackett_luce(random_plackett_luce_weights(n, rng()));
        const double w = w01(rng);
        const auto pm = pairwise_matrix(mixture(a, b, w));
        const auto pa = pairwise_matrix(a), pb = pairwise_matrix(b);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                CHECK(pm(i, j) == doctest::Approx(w * pa(i, j) + (1 - w) * pb(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("plackett-luce examples") {
    const auto even = plackett_luce({1.0, 1.0});
    CHECK(even[0] == doctest::Approx(0.5));
    const auto skew = plackett_luce({2.0, 1.0});
    CHECK(skew.prob({1, 2}) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(plackett_luce({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(plackett_luce({1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("plackett-luce pairwise marginals match the closed form, n <= 5") {
    for (int n = 2; n <= 5; ++n)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto w = random_plackett_luce_weights(n, seed);
            const auto p = plackett_luce(w);
            double total = 0.0;
            for (double v : p.probs()) total += v;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
            const auto P = pairwise_matrix(p);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (i != j) CHECK(P(i, j) == doctest::Approx(w[i - 1] / (w[i - 1] + w[j - 1])).epsilon(1e-12));
        }
}

TEST_CASE("random weights are reproducible") {
    CHECK(random_plackett_luce_weights(4, 7) == random_plackett_luce_weights(4, 7));
    CHECK(random_plackett_luce_weights(4, 7) != random_plackett_luce_weights(4, 8));
}

TEST_CASE("named families") {
    const auto id = Permutation::identity(4);
    for (double eta : {0.0, 0.3, 1.0}) CHECK(make_named(NamedKind::uniform_ish, id, eta) == RankingDistribution::uniform(4));
    CHECK(make_named(NamedKind::pointmass_ish, id, 1.0) == RankingDistribution::point_mass(id));

    const auto half = make_named(NamedKind::bucket_ish, id, 1.0, 0.0);
    CHECK(half.prob(id) == 0.5);
    CHECK(half.prob({2, 1, 3, 4}) == 0.5);

    const auto b = make_named(NamedKind::bucket_ish, id, 0.95, 0.1, 3);
    CHECK(b.prob({1, 2, 4, 3}) > b.prob({2, 1, 3, 4}));

    CHECK_THROWS_AS(make_named(NamedKind::bucket_ish, id, 1.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_named(NamedKind::bucket_ish, id, 0.9, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_named(NamedKind::bucket_ish, Permutation{1}, 0.9, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_named(NamedKind::bucket_ish, id, 0.9, 0.1, 4), std::invalid_argument);
}

TEST_CASE("named families are valid at parameter corners") {
    for (auto kind : {NamedKind::uniform_ish, NamedKind::pointmass_ish, NamedKind::bucket_ish})
        for (double eta : {0.0, 1.0})
            for (double gap : {0.0, 0.1}) {
                const auto p = make_named(kind, Permutation{3, 1, 2, 4}, eta, gap);
                double total = 0.0;
                for (double v : p.probs()) {
                    CHECK(v >= 0.0);
                    total += v;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
            }
    for (auto kind : {NamedKind::uniform_ish, NamedKind::pointmass_ish, NamedKind::bucket_ish})
        CHECK(parse_named_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_named_kind("mallows"), std::invalid_argument);
}

TEST_CASE("stochastic transitivity") {
    const auto pm = pairwise_matrix(RankingDistribution::point_mass({2, 3, 1}));
    CHECK(is_sst(pm, true));
    const auto u = pairwise_matrix(RankingDistribution::uniform(3));
    CHECK(is_sst(u, false));
    CHECK_FALSE(is_sst(u, true));
    const PairwiseMatrix cyclic(3, {0.5, 0.6, 0.4,  //
                                    0.4, 0.5, 0.6,  //
                                    0.6, 0.4, 0.5});
    CHECK_FALSE(is_sst(cyclic, false));
    CHECK_FALSE(is_sst(cyclic, true));
}
