// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rcr/attack.hpp"
#include "rcr/breakdown.hpp"
#include "rcr/bucket_order.hpp"
#include "rcr/consensus.hpp"
#include "rcr/experiment.hpp"
#include "rcr/merge.hpp"
#include "rcr/statistic.hpp"

using namespace rcr;
using io::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> positive_grid(int n) {
    auto g = attainable_delta_grid(n);
    g.erase(g.begin());
    return g;
}

Outcome hausdorff_equivalence() {
    const auto all = enumerate_bucket_orders(4);
    long pairs = 0, ns_bad = 0, half_bad = 0;
    for (const auto& a : all)
        for (const auto& b : all) {
            ++pairs;
            if (hausdorff_ns(a, b) != hausdorff_oracle(a, b)) ++ns_bad;
            const double s = hausdorff_half_by_sets(a, b);
            if (s != hausdorff_half_by_indicators(a, b) || s != hausdorff_half_by_profile(a, b)) ++half_bad;
        }
    return {pairs == 75 * 75 && ns_bad == 0 && half_bad == 0,
            std::to_string(pairs) + " pairs, ns/oracle mismatches " + std::to_string(ns_bad) +
                ", three-form mismatches " + std::to_string(half_bad)};
}

Outcome metric_sanity() {
    Outcome out;
    for (Metric m : {Metric::kendall, Metric::spearman_rho, Metric::spearman_footrule}) {
        long triangle = 0, symmetry = 0;
        for (int n = 2; n <= 4; ++n) {
            const DistanceTable d(m, n);
            for (PermIndex a = 0; a < d.perms(); ++a)
                for (PermIndex b = 0; b < d.perms(); ++b) {
                    if (d.units(a, b) != d.units(b, a)) ++symmetry;
                    for (PermIndex c = 0; c < d.perms(); ++c)
                        if (d.units(a, c) > d.units(a, b) + d.units(b, c)) ++triangle;
                }
        }
        if (triangle || symmetry) out.pass = false;
        out.detail += to_string(m) + ": triangle violations " + std::to_string(triangle) + ", symmetry " +
                      std::to_string(symmetry) + "; ";
    }
    long reversal = 0;
    for (int n = 2; n <= 4; ++n)
        for (const auto& nu : all_permutations(n))
            for (const auto& s : all_permutations(n))
                if (discordant_pairs(nu, reverse(s)) != n * (n - 1) / 2 - discordant_pairs(nu, s)) ++reversal;
    if (reversal) out.pass = false;
    out.detail += "kendall reversal violations " + std::to_string(reversal);
    return out;
}

Outcome sandwich_and_witness() {
    std::vector<std::pair<std::string, RankingDistribution>> cases;
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        cases.emplace_back("pl" + std::to_string(seed), plackett_luce(random_plackett_luce_weights(4, seed)));
    const auto id = Permutation::identity(4);
    cases.emplace_back("uniform_ish", make_named(NamedKind::uniform_ish, id));
    cases.emplace_back("pointmass_ish", make_named(NamedKind::pointmass_ish, id));
    cases.emplace_back("bucket_ish", make_named(NamedKind::bucket_ish, id));

    long checked = 0, sandwich_bad = 0, witness_checked = 0, witness_bad = 0, skipped = 0;
    for (const auto& [label, p] : cases) {
        const BreakdownAnalyzer a(p);
        const auto exact_p = to_exact(p);
        const Permutation center = a.kemeny_center();
        const PermIndex c = index_of(center);
        for (double d : positive_grid(4)) {
            const auto up = a.epsilon_plus(d);
            if (!up.condition_ok) continue;
            ++checked;
            if (!(a.epsilon_minus(d).exact <= up.exact)) ++sandwich_bad;
            const Rational budget = up.exact + Rational(1, 1000000000);
            if (budget > 2 * exact_p[c]) {
                ++skipped;
                continue;
            }
            ++witness_checked;
            const auto q = reverse_attack_exact(p, budget);
            for (PermIndex k : exact_kemeny_argmin(q, 4)) {
                if (kendall_tau(center, from_index(k, 4)) < d - 1e-12) {
                    ++witness_bad;
                    break;
                }
            }
        }
    }
    return {sandwich_bad == 0 && witness_bad == 0 && checked > 0,
            std::to_string(checked) + " (p, delta) cells with condition_ok, sandwich violations " +
                std::to_string(sandwich_bad) + ", witnesses " + std::to_string(witness_checked) + " checked / " +
                std::to_string(witness_bad) + " failed / " + std::to_string(skipped) + " beyond 2p(center)"};
}

Outcome analytic_endpoints() {
    long bad = 0, cells = 0;
    for (int n = 2; n <= 6; ++n) {
        const BreakdownAnalyzer u(RankingDistribution::uniform(n));
        const BreakdownAnalyzer pm(RankingDistribution::point_mass(Permutation::identity(n)));
        for (double d : positive_grid(n)) {
            cells += 2;
            if (u.epsilon_plus(d).exact != 0) ++bad;
            if (pm.epsilon_plus(d).exact != 1) ++bad;
        }
    }
    return {bad == 0, std::to_string(cells) + " cells over n = 2..6, mismatches " + std::to_string(bad)};
}

CurveSpec fig3_spec() {
    CurveSpec spec;
    spec.distribution = make_distribution_entry("bucket_ish", json{{"n", 4}, {"kind", "bucket_ish"}});
    spec.statistic = "kemeny";
    spec.deltas = {1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0};
    spec.runs = 5;
    spec.seed = 0;
    return spec;
}

Outcome attack_tracks_theory() {
    const auto spec = fig3_spec();
    Outcome out;
    for (const auto& r : run_breakdown_curve(spec)) {
        out.detail += "d=" + fmt("%.3f", r.delta) + " eps+=" + fmt("%.4f", r.eps_upper) + " hat=" + fmt("%.4f", r.eps_hat) +
                      " dev=" + fmt("%.3f", r.achieved_deviation) + "; ";
        if (r.condition_ok && !(std::abs(r.eps_hat - r.eps_upper) <= 0.1)) out.pass = false;
        if (r.breakable && r.achieved_deviation < r.delta - 1e-9) out.pass = false;
    }
    return out;
}

Outcome merge_behavior() {
    const auto P = testing::fig1_matrix();
    const auto id = Permutation::identity(4);
    std::vector<BucketRanking> down, naive;
    for (double t : testing::fig1_thresholds()) {
        down.push_back(downward_merge(id, P, t));
        naive.push_back(naive_merge(id, P, t));
    }
    int distinct = 0;
    for (std::size_t i = 0; i < down.size(); ++i) {
        bool fresh = true;
        for (std::size_t j = 0; j < i; ++j) fresh = fresh && !(down[i] == down[j]);
        distinct += fresh;
    }
    bool nested = true;
    for (std::size_t i = 1; i < naive.size(); ++i) nested = nested && is_stricter(naive[i - 1], naive[i]);

    const auto p = make_named(NamedKind::bucket_ish, id);
    const auto T = downward_merge_statistic(0.5);
    AttackConfig cfg;
    cfg.delta = 1.0 / 6.0;
    const auto r = estimate_breakdown(p, T, cfg);
    const bool single = T(p) == BucketRanking::single_bucket(4);

    std::string detail = "downward:";
    for (const auto& b : down) detail += " " + b.to_string();
    detail += " (" + std::to_string(distinct) + " distinct); naive:";
    for (const auto& b : naive) detail += " " + b.to_string();
    detail += nested ? " (nested)" : " (not nested)";
    detail += "; theta=0.5 ";
    detail += single ? "single bucket, " : "not a single bucket, ";
    detail += r.breakable ? "breakable" : "unbreakable";
    return {distinct == 4 && nested && single && !r.breakable, detail};
}

TradeoffSpec fig4_spec() {
    TradeoffSpec spec;
    spec.distributions = {
        make_distribution_entry("bucket_gap0.1", json{{"n", 4}, {"kind", "bucket_ish"}, {"params", {{"gap", 0.1}}}}),
        make_distribution_entry("bucket_gap0.01", json{{"n", 4}, {"kind", "bucket_ish"}, {"params", {{"gap", 0.01}}}}),
        make_distribution_entry("pointmass_ish", json{{"n", 4}, {"kind", "pointmass_ish"}}),
        make_distribution_entry("uniform_ish", json{{"n", 4}, {"kind", "uniform_ish"}}),
    };
    spec.statistics = {"kemeny", "downward_merge:0.05"};
    spec.delta = 1.0 / 6.0;
    spec.runs = 5;
    spec.seed = 0;
    return spec;
}

Outcome tradeoff() {
    const auto spec = fig4_spec();
    const auto pts = run_tradeoff(spec);
    Outcome out;
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        const auto& kem = pts[k];
        const auto& dm = pts[k + 1];
        const double gain = dm.eps_hat - kem.eps_hat;
        const double extra_loss = dm.loss - kem.loss;
        bool ok;
        if (kem.distribution.rfind("bucket", 0) == 0) {
            ok = gain >= 0.1 && extra_loss <= 0.05;
        } else {
            ok = std::abs(extra_loss) <= 0.02 && (gain == 0.0 || std::abs(gain) <= 0.02);
        }
        out.pass = out.pass && ok;
        out.detail += kem.distribution + ": kemeny (loss " + fmt("%.4f", kem.loss) + ", eps " + fmt("%.4f", kem.eps_hat) +
                      ") downward (loss " + fmt("%.4f", dm.loss) + ", eps " + fmt("%.4f", dm.eps_hat) + ")" +
                      (ok ? "" : " <- off") + "; ";
    }
    return out;
}

Outcome sst_fast_path() {
    int checked = 0, bad = 0;
    for (std::uint64_t seed = 1000; checked < 100; ++seed) {
        const int n = 3 + static_cast<int>(seed % 3);
        const auto p = plackett_luce(random_plackett_luce_weights(n, seed));
        const auto P = pairwise_matrix(p);
        if (!is_sst(P, true)) continue;
        ++checked;
        if (!(kemeny_median_sst(P) == metric_median(p, Metric::kendall).median)) ++bad;
    }
    return {bad == 0, std::to_string(checked) + " instances, mismatches " + std::to_string(bad)};
}

Outcome determinism() {
    auto curve_csv = [] {
        const auto spec = fig3_spec();
        std::ostringstream os;
        write_curve_csv(os, spec, run_breakdown_curve(spec));
        return os.str();
    };
    auto tradeoff_csv = [] {
        auto spec = fig4_spec();
        spec.runs = 3;
        spec.attack.steps = 500;
        std::ostringstream os;
        write_tradeoff_csv(os, spec, run_tradeoff(spec));
        return os.str();
    };
    const bool curve_same = curve_csv() == curve_csv();
    const bool tradeoff_same = tradeoff_csv() == tradeoff_csv();
    return {curve_same && tradeoff_same, std::string("curve CSV ") + (curve_same ? "identical" : "differs") +
                                             ", tradeoff CSV " + (tradeoff_same ? "identical" : "differs")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "Hausdorff oracle equivalence, n=4", 10, hausdorff_equivalence},
        {"AC2", "metric sanity, n<=4", 5, metric_sanity},
        {"AC3", "bound sandwich and reverse-mass witness", 60, sandwich_and_witness},
        {"AC4", "analytic endpoints of the upper bound", 60, analytic_endpoints},
        {"AC5", "empirical attack tracks the upper bound", 600, attack_tracks_theory},
        {"AC6", "merge behavior on the four-item example", 5, merge_behavior},
        {"AC7", "loss / robustness tradeoff", 900, tradeoff},
        {"AC8", "SST fast path equals brute force", 30, sst_fast_path},
        {"AC9", "byte-identical reruns", 900, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs <= c.limit_s;
        failures += !pass;
        std::printf("%s %s  %s [%.2f s / limit %.0f s] %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs, c.limit_s,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
