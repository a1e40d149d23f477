// rcr: command-line front end for the robust consensus ranking toolkit.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rcr/attack.hpp"
#include "rcr/breakdown.hpp"
#include "rcr/consensus.hpp"
#include "rcr/experiment.hpp"
#include "rcr/io.hpp"
#include "rcr/merge.hpp"
#include "rcr/statistic.hpp"

using namespace rcr;
using io::json;

namespace {

struct DistributionFlags {
    std::string file;
    std::string kind = "bucket_ish";
    int n = 4;
    double mix = kDefaultMix;
    double gap = 0.1;
    int swap_rank = 1;
    std::string center;
    std::optional<std::uint64_t> pl_seed;

    void attach(CLI::App* app) {
        app->add_option("--dist", file, "distribution JSON file ({n, probs} or {n, kind, params})");
        app->add_option("--kind", kind, "uniform | uniform_ish | pointmass_ish | bucket_ish | plackett_luce");
        app->add_option("-n,--n", n, "number of items");
        app->add_option("--mix", mix, "weight of the structured part for *_ish kinds");
        app->add_option("--gap", gap, "probability gap for bucket_ish");
        app->add_option("--swap-rank", swap_rank, "rank of the adjacent transposition for bucket_ish");
        app->add_option("--center", center, "center permutation as JSON ranks, e.g. [2,1,3,4]");
        app->add_option("--pl-seed", pl_seed, "seed for random Plackett-Luce weights");
    }

    json source() const {
        if (!file.empty()) return io::load_json(file);
        json j{{"n", n}, {"kind", kind}};
        if (kind == "plackett_luce") {
            j["params"] = json{{"seed", pl_seed.value_or(0)}};
        } else if (kind != "uniform") {
            json params{{"mix", mix}, {"gap", gap}, {"swap_rank", swap_rank}};
            if (!center.empty()) params["center"] = io::parse_json(center, "--center");
            j["params"] = params;
        }
        return j;
    }

    DistributionEntry load() const {
        json j = source();
        std::string label = j.contains("label") ? j["label"].get<std::string>() : (j.contains("kind") ? j["kind"].get<std::string>() : "explicit");
        j.erase("label");
        return make_distribution_entry(label, j);
    }
};

struct AttackFlags {
    AttackConfig cfg;
    std::string variant = "ns";

    void attach(CLI::App* app, bool with_delta) {
        if (with_delta) app->add_option("--delta", cfg.delta, "target deviation");
        app->add_option("--gamma", cfg.gamma, "smoothing scale floor");
        app->add_option("--gamma-initial", cfg.gamma_initial, "smoothing scale at the first step");
        app->add_option("--steps", cfg.steps, "descent/ascent steps");
        app->add_option("--samples", cfg.samples, "Monte-Carlo samples per step");
        app->add_option("--step-q", cfg.step_q, "descent step size");
        app->add_option("--step-lambda", cfg.step_lambda, "ascent step size");
        app->add_option("--seed", cfg.seed, "random seed");
        app->add_option("--variant", variant, "Hausdorff variant: ns | half");
    }

    AttackConfig resolved() const {
        AttackConfig out = cfg;
        out.variant = parse_hausdorff_variant(variant);
        out.validate();
        return out;
    }
};

json bound_json(const BoundResult& b) {
    json j{{"breakable", b.breakable}, {"value", b.breakable ? json(b.value) : json("unbreakable")},
           {"exact", b.exact.str()}, {"condition_ok", b.condition_ok}, {"center", io::to_json(b.center)}};
    if (b.target) j["target"] = io::to_json(*b.target);
    return j;
}

void write_artifact(const std::string& name, const std::function<void(std::ostream&)>& writer) {
    if (name == "-") {
        writer(std::cout);
        return;
    }
    const auto path = io::output_path(name);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
    std::cerr << "wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust consensus ranking: medians, breakdown bounds, attacks and merge statistics"};
    app.require_subcommand(1);

    // median
    auto* median_cmd = app.add_subcommand("median", "ranking median of a distribution");
    DistributionFlags median_dist;
    median_dist.attach(median_cmd);
    std::string median_metric = "kendall";
    bool use_borda = false;
    median_cmd->add_option("--metric", median_metric, "kendall | spearman_rho | spearman_footrule");
    median_cmd->add_flag("--borda", use_borda, "Borda order instead of the exact median");

    // distance
    auto* distance_cmd = app.add_subcommand("distance", "distance between two rankings");
    std::string da, db, distance_metric = "kendall", hausdorff_variant;
    distance_cmd->add_option("--a", da, "first ranking as JSON")->required();
    distance_cmd->add_option("--b", db, "second ranking as JSON")->required();
    distance_cmd->add_option("--metric", distance_metric, "kendall | spearman_rho | spearman_footrule");
    distance_cmd->add_option("--hausdorff", hausdorff_variant, "ns | half: read bucket rankings ([[1],[2,3]])");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "exact breakdown bounds of the Kemeny median");
    DistributionFlags bounds_dist;
    bounds_dist.attach(bounds_cmd);
    std::vector<double> bounds_deltas;
    bounds_cmd->add_option("--delta", bounds_deltas, "deviation thresholds (default: attainable grid)");

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "empirical breakdown by the smoothed saddle-point attack");
    DistributionFlags attack_dist;
    attack_dist.attach(attack_cmd);
    AttackFlags attack_flags;
    attack_flags.attach(attack_cmd, true);
    std::string attack_stat = "kemeny", trace_file;
    attack_cmd->add_option("--statistic", attack_stat, "kemeny | borda | naive_merge:T | downward_merge:T | constant_bucket");
    attack_cmd->add_option("--trace", trace_file, "write the per-step trace CSV");

    // merge
    auto* merge_cmd = app.add_subcommand("merge", "bucket ranking from a merge statistic");
    DistributionFlags merge_dist;
    merge_dist.attach(merge_cmd);
    double merge_theta = 0.05;
    std::string merge_algorithm = "downward", merge_median;
    merge_cmd->add_option("--theta", merge_theta, "deviation threshold in [0, 0.5]");
    merge_cmd->add_option("--algorithm", merge_algorithm, "naive | downward");
    merge_cmd->add_option("--median", merge_median, "plug-in permutation as JSON ranks (default: Kemeny)");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "breakdown curve CSV");
    DistributionFlags curve_dist;
    curve_dist.attach(curve_cmd);
    AttackFlags curve_flags;
    curve_flags.attach(curve_cmd, false);
    std::string curve_config, curve_out = "curve.csv", curve_stat = "kemeny";
    std::vector<double> curve_deltas;
    int curve_runs = 5;
    curve_cmd->add_option("--config", curve_config, "experiment JSON; other flags are ignored");
    curve_cmd->add_option("--statistic", curve_stat, "statistic under attack");
    curve_cmd->add_option("--delta", curve_deltas, "delta grid (default: attainable grid)");
    curve_cmd->add_option("--runs", curve_runs, "seeds per grid point");
    curve_cmd->add_option("-o,--out", curve_out, "output CSV, '-' for stdout");

    // tradeoff
    auto* tradeoff_cmd = app.add_subcommand("tradeoff", "loss / robustness tradeoff CSV");
    AttackFlags tradeoff_flags;
    tradeoff_flags.attach(tradeoff_cmd, false);
    std::string tradeoff_config, tradeoff_out = "tradeoff.csv";
    double tradeoff_delta = 1.0 / 6.0, tradeoff_theta = 0.05;
    int tradeoff_runs = 5, tradeoff_n = 4;
    tradeoff_cmd->add_option("--config", tradeoff_config, "experiment JSON; other flags are ignored");
    tradeoff_cmd->add_option("--delta", tradeoff_delta, "fixed deviation threshold");
    tradeoff_cmd->add_option("--theta", tradeoff_theta, "Downward Merge threshold");
    tradeoff_cmd->add_option("-n,--n", tradeoff_n, "number of items for the default families");
    tradeoff_cmd->add_option("--runs", tradeoff_runs, "seeds per point");
    tradeoff_cmd->add_option("-o,--out", tradeoff_out, "output CSV, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (median_cmd->parsed()) {
            const auto entry = median_dist.load();
            json out;
            if (use_borda) {
                out["median"] = io::to_json(borda(entry.p));
            } else {
                const auto result = metric_median(entry.p, parse_metric(median_metric));
                out["median"] = io::to_json(result.median);
                out["objective"] = result.objective;
                json argmin = json::array();
                for (auto k : result.argmin_set) argmin.push_back(io::to_json(from_index(k, entry.p.items())));
                out["argmin_set"] = argmin;
            }
            std::cout << out.dump(2) << '\n';
        } else if (distance_cmd->parsed()) {
            const json a = io::parse_json(da, "--a"), b = io::parse_json(db, "--b");
            double d = 0.0;
            if (!hausdorff_variant.empty()) {
                d = hausdorff(parse_hausdorff_variant(hausdorff_variant), io::bucket_ranking_from_json(a, "--a"),
                              io::bucket_ranking_from_json(b, "--b"));
            } else {
                d = distance(parse_metric(distance_metric), io::permutation_from_json(a, "--a"),
                             io::permutation_from_json(b, "--b"));
            }
            std::cout << io::format_double(d) << '\n';
        } else if (bounds_cmd->parsed()) {
            const auto entry = bounds_dist.load();
            if (bounds_deltas.empty()) {
                bounds_deltas = attainable_delta_grid(entry.p.items());
                bounds_deltas.erase(bounds_deltas.begin());
            }
            const BreakdownAnalyzer analyzer(entry.p);
            json rows = json::array();
            for (double delta : bounds_deltas) {
                json row{{"delta", delta}, {"upper", bound_json(analyzer.epsilon_plus(delta))}};
                if (entry.p.items() <= 5) row["lower"] = bound_json(analyzer.epsilon_minus(delta));
                rows.push_back(row);
            }
            std::cout << rows.dump(2) << '\n';
        } else if (attack_cmd->parsed()) {
            const auto entry = attack_dist.load();
            const AttackConfig cfg = attack_flags.resolved();
            const Statistic statistic = parse_statistic(attack_stat);
            const AttackResult r = estimate_breakdown(entry.p, statistic, cfg);
            json out{{"statistic", statistic.label},
                     {"delta", cfg.delta},
                     {"breakable", r.breakable},
                     {"eps_hat", r.breakable ? json(r.eps_hat) : json("unbreakable")},
                     {"tv", r.breakable ? json(r.tv) : json("unbreakable")},
                     {"eps_hat_raw", r.eps_hat_raw},
                     {"achieved_deviation", r.achieved_deviation},
                     {"lambda_final", r.lambda_final},
                     {"diverged", r.diverged}};
            std::cout << out.dump(2) << '\n';
            if (!trace_file.empty()) write_artifact(trace_file, [&](std::ostream& os) { write_trace_csv(os, cfg, r); });
        } else if (merge_cmd->parsed()) {
            const auto entry = merge_dist.load();
            const Permutation median = merge_median.empty()
                                           ? metric_median(entry.p, Metric::kendall).median
                                           : io::permutation_from_json(io::parse_json(merge_median, "--median"), "--median");
            const PairwiseMatrix P = pairwise_matrix(entry.p);
            BucketRanking out;
            if (merge_algorithm == "naive") {
                out = naive_merge(median, P, merge_theta);
            } else if (merge_algorithm == "downward") {
                out = downward_merge(median, P, merge_theta);
            } else {
                throw std::invalid_argument("unknown merge algorithm '" + merge_algorithm + "'");
            }
            std::cout << io::to_json(out).dump() << '\n';
        } else if (curve_cmd->parsed()) {
            CurveSpec spec;
            if (!curve_config.empty()) {
                spec = curve_spec_from_json(io::load_json(curve_config), curve_config);
            } else {
                spec.distribution = curve_dist.load();
                spec.statistic = curve_stat;
                spec.deltas = curve_deltas;
                spec.attack = curve_flags.resolved();
                spec.runs = curve_runs;
                spec.seed = curve_flags.cfg.seed;
                spec = curve_spec_from_json(to_json(spec));
            }
            const auto rows = run_breakdown_curve(spec);
            write_artifact(curve_out, [&](std::ostream& os) { write_curve_csv(os, spec, rows); });
        } else if (tradeoff_cmd->parsed()) {
            TradeoffSpec spec;
            if (!tradeoff_config.empty()) {
                spec = tradeoff_spec_from_json(io::load_json(tradeoff_config), tradeoff_config);
            } else {
                const int n = tradeoff_n;
                spec.distributions = {
                    make_distribution_entry("uniform_ish", json{{"n", n}, {"kind", "uniform_ish"}}),
                    make_distribution_entry("pointmass_ish", json{{"n", n}, {"kind", "pointmass_ish"}}),
                    make_distribution_entry("bucket_ish_gap0.1",
                                            json{{"n", n}, {"kind", "bucket_ish"}, {"params", {{"gap", 0.1}}}}),
                    make_distribution_entry("bucket_ish_gap0.01",
                                            json{{"n", n}, {"kind", "bucket_ish"}, {"params", {{"gap", 0.01}}}}),
                };
                spec.statistics = {"kemeny", "downward_merge:" + io::format_double(tradeoff_theta)};
                spec.delta = tradeoff_delta;
                spec.attack = tradeoff_flags.resolved();
                spec.runs = tradeoff_runs;
                spec.seed = tradeoff_flags.cfg.seed;
            }
            const auto points = run_tradeoff(spec);
            write_artifact(tradeoff_out, [&](std::ostream& os) { write_tradeoff_csv(os, spec, points); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
