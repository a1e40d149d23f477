#include "rcr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "rcr/breakdown.hpp"
#include "rcr/consensus.hpp"
#include "rcr/statistic.hpp"

namespace rcr {

namespace {

using io::json;
using io::SpecError;

constexpr const char* kCsvVersion = "v1";

std::string label_for(const json& source) {
    if (source.contains("kind") && source["kind"].is_string()) return source["kind"].get<std::string>();
    return "explicit";
}

DistributionEntry entry_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    json source = j;
    std::string label;
    if (source.contains("label")) {
        if (!source["label"].is_string()) throw SpecError(path + ".label", "expected a string");
        label = source["label"].get<std::string>();
        source.erase("label");
    }
    if (label.empty()) label = label_for(source);
    RankingDistribution p = io::distribution_from_json(source, path);
    return {std::move(label), std::move(source), std::move(p)};
}

json entry_to_json(const DistributionEntry& e) {
    json j = e.source;
    j["label"] = e.label;
    return j;
}

int runs_from(const json& j, const std::string& path) {
    if (!j.contains("runs")) return 5;
    if (!j["runs"].is_number_integer() || j["runs"].get<int>() < 1) throw SpecError(path + ".runs", "expected a positive integer");
    return j["runs"].get<int>();
}

std::uint64_t seed_from(const json& j, const std::string& path) {
    if (!j.contains("seed")) return 0;
    if (!j["seed"].is_number_unsigned()) throw SpecError(path + ".seed", "expected a non-negative integer");
    return j["seed"].get<std::uint64_t>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& path) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
            throw SpecError(path + "." + key, "unknown field");
}

Statistic statistic_from(const std::string& spec, const std::string& path) {
    try {
        return parse_statistic(spec);
    } catch (const std::invalid_argument& e) {
        throw SpecError(path, e.what());
    }
}

void write_header(std::ostream& out, const char* kind, const json& spec, std::uint64_t seed) {
    out << "# rcr " << kind << ' ' << kCsvVersion << '\n';
    out << "# config_hash=" << io::config_hash(spec) << " seed=" << seed << '\n';
}

}  // namespace

DistributionEntry make_distribution_entry(std::string label, io::json source) {
    RankingDistribution p = io::distribution_from_json(source);
    return {std::move(label), std::move(source), std::move(p)};
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t cell, std::uint64_t run) {
    // splitmix64 finalizer over a combined key
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (cell * 1000003ULL + run + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RepeatedAttack repeated_attack(const RankingDistribution& p, const Statistic& statistic, AttackConfig cfg, int runs,
                               std::uint64_t root_seed, std::uint64_t cell) {
    if (runs < 1) throw std::invalid_argument("repeated_attack: runs must be positive");
    std::vector<std::future<AttackResult>> jobs;
    for (int r = 0; r < runs; ++r) {
        cfg.seed = derive_seed(root_seed, cell, static_cast<std::uint64_t>(r));
        jobs.push_back(std::async(std::launch::async, [&p, &statistic, cfg] { return estimate_breakdown(p, statistic, cfg); }));
    }
    std::vector<AttackResult> results;
    for (auto& job : jobs) results.push_back(job.get());

    RepeatedAttack out;
    std::vector<std::size_t> order(results.size());
    for (std::size_t k = 0; k < results.size(); ++k) {
        order[k] = k;
        out.runs.push_back(results[k].eps_hat);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return results[a].eps_hat < results[b].eps_hat; });
    const std::size_t mid = order[(order.size() - 1) / 2];
    if (order.size() % 2 == 1) {
        out.eps_hat = results[mid].eps_hat;
    } else {
        out.eps_hat = 0.5 * (results[mid].eps_hat + results[order[order.size() / 2]].eps_hat);
    }
    out.achieved_deviation = results[mid].achieved_deviation;
    out.breakable = std::isfinite(out.eps_hat);
    return out;
}

CurveSpec curve_spec_from_json(const io::json& j, const std::string& path) {
    check_keys(j, {"distribution", "statistic", "deltas", "attack", "runs", "seed"}, path);
    CurveSpec spec;
    if (!j.contains("distribution")) throw SpecError(path, "missing field 'distribution'");
    spec.distribution = entry_from_json(j["distribution"], path + ".distribution");
    if (j.contains("statistic")) {
        if (!j["statistic"].is_string()) throw SpecError(path + ".statistic", "expected a string");
        spec.statistic = j["statistic"].get<std::string>();
    }
    statistic_from(spec.statistic, path + ".statistic");
    if (j.contains("deltas")) {
        const auto& d = j["deltas"];
        if (!d.is_array()) throw SpecError(path + ".deltas", "expected an array of numbers");
        for (std::size_t k = 0; k < d.size(); ++k) {
            const std::string at = path + ".deltas[" + std::to_string(k) + "]";
            if (!d[k].is_number()) throw SpecError(at, "expected a number");
            const double v = d[k].get<double>();
            if (!(v >= 0.0 && v <= 1.0)) throw SpecError(at, "delta must be in [0, 1]");
            spec.deltas.push_back(v);
        }
    }
    if (j.contains("attack")) spec.attack = io::attack_config_from_json(j["attack"], path + ".attack");
    spec.runs = runs_from(j, path);
    spec.seed = seed_from(j, path);
    if (spec.distribution.p.items() < 2 || spec.distribution.p.items() > 6)
        throw SpecError(path + ".distribution.n", "curves need 2 <= n <= 6");
    return spec;
}

io::json to_json(const CurveSpec& spec) {
    return json{{"distribution", entry_to_json(spec.distribution)},
                {"statistic", spec.statistic},
                {"deltas", spec.deltas},
                {"attack", io::to_json(spec.attack)},
                {"runs", spec.runs},
                {"seed", spec.seed}};
}

std::vector<CurveRow> run_breakdown_curve(const CurveSpec& spec) {
    const RankingDistribution& p = spec.distribution.p;
    const int n = p.items();
    std::vector<double> deltas = spec.deltas;
    if (deltas.empty()) {
        deltas = attainable_delta_grid(n);
        deltas.erase(deltas.begin());
    }
    const Statistic statistic = statistic_from(spec.statistic, "statistic");
    const BreakdownAnalyzer analyzer(p);

    std::vector<CurveRow> rows;
    for (std::size_t cell = 0; cell < deltas.size(); ++cell) {
        CurveRow row;
        row.delta = deltas[cell];
        const BoundResult upper = analyzer.epsilon_plus(row.delta);
        row.eps_upper = upper.value;
        row.condition_ok = upper.condition_ok;
        row.eps_lower = n <= 5 ? analyzer.epsilon_minus(row.delta).value : std::numeric_limits<double>::quiet_NaN();

        AttackConfig cfg = spec.attack;
        cfg.delta = row.delta;
        const RepeatedAttack attack = repeated_attack(p, statistic, cfg, spec.runs, spec.seed, cell);
        row.eps_hat = attack.eps_hat;
        row.achieved_deviation = attack.achieved_deviation;
        row.breakable = attack.breakable;
        rows.push_back(row);
    }
    return rows;
}

void write_curve_csv(std::ostream& out, const CurveSpec& spec, const std::vector<CurveRow>& rows) {
    write_header(out, "breakdown_curve", to_json(spec), spec.seed);
    out << "delta,eps_lower,eps_upper,eps_hat,achieved_deviation,condition_ok\n";
    for (const auto& r : rows) {
        out << io::format_double(r.delta) << ',' << io::format_double(r.eps_lower) << ','
            << io::format_double(r.eps_upper) << ',' << io::format_double(r.eps_hat) << ','
            << io::format_double(r.achieved_deviation) << ',' << (r.condition_ok ? 1 : 0) << '\n';
    }
}

TradeoffSpec tradeoff_spec_from_json(const io::json& j, const std::string& path) {
    check_keys(j, {"distributions", "statistics", "delta", "attack", "runs", "seed"}, path);
    TradeoffSpec spec;
    if (!j.contains("distributions") || !j["distributions"].is_array() || j["distributions"].empty())
        throw SpecError(path + ".distributions", "expected a non-empty array");
    for (std::size_t k = 0; k < j["distributions"].size(); ++k) {
        auto e = entry_from_json(j["distributions"][k], path + ".distributions[" + std::to_string(k) + "]");
        if (e.p.items() < 2 || e.p.items() > 6)
            throw SpecError(path + ".distributions[" + std::to_string(k) + "].n", "need 2 <= n <= 6");
        spec.distributions.push_back(std::move(e));
    }
    if (j.contains("statistics")) {
        const auto& s = j["statistics"];
        if (!s.is_array() || s.empty()) throw SpecError(path + ".statistics", "expected a non-empty array of strings");
        spec.statistics.clear();
        for (std::size_t k = 0; k < s.size(); ++k) {
            const std::string at = path + ".statistics[" + std::to_string(k) + "]";
            if (!s[k].is_string()) throw SpecError(at, "expected a string");
            spec.statistics.push_back(s[k].get<std::string>());
            statistic_from(spec.statistics.back(), at);
        }
    }
    if (j.contains("delta")) {
        if (!j["delta"].is_number()) throw SpecError(path + ".delta", "expected a number");
        spec.delta = j["delta"].get<double>();
        if (!(spec.delta >= 0.0 && spec.delta <= 1.0)) throw SpecError(path + ".delta", "delta must be in [0, 1]");
    }
    if (j.contains("attack")) spec.attack = io::attack_config_from_json(j["attack"], path + ".attack");
    spec.runs = runs_from(j, path);
    spec.seed = seed_from(j, path);
    return spec;
}

io::json to_json(const TradeoffSpec& spec) {
    json dists = json::array();
    for (const auto& e : spec.distributions) dists.push_back(entry_to_json(e));
    return json{{"distributions", dists},
                {"statistics", spec.statistics},
                {"delta", spec.delta},
                {"attack", io::to_json(spec.attack)},
                {"runs", spec.runs},
                {"seed", spec.seed}};
}

std::vector<TradeoffPoint> run_tradeoff(const TradeoffSpec& spec) {
    std::vector<TradeoffPoint> points;
    std::uint64_t cell = 0;
    for (const auto& e : spec.distributions) {
        for (const auto& name : spec.statistics) {
            const Statistic statistic = statistic_from(name, "statistic");
            AttackConfig cfg = spec.attack;
            cfg.delta = spec.delta;
            const RepeatedAttack attack = repeated_attack(e.p, statistic, cfg, spec.runs, spec.seed, cell++);
            points.push_back({e.label, statistic.label, loss(statistic(e.p), e.p), attack.eps_hat,
                              attack.achieved_deviation, attack.breakable});
        }
    }
    return points;
}

void write_tradeoff_csv(std::ostream& out, const TradeoffSpec& spec, const std::vector<TradeoffPoint>& points) {
    write_header(out, "tradeoff", to_json(spec), spec.seed);
    out << "distribution,statistic,loss,eps_hat,achieved_deviation\n";
    for (const auto& t : points) {
        out << t.distribution << ',' << t.statistic << ',' << io::format_double(t.loss) << ','
            << io::format_double(t.eps_hat) << ',' << io::format_double(t.achieved_deviation) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const AttackConfig& cfg, const AttackResult& result) {
    write_header(out, "attack_trace", io::to_json(cfg), cfg.seed);
    out << "step,tv,rho_hat,lambda\n";
    for (const auto& t : result.trace) {
        out << t.step << ',' << io::format_double(t.tv) << ',' << io::format_double(t.rho_hat) << ','
            << io::format_double(t.lambda) << '\n';
    }
}

}  // namespace rcr
