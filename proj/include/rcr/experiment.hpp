#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rcr/attack.hpp"
#include "rcr/io.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr {

struct DistributionEntry {
    std::string label;
    io::json source;  ///< as accepted by io::distribution_from_json
    RankingDistribution p;
};

DistributionEntry make_distribution_entry(std::string label, io::json source);

/// Per-run seed derived from the root seed, the cell index and the run index.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t cell, std::uint64_t run);

/// Median over `runs` independently seeded attacks. Unbreakable runs count as +inf.
struct RepeatedAttack {
    double eps_hat = 0.0;
    double achieved_deviation = 0.0;  ///< of the run realizing the median
    bool breakable = false;
    std::vector<double> runs;
};

RepeatedAttack repeated_attack(const RankingDistribution& p, const Statistic& statistic, AttackConfig cfg, int runs,
                               std::uint64_t root_seed, std::uint64_t cell);

struct CurveSpec {
    DistributionEntry distribution;
    std::string statistic = "kemeny";
    std::vector<double> deltas;  ///< empty: every attainable Kendall value
    AttackConfig attack;
    int runs = 5;
    std::uint64_t seed = 0;
};

struct CurveRow {
    double delta = 0.0;
    double eps_lower = 0.0;  ///< Kemeny lower bound, nan when n > 5
    double eps_upper = 0.0;  ///< Kemeny upper bound
    double eps_hat = 0.0;
    double achieved_deviation = 0.0;
    bool condition_ok = false;
    bool breakable = false;
};

CurveSpec curve_spec_from_json(const io::json& j, const std::string& path = "$");
io::json to_json(const CurveSpec& spec);
std::vector<CurveRow> run_breakdown_curve(const CurveSpec& spec);
void write_curve_csv(std::ostream& out, const CurveSpec& spec, const std::vector<CurveRow>& rows);

struct TradeoffSpec {
    std::vector<DistributionEntry> distributions;
    std::vector<std::string> statistics{"kemeny", "downward_merge:0.05"};
    double delta = 1.0 / 6.0;
    AttackConfig attack;
    int runs = 5;
    std::uint64_t seed = 0;
};

struct TradeoffPoint {
    std::string distribution;
    std::string statistic;
    double loss = 0.0;
    double eps_hat = 0.0;
    double achieved_deviation = 0.0;
    bool breakable = false;
};

TradeoffSpec tradeoff_spec_from_json(const io::json& j, const std::string& path = "$");
io::json to_json(const TradeoffSpec& spec);
std::vector<TradeoffPoint> run_tradeoff(const TradeoffSpec& spec);
void write_tradeoff_csv(std::ostream& out, const TradeoffSpec& spec, const std::vector<TradeoffPoint>& points);

void write_trace_csv(std::ostream& out, const AttackConfig& cfg, const AttackResult& result);

}  // namespace rcr
