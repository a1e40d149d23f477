#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rcr/attack.hpp"
#include "rcr/bucket_order.hpp"
#include "rcr/permutation.hpp"
#include "rcr/ranking_dist.hpp"

namespace rcr::io {

using nlohmann::json;

/// Schema violation. `path` is a JSON pointer-ish location such as $.params.gap,
/// prefixed by file:line:column when the text itself fails to parse.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

json to_json(const Permutation& sigma);
json to_json(const BucketRanking& pi);
/// Always the explicit {n, probs} form.
json to_json(const RankingDistribution& p);
json to_json(const AttackConfig& cfg);

Permutation permutation_from_json(const json& j, const std::string& path = "$");
BucketRanking bucket_ranking_from_json(const json& j, const std::string& path = "$");

/// Accepts {n, probs:[...]}, {n, kind: uniform_ish|pointmass_ish|bucket_ish,
/// params:{center, mix, gap, swap_rank}} and {n, kind: plackett_luce,
/// params:{weights} | {seed}}.
RankingDistribution distribution_from_json(const json& j, const std::string& path = "$");

/// Missing fields keep their defaults; unknown fields are rejected.
AttackConfig attack_config_from_json(const json& j, const std::string& path = "$");

json parse_json(const std::string& text, const std::string& source = "<input>");
json load_json(const std::filesystem::path& file);
void save_json(const std::filesystem::path& file, const json& j);

RankingDistribution load_distribution(const std::filesystem::path& file);
void save_distribution(const std::filesystem::path& file, const RankingDistribution& p);

/// Relative paths are resolved against $RCR_OUTPUT_DIR when it is set.
std::filesystem::path output_path(const std::filesystem::path& name);

/// Shortest decimal text that parses back to the same double; "inf" for +infinity.
std::string format_double(double v);

/// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string config_hash(const json& j);

}  // namespace rcr::io
