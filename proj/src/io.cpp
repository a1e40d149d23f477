#include "rcr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace rcr::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw SpecError(path, message); }

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) fail(path + "." + key, "unknown field");
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::vector<int> as_int_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(static_cast<int>(as_integer(j[k], path + "[" + std::to_string(k) + "]")));
    return out;
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_number(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

// Runs a constructor and reports its invalid_argument under `path`.
template <class F>
auto validated(const std::string& path, F&& build) {
    try {
        return build();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    } catch (const std::out_of_range& e) {
        fail(path, e.what());
    }
}

}  // namespace

SpecError::SpecError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

json to_json(const Permutation& sigma) { return sigma.ranks(); }

json to_json(const BucketRanking& pi) { return pi.buckets(); }

json to_json(const RankingDistribution& p) { return json{{"n", p.items()}, {"probs", p.probs()}}; }

json to_json(const AttackConfig& cfg) {
    return json{{"delta", cfg.delta},
                {"gamma", cfg.gamma},
                {"gamma_initial", cfg.gamma_initial},
                {"gamma_rate", cfg.gamma_rate},
                {"averaging_start", cfg.averaging_start},
                {"samples", cfg.samples},
                {"steps", cfg.steps},
                {"step_q", cfg.step_q},
                {"step_lambda", cfg.step_lambda},
                {"lambda0", cfg.lambda0},
                {"logit_floor", cfg.logit_floor},
                {"seed", cfg.seed},
                {"variant", to_string(cfg.variant)},
                {"tolerance", cfg.tolerance},
                {"line_search", cfg.line_search}};
}

Permutation permutation_from_json(const json& j, const std::string& path) {
    auto ranks = as_int_array(j, path);
    return validated(path, [&] { return Permutation(std::move(ranks)); });
}

BucketRanking bucket_ranking_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of buckets");
    std::vector<std::vector<int>> buckets;
    for (std::size_t k = 0; k < j.size(); ++k) buckets.push_back(as_int_array(j[k], path + "[" + std::to_string(k) + "]"));
    return validated(path, [&] { return BucketRanking(std::move(buckets)); });
}

RankingDistribution distribution_from_json(const json& j, const std::string& path) {
    const auto n64 = as_integer(field(j, "n", path), path + ".n");
    if (n64 < 1 || n64 > 8) fail(path + ".n", "n must be in [1, 8]");
    const int n = static_cast<int>(n64);

    if (j.contains("probs")) {
        check_keys(j, {"n", "probs"}, path);
        auto probs = as_number_array(j["probs"], path + ".probs");
        if (probs.size() != factorial(n))
            fail(path + ".probs", "expected " + std::to_string(factorial(n)) + " entries, got " + std::to_string(probs.size()));
        return validated(path + ".probs", [&] { return RankingDistribution(n, std::move(probs)); });
    }

    check_keys(j, {"n", "kind", "params"}, path);
    const json& kind_json = field(j, "kind", path);
    if (!kind_json.is_string()) fail(path + ".kind", "expected a string");
    const auto kind = kind_json.get<std::string>();
    const json params = j.value("params", json::object());
    const std::string ppath = path + ".params";

    if (kind == "uniform") {
        check_keys(params, {}, ppath);
        return RankingDistribution::uniform(n);
    }
    if (kind == "plackett_luce") {
        check_keys(params, {"weights", "seed"}, ppath);
        if (params.contains("weights") == params.contains("seed"))
            fail(ppath, "plackett_luce needs exactly one of 'weights' or 'seed'");
        if (params.contains("seed")) {
            const auto seed = as_integer(params["seed"], ppath + ".seed");
            if (seed < 0) fail(ppath + ".seed", "seed must be non-negative");
            return plackett_luce(random_plackett_luce_weights(n, static_cast<std::uint64_t>(seed)));
        }
        auto weights = as_number_array(params["weights"], ppath + ".weights");
        if (weights.size() != static_cast<std::size_t>(n)) fail(ppath + ".weights", "expected n weights");
        return validated(ppath + ".weights", [&] { return plackett_luce(weights); });
    }

    const NamedKind named = validated(path + ".kind", [&] { return parse_named_kind(kind); });
    check_keys(params, {"center", "mix", "gap", "swap_rank"}, ppath);
    Permutation center = Permutation::identity(n);
    if (params.contains("center")) {
        center = permutation_from_json(params["center"], ppath + ".center");
        if (center.size() != n) fail(ppath + ".center", "center must have n items");
    }
    const double mix = params.contains("mix") ? as_number(params["mix"], ppath + ".mix") : kDefaultMix;
    const double gap = params.contains("gap") ? as_number(params["gap"], ppath + ".gap") : 0.1;
    const int swap_rank =
        params.contains("swap_rank") ? static_cast<int>(as_integer(params["swap_rank"], ppath + ".swap_rank")) : 1;
    return validated(ppath, [&] { return make_named(named, center, mix, gap, swap_rank); });
}

AttackConfig attack_config_from_json(const json& j, const std::string& path) {
    check_keys(j,
               {"delta", "gamma", "gamma_initial", "gamma_rate", "averaging_start", "samples", "steps", "step_q",
                "step_lambda", "lambda0", "logit_floor", "seed", "variant", "tolerance", "line_search"},
               path);
    AttackConfig cfg;
    auto num = [&](const char* key, double& out) {
        if (j.contains(key)) out = as_number(j[key], path + "." + key);
    };
    auto integer = [&](const char* key, int& out) {
        if (j.contains(key)) out = static_cast<int>(as_integer(j[key], path + "." + key));
    };
    num("delta", cfg.delta);
    num("gamma", cfg.gamma);
    num("gamma_initial", cfg.gamma_initial);
    num("gamma_rate", cfg.gamma_rate);
    num("averaging_start", cfg.averaging_start);
    integer("samples", cfg.samples);
    integer("steps", cfg.steps);
    num("step_q", cfg.step_q);
    num("step_lambda", cfg.step_lambda);
    num("lambda0", cfg.lambda0);
    num("logit_floor", cfg.logit_floor);
    num("tolerance", cfg.tolerance);
    integer("line_search", cfg.line_search);
    if (j.contains("seed")) {
        const auto seed = as_integer(j["seed"], path + ".seed");
        if (seed < 0) fail(path + ".seed", "seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(seed);
    }
    if (j.contains("variant")) {
        if (!j["variant"].is_string()) fail(path + ".variant", "expected a string");
        cfg.variant = validated(path + ".variant", [&] { return parse_hausdorff_variant(j["variant"].get<std::string>()); });
    }
    validated(path, [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SpecError(source + ":" + std::to_string(line) + ":" + std::to_string(column), "malformed JSON");
    }
}

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_json(text.str(), file.string());
}

void save_json(const std::filesystem::path& file, const json& j) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << j.dump(2) << '\n';
}

RankingDistribution load_distribution(const std::filesystem::path& file) {
    return distribution_from_json(load_json(file), file.string());
}

void save_distribution(const std::filesystem::path& file, const RankingDistribution& p) { save_json(file, to_json(p)); }

std::filesystem::path output_path(const std::filesystem::path& name) {
    const char* dir = std::getenv("RCR_OUTPUT_DIR");
    if (name.is_absolute() || dir == nullptr || *dir == '\0') return name;
    return std::filesystem::path(dir) / name;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string config_hash(const json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rcr::io
