#include "rcr/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace rcr {

namespace {

struct Candidate {
    RankingDistribution q;
    double deviation = 0.0;
    double l1 = 0.0;
};

double l1_distance(const RankingDistribution& p, const RankingDistribution& q) {
    return 2.0 * total_variation(p, q);
}

/// Closest point to p on the segment [p, q] whose exact deviation reaches
/// delta: a coarse scan outward from p, then bisection between the last miss
/// and the first hit. q itself must already reach delta.
Candidate shrink_toward(const RankingDistribution& p, const RankingDistribution& q, double q_deviation,
                        const BucketRanking& reference, const Statistic& statistic, const AttackConfig& cfg) {
    const double target = cfg.delta - cfg.tolerance;
    auto evaluate = [&](double alpha) {
        RankingDistribution c = mixture(q, p, alpha);
        const double dev = deviation_exact(reference, c, statistic, cfg.variant);
        return std::pair{std::move(c), dev};
    };
    Candidate best{q, q_deviation, 0.0};
    if (cfg.line_search > 0) {
        double miss = 0.0, hit = 1.0;
        for (int k = 1; k < cfg.line_search; ++k) {
            const double alpha = static_cast<double>(k) / cfg.line_search;
            auto [c, dev] = evaluate(alpha);
            if (dev >= target) {
                best = {std::move(c), dev, 0.0};
                hit = alpha;
                break;
            }
            miss = alpha;
        }
        for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (miss + hit);
            auto [c, dev] = evaluate(mid);
            if (dev >= target) {
                best = {std::move(c), dev, 0.0};
                hit = mid;
            } else {
                miss = mid;
            }
        }
    }
    best.l1 = l1_distance(p, best.q);
    return best;
}

}  // namespace

void AttackConfig::validate() const {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("attack: delta must be in [0, 1]");
    if (!(gamma > 0.0) || !(gamma_initial > 0.0)) throw std::invalid_argument("attack: gamma must be positive");
    if (!(gamma_rate >= 1.0)) throw std::invalid_argument("attack: gamma_rate must be >= 1");
    if (samples < 2) throw std::invalid_argument("attack: need at least 2 Monte-Carlo samples");
    if (steps < 1) throw std::invalid_argument("attack: steps must be positive");
    if (!(step_q > 0.0) || !(step_lambda > 0.0)) throw std::invalid_argument("attack: step sizes must be positive");
    if (!(lambda0 >= 0.0)) throw std::invalid_argument("attack: initial multiplier must be non-negative");
    if (!(logit_floor > 0.0)) throw std::invalid_argument("attack: logit floor must be positive");
    if (!(averaging_start >= 0.0 && averaging_start < 1.0)) {
        throw std::invalid_argument("attack: averaging_start must be in [0, 1)");
    }
    if (line_search < 0) throw std::invalid_argument("attack: line_search must be non-negative");
}

std::vector<double> softmax(std::span<const double> logits) {
    const double top = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) sum += out[k] = std::exp(logits[k] - top);
    for (double& v : out) v /= sum;
    return out;
}

double deviation_exact(const BucketRanking& reference, const RankingDistribution& q, const Statistic& statistic,
                       HausdorffVariant variant) {
    if (reference.size() != q.items()) throw std::invalid_argument("deviation_exact: mismatched n");
    return hausdorff(variant, reference, statistic(q));
}

SmoothedEstimate rho_smoothed(const BucketRanking& reference, std::span<const double> logits,
                              const Statistic& statistic, const AttackConfig& cfg, std::mt19937_64& rng,
                              const SampleVisitor& visit) {
    if (cfg.samples < 2) throw std::invalid_argument("rho_smoothed: need at least 2 samples");
    for (double v : logits)
        if (!std::isfinite(v)) throw std::invalid_argument("rho_smoothed: non-finite logits");
    const std::size_t dim = logits.size();
    const int n = reference.size();
    const int pairs = cfg.samples / 2;
    const int m = 2 * pairs;

    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> noise(static_cast<std::size_t>(pairs), std::vector<double>(dim));
    std::vector<double> values(static_cast<std::size_t>(m));
    std::vector<double> shifted(dim);
    for (int k = 0; k < pairs; ++k) {
        auto& xi = noise[static_cast<std::size_t>(k)];
        for (double& x : xi) x = normal(rng);
        for (int sign : {1, -1}) {
            for (std::size_t d = 0; d < dim; ++d) shifted[d] = logits[d] + sign * cfg.gamma * xi[d];
            const RankingDistribution u(n, softmax(shifted));
            const double h = hausdorff(cfg.variant, reference, statistic(u));
            values[static_cast<std::size_t>(2 * k + (sign < 0))] = h;
            if (visit) visit(u, h);
        }
    }

    SmoothedEstimate out;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= m;
    out.estimate = mean;
    out.gradient.assign(dim, 0.0);
    for (int k = 0; k < pairs; ++k) {
        // (H+ - mean) xi + (H- - mean)(-xi)
        const double weight = values[static_cast<std::size_t>(2 * k)] - values[static_cast<std::size_t>(2 * k + 1)];
        const auto& xi = noise[static_cast<std::size_t>(k)];
        for (std::size_t d = 0; d < dim; ++d) out.gradient[d] += weight * xi[d];
    }
    for (double& g : out.gradient) g /= m * cfg.gamma;
    return out;
}

AttackResult estimate_breakdown(const RankingDistribution& p, const Statistic& statistic, const AttackConfig& cfg) {
    cfg.validate();
    if (p.items() > 6) throw std::out_of_range("estimate_breakdown: n must be <= 6");
    const int n = p.items();
    const std::size_t dim = p.size();
    const BucketRanking reference = statistic(p);
    const double target = cfg.delta - cfg.tolerance;

    AttackResult result;
    if (target <= 0.0) {
        result.breakable = true;
        result.q_bar = result.q_attack = p;
        return result;
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<double> z(dim);
    const double norm = 1.0 + static_cast<double>(dim) * cfg.logit_floor;
    for (std::size_t k = 0; k < dim; ++k) z[k] = std::log((p[k] + cfg.logit_floor) / norm);

    result.trace.reserve(static_cast<std::size_t>(cfg.steps));
    double lambda = cfg.lambda0;
    std::vector<double> q_sum(dim, 0.0);
    std::size_t averaged = 0;
    const int first_averaged = 1 + static_cast<int>(cfg.averaging_start * cfg.steps);
    std::optional<Candidate> best;
    auto consider = [&](const RankingDistribution& q, double dev) {
        if (dev < target) return;
        // Shrinking can only land at or inside q's own budget.
        if (best && l1_distance(p, q) <= best->l1) {
            best = shrink_toward(p, q, dev, reference, statistic, cfg);
            return;
        }
        auto c = shrink_toward(p, q, dev, reference, statistic, cfg);
        if (!best || c.l1 < best->l1) best = std::move(c);
    };
    auto offer = [&](const RankingDistribution& q) {
        consider(q, deviation_exact(reference, q, statistic, cfg.variant));
    };
    auto visit = [&](const RankingDistribution& u, double dev) {
        if (dev >= target && (!best || l1_distance(p, u) < best->l1)) consider(u, dev);
    };

    AttackConfig step_cfg = cfg;
    step_cfg.gamma = cfg.gamma_initial;
    const double gamma_lo = std::min(cfg.gamma, cfg.gamma_initial);
    const double gamma_hi = std::max(cfg.gamma, cfg.gamma_initial);
    for (int s = 1; s <= cfg.steps; ++s) {
        const auto q = softmax(z);
        const auto smoothed = rho_smoothed(reference, z, statistic, step_cfg, rng, visit);

        // Subgradient of 1/2 ||p - q||_1 pulled back through the softmax Jacobian.
        std::vector<double> g(dim);
        double inner = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            g[k] = q[k] > p[k] ? 0.5 : (q[k] < p[k] ? -0.5 : 0.0);
            inner += q[k] * g[k];
        }
        const double decay = 1.0 / std::sqrt(static_cast<double>(s));
        for (std::size_t k = 0; k < dim; ++k)
            z[k] -= cfg.step_q * decay * (q[k] * (g[k] - inner) - lambda * smoothed.gradient[k]);
        lambda = std::max(0.0, lambda + cfg.step_lambda * decay * (cfg.delta - smoothed.estimate));
        // shrink the smoothing while the perturbed statistic clears delta, widen it when it does not
        step_cfg.gamma *= smoothed.estimate >= cfg.delta ? 1.0 / cfg.gamma_rate : cfg.gamma_rate;
        step_cfg.gamma = std::clamp(step_cfg.gamma, gamma_lo, gamma_hi);

        if (!std::isfinite(lambda) || std::any_of(z.begin(), z.end(), [](double v) { return !std::isfinite(v); })) {
            result.diverged = true;
            break;
        }
        const RankingDistribution q_next(n, softmax(z));
        result.trace.push_back({s, total_variation(p, q_next), smoothed.estimate, lambda});
        if (s >= first_averaged) {
            for (std::size_t k = 0; k < dim; ++k) q_sum[k] += q_next[k];
            ++averaged;
        }
        offer(q_next);
    }

    if (averaged > 0) {
        std::vector<double> q_bar(dim);
        double total = 0.0;
        for (std::size_t k = 0; k < dim; ++k) total += q_bar[k] = q_sum[k] / static_cast<double>(averaged);
        for (double& v : q_bar) v /= total;
        result.q_bar = RankingDistribution(n, std::move(q_bar));
        offer(result.q_bar);
    } else {
        result.q_bar = p;
    }
    result.eps_hat_raw = l1_distance(p, result.q_bar);
    result.lambda_final = lambda;

    if (best && !result.diverged) {
        result.breakable = true;
        result.q_attack = std::move(best->q);
        result.achieved_deviation = best->deviation;
        result.eps_hat = best->l1;
        result.tv = 0.5 * best->l1;
    } else {
        result.breakable = false;
        result.q_attack = result.q_bar;
        result.achieved_deviation = deviation_exact(reference, result.q_bar, statistic, cfg.variant);
        result.eps_hat = result.tv = std::numeric_limits<double>::infinity();
    }
    return result;
}

}  // namespace rcr
