#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "rcr/bucket_order.hpp"
#include "rcr/ranking_dist.hpp"
#include "rcr/statistic.hpp"

namespace rcr {

struct AttackConfig {
    double delta = 1.0 / 6.0;   ///< target deviation of the statistic
    double gamma = 0.1;         ///< Gaussian smoothing scale in logit space (floor)
    double gamma_initial = 3.0; ///< scale at step 1, also the ceiling
    double gamma_rate = 1.01;   ///< per-step factor moving the scale between the two
    double averaging_start = 0.5;  ///< fraction of steps discarded before ergodic averaging
    int samples = 64;           ///< Monte-Carlo samples per step (antithetic pairs)
    int steps = 2000;
    double step_q = 3.0;        ///< descent step on the logits, decayed as 1/sqrt(s)
    double step_lambda = 0.5;   ///< ascent step on the multiplier, decayed as 1/sqrt(s)
    double lambda0 = 1.0;
    double logit_floor = 1e-6;  ///< added to p before taking logs at initialization
    std::uint64_t seed = 0;
    HausdorffVariant variant = HausdorffVariant::ns;
    double tolerance = 1e-9;    ///< achieved deviation must reach delta - tolerance
    int line_search = 200;      ///< grid points on the segment p -> q_bar; 0 disables the shrink

    void validate() const;
};

struct SmoothedEstimate {
    double estimate = 0.0;
    std::vector<double> gradient;  ///< w.r.t. the logits
};

/// Monte-Carlo estimate of E_xi[H(reference, T(softmax(z + gamma xi)))] and its
/// Gaussian-smoothing gradient (1 / (m gamma)) sum_k (H_k - mean H) xi_k, using
/// antithetic pairs (xi, -xi).
using SampleVisitor = std::function<void(const RankingDistribution& sample, double deviation)>;

/// `visit`, when set, sees every perturbed distribution and its exact deviation.
SmoothedEstimate rho_smoothed(const BucketRanking& reference, std::span<const double> logits,
                              const Statistic& statistic, const AttackConfig& cfg, std::mt19937_64& rng,
                              const SampleVisitor& visit = {});

struct AttackTracePoint {
    int step = 0;
    double tv = 0.0;
    double rho_hat = 0.0;
    double lambda = 0.0;
};

struct AttackResult {
    bool breakable = false;          ///< achieved_deviation reached delta
    bool diverged = false;           ///< non-finite iterate encountered
    double eps_hat = 0.0;            ///< ||p - q_attack||_1, on the same scale as the exact bounds
    double tv = 0.0;                 ///< TV(p, q_attack) = eps_hat / 2
    double eps_hat_raw = 0.0;        ///< ||p - q_bar||_1 before the line search
    double achieved_deviation = 0.0; ///< H(T(p), T(q_attack)), computed exactly
    RankingDistribution q_bar;       ///< ergodic average of the iterates
    RankingDistribution q_attack;    ///< closest breaking point found, after shrinking toward p (q_bar if none)
    double lambda_final = 0.0;
    std::vector<AttackTracePoint> trace;
};

/// Smoothed Lagrangian saddle-point attack: gradient descent on the logits of
/// q, projected ascent on the multiplier, ergodic averaging of softmax(z).
/// Every iterate, perturbed sample and the average that breaks the statistic is
/// pulled back toward p along a line search; the closest one is reported.
AttackResult estimate_breakdown(const RankingDistribution& p, const Statistic& statistic, const AttackConfig& cfg);

/// H_variant(T(p), T(q)) evaluated exactly.
double deviation_exact(const BucketRanking& reference, const RankingDistribution& q, const Statistic& statistic,
                       HausdorffVariant variant);

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

}  // namespace rcr
