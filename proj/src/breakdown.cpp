#include "rcr/breakdown.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rcr {

namespace {

// delta given as a decimal is matched against the exact grid k / scale.
constexpr double kDeltaSlack = 1e-9;

bool reaches(std::int64_t units, std::int64_t scale, double delta) {
    return static_cast<double>(units) >= delta * static_cast<double>(scale) - kDeltaSlack;
}

PermIndex first_argmin(const std::vector<Rational>& values) {
    return static_cast<PermIndex>(std::min_element(values.begin(), values.end()) - values.begin());
}

BoundResult unbreakable(const Permutation& center) {
    BoundResult r;
    r.breakable = false;
    r.value = std::numeric_limits<double>::infinity();
    r.center = center;
    return r;
}

}  // namespace

std::vector<Rational> to_exact(const RankingDistribution& p) {
    std::vector<Rational> out;
    out.reserve(p.size());
    for (double v : p.probs()) out.emplace_back(v);
    return out;
}

std::vector<Rational> exact_expected_units(const std::vector<Rational>& p, const DistanceTable& table) {
    std::vector<Rational> out(table.perms(), Rational(0));
    for (std::size_t s = 0; s < table.perms(); ++s)
        for (std::size_t k = 0; k < table.perms(); ++k)
            if (p[k] != 0 && table.units(k, s) != 0) out[s] += p[k] * table.units(k, s);
    return out;
}

std::vector<PermIndex> exact_kemeny_argmin(const std::vector<Rational>& p, int n) {
    const DistanceTable table(Metric::kendall, n);
    const auto values = exact_expected_units(p, table);
    const Rational best = *std::min_element(values.begin(), values.end());
    std::vector<PermIndex> out;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (values[k] == best) out.push_back(k);
    return out;
}

BreakdownAnalyzer::BreakdownAnalyzer(const RankingDistribution& p, Metric attack_metric, Metric median_metric)
    : p_(p),
      attack_metric_(attack_metric),
      median_metric_(median_metric),
      exact_p_(to_exact(p)),
      kendall_(Metric::kendall, p.items()),
      kendall_expect_(exact_expected_units(exact_p_, kendall_)),
      kemeny_center_index_(first_argmin(kendall_expect_)),
      kemeny_center_(from_index(kemeny_center_index_, p.items())) {}

BoundResult BreakdownAnalyzer::epsilon_plus(double delta) const {
    if (delta <= 0.0) {
        BoundResult r;
        r.center = kemeny_center_;
        r.target = kemeny_center_;
        return r;
    }
    const std::size_t count = kendall_.perms();
    const PermIndex c = kemeny_center_index_;
    std::optional<Rational> best;
    PermIndex best_sigma = 0;
    for (std::size_t s = 0; s < count; ++s) {
        if (!reaches(kendall_.units(c, s), kendall_.scale(), delta)) continue;
        std::optional<Rational> worst;
        for (std::size_t v = 0; v < count; ++v) {
            if (reaches(kendall_.units(c, v), kendall_.scale(), delta)) continue;
            const std::int64_t den = kendall_.units(c, s) - kendall_.units(c, v);
            if (den <= 0) continue;
            Rational ratio = (kendall_expect_[s] - kendall_expect_[v]) / den;
            if (!worst || ratio > *worst) worst = std::move(ratio);
        }
        if (!worst) continue;  // contributes +inf
        if (!best || *worst < *best) {
            best = std::move(*worst);
            best_sigma = s;
        }
    }
    if (!best) return unbreakable(kemeny_center_);

    BoundResult r;
    r.exact = *best;
    r.value = static_cast<double>(*best);
    r.center = kemeny_center_;
    r.target = from_index(best_sigma, p_.items());
    r.condition_ok = *best <= 2 * exact_p_[c];
    if (r.condition_ok) r.witness = reverse_attack(p_, std::min(r.value, 2.0 * p_[c]));
    return r;
}

void BreakdownAnalyzer::prepare_lower() const {
    if (median_table_) return;
    if (p_.items() > 5) throw std::out_of_range("epsilon_minus: n must be <= 5");
    median_table_.emplace(median_metric_, p_.items());
    attack_table_.emplace(attack_metric_, p_.items());
    median_expect_ = exact_expected_units(exact_p_, *median_table_);
    median_center_index_ = first_argmin(median_expect_);
    const std::size_t count = median_table_->perms();
    lower_denominators_.assign(count * count, 0);
    for (std::size_t s = 0; s < count; ++s)
        for (std::size_t v = 0; v < count; ++v) {
            std::int64_t m = std::numeric_limits<std::int64_t>::min();
            for (std::size_t x = 0; x < count; ++x)
                m = std::max(m, median_table_->units(x, s) - median_table_->units(x, v));
            lower_denominators_[s * count + v] = m;
        }
}

BoundResult BreakdownAnalyzer::epsilon_minus(double delta) const {
    prepare_lower();
    const Permutation center = from_index(median_center_index_, p_.items());
    if (delta <= 0.0) {
        BoundResult r;
        r.center = center;
        r.target = center;
        return r;
    }
    const std::size_t count = median_table_->perms();
    std::optional<Rational> best;
    PermIndex best_sigma = 0;
    for (std::size_t s = 0; s < count; ++s) {
        if (!reaches(attack_table_->units(median_center_index_, s), attack_table_->scale(), delta)) continue;
        std::optional<Rational> worst;
        for (std::size_t v = 0; v < count; ++v) {
            const std::int64_t den = lower_denominators_[s * count + v];
            if (v == s || den <= 0) continue;
            Rational ratio = (median_expect_[s] - median_expect_[v]) / den;
            if (!worst || ratio > *worst) worst = std::move(ratio);
        }
        if (!worst) continue;
        if (!best || *worst < *best) {
            best = std::move(*worst);
            best_sigma = s;
        }
    }
    if (!best) return unbreakable(center);
    BoundResult r;
    r.exact = *best;
    r.value = static_cast<double>(*best);
    r.center = center;
    r.target = from_index(best_sigma, p_.items());
    return r;
}

BoundResult epsilon_plus(const RankingDistribution& p, double delta) {
    return BreakdownAnalyzer(p).epsilon_plus(delta);
}

BoundResult epsilon_minus(const RankingDistribution& p, double delta, Metric attack_metric, Metric median_metric) {
    return BreakdownAnalyzer(p, attack_metric, median_metric).epsilon_minus(delta);
}

RankingDistribution reverse_attack(const RankingDistribution& p, double eps) {
    const auto center = BreakdownAnalyzer(p).kemeny_center();
    const PermIndex c = index_of(center);
    const PermIndex r = index_of(reverse(center));
    if (eps < 0.0) throw std::invalid_argument("reverse_attack: budget must be non-negative");
    if (eps > 2.0 * p[c] + 1e-15) throw std::invalid_argument("reverse_attack: budget exceeds twice the median's mass");
    std::vector<double> q = p.probs();
    const double moved = std::min(eps / 2.0, q[c]);
    q[c] -= moved;
    q[r] += moved;
    return RankingDistribution(p.items(), std::move(q));
}

std::vector<Rational> reverse_attack_exact(const RankingDistribution& p, const Rational& eps) {
    const auto center = BreakdownAnalyzer(p).kemeny_center();
    const PermIndex c = index_of(center);
    const PermIndex r = index_of(reverse(center));
    auto q = to_exact(p);
    if (eps < 0 || eps > 2 * q[c]) throw std::invalid_argument("reverse_attack: budget outside [0, 2 p(center)]");
    q[c] -= eps / 2;
    q[r] += eps / 2;
    return q;
}

std::vector<BoundCurvePoint> breakdown_curve_bounds(const RankingDistribution& p, const std::vector<double>& deltas) {
    const BreakdownAnalyzer analyzer(p);
    std::vector<BoundCurvePoint> out;
    out.reserve(deltas.size());
    for (double d : deltas) {
        if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("breakdown_curve_bounds: delta must be in [0, 1]");
        out.push_back({d, analyzer.epsilon_minus(d), analyzer.epsilon_plus(d)});
    }
    return out;
}

std::vector<double> attainable_delta_grid(int n) {
    const std::int64_t pairs = distance_scale(Metric::kendall, n);
    std::vector<double> out;
    for (std::int64_t k = 0; k <= pairs; ++k) out.push_back(static_cast<double>(k) / static_cast<double>(pairs));
    return out;
}

}  // namespace rcr
