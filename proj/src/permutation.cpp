#include "rcr/permutation.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace rcr {

namespace {

void check_pair(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("permutations have different sizes");
    if (a.size() < 2) throw std::invalid_argument("distance needs at least 2 items");
}

}  // namespace

Permutation::Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    const int n = size();
    if (n < 1) throw std::invalid_argument("permutation must have at least one item");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int r : ranks_) {
        if (r < 1 || r > n || seen[static_cast<std::size_t>(r - 1)]) {
            throw std::invalid_argument("not a permutation of 1..n: " + to_string());
        }
        seen[static_cast<std::size_t>(r - 1)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> r(static_cast<std::size_t>(n));
    std::iota(r.begin(), r.end(), 1);
    return Permutation(std::move(r));
}

std::vector<int> Permutation::ordering() const {
    std::vector<int> out(ranks_.size());
    for (std::size_t i = 0; i < ranks_.size(); ++i) out[static_cast<std::size_t>(ranks_[i] - 1)] = static_cast<int>(i) + 1;
    return out;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < ranks_.size(); ++i) os << (i ? "," : "") << ranks_[i];
    os << ')';
    return os.str();
}

std::size_t factorial(int n) {
    std::size_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
    return f;
}

std::vector<Permutation> enumerate(int n) {
    if (n < 1 || n > kMaxItems) throw std::out_of_range("enumerate: n must be in [1, 8]");
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    std::vector<int> r(static_cast<std::size_t>(n));
    std::iota(r.begin(), r.end(), 1);
    do {
        out.emplace_back(r);
    } while (std::next_permutation(r.begin(), r.end()));
    return out;
}

const std::vector<Permutation>& all_permutations(int n) {
    if (n < 1 || n > kMaxItems) throw std::out_of_range("enumerate: n must be in [1, 8]");
    static const std::array<std::vector<Permutation>, kMaxItems + 1> cache = [] {
        std::array<std::vector<Permutation>, kMaxItems + 1> c;
        for (int k = 1; k <= kMaxItems; ++k) c[static_cast<std::size_t>(k)] = enumerate(k);
        return c;
    }();
    return cache[static_cast<std::size_t>(n)];
}

PermIndex index_of(const Permutation& sigma) {
    // Lehmer code of the rank vector.
    const auto& r = sigma.ranks();
    const int n = sigma.size();
    PermIndex index = 0;
    for (int i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (int j = i + 1; j < n; ++j) smaller += r[static_cast<std::size_t>(j)] < r[static_cast<std::size_t>(i)];
        index += smaller * factorial(n - 1 - i);
    }
    return index;
}

Permutation from_index(PermIndex index, int n) {
    if (n < 1 || n > kMaxItems) throw std::out_of_range("from_index: n must be in [1, 8]");
    if (index >= factorial(n)) throw std::out_of_range("from_index: index exceeds n!");
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> r;
    r.reserve(pool.size());
    for (int i = 0; i < n; ++i) {
        const std::size_t f = factorial(n - 1 - i);
        const std::size_t k = index / f;
        index %= f;
        r.push_back(pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return Permutation(std::move(r));
}

Permutation reverse(const Permutation& sigma) {
    std::vector<int> r = sigma.ranks();
    const int n = sigma.size();
    for (int& x : r) x = n + 1 - x;
    return Permutation(std::move(r));
}

Metric parse_metric(const std::string& name) {
    if (name == "kendall" || name == "kendall_tau") return Metric::kendall;
    if (name == "rho" || name == "spearman_rho") return Metric::spearman_rho;
    if (name == "footrule" || name == "spearman_footrule") return Metric::spearman_footrule;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::kendall: return "kendall";
        case Metric::spearman_rho: return "spearman_rho";
        case Metric::spearman_footrule: return "spearman_footrule";
    }
    return "?";
}

int discordant_pairs(const Permutation& a, const Permutation& b) {
    const auto& x = a.ranks();
    const auto& y = b.ranks();
    int count = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            count += (x[i] - x[j]) * (y[i] - y[j]) < 0;
    return count;
}

std::int64_t distance_units(Metric metric, const Permutation& a, const Permutation& b) {
    check_pair(a, b);
    const auto& x = a.ranks();
    const auto& y = b.ranks();
    std::int64_t acc = 0;
    switch (metric) {
        case Metric::kendall:
            return discordant_pairs(a, b);
        case Metric::spearman_rho:
            for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<std::int64_t>(x[i] - y[i]) * (x[i] - y[i]);
            return 3 * acc;
        case Metric::spearman_footrule:
            for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
            return acc;
    }
    return 0;
}

std::int64_t distance_scale(Metric metric, int n) {
    if (n < 2) throw std::invalid_argument("distance needs at least 2 items");
    const std::int64_t m = n;
    switch (metric) {
        case Metric::kendall: return m * (m - 1) / 2;
        case Metric::spearman_rho: return m * (m * m - 1);
        case Metric::spearman_footrule: return m * m / 2;
    }
    return 1;
}

double distance(Metric metric, const Permutation& a, const Permutation& b) {
    return static_cast<double>(distance_units(metric, a, b)) / static_cast<double>(distance_scale(metric, a.size()));
}

double kendall_tau(const Permutation& a, const Permutation& b) { return distance(Metric::kendall, a, b); }
double spearman_rho(const Permutation& a, const Permutation& b) { return distance(Metric::spearman_rho, a, b); }
double spearman_footrule(const Permutation& a, const Permutation& b) {
    return distance(Metric::spearman_footrule, a, b);
}

DistanceTable::DistanceTable(Metric metric, int n)
    : metric_(metric), n_(n), count_(0), scale_(distance_scale(metric, n)) {
    if (n > 6) throw std::out_of_range("DistanceTable: n must be <= 6");
    const auto& perms = all_permutations(n);
    count_ = perms.size();
    table_.resize(count_ * count_);
    for (std::size_t a = 0; a < count_; ++a) {
        for (std::size_t b = a; b < count_; ++b) {
            const auto u = distance_units(metric, perms[a], perms[b]);
            table_[a * count_ + b] = u;
            table_[b * count_ + a] = u;
            max_units_ = std::max(max_units_, u);
        }
    }
}

}  // namespace rcr
