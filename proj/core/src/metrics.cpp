#include "biasgauge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace biasgauge {

NormalizedPair normalize_pair(ErrorRate a, ErrorRate b) {
    if (b.value() < a.value()) return {b, a, true};
    return {a, b, false};
}

double diff_metric(ErrorRate e_low, ErrorRate e_high) {
    return e_high.value() - e_low.value();
}

std::optional<double> ratio_metric(ErrorRate e_low, ErrorRate e_high) {
    if (e_low.value() > 0.0) return e_high.value() / e_low.value();
    if (e_high.value() > 0.0) return std::numeric_limits<double>::infinity();
    return std::nullopt;  // 0/0
}

MetricRow evaluate_row(std::string algorithm, ErrorRate a, ErrorRate b,
                       const TestParams& params) {
    NormalizedPair p = normalize_pair(a, b);
    return MetricRow{std::move(algorithm),
                     p.low,
                     p.high,
                     p.swapped,
                     diff_metric(p.low, p.high),
                     ratio_metric(p.low, p.high),
                     sample_size(p.low, p.high, params)};
}

std::vector<int> rank_metric(std::span<const double> values, RankOrder order) {
    if (values.empty()) throw std::invalid_argument("rank_metric: empty input");
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int ahead = 0;
        for (double w : values) {
            bool before = order == RankOrder::ascending ? w < values[i] : w > values[i];
            if (before) ++ahead;
        }
        ranks[i] = 1 + ahead;
    }
    return ranks;
}

double rank_agreement(std::span<const int> ranks_a, std::span<const int> ranks_b) {
    if (ranks_a.size() != ranks_b.size()) {
        throw std::invalid_argument("rank_agreement: length mismatch");
    }
    const std::size_t n = ranks_a.size();
    if (n < 2) throw std::invalid_argument("rank_agreement: need length >= 2");

    // Kendall tau-b
    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int da = ranks_a[i] - ranks_a[j];
            int db = ranks_b[i] - ranks_b[j];
            if (da == 0 && db == 0) {
                ++ties_a;
                ++ties_b;
            } else if (da == 0) {
                ++ties_a;
            } else if (db == 0) {
                ++ties_b;
            } else if ((da < 0) == (db < 0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    double denom = std::sqrt(static_cast<double>(n0 - ties_a)) *
                   std::sqrt(static_cast<double>(n0 - ties_b));
    if (denom == 0.0) return concordant >= discordant ? 1.0 : -1.0;
    return static_cast<double>(concordant - discordant) / denom;
}

RankTable make_rank_table(std::string group, std::vector<MetricRow> rows) {
    std::vector<double> d, r, nraw;
    d.reserve(rows.size());
    r.reserve(rows.size());
    nraw.reserve(rows.size());
    for (const MetricRow& row : rows) {
        d.push_back(row.d_err);
        r.push_back(row.r_err ? *row.r_err : 1.0);  // indeterminate ties with ratio 1
        nraw.push_back(row.n.raw);                  // unbounded = +inf, least biased
    }
    RankTable table{std::move(group), std::move(rows), {}, {}, {}};
    table.ranks_d = rank_metric(d, RankOrder::ascending);
    table.ranks_r = rank_metric(r, RankOrder::ascending);
    table.ranks_n = rank_metric(nraw, RankOrder::descending);
    return table;
}

}  // namespace biasgauge
