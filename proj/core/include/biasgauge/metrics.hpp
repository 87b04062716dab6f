#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biasgauge/stats.hpp"

namespace biasgauge {

struct NormalizedPair {
    ErrorRate low;
    ErrorRate high;
    bool swapped;
};

// One algorithm's metrics over a two-demographic block.
// r_err: nullopt encodes the indeterminate 0/0 case; +inf is a valid value
// (zero denominator with a nonzero numerator).
struct MetricRow {
    std::string algorithm;
    ErrorRate e_low;
    ErrorRate e_high;
    bool swapped;
    double d_err;
    std::optional<double> r_err;
    SampleSizeResult n;
};

enum class RankOrder { ascending, descending };

struct RankTable {
    std::string group;
    std::vector<MetricRow> rows;
    std::vector<int> ranks_d;
    std::vector<int> ranks_r;
    std::vector<int> ranks_n;
};

NormalizedPair normalize_pair(ErrorRate a, ErrorRate b);

// e_high - e_low.
double diff_metric(ErrorRate e_low, ErrorRate e_high);

// e_high / e_low; +inf when e_low == 0 < e_high, nullopt (indeterminate)
// when both are zero.
std::optional<double> ratio_metric(ErrorRate e_low, ErrorRate e_high);

MetricRow evaluate_row(std::string algorithm, ErrorRate a, ErrorRate b,
                       const TestParams& params);

// Competition ranking (1 = first in the requested order; exact ties share
// the smaller rank). +-inf participate as ordinary extended reals.
std::vector<int> rank_metric(std::span<const double> values, RankOrder order);

// Kendall tau-b rank correlation. Throws on length mismatch or length < 2.
double rank_agreement(std::span<const int> ranks_a, std::span<const int> ranks_b);

// Ranking keys: d ascending; r ascending with indeterminate tied to ratio 1;
// n_raw descending with unbounded (inf) least biased.
RankTable make_rank_table(std::string group, std::vector<MetricRow> rows);

}  // namespace biasgauge
