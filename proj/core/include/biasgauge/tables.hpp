#pragma once

#include <array>
#include <ostream>
#include <string>

namespace biasgauge {

// Published reference values the implementation must reproduce.
namespace golden {

struct PairExpectation {
    double e1;
    double e2;
    std::uint64_t expected_n;  // ceiled, exact
};

// Constant difference 0.10 (alpha=0.05 one-sided, power=0.90).
inline constexpr std::array<PairExpectation, 3> kConstantDiff{{
    {0.20, 0.30, 319},
    {0.10, 0.20, 213},
    {0.00, 0.10, 42},
}};

// Constant ratio 2.
inline constexpr std::array<PairExpectation, 3> kConstantRatio{{
    {0.20, 0.40, 88},
    {0.10, 0.20, 213},
    {0.05, 0.10, 463},
}};

struct BenchmarkRow {
    const char* algorithm;
    double tpr_female;  // percent
    double tpr_male;    // percent
    double d_err;       // percent points, as published
    double r_err;
    std::uint64_t n;    // published ceiled N
    int rank_d;
    int rank_r;
    int rank_n;
};

struct BenchmarkBlock {
    const char* group;
    const char* demo_female;
    const char* demo_male;
    std::array<BenchmarkRow, 5> rows;
};

// Five face-recognition classifiers evaluated per race and gender.
extern const std::array<BenchmarkBlock, 4> kBenchmark;

// The same data as canonical CSV records (kind=tpr_percent); identical to
// the bundled data/table1.csv.
extern const char* const kBenchmarkCsv;

// Tolerances for reproducing the published benchmark table from its
// 2-decimal TPRs.
inline constexpr double kDErrTolerancePp = 0.0105;  // percent points
inline constexpr double kRErrTolerance = 0.0105;
// N matches within max(1 unit, 0.5% relative).
bool n_within_tolerance(std::uint64_t computed, std::uint64_t published);

}  // namespace golden

// Recomputes all three golden tables, printing one PASS/FAIL line per
// checked cell. Returns true iff every cell passed.
bool run_golden_tables(std::ostream& os);

}  // namespace biasgauge
