#include "biasgauge/tables.hpp"

#include <cmath>
#include <cstdlib>

#include "biasgauge/ingest.hpp"
#include "biasgauge/metrics.hpp"
#include "biasgauge/report.hpp"
#include "biasgauge/stats.hpp"

namespace biasgauge {
namespace golden {

const std::array<BenchmarkBlock, 4> kBenchmark{{
    {"Asian", "AF", "AM",
     {{
         {"alg.1", 65.00, 79.78, 14.78, 1.73, 154, 5, 1, 2},
         {"alg.2", 81.56, 94.44, 12.89, 3.32, 101, 4, 5, 5},
         {"alg.3", 81.56, 93.11, 11.56, 2.68, 135, 2, 2, 3},
         {"alg.4", 81.22, 93.00, 11.78, 2.68, 131, 3, 3, 4},
         {"alg.5", 90.00, 96.78, 6.78, 3.11, 214, 1, 4, 1},
     }}},
    {"Black", "BF", "BM",
     {{
         {"alg.1", 85.56, 86.78, 1.22, 1.09, 13708, 3, 2, 3},
         {"alg.2", 91.00, 94.22, 3.22, 1.56, 1118, 5, 5, 5},
         {"alg.3", 91.56, 94.11, 2.56, 1.43, 1739, 4, 4, 4},
         {"alg.4", 93.44, 93.78, 0.33, 1.05, 88612, 2, 1, 1},
         {"alg.5", 98.00, 97.67, 0.33, 1.17, 33266, 1, 3, 2},
     }}},
    {"Indian", "IF", "IM",
     {{
         {"alg.1", 86.78, 90.78, 4.00, 1.43, 1058, 5, 4, 5},
         {"alg.2", 96.00, 96.11, 0.11, 1.03, 536364, 1, 1, 1},
         {"alg.3", 94.56, 95.56, 1.00, 1.23, 8023, 2, 2, 2},
         {"alg.4", 94.89, 93.67, 1.22, 1.24, 6189, 3, 3, 3},
         {"alg.5", 98.56, 97.22, 1.33, 1.93, 1920, 4, 5, 4},
     }}},
    {"White", "WF", "WM",
     {{
         {"alg.1", 76.67, 86.22, 9.56, 1.69, 279, 5, 1, 3},
         {"alg.2", 89.44, 96.56, 7.11, 3.07, 205, 4, 3, 4},
         {"alg.3", 90.11, 97.11, 7.00, 3.42, 193, 3, 4, 5},
         {"alg.4", 92.67, 95.78, 3.11, 1.74, 946, 2, 2, 1},
         {"alg.5", 95.78, 98.78, 3.00, 3.46, 462, 1, 5, 2},
     }}},
}};

const char* const kBenchmarkCsv =
    "group,algorithm,demographic,kind,value,trials\n"
    "Asian,alg.1,AF,tpr_percent,65.00,\n"
    "Asian,alg.1,AM,tpr_percent,79.78,\n"
    "Asian,alg.2,AF,tpr_percent,81.56,\n"
    "Asian,alg.2,AM,tpr_percent,94.44,\n"
    "Asian,alg.3,AF,tpr_percent,81.56,\n"
    "Asian,alg.3,AM,tpr_percent,93.11,\n"
    "Asian,alg.4,AF,tpr_percent,81.22,\n"
    "Asian,alg.4,AM,tpr_percent,93.00,\n"
    "Asian,alg.5,AF,tpr_percent,90.00,\n"
    "Asian,alg.5,AM,tpr_percent,96.78,\n"
    "Black,alg.1,BF,tpr_percent,85.56,\n"
    "Black,alg.1,BM,tpr_percent,86.78,\n"
    "Black,alg.2,BF,tpr_percent,91.00,\n"
    "Black,alg.2,BM,tpr_percent,94.22,\n"
    "Black,alg.3,BF,tpr_percent,91.56,\n"
    "Black,alg.3,BM,tpr_percent,94.11,\n"
    "Black,alg.4,BF,tpr_percent,93.44,\n"
    "Black,alg.4,BM,tpr_percent,93.78,\n"
    "Black,alg.5,BF,tpr_percent,98.00,\n"
    "Black,alg.5,BM,tpr_percent,97.67,\n"
    "Indian,alg.1,IF,tpr_percent,86.78,\n"
    "Indian,alg.1,IM,tpr_percent,90.78,\n"
    "Indian,alg.2,IF,tpr_percent,96.00,\n"
    "Indian,alg.2,IM,tpr_percent,96.11,\n"
    "Indian,alg.3,IF,tpr_percent,94.56,\n"
    "Indian,alg.3,IM,tpr_percent,95.56,\n"
    "Indian,alg.4,IF,tpr_percent,94.89,\n"
    "Indian,alg.4,IM,tpr_percent,93.67,\n"
    "Indian,alg.5,IF,tpr_percent,98.56,\n"
    "Indian,alg.5,IM,tpr_percent,97.22,\n"
    "White,alg.1,WF,tpr_percent,76.67,\n"
    "White,alg.1,WM,tpr_percent,86.22,\n"
    "White,alg.2,WF,tpr_percent,89.44,\n"
    "White,alg.2,WM,tpr_percent,96.56,\n"
    "White,alg.3,WF,tpr_percent,90.11,\n"
    "White,alg.3,WM,tpr_percent,97.11,\n"
    "White,alg.4,WF,tpr_percent,92.67,\n"
    "White,alg.4,WM,tpr_percent,95.78,\n"
    "White,alg.5,WF,tpr_percent,95.78,\n"
    "White,alg.5,WM,tpr_percent,98.78,\n";

bool n_within_tolerance(std::uint64_t computed, std::uint64_t published) {
    double diff = std::fabs(static_cast<double>(computed) -
                            static_cast<double>(published));
    return diff <= std::max(1.0, 0.005 * static_cast<double>(published));
}

}  // namespace golden

namespace {

bool check(std::ostream& os, bool ok, const std::string& what) {
    os << (ok ? "PASS " : "FAIL ") << what << "\n";
    return ok;
}

}  // namespace

bool run_golden_tables(std::ostream& os) {
    bool all_ok = true;
    const TestParams defaults;

    auto pair_table = [&](const char* name, const auto& table) {
        for (const golden::PairExpectation& row : table) {
            SampleSizeResult n =
                sample_size(ErrorRate(row.e1), ErrorRate(row.e2), defaults);
            bool ok = !n.unbounded() && *n.ceiled == row.expected_n;
            all_ok &= check(os, ok,
                            std::string(name) + " (" + format_double(row.e1) + "," +
                                format_double(row.e2) + ") N=" +
                                std::to_string(row.expected_n) + " computed=" +
                                (n.unbounded() ? "unbounded"
                                               : std::to_string(*n.ceiled)));
        }
    };
    pair_table("table2", golden::kConstantDiff);
    pair_table("table3", golden::kConstantRatio);

    DemographicDataset ds =
        assemble(parse_records(golden::kBenchmarkCsv, RecordFormat::csv));
    for (const auto& block : ds.blocks) {
        const golden::BenchmarkBlock* expected = nullptr;
        for (const auto& g : golden::kBenchmark) {
            if (block.group == g.group) expected = &g;
        }
        if (!expected) {
            all_ok &= check(os, false, "table1 unexpected group " + block.group);
            continue;
        }
        std::vector<MetricRow> rows;
        for (const auto& [alg, rates] : block.algorithms) {
            rows.push_back(evaluate_row(alg, rates[0], rates[1], defaults));
        }
        RankTable ranked = make_rank_table(block.group, std::move(rows));
        for (std::size_t i = 0; i < ranked.rows.size(); ++i) {
            const MetricRow& row = ranked.rows[i];
            const golden::BenchmarkRow& exp = expected->rows[i];
            bool d_ok = std::fabs(row.d_err * 100.0 - exp.d_err) <=
                        golden::kDErrTolerancePp;
            bool r_ok = row.r_err &&
                        std::fabs(*row.r_err - exp.r_err) <= golden::kRErrTolerance;
            bool n_ok = !row.n.unbounded() &&
                        golden::n_within_tolerance(*row.n.ceiled, exp.n);
            bool rank_ok = ranked.ranks_d[i] == exp.rank_d &&
                           ranked.ranks_r[i] == exp.rank_r &&
                           ranked.ranks_n[i] == exp.rank_n;
            all_ok &= check(
                os, d_ok && r_ok && n_ok && rank_ok,
                "table1 " + block.group + " " + row.algorithm + " D=" +
                    format_double(exp.d_err) + " R=" + format_double(exp.r_err) +
                    " N=" + std::to_string(exp.n) + " ranks=[" +
                    std::to_string(exp.rank_d) + "," + std::to_string(exp.rank_r) +
                    "," + std::to_string(exp.rank_n) + "] computed N=" +
                    (row.n.unbounded() ? "unbounded" : std::to_string(*row.n.ceiled)));
        }
    }
    return all_ok;
}

}  // namespace biasgauge
