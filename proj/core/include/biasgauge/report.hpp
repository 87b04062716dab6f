#pragma once

#include <ostream>
#include <string>

#include "biasgauge/ingest.hpp"
#include "biasgauge/metrics.hpp"
#include "biasgauge/stats.hpp"

namespace biasgauge {

enum class OutputFormat { text, csv, json };

// Shortest decimal form that round-trips to the same double (>= 12
// significant digits whenever that many are needed).
std::string format_double(double v);

// n_raw/log_n for e1 == e2 and r_err for a zero denominator render as "inf";
// the 0/0 ratio renders as "indeterminate".
struct SweepConfig {
    int resolution = 100;
    double lo = 0.005;
    double hi = 0.995;
};

// Writes `e1,e2,d_err,r_err,n_raw,log_n` rows over the uniform
// resolution x resolution grid, row-major in (e1, e2).
void write_sweep_csv(std::ostream& os, const SweepConfig& grid, const TestParams& params);

void write_compute_report(std::ostream& os, ErrorRate e1, ErrorRate e2,
                          const TestParams& params, OutputFormat format);

// Per two-demographic block: a Table-1-style rank table plus pairwise
// Kendall tau-b agreement between the three rank columns. Blocks with more
// than two demographics are skipped with a warning on `warn`.
void write_rank_report(std::ostream& os, std::ostream& warn,
                       const DemographicDataset& ds, const TestParams& params,
                       OutputFormat format);

}  // namespace biasgauge
