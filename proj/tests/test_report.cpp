#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <vector>

#include "biasgauge/ingest.hpp"
#include "biasgauge/report.hpp"
#include "biasgauge/tables.hpp"
#include "approx.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace biasgauge;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("format_double round-trips and renders sentinels") {
    for (double v : {212.66310974896865, 0.1, 1e-17, 3.5, -2.25, 536364.43}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("sweep grid: consistency, diagonal sentinel, determinism") {
    TestParams params;
    SweepConfig grid{11, 0.0, 1.0};  // step 0.1, includes (0.1, 0.2) and (0, .)
    std::ostringstream out1, out2;
    write_sweep_csv(out1, grid, params);
    write_sweep_csv(out2, grid, params);
    CHECK(out1.str() == out2.str());

    auto lines = lines_of(out1.str());
    REQUIRE(lines.size() == 1 + 11 * 11);
    CHECK(lines[0] == "e1,e2,d_err,r_err,n_raw,log_n");

    bool saw_cell = false, saw_diag = false, saw_ratio_inf = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i], ',');
        REQUIRE(f.size() == 6);
        double e1 = std::stod(f[0]), e2 = std::stod(f[1]);
        if (e1 == e2) {
            CHECK(f[4] == "inf");
            CHECK(f[5] == "inf");
            saw_diag = true;
        } else {
            double n_raw = std::stod(f[4]);
            double expected = sample_size(ErrorRate(e1), ErrorRate(e2), params).raw;
            CHECK(std::fabs(n_raw - expected) <= 1e-12 * expected);
            CHECK(std::stod(f[5]) == testutil::approx(std::log(expected)).margin(1e-12));
        }
        if (std::fabs(e1 - 0.1) < 1e-12 && std::fabs(e2 - 0.2) < 1e-12) saw_cell = true;
        if ((e1 == 0.0) != (e2 == 0.0)) {
            CHECK(f[3] == "inf");
            saw_ratio_inf = true;
        }
        if (e1 == 0.0 && e2 == 0.0) CHECK(f[3] == "indeterminate");
    }
    CHECK(saw_cell);
    CHECK(saw_diag);
    CHECK(saw_ratio_inf);

    // row-major in (e1, e2): first 11 rows share e1 = 0
    for (std::size_t i = 1; i <= 11; ++i) CHECK(split(lines[i], ',')[0] == "0");

    CHECK_THROWS_AS(write_sweep_csv(out1, SweepConfig{1, 0.0, 1.0}, params),
                    std::invalid_argument);
    CHECK_THROWS_AS(write_sweep_csv(out1, SweepConfig{10, 0.5, 0.4}, params),
                    std::invalid_argument);
    CHECK_THROWS_AS(write_sweep_csv(out1, SweepConfig{10, -0.1, 0.9}, params),
                    std::invalid_argument);
}

TEST_CASE("compute report: csv numbers round-trip to the internal values") {
    TestParams params;
    std::ostringstream out;
    write_compute_report(out, ErrorRate(0.1), ErrorRate(0.2), params,
                         OutputFormat::csv);
    auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 2);
    auto f = split(lines[1], ',');
    REQUIRE(f.size() == 8);
    SampleSizeResult n = sample_size(ErrorRate(0.1), ErrorRate(0.2), params);
    CHECK(std::stod(f[5]) == n.raw);
    CHECK(f[6] == "213");
    CHECK(std::stod(f[2]) == 0.2 - 0.1);  // d_err as stored

    std::ostringstream unbounded;
    write_compute_report(unbounded, ErrorRate(0.3), ErrorRate(0.3), params,
                         OutputFormat::csv);
    auto uf = split(lines_of(unbounded.str())[1], ',');
    CHECK(uf[5] == "inf");
    CHECK(uf[6] == "unbounded");
}

TEST_CASE("compute report: json parses and preserves values") {
    TestParams params;
    std::ostringstream out;
    write_compute_report(out, ErrorRate(0.1), ErrorRate(0.2), params,
                         OutputFormat::json);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["n_ceiled"] == 213);
    CHECK(j["n_raw"].get<double>() ==
          sample_size(ErrorRate(0.1), ErrorRate(0.2), params).raw);
    CHECK(j["r_err"].get<double>() == 2.0);
    CHECK(j["sided"] == "one");
}

TEST_CASE("rank report renders all formats and skips k > 2 blocks with a warning") {
    TestParams params;
    DemographicDataset ds =
        assemble(parse_records(golden::kBenchmarkCsv, RecordFormat::csv));
    // add a 3-demographic block that must be skipped
    DemographicDataset::Block extra;
    extra.group = "Wide";
    extra.demographics = {"d1", "d2", "d3"};
    extra.algorithms.emplace_back(
        "a", std::vector<ErrorRate>{ErrorRate(0.1), ErrorRate(0.2), ErrorRate(0.3)});
    ds.blocks.push_back(extra);

    std::ostringstream out, warn;
    write_rank_report(out, warn, ds, params, OutputFormat::text);
    CHECK(warn.str().find("Wide") != std::string::npos);
    CHECK(out.str().find("Wide") == std::string::npos);
    CHECK(out.str().find("== Indian (IF vs IM) ==") != std::string::npos);

    std::ostringstream jout, jwarn;
    write_rank_report(jout, jwarn, ds, params, OutputFormat::json);
    auto j = nlohmann::json::parse(jout.str());
    REQUIRE(j.size() == 4);
    // Indian block: ranks_d identical to ranks_n, agreement 1.0
    for (const auto& block : j) {
        if (block["group"] != "Indian") continue;
        CHECK(block["agreement"]["d_n"].get<double>() == testutil::approx(1.0));
        std::vector<int> rd, rn;
        for (const auto& row : block["rows"]) {
            rd.push_back(row["rank_d"].get<int>());
            rn.push_back(row["rank_n"].get<int>());
        }
        CHECK(rd == std::vector<int>{5, 1, 2, 3, 4});
        CHECK(rn == std::vector<int>{5, 1, 2, 3, 4});
    }

    std::ostringstream cout_, cwarn;
    write_rank_report(cout_, cwarn, ds, params, OutputFormat::csv);
    auto clines = lines_of(cout_.str());
    CHECK(clines[0] ==
          "group,algorithm,e_low,e_high,d_err,d_err_pp,r_err,n_raw,n_ceiled,"
          "rank_d,rank_r,rank_n");
    // csv n_raw round-trips
    auto f = split(clines[1], ',');
    double e_low = std::stod(f[2]), e_high = std::stod(f[3]);
    CHECK(std::stod(f[7]) ==
          sample_size(ErrorRate(e_low), ErrorRate(e_high), params).raw);
}

TEST_CASE("golden tables all reproduce") {
    std::ostringstream os;
    CHECK(run_golden_tables(os));
    // one line per cell: 3 + 3 + 20
    CHECK(lines_of(os.str()).size() == 26);
    CHECK(os.str().find("FAIL") == std::string::npos);
}
