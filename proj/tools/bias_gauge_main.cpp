// bias-gauge: quantify classification bias across demographics as the sample
// size a statistical test needs to detect the error-rate gap, compare it with
// the difference/ratio baselines, and validate against a Monte Carlo oracle.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biasgauge/ingest.hpp"
#include "biasgauge/metrics.hpp"
#include "biasgauge/oracle.hpp"
#include "biasgauge/report.hpp"
#include "biasgauge/stats.hpp"
#include "biasgauge/tables.hpp"

namespace {

using namespace biasgauge;

struct GlobalFlags {
    double alpha = 0.05;
    double power = 0.90;
    std::string sided = "one";
    std::string format = "text";

    TestParams params() const {
        return TestParams(alpha, power, sided == "two" ? Sided::two : Sided::one);
    }
    OutputFormat output_format() const {
        if (format == "csv") return OutputFormat::csv;
        if (format == "json") return OutputFormat::json;
        return OutputFormat::text;
    }
};

std::vector<ErrorRate> parse_rate_list(const std::string& list) {
    std::vector<ErrorRate> rates;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        rates.emplace_back(std::stod(item));
    }
    return rates;
}

const char* variant_name(TestVariant v) {
    switch (v) {
        case TestVariant::arcsine_z: return "arcsine_z";
        case TestVariant::wald_pooled_z: return "wald_pooled_z";
        case TestVariant::pearson_chisq: return "pearson_chisq";
    }
    return "?";
}

int run_validate(const GlobalFlags& g, const std::string& rates_spec,
                 const std::string& variant_spec, std::uint64_t reps,
                 std::uint64_t seed, std::uint64_t n, std::uint64_t n_cap,
                 unsigned threads) {
    std::vector<ErrorRate> rate_list = parse_rate_list(rates_spec);
    RateVector rates(rate_list);
    TestParams params = g.params();

    OracleConfig cfg;
    cfg.replications = reps;
    cfg.seed = seed;
    cfg.n_cap = n_cap;
    cfg.threads = threads;
    if (variant_spec == "arcsine_z") cfg.variant = TestVariant::arcsine_z;
    else if (variant_spec == "wald_pooled_z") cfg.variant = TestVariant::wald_pooled_z;
    else if (variant_spec == "pearson_chisq") cfg.variant = TestVariant::pearson_chisq;
    else throw CLI::ValidationError("--variant", "unknown variant " + variant_spec);
    if (rates.k() > 2) cfg.variant = TestVariant::pearson_chisq;

    std::cout << "rates =";
    for (const ErrorRate& r : rates.rates()) std::cout << ' ' << format_double(r.value());
    std::cout << "\nvariant = " << variant_name(cfg.variant) << ", seed = " << seed
              << ", replications = " << reps << "\n";

    if (n != 0) {
        PowerEstimate est = simulate_power(rates, n, params, cfg);
        std::cout << "n_per_group = " << n << "\npower = " << format_double(est.power_hat)
                  << " +- " << format_double(est.std_err) << "\n";
        return 0;
    }

    std::optional<std::uint64_t> found =
        rates.k() == 2 ? minimal_n(rates, params, cfg)
                       : generalized_sample_size(rates, params, cfg);
    if (!found) {
        std::cout << "minimal N exceeds_cap (no n <= " << cfg.n_cap
                  << " reaches power " << format_double(params.power()) << ")\n";
        return 0;
    }
    std::cout << "minimal N = " << *found << " (per group)\n";
    if (rates.k() == 2) {
        SampleSizeResult formula =
            sample_size(rates.rates()[0], rates.rates()[1], params);
        if (formula.unbounded()) {
            std::cout << "closed-form N = unbounded\n";
        } else {
            std::cout << "closed-form N = " << *formula.ceiled
                      << " (raw " << format_double(formula.raw) << ")\n"
                      << "oracle/formula ratio = "
                      << format_double(static_cast<double>(*found) / formula.raw)
                      << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bias-gauge: sample-size based classification bias metrics"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--alpha", g.alpha, "significance level")->capture_default_str();
    app.add_option("--power", g.power, "target power")->capture_default_str();
    app.add_option("--sided", g.sided, "one|two")->capture_default_str();
    app.add_option("--format", g.format, "text|csv|json")->capture_default_str();

    double e1 = 0.0, e2 = 0.0;
    auto* compute = app.add_subcommand(
        "compute", "sample size N plus D_err/R_err for one pair of rates");
    compute->fallthrough();
    compute->add_option("--e1", e1, "error rate on the first demographic")->required();
    compute->add_option("--e2", e2, "error rate on the second demographic")->required();

    std::string input_path, input_format = "csv";
    auto* rank = app.add_subcommand(
        "rank", "rank classifiers per demographic block from a records file");
    rank->fallthrough();
    rank->add_option("--input", input_path, "records file (csv or json)")->required();
    rank->add_option("--input-format", input_format, "csv|json")->capture_default_str();

    int resolution = 100;
    double lo = 0.005, hi = 0.995;
    std::string out_path;
    auto* sweep = app.add_subcommand(
        "sweep", "emit a (e1,e2) grid of all three metrics as CSV");
    sweep->fallthrough();
    sweep->add_option("--resolution", resolution, "points per axis")->capture_default_str();
    sweep->add_option("--lo", lo, "lower rate bound")->capture_default_str();
    sweep->add_option("--hi", hi, "upper rate bound")->capture_default_str();
    sweep->add_option("--out", out_path, "output CSV path")->required();

    std::string rates_spec, variant_spec = "arcsine_z";
    std::uint64_t reps = 100000, seed = 0, n = 0, n_cap = 10'000'000;
    unsigned threads = 0;
    auto* validate = app.add_subcommand(
        "validate", "Monte Carlo power / minimal-N oracle run");
    validate->fallthrough();
    validate->add_option("--rates", rates_spec, "comma-separated error rates (k >= 2)")
        ->required();
    validate->add_option("--variant", variant_spec,
                         "arcsine_z|wald_pooled_z|pearson_chisq")
        ->capture_default_str();
    validate->add_option("--reps", reps, "Monte Carlo replications")->capture_default_str();
    validate->add_option("--seed", seed, "RNG seed")->capture_default_str();
    validate->add_option("--n", n, "estimate power at this per-group size");
    validate->add_option("--n-cap", n_cap, "minimal-N search bound")->capture_default_str();
    validate->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* tables = app.add_subcommand(
        "tables", "reproduce the published reference tables, PASS/FAIL per cell");
    tables->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) {
            write_compute_report(std::cout, ErrorRate(e1), ErrorRate(e2), g.params(),
                                 g.output_format());
            return 0;
        }
        if (*rank) {
            std::ifstream in(input_path);
            if (!in) {
                std::cerr << "error: cannot open " << input_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            RecordFormat fmt =
                input_format == "json" ? RecordFormat::json : RecordFormat::csv;
            DemographicDataset ds = assemble(parse_records(buf.str(), fmt));
            write_rank_report(std::cout, std::cerr, ds, g.params(), g.output_format());
            return 0;
        }
        if (*sweep) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 2;
            }
            write_sweep_csv(out, SweepConfig{resolution, lo, hi}, g.params());
            return 0;
        }
        if (*validate) {
            return run_validate(g, rates_spec, variant_spec, reps, seed, n, n_cap,
                                threads);
        }
        if (*tables) {
            return run_golden_tables(std::cout) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
