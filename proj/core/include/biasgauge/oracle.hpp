#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biasgauge/stats.hpp"

namespace biasgauge {

// Error rates of one classifier over k >= 2 demographics.
class RateVector {
  public:
    explicit RateVector(std::vector<ErrorRate> rates,
                        std::vector<std::string> labels = {});

    const std::vector<ErrorRate>& rates() const noexcept { return rates_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t k() const noexcept { return rates_.size(); }
    bool all_equal() const noexcept;

  private:
    std::vector<ErrorRate> rates_;
    std::vector<std::string> labels_;
};

enum class TestVariant { arcsine_z, wald_pooled_z, pearson_chisq };

struct OracleConfig {
    std::uint64_t replications = 100000;
    std::uint64_t seed = 0;
    TestVariant variant = TestVariant::arcsine_z;
    std::uint64_t n_cap = 10'000'000;
    // 0 = one worker per hardware thread. Results are identical for any
    // thread count: each replication draws from its own substream keyed on
    // (seed, replication index, group index).
    unsigned threads = 0;
};

struct PowerEstimate {
    double power_hat;
    double std_err;
    std::uint64_t replications;
    std::uint64_t n_per_group;
};

// Monte Carlo power of the configured test: per replication draw k
// independent Binomial(n_per_group, eps_i) error counts and apply the test
// at params' significance. Deterministic for fixed (seed, replications,
// inputs) regardless of thread count.
PowerEstimate simulate_power(const RateVector& rates, std::uint64_t n_per_group,
                             const TestParams& params, const OracleConfig& cfg);

// Smallest n_per_group whose estimated power reaches params.power():
// exponential doubling to bracket, bisection, then a +-2 confirmation scan.
// nullopt = search hit cfg.n_cap ("exceeds_cap").
std::optional<std::uint64_t> minimal_n(const RateVector& rates,
                                       const TestParams& params,
                                       const OracleConfig& cfg);

// The k-demographic sample size: minimal_n with the test forced to the
// Pearson chi-squared statistic on the k x 2 count table (df = k - 1).
std::optional<std::uint64_t> generalized_sample_size(const RateVector& rates,
                                                     const TestParams& params,
                                                     const OracleConfig& cfg);

}  // namespace biasgauge
