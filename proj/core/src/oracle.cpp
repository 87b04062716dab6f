#include "biasgauge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace biasgauge {

namespace {

// Counter-based substream: the engine state is a hash of
// (seed, replication index, group index), advanced splitmix64-style.
// Every draw is therefore independent of execution order.
struct SplitMix64 {
    using result_type = std::uint64_t;
    std::uint64_t state;

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ULL; }

    std::uint64_t operator()() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    SplitMix64 g{a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2))};
    return g();
}

SplitMix64 substream(std::uint64_t seed, std::uint64_t rep, std::uint64_t group) {
    return SplitMix64{mix(mix(seed, rep), group)};
}

using BinomialParam = std::binomial_distribution<std::int64_t>::param_type;

std::int64_t draw_binomial(const BinomialParam& par, SplitMix64& eng) {
    std::binomial_distribution<std::int64_t> dist(par);
    return dist(eng);
}

struct TestContext {
    TestVariant variant;
    Sided sided;
    double z_alpha;
    double chisq_crit;  // pearson only
    std::size_t lo;     // group with the smaller true rate (k == 2)
    std::size_t hi;
    double n;           // n_per_group as double
    std::size_t k;
};

bool reject(const TestContext& ctx, const std::vector<std::int64_t>& counts) {
    const double n = ctx.n;
    switch (ctx.variant) {
        case TestVariant::arcsine_z: {
            double t_lo = std::asin(std::sqrt(counts[ctx.lo] / n));
            double t_hi = std::asin(std::sqrt(counts[ctx.hi] / n));
            double z = (t_hi - t_lo) * std::sqrt(2.0 * n);
            return ctx.sided == Sided::one ? z > ctx.z_alpha
                                           : std::fabs(z) > ctx.z_alpha;
        }
        case TestVariant::wald_pooled_z: {
            double x_lo = static_cast<double>(counts[ctx.lo]);
            double x_hi = static_cast<double>(counts[ctx.hi]);
            double pooled = (x_lo + x_hi) / (2.0 * n);
            if (pooled <= 0.0 || pooled >= 1.0) return false;
            double se = std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
            double z = (x_hi / n - x_lo / n) / se;
            return ctx.sided == Sided::one ? z > ctx.z_alpha
                                           : std::fabs(z) > ctx.z_alpha;
        }
        case TestVariant::pearson_chisq: {
            std::int64_t total = 0;
            for (std::int64_t c : counts) total += c;
            const double kn = ctx.k * n;
            if (total == 0 || static_cast<double>(total) == kn) return false;
            double pooled = static_cast<double>(total) / kn;
            double e_err = n * pooled;
            double e_ok = n * (1.0 - pooled);
            double weight = 1.0 / e_err + 1.0 / e_ok;
            double stat = 0.0;
            for (std::int64_t c : counts) {
                double dev = static_cast<double>(c) - e_err;
                stat += dev * dev * weight;
            }
            return stat > ctx.chisq_crit;
        }
    }
    return false;
}

unsigned worker_count(const OracleConfig& cfg) {
    unsigned t = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    return std::max(1u, t);
}

}  // namespace

RateVector::RateVector(std::vector<ErrorRate> rates, std::vector<std::string> labels)
    : rates_(std::move(rates)), labels_(std::move(labels)) {
    if (rates_.size() < 2) {
        throw std::invalid_argument("RateVector requires at least 2 demographics");
    }
    if (!labels_.empty() && labels_.size() != rates_.size()) {
        throw std::invalid_argument("RateVector labels/rates size mismatch");
    }
}

bool RateVector::all_equal() const noexcept {
    for (const ErrorRate& r : rates_) {
        if (!(r == rates_.front())) return false;
    }
    return true;
}

PowerEstimate simulate_power(const RateVector& rates, std::uint64_t n_per_group,
                             const TestParams& params, const OracleConfig& cfg) {
    const std::size_t k = rates.k();
    if (n_per_group < 2) {
        throw std::invalid_argument("simulate_power requires n_per_group >= 2");
    }
    if (cfg.replications < 1000) {
        throw std::invalid_argument("simulate_power requires >= 1000 replications");
    }
    if (k != 2 && cfg.variant != TestVariant::pearson_chisq) {
        throw std::invalid_argument(
            "arcsine_z and wald_pooled_z apply to exactly 2 demographics");
    }

    TestContext ctx{};
    ctx.variant = cfg.variant;
    ctx.sided = params.sided();
    ctx.z_alpha = params.z_alpha();
    ctx.n = static_cast<double>(n_per_group);
    ctx.k = k;
    ctx.lo = 0;
    ctx.hi = 1;
    if (k == 2 && rates.rates()[0].value() > rates.rates()[1].value()) {
        ctx.lo = 1;
        ctx.hi = 0;
    }
    if (cfg.variant == TestVariant::pearson_chisq) {
        // The chi-squared test is two-sided by construction; for k = 2 under
        // one-sided params the rejection region is matched via 2*alpha.
        double alpha_eff = (k == 2 && params.sided() == Sided::one)
                               ? std::min(1.0 - 1e-12, 2.0 * params.alpha())
                               : params.alpha();
        ctx.chisq_crit = chisq_quantile(static_cast<int>(k) - 1, 1.0 - alpha_eff);
    }

    std::vector<BinomialParam> pars;
    pars.reserve(k);
    for (const ErrorRate& r : rates.rates()) {
        pars.emplace_back(static_cast<std::int64_t>(n_per_group), r.value());
    }

    const std::uint64_t reps = cfg.replications;
    auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t rejections = 0;
        std::vector<std::int64_t> counts(k);
        for (std::uint64_t rep = begin; rep < end; ++rep) {
            for (std::size_t g = 0; g < k; ++g) {
                SplitMix64 eng = substream(cfg.seed, rep, g);
                counts[g] = draw_binomial(pars[g], eng);
            }
            if (reject(ctx, counts)) ++rejections;
        }
        return rejections;
    };

    std::uint64_t rejections = 0;
    unsigned workers = worker_count(cfg);
    if (workers <= 1 || reps < 2 * workers) {
        rejections = run_chunk(0, reps);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::uint64_t chunk = reps / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = w * chunk;
            std::uint64_t end = w + 1 == workers ? reps : begin + chunk;
            pool.emplace_back(
                [&, w, begin, end] { partial[w] = run_chunk(begin, end); });
        }
        for (std::thread& t : pool) t.join();
        for (std::uint64_t p : partial) rejections += p;
    }

    double power_hat = static_cast<double>(rejections) / static_cast<double>(reps);
    double std_err =
        std::sqrt(power_hat * (1.0 - power_hat) / static_cast<double>(reps));
    return PowerEstimate{power_hat, std_err, reps, n_per_group};
}

std::optional<std::uint64_t> minimal_n(const RateVector& rates,
                                       const TestParams& params,
                                       const OracleConfig& cfg) {
    const double target = params.power();
    auto power_at = [&](std::uint64_t n) {
        return simulate_power(rates, n, params, cfg).power_hat;
    };

    std::uint64_t hi = 2;
    if (hi > cfg.n_cap) return std::nullopt;
    if (power_at(hi) < target) {
        for (;;) {
            if (hi >= cfg.n_cap) return std::nullopt;
            std::uint64_t lo = hi;
            hi = std::min(hi * 2, cfg.n_cap);
            if (power_at(hi) >= target) {
                // bisect (lo, hi], treating power as monotone in n
                while (hi - lo > 1) {
                    std::uint64_t mid = lo + (hi - lo) / 2;
                    if (power_at(mid) >= target) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                break;
            }
            if (hi == cfg.n_cap) return std::nullopt;
        }
    }

    // Linear confirmation scan; absorbs the discreteness saw-tooth around hi.
    std::uint64_t from = hi > 4 ? hi - 2 : 2;
    std::uint64_t to = std::min(hi + 2, cfg.n_cap);
    for (std::uint64_t n = from; n <= to; ++n) {
        if (power_at(n) >= target) return n;
    }
    return hi;
}

std::optional<std::uint64_t> generalized_sample_size(const RateVector& rates,
                                                     const TestParams& params,
                                                     const OracleConfig& cfg) {
    OracleConfig chisq_cfg = cfg;
    chisq_cfg.variant = TestVariant::pearson_chisq;
    return minimal_n(rates, params, chisq_cfg);
}

}  // namespace biasgauge
