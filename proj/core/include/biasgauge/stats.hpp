#pragma once

#include <cstdint>
#include <optional>

namespace biasgauge {

// A per-demographic misclassification proportion. Construction rejects
// anything outside [0,1], including NaN and infinities.
class ErrorRate {
  public:
    explicit ErrorRate(double value);
    double value() const noexcept { return value_; }

    friend bool operator==(ErrorRate a, ErrorRate b) noexcept {
        return a.value_ == b.value_;
    }

  private:
    double value_;
};

enum class Sided { one, two };

// Significance level, target power, and sidedness of the detection test.
// Owns the z-quantile convention: z_alpha is the upper critical value at
// alpha (one-sided) or alpha/2 (two-sided), z_beta = Phi^-1(power).
class TestParams {
  public:
    TestParams();
    TestParams(double alpha, double power, Sided sided = Sided::one);

    double alpha() const noexcept { return alpha_; }
    double power() const noexcept { return power_; }
    Sided sided() const noexcept { return sided_; }
    double z_alpha() const noexcept { return z_alpha_; }
    double z_beta() const noexcept { return z_beta_; }

  private:
    double alpha_;
    double power_;
    Sided sided_;
    double z_alpha_;
    double z_beta_;
};

// Sample size needed per demographic group. raw is the exact formula value
// (+inf when the rates coincide); ceiled is absent exactly in that case.
struct SampleSizeResult {
    double raw;
    std::optional<std::uint64_t> ceiled;

    bool unbounded() const noexcept { return !ceiled.has_value(); }
    // Both groups together.
    double total() const noexcept { return 2.0 * raw; }
};

// Standard-normal inverse CDF. Throws std::domain_error for p outside (0,1).
double normal_quantile(double p);

// Chi-squared inverse CDF with df degrees of freedom.
double chisq_quantile(int df, double p);

// arcsin(sqrt(e)), the variance-stabilizing transform for proportions.
double arcsine_transform(ErrorRate e);

// Per-group sample size required to detect the gap between e1 and e2 at the
// given significance and power. Symmetric in e1, e2; unbounded iff e1 == e2.
SampleSizeResult sample_size(ErrorRate e1, ErrorRate e2, const TestParams& params);

// Ratio by which sample sizes under p1 relate to those under p2 for any
// fixed pair of distinct rates: ((z_a1 + z_b1) / (z_a2 + z_b2))^2.
double scale_ratio(const TestParams& p1, const TestParams& p2);

namespace detail {
// Regularized lower incomplete gamma P(a, x), used by chisq_quantile.
double regularized_gamma_p(double a, double x);
}  // namespace detail

}  // namespace biasgauge
