#include "biasgauge/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace biasgauge {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Acklam's rational approximation to the normal inverse CDF (~1e-9),
// refined below by a Halley step against the erfc-based CDF.
double acklam_initial(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

}  // namespace

ErrorRate::ErrorRate(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error("ErrorRate must lie in [0,1], got " +
                                std::to_string(value));
    }
}

TestParams::TestParams() : TestParams(0.05, 0.90, Sided::one) {}

TestParams::TestParams(double alpha, double power, Sided sided)
    : alpha_(alpha), power_(power), sided_(sided) {
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw std::domain_error("alpha must lie in (0, 0.5]");
    }
    if (!(power > 0.5 && power < 1.0)) {
        throw std::domain_error("power must lie in (0.5, 1)");
    }
    double tail = sided == Sided::one ? alpha : alpha / 2.0;
    z_alpha_ = normal_quantile(1.0 - tail);
    z_beta_ = normal_quantile(power);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile requires p in (0,1)");
    }
    double x = acklam_initial(p);
    // Halley refinement
    double err = normal_cdf(x) - p;
    double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

namespace detail {

double regularized_gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) {
        throw std::domain_error("regularized_gamma_p: invalid arguments");
    }
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series for P(a,x)
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a,x)
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

}  // namespace detail

double chisq_quantile(int df, double p) {
    if (df < 1) throw std::domain_error("chisq_quantile requires df >= 1");
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("chisq_quantile requires p in (0,1)");
    }
    const double a = 0.5 * df;
    auto cdf = [a](double x) { return detail::regularized_gamma_p(a, 0.5 * x); };

    // Wilson-Hilferty starting point, then bracket by doubling.
    double z = normal_quantile(p);
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    double guess = t > 0.0 ? df * t * t * t : 0.5;
    double hi = std::max(guess, 1e-8);
    while (cdf(hi) < p) hi *= 2.0;
    double lo = 0.0;
    if (cdf(hi * 0.5) < p) lo = hi * 0.5;

    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

double arcsine_transform(ErrorRate e) { return std::asin(std::sqrt(e.value())); }

SampleSizeResult sample_size(ErrorRate e1, ErrorRate e2, const TestParams& params) {
    if (e1 == e2) {
        return {std::numeric_limits<double>::infinity(), std::nullopt};
    }
    double gap = arcsine_transform(e1) - arcsine_transform(e2);
    double q = (params.z_alpha() + params.z_beta()) / gap;
    double raw = 0.5 * q * q;
    double c = std::ceil(raw);
    constexpr double kMaxExact = 9.0e18;
    std::uint64_t ceiled = c >= kMaxExact
                               ? std::numeric_limits<std::uint64_t>::max()
                               : static_cast<std::uint64_t>(c);
    return {raw, ceiled};
}

double scale_ratio(const TestParams& p1, const TestParams& p2) {
    double q = (p1.z_alpha() + p1.z_beta()) / (p2.z_alpha() + p2.z_beta());
    return q * q;
}

}  // namespace biasgauge
