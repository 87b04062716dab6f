#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "biasgauge/stats.hpp"
#include "approx.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace biasgauge;

TEST_CASE("ErrorRate construction enforces [0,1]") {
    CHECK(ErrorRate(0.0).value() == 0.0);
    CHECK(ErrorRate(1.0).value() == 1.0);
    CHECK(ErrorRate(0.35).value() == testutil::approx(0.35));
    CHECK_THROWS_AS(ErrorRate(-0.001), std::domain_error);
    CHECK_THROWS_AS(ErrorRate(1.001), std::domain_error);
    CHECK_THROWS_AS(ErrorRate(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(ErrorRate(std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("TestParams validates ranges and owns the z convention") {
    TestParams d;
    CHECK(d.alpha() == 0.05);
    CHECK(d.power() == 0.90);
    CHECK(d.sided() == Sided::one);
    CHECK(d.z_alpha() == testutil::approx(1.6448536).epsilon(1e-7));
    CHECK(d.z_beta() == testutil::approx(1.2815516).epsilon(1e-7));

    TestParams two(0.05, 0.90, Sided::two);
    CHECK(two.z_alpha() == testutil::approx(1.9599640).epsilon(1e-7));

    CHECK_THROWS_AS(TestParams(0.0, 0.9), std::domain_error);
    CHECK_THROWS_AS(TestParams(0.6, 0.9), std::domain_error);
    CHECK_THROWS_AS(TestParams(0.05, 0.5), std::domain_error);
    CHECK_THROWS_AS(TestParams(0.05, 1.0), std::domain_error);
}

TEST_CASE("normal_quantile matches the series-CDF bisection oracle") {
    CHECK(normal_quantile(0.5) == testutil::approx(0.0).epsilon(0).margin(1e-12));
    // frozen from the oracle
    CHECK(normal_quantile(0.95) == testutil::approx(1.6448536).margin(1e-7));
    CHECK(normal_quantile(0.90) == testutil::approx(1.2815516).margin(1e-7));

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    for (int i = 0; i < 200; ++i) {
        double p = u(rng);
        CHECK(normal_quantile(p) ==
              testutil::approx(oracles::normal_quantile(p)).margin(1e-8));
    }
}

TEST_CASE("normal_quantile antisymmetry and domain errors") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(1e-6, 0.5);
    for (int i = 0; i < 500; ++i) {
        double p = u(rng);
        CHECK(normal_quantile(1.0 - p) ==
              testutil::approx(-normal_quantile(p)).margin(1e-8));
    }
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.2), std::domain_error);
}

TEST_CASE("chisq_quantile reference values") {
    // df=1: equals normal_quantile(1 - (1-p)/2)^2
    CHECK(chisq_quantile(1, 0.95) == testutil::approx(3.8414588).margin(1e-6));
    CHECK(chisq_quantile(1, 0.90) == testutil::approx(2.7055435).margin(1e-6));
    double z = oracles::normal_quantile(0.975);
    CHECK(chisq_quantile(1, 0.95) == testutil::approx(z * z).margin(1e-6));
    // df=2 closed form: -2 ln(1-p)
    CHECK(chisq_quantile(2, 0.95) ==
          testutil::approx(-2.0 * std::log(0.05)).margin(1e-8));
    CHECK(chisq_quantile(2, 0.95) == testutil::approx(5.9914645).margin(1e-6));
}

TEST_CASE("chisq_quantile agrees with Simpson quadrature of the density") {
    for (int df : {1, 2, 3, 5, 10}) {
        for (double p : {0.1, 0.5, 0.8, 0.95, 0.99}) {
            double x = chisq_quantile(df, p);
            CHECK(oracles::chisq_cdf_quadrature(df, x) ==
                  testutil::approx(p).margin(1e-6));
        }
    }
    CHECK_THROWS_AS(chisq_quantile(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(chisq_quantile(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(chisq_quantile(1, 1.0), std::domain_error);
}

TEST_CASE("arcsine_transform endpoints and monotonicity") {
    CHECK(arcsine_transform(ErrorRate(0.0)) == 0.0);
    CHECK(arcsine_transform(ErrorRate(1.0)) == testutil::approx(M_PI / 2).margin(1e-12));
    CHECK(arcsine_transform(ErrorRate(0.5)) == testutil::approx(M_PI / 4).margin(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double a = u(rng), b = u(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(arcsine_transform(ErrorRate(a)) < arcsine_transform(ErrorRate(b)));
    }
}

TEST_CASE("sample_size reproduces the published constant-diff/ratio rows") {
    TestParams d;
    auto n = [&](double a, double b) {
        return *sample_size(ErrorRate(a), ErrorRate(b), d).ceiled;
    };
    CHECK(n(0.10, 0.20) == 213);
    CHECK(n(0.00, 0.10) == 42);
    CHECK(n(0.05, 0.10) == 463);
    CHECK(n(0.20, 0.30) == 319);
    CHECK(n(0.20, 0.40) == 88);
}

TEST_CASE("sample_size: unbounded at equal rates, symmetric, positive") {
    TestParams d;
    SampleSizeResult eq = sample_size(ErrorRate(0.3), ErrorRate(0.3), d);
    CHECK(eq.unbounded());
    CHECK(std::isinf(eq.raw));

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        ErrorRate a(u(rng)), b(u(rng));
        SampleSizeResult ab = sample_size(a, b, d);
        SampleSizeResult ba = sample_size(b, a, d);
        CHECK(ab.raw == ba.raw);
        CHECK(ab.raw > 0.0);
        if (!ab.unbounded()) CHECK(*ab.ceiled == *ba.ceiled);
    }
}

TEST_CASE("scale_ratio examples and algebraic identity with sample_size") {
    TestParams d;
    CHECK(scale_ratio(d, d) == testutil::approx(1.0).margin(1e-15));

    TestParams halved(0.025, 0.90);
    // from the quantile oracle: ((1.6448536 + 1.2815516)/(1.9599640 + 1.2815516))^2
    double za1 = oracles::normal_quantile(0.95), zb = oracles::normal_quantile(0.90);
    double za2 = oracles::normal_quantile(0.975);
    double expected = std::pow((za1 + zb) / (za2 + zb), 2.0);
    CHECK(expected == testutil::approx(0.81503).margin(1e-4));
    CHECK(scale_ratio(d, halved) == testutil::approx(expected).margin(1e-8));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ua(0.005, 0.5), up(0.55, 0.99);
    for (int i = 0; i < 100; ++i) {
        TestParams p1(ua(rng), up(rng));
        TestParams p2(ua(rng), up(rng));
        double ratio = sample_size(ErrorRate(0.1), ErrorRate(0.2), p1).raw /
                       sample_size(ErrorRate(0.1), ErrorRate(0.2), p2).raw;
        CHECK(ratio == testutil::approx(scale_ratio(p1, p2)).epsilon(1e-12));
    }
}

TEST_CASE("scale invariance over random rate/params tuples") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ue(0.0, 1.0), ua(0.005, 0.5),
        up(0.55, 0.99);
    int done = 0;
    while (done < 1000) {
        double a = ue(rng), b = ue(rng);
        if (a == b) continue;
        TestParams p1(ua(rng), up(rng), rng() % 2 ? Sided::one : Sided::two);
        TestParams p2(ua(rng), up(rng), rng() % 2 ? Sided::one : Sided::two);
        double lhs = sample_size(ErrorRate(a), ErrorRate(b), p1).raw /
                     sample_size(ErrorRate(a), ErrorRate(b), p2).raw;
        double rhs = scale_ratio(p1, p2);
        CHECK(std::fabs(lhs - rhs) / rhs <= 1e-10);
        ++done;
    }
}

TEST_CASE("divergence as the gap closes (no-bias limit)") {
    TestParams d;
    for (double e1 : {0.1, 0.25, 0.4}) {
        double prev = 0.0;
        for (double g = 1e-2; g >= 1e-7 / 2; g /= 2.0) {
            double raw = sample_size(ErrorRate(e1), ErrorRate(e1 + g), d).raw;
            CHECK(raw > prev);
            prev = raw;
            if (g <= 1e-7) CHECK(raw > 1e9);
        }
    }
}

TEST_CASE("monotonicity in the larger rate") {
    TestParams d;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int done = 0;
    while (done < 10000) {
        double x[3] = {u(rng), u(rng), u(rng)};
        std::sort(x, x + 3);
        if (!(x[0] < x[1])) continue;
        double n12 = sample_size(ErrorRate(x[0]), ErrorRate(x[1]), d).raw;
        double n13 = sample_size(ErrorRate(x[0]), ErrorRate(x[2]), d).raw;
        CHECK(n13 <= n12);
        ++done;
    }
}

TEST_CASE("constant-difference shift toward 0.5 raises N") {
    TestParams d;
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    int done = 0;
    while (done < 10000) {
        double e1 = u(rng), e2 = u(rng);
        if (e1 > e2) std::swap(e1, e2);
        if (!(e2 < 0.5) || e1 == e2) continue;
        double shift = std::uniform_real_distribution<double>(0.0, 0.5 - e2)(rng);
        if (shift == 0.0) continue;
        double base = sample_size(ErrorRate(e1), ErrorRate(e2), d).raw;
        double shifted =
            sample_size(ErrorRate(e1 + shift), ErrorRate(e2 + shift), d).raw;
        CHECK(shifted >= base);
        ++done;
    }
}

TEST_CASE("constant-ratio scaling: larger rates mean smaller N") {
    TestParams d;
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    int done = 0;
    while (done < 10000) {
        double e1 = u(rng), e2 = u(rng);
        if (e1 > e2) std::swap(e1, e2);
        if (e1 <= 0.0 || e1 == e2) continue;
        double rmax = 1.0 / (2.0 * e2);
        if (rmax <= 1.0) continue;
        double r = std::uniform_real_distribution<double>(1.0, rmax)(rng);
        if (r == 1.0) continue;
        double base = sample_size(ErrorRate(e1), ErrorRate(e2), d).raw;
        double scaled = sample_size(ErrorRate(r * e1), ErrorRate(r * e2), d).raw;
        CHECK(scaled <= base);
        ++done;
    }
}

TEST_CASE("joint divergence toward (0,0) along fixed-ratio rays") {
    TestParams d;
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int done = 0;
    while (done < 10000) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (a == b || b == 0.0) continue;
        double prev = 0.0;
        bool ok = true;
        for (double t = 1.0; t > 1.0 / 64.0; t /= 2.0) {
            double raw = sample_size(ErrorRate(t * a), ErrorRate(t * b), d).raw;
            ok = ok && raw > prev;
            prev = raw;
        }
        CHECK(ok);
        ++done;
    }
}
