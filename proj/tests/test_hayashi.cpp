#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "quadbound/hayashi.hpp"
#include "quadbound/piecewise_linear.hpp"

using namespace quadbound;

namespace {

const Interval unit{0.0, 1.0};

FunctionModel one_minus_t() {
    return testing::model([](double t) { return 1.0 - t; }, [](double) { return -1.0; }, unit,
                          "1-x");
}

struct RandomPair {
    FunctionModel p;
    FunctionModel h;
    double A;
    std::vector<double> kinks;
};

// p = c0 - integral of a nonnegative piecewise-linear spline (nonincreasing
// by construction); h = piecewise linear through values in [0, A].
RandomPair random_pair(std::mt19937_64& rng, const Interval& iv) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int k = 5;
    std::vector<double> xs(k);
    for (int i = 0; i < k; ++i) xs[i] = iv.a + iv.width() * i / (k - 1.0);

    std::vector<double> qv(k), hv(k);
    const double A = 0.5 + 2.5 * unif(rng);
    for (int i = 0; i < k; ++i) {
        qv[i] = 2.0 * unif(rng);
        hv[i] = A * unif(rng);
    }
    PiecewiseLinear q(xs, qv);
    PiecewiseLinear h(xs, hv);
    const double c0 = 4.0 * (unif(rng) - 0.5);

    RandomPair out;
    out.p = testing::model([q, c0](double t) { return c0 - q.integral_from_start(t); },
                           [q](double t) { return -q(t); }, iv, "spline-p");
    out.h = testing::model([h](double t) { return h(t); }, nullptr, iv, "spline-h");
    out.A = A;
    out.kinks = q.interior_nodes();
    return out;
}

}  // namespace

TEST_CASE("closed-form triple for p=1-t, h=t") {
    auto h = testing::model([](double t) { return t; }, [](double) { return 1.0; }, unit, "x");
    auto triple = hayashi_margins(one_minus_t(), h, 1.0, unit, 1e-10);
    CHECK(testing::close(triple.lambda, 0.5, 1e-10));
    CHECK(testing::close(triple.lower, 0.125, 1e-9));
    CHECK(testing::close(triple.middle, 1.0 / 6.0, 1e-9));
    CHECK(testing::close(triple.upper, 0.375, 1e-9));
    CHECK(check_hayashi(one_minus_t(), h, 1.0, unit, 1e-10).pass);
}

TEST_CASE("constant p collapses the bracket to A*lambda") {
    auto p = testing::model([](double) { return 1.0 ; }, [](double) { return 0.0; }, unit, "1");
    auto h = testing::model([](double t) { return 0.5 + 0.25 * std::sin(6.0 * t); }, nullptr,
                            unit, "wiggle");
    const double A = 2.0;
    auto triple = hayashi_margins(p, h, A, unit, 1e-11);
    const double expect = A * triple.lambda;
    CHECK(testing::close(triple.lower, expect, 1e-9));
    CHECK(testing::close(triple.middle, expect, 1e-9));
    CHECK(testing::close(triple.upper, expect, 1e-9));
}

TEST_CASE("h = 1 forces lambda = b-a and equality throughout") {
    auto h = testing::model([](double) { return 1.0; }, nullptr, unit, "1");
    auto triple = hayashi_margins(one_minus_t(), h, 1.0, unit, 1e-10);
    CHECK(testing::close(triple.lambda, 1.0, 1e-10));
    CHECK(testing::close(triple.lower, 0.5, 1e-9));
    CHECK(testing::close(triple.middle, 0.5, 1e-9));
    CHECK(testing::close(triple.upper, 0.5, 1e-9));
}

TEST_CASE("input checks name the failure") {
    auto increasing = testing::model([](double t) { return t; }, nullptr, unit, "x");
    auto h = testing::model([](double t) { return t; }, nullptr, unit, "x");
    CHECK_THROWS_AS((void)hayashi_margins(increasing, h, 1.0, unit, 1e-10), NotNonincreasing);

    auto too_big = testing::model([](double t) { return 2.0 * t; }, nullptr, unit, "2x");
    CHECK_THROWS_AS((void)hayashi_margins(one_minus_t(), too_big, 1.0, unit, 1e-10),
                    RangeViolation);
    CHECK_THROWS_AS((void)hayashi_margins(one_minus_t(), h, 0.0, unit, 1e-10), Error);
}

TEST_CASE("Steffensen special case: A=1 window is the plain integral") {
    auto h = testing::model([](double t) { return t * t; }, nullptr, unit, "x^2");
    auto triple = hayashi_margins(one_minus_t(), h, 1.0, unit, 1e-11);
    CHECK(testing::close(triple.lambda, 1.0 / 3.0, 1e-10));
    CHECK(triple.lower <= triple.middle + 1e-9);
    CHECK(triple.middle <= triple.upper + 1e-9);
}

TEST_CASE("scaling h and A together preserves the window, scales members") {
    std::mt19937_64 rng(17);
    const Interval iv{-1.0, 2.0};
    auto pair = random_pair(rng, iv);
    const double s = 3.25;
    auto h_scaled = testing::model([f = pair.h.eval, s](double t) { return s * f(t); }, nullptr,
                                   iv, "s*h");
    auto t1 = hayashi_margins(pair.p, pair.h, pair.A, iv, 1e-11, pair.kinks);
    auto t2 = hayashi_margins(pair.p, h_scaled, s * pair.A, iv, 1e-11, pair.kinks);
    CHECK(testing::close_rel(t1.lambda, t2.lambda, 1e-12));
    CHECK(testing::close_rel(s * t1.lower, t2.lower, 1e-12));
    CHECK(testing::close_rel(s * t1.middle, t2.middle, 1e-12));
    CHECK(testing::close_rel(s * t1.upper, t2.upper, 1e-12));
}

TEST_CASE("randomized valid pairs never break the bracket") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 60; ++i) {
        const Interval iv{-0.5, 0.5 + (i % 4)};
        auto pair = random_pair(rng, iv);
        auto check = check_hayashi(pair.p, pair.h, pair.A, iv, 1e-10, pair.kinks);
        CAPTURE(i);
        CHECK(check.pass);
        CHECK(check.triple.margin_lower() >= -1e-9);
        CHECK(check.triple.margin_upper() >= -1e-9);
    }
}
