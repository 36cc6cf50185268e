#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "quadbound/claims.hpp"
#include "quadbound/families.hpp"
#include "quadbound/oracle.hpp"

using namespace quadbound;

namespace {

const Interval unit{0.0, 1.0};

FunctionModel square() {
    return testing::model([](double t) { return t * t; }, [](double t) { return 2.0 * t; }, unit,
                          "x^2");
}
FunctionModel half_square() {
    return testing::model([](double t) { return 0.5 * t * t; }, [](double t) { return t; }, unit,
                          "x^2/2");
}

double member_mean(const FamilyMember& m, double tol = 1e-12) {
    return integrate(m.model.eval, m.model.domain, tol, m.kinks).value / m.model.domain.width();
}

}  // namespace

TEST_CASE("case metadata is fixed") {
    CHECK(case_status(InequalityCase::T3) == CaseStatus::Verified);
    CHECK(case_status(InequalityCase::C1) == CaseStatus::Verified);
    CHECK(case_status(InequalityCase::T4) == CaseStatus::Claimed);
    CHECK(case_status(InequalityCase::C2) == CaseStatus::Claimed);
    CHECK(case_status(InequalityCase::T5) == CaseStatus::Claimed);
    CHECK(case_status(InequalityCase::C3) == CaseStatus::Claimed);
    CHECK(case_status(InequalityCase::DW) == CaseStatus::Reference);
    CHECK(case_status(InequalityCase::GS) == CaseStatus::Reference);
    CHECK(parse_case("C2") == InequalityCase::C2);
    CHECK(!parse_case("c2").has_value());
}

TEST_CASE("window: direct substitutions") {
    CHECK(hayashi_window(0.0, 1.0, unit, {0.0, 1.0, Provenance::Exact}) == 1.0);
    CHECK(hayashi_window(0.0, 1.0, unit, {0.0, 2.0, Provenance::Exact}) == 0.5);
    // constant g with lo == hi == 0: zero by convention
    CHECK(hayashi_window(3.0, 3.0, unit, {0.0, 0.0, Provenance::Exact}) == 0.0);
}

TEST_CASE("window: mean slope outside the bounds") {
    CHECK_THROWS_AS((void)hayashi_window(0.0, 1.0, unit, {0.0, 0.5, Provenance::Asserted}),
                    MeanSlopeOutOfRange);
    // within the default slack it clamps instead
    CHECK(hayashi_window(0.0, 1.0 + 1e-10, unit, {0.0, 1.0, Provenance::Asserted}) == 1.0);
}

TEST_CASE("rule values") {
    CHECK(rule_value(InequalityCase::C1, square(), unit, 0.5) == 0.5);
    CHECK(rule_value(InequalityCase::C2, half_square(), unit, 0.5) == doctest::Approx(0.125));
    CHECK(rule_value(InequalityCase::C3, half_square(), unit, 0.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(
        (void)rule_value(InequalityCase::T5, testing::model([](double t) { return t; },
                                                            [](double) { return 1.0; }, unit),
                         unit, 0.75),
        PointOutOfRange);
    CHECK_THROWS_AS((void)rule_value(InequalityCase::C1, square(), unit, 1.5), PointOutOfRange);
}

TEST_CASE("half widths: direct substitutions") {
    auto c1 = half_widths(InequalityCase::C1, 0.5, unit, {0.0, 2.0, Provenance::Exact});
    CHECK(c1.primary == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c1.coarse == doctest::Approx(0.25).epsilon(1e-14));

    auto c2 = half_widths(InequalityCase::C2, 0.5, unit, {0.0, 1.0, Provenance::Exact});
    CHECK(c2.primary == doctest::Approx(0.0));
    CHECK(c2.coarse == doctest::Approx(1.0 / 16.0));

    auto c3 = half_widths(InequalityCase::C3, 0.5, unit, {0.0, 1.0, Provenance::Exact});
    CHECK(c3.primary == doctest::Approx(-0.125));  // negative beyond d/3, by design
    CHECK(c3.coarse == doctest::Approx(1.0 / 24.0));

    auto dw = half_widths(InequalityCase::DW, 0.3, unit, {0.0, 1.0, Provenance::Exact});
    CHECK(dw.primary == dw.coarse);
    CHECK(dw.coarse == doctest::Approx(0.25));

    auto gs = half_widths(InequalityCase::GS, 0.3, unit, {0.0, 1.0, Provenance::Exact});
    CHECK(gs.coarse == doctest::Approx(0.125));
}

TEST_CASE("equality witness: identity on the unit interval") {
    auto g = testing::model([](double t) { return t; }, [](double) { return 1.0; }, unit, "x");
    auto ev = evaluate_claim(InequalityCase::C1, g, unit, 0.5, {0.0, 1.0, Provenance::Exact}, 0.5);
    CHECK(std::fabs(ev.lhs) <= 1e-12);
    CHECK(std::fabs(ev.half_width_primary) <= 1e-12);
}

TEST_CASE("worked weighted-endpoint bound on x^2") {
    const double mean = integrate(square().eval, unit, 1e-12).value;  // 1/3
    auto ev =
        evaluate_claim(InequalityCase::C1, square(), unit, 0.5, {0.0, 2.0, Provenance::Exact}, mean);
    CHECK(testing::close(ev.lhs, 1.0 / 6.0, 1e-10));
    CHECK(ev.half_width_primary == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ev.half_width_coarse == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(testing::close(ev.slack_primary, 1.0 / 12.0, 1e-10));
    CHECK(bracket_deficit(ev) <= 1e-12);
}

TEST_CASE("point-rule claim fails on x^2/2 at the midpoint") {
    const double mean = integrate(half_square().eval, unit, 1e-12).value;  // 1/6
    auto ev = evaluate_claim(InequalityCase::C2, half_square(), unit, 0.5,
                             {0.0, 1.0, Provenance::Exact}, mean);
    CHECK(testing::close(ev.lhs, 1.0 / 24.0, 1e-10));
    CHECK(std::fabs(ev.half_width_primary) <= 1e-14);
    CHECK(testing::close(ev.slack_primary, -1.0 / 24.0, 1e-10));  // violated
    CHECK(ev.slack_coarse > 0.0);  // the coarse 1/16 still holds here
}

TEST_CASE("window-form dominance: sampled over the window range") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pick(-5.0, 5.0);
    for (int k = 0; k < 10; ++k) {
        const double a = pick(rng);
        const double d = 0.3 + std::fabs(pick(rng));
        const Interval iv{a, a + d};
        const double tol = 1e-12 * std::max(1.0, d * d);
        for (int i = 0; i <= 10000; ++i) {
            const double w = d * i / 10000.0;
            CHECK(0.5 * w * (d - w) <= d * d / 8.0 + tol);
            CHECK(w * d / 2.0 - w * w <= d * d / 16.0 + tol);
            CHECK(w * (d / 2.0 - 1.5 * w) <= d * d / 24.0 + tol);
        }
    }
}

TEST_CASE("bracket consistency on random dprofile members") {
    FamilyConfig cfg;
    cfg.tag = FamilyTag::DProfile;
    for (int index = 0; index < 40; ++index) {
        const FamilyMember m = sample_family(cfg, 2024, index);
        const double mean = member_mean(m);
        for (InequalityCase c : {InequalityCase::T3, InequalityCase::C1}) {
            for (int i = 0; i <= 16; ++i) {
                const double x = i / 16.0;
                auto ev = evaluate_claim(c, m.model, m.model.domain, x, m.bounds, mean);
                CHECK(ev.bracket_low <= ev.bracket_high + 1e-15);
                const double hw = 0.5 * (ev.bracket_high - ev.bracket_low);
                CHECK(testing::close_rel(hw, ev.half_width_primary, 1e-12));
                CHECK(bracket_deficit(ev) <= 1e-10);
                CHECK(ev.lhs <= ev.half_width_primary + 1e-10);
                CHECK(ev.half_width_primary <= ev.half_width_coarse + 1e-14);
            }
        }
    }
}

TEST_CASE("normalized cases reduce to the general ones") {
    FamilyConfig cfg;
    cfg.tag = FamilyTag::DProfile;
    cfg.normalized_derivative = true;  // clamps (0, 1) on the unit interval
    const DerivativeBounds normalized{0.0, 1.0, Provenance::Exact};
    const std::pair<InequalityCase, InequalityCase> pairs[] = {
        {InequalityCase::T3, InequalityCase::C1},
        {InequalityCase::T4, InequalityCase::C2},
        {InequalityCase::T5, InequalityCase::C3},
    };
    for (int index = 0; index < 10; ++index) {
        const FamilyMember m = sample_family(cfg, 7, index);
        const double mean = member_mean(m);
        for (auto [t_case, c_case] : pairs) {
            const Interval adm = admissible_x(t_case, unit);
            for (int i = 0; i <= 8; ++i) {
                const double x = adm.a + (adm.b - adm.a) * i / 8.0;
                auto evt = evaluate_claim(t_case, m.model, unit, x, m.bounds, mean);
                auto evc = evaluate_claim(c_case, m.model, unit, x, normalized, mean);
                CHECK(std::fabs(evt.lhs - evc.lhs) <= 1e-14);
                CHECK(std::fabs(evt.half_width_primary - evc.half_width_primary) <= 1e-14);
                CHECK(std::fabs(evt.half_width_coarse - evc.half_width_coarse) <= 1e-14);
            }
        }
    }
}

TEST_CASE("midpoint reduction: corrected two-sided trapezoid constant") {
    // At x = (a+b)/2 the primary width equals
    // (D - lo*d)(hi*d - D) / (2 (hi-lo) d) with D = g(b)-g(a).
    FamilyConfig cfg;
    cfg.tag = FamilyTag::DProfile;
    cfg.clamp_lo = -0.5;
    cfg.clamp_hi = 1.5;
    for (int index = 0; index < 20; ++index) {
        const FamilyMember m = sample_family(cfg, 5, index);
        const double mean = member_mean(m);
        const double D = m.model(1.0) - m.model(0.0);
        auto ev = evaluate_claim(InequalityCase::C1, m.model, unit, 0.5, m.bounds, mean);
        const double expected = (D - m.bounds.lo) * (m.bounds.hi - D) /
                                (2.0 * m.bounds.oscillation());
        CHECK(testing::close_rel(ev.half_width_primary, expected, 1e-12));
    }
}

TEST_CASE("affine invariance of the weighted-endpoint evaluation") {
    auto corpus = default_corpus();
    const CorpusEntry& e = corpus[7];
    const CorpusEntry u = remap_to_unit(e);
    const Interval iv = e.model.domain;
    const double mean = integrate(e.model.eval, iv, 1e-12, e.kinks).value / iv.width();
    const double mean_u = integrate(u.model.eval, u.model.domain, 1e-12, u.kinks).value;
    for (int i = 0; i <= 8; ++i) {
        const double s = i / 8.0;
        auto ev = evaluate_claim(InequalityCase::C1, e.model, iv, iv.a + iv.width() * s,
                                 e.bounds, mean);
        auto evu = evaluate_claim(InequalityCase::C1, u.model, u.model.domain, s, u.bounds, mean_u);
        CHECK(testing::close_rel(ev.lhs, evu.lhs, 1e-10));
        CHECK(testing::close_rel(ev.half_width_primary, evu.half_width_primary, 1e-10));
        CHECK(testing::close_rel(ev.half_width_coarse, evu.half_width_coarse, 1e-10));
    }
}
