#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "quadbound/families.hpp"
#include "quadbound/oracle.hpp"

using namespace quadbound;

namespace {
FamilyConfig config_for(FamilyTag tag) {
    FamilyConfig cfg;
    cfg.tag = tag;
    return cfg;
}
}  // namespace

TEST_CASE("canonical members") {
    auto cfg = config_for(FamilyTag::Canonical);
    auto m0 = sample_family(cfg, 123, 0);
    CHECK(m0.model(0.7) == 0.7);
    CHECK(m0.bounds.lo == 0.0);
    CHECK(m0.bounds.hi == 1.0);
    CHECK(m0.bounds.provenance == Provenance::Exact);

    auto m1 = sample_family(cfg, 123, 1);
    CHECK(m1.model(0.5) == doctest::Approx(0.125));
    CHECK(m1.model.deriv(0.25) == 0.25);

    auto m2 = sample_family(cfg, 123, 2);
    CHECK(m2.model(0.25) == 0.25);
    CHECK(m2.model(0.75) == 0.5);
    REQUIRE(m2.kinks.size() == 1);
    CHECK(m2.kinks[0] == 0.5);

    // index wraps mod 3, seed is ignored
    CHECK(sample_family(cfg, 9, 5).name == m2.name);
    CHECK_THROWS_AS((void)sample_family(cfg, 9, -1), BadFamilyParameters);
}

TEST_CASE("dprofile members are deterministic with exact-by-construction bounds") {
    auto cfg = config_for(FamilyTag::DProfile);
    auto a = sample_family(cfg, 42, 7);
    auto b = sample_family(cfg, 42, 7);
    CHECK(a.theta == b.theta);
    CHECK(a.model(0.37) == b.model(0.37));

    for (int index = 0; index < 25; ++index) {
        auto m = sample_family(cfg, 42, index);
        REQUIRE(static_cast<int>(m.theta.size()) == cfg.dprofile_nodes);
        for (int i = 0; i <= 200; ++i) {
            const double t = i / 200.0;
            const double d = m.model.deriv(t);
            CHECK(d >= m.bounds.lo - 1e-15);
            CHECK(d <= m.bounds.hi + 1e-15);
        }
        // g really is the antiderivative: endpoint difference == integral of g'
        const double integral = integrate(m.model.deriv, m.model.domain, 1e-12, m.kinks).value;
        CHECK(testing::close(m.model(1.0) - m.model(0.0), integral, 1e-10));
    }
}

TEST_CASE("quadratic members carry exact endpoint-derived bounds") {
    auto cfg = config_for(FamilyTag::Quadratic);
    for (int index = 0; index < 25; ++index) {
        auto m = sample_family(cfg, 3, index);
        const double da = m.model.deriv(0.0);
        const double db = m.model.deriv(1.0);
        CHECK(m.bounds.lo == std::min(da, db));
        CHECK(m.bounds.hi == std::max(da, db));
    }
}

TEST_CASE("normalized quadratics keep g' inside [0, b-a]") {
    auto cfg = config_for(FamilyTag::Quadratic);
    cfg.domain = Interval{-1.0, 2.5};
    cfg.normalized_derivative = true;
    for (int index = 0; index < 25; ++index) {
        auto m = sample_family(cfg, 11, index);
        for (int i = 0; i <= 50; ++i) {
            const double t = cfg.domain.a + cfg.domain.width() * i / 50.0;
            const double d = m.model.deriv(t);
            CHECK(d >= -1e-12);
            CHECK(d <= cfg.domain.width() + 1e-12);
        }
    }
}

TEST_CASE("composite family interleaves after the canonical trio") {
    auto cfg = config_for(FamilyTag::All);
    CHECK(sample_family(cfg, 1, 0).name == "canonical:x");
    CHECK(sample_family(cfg, 1, 1).name == "canonical:x^2/2");
    CHECK(sample_family(cfg, 1, 2).name == "canonical:min(x,1/2)");
    CHECK(sample_family(cfg, 1, 3).name == "quadratic");
    CHECK(sample_family(cfg, 1, 4).name.substr(0, 8) == "dprofile");
    // sub-draws match the standalone families
    auto quad_cfg = config_for(FamilyTag::Quadratic);
    CHECK(sample_family(cfg, 1, 5).theta == sample_family(quad_cfg, 1, 1).theta);
}

TEST_CASE("member_from_theta reproduces sampled members") {
    for (FamilyTag tag : {FamilyTag::Quadratic, FamilyTag::DProfile}) {
        auto cfg = config_for(tag);
        auto drawn = sample_family(cfg, 99, 4);
        auto rebuilt = member_from_theta(cfg, 99, 4, drawn.theta);
        for (int i = 0; i <= 20; ++i) {
            const double t = i / 20.0;
            CHECK(drawn.model(t) == rebuilt.model(t));
        }
        auto box = theta_box(cfg, 4);
        REQUIRE(box.lo.size() == drawn.theta.size());
        for (std::size_t i = 0; i < box.lo.size(); ++i) {
            CHECK(drawn.theta[i] >= box.lo[i]);
            CHECK(drawn.theta[i] <= box.hi[i]);
        }
    }
}

TEST_CASE("default corpus: 200 entries with valid exact bounds") {
    auto corpus = default_corpus();
    REQUIRE(corpus.size() == 200);
    for (const auto& e : corpus) {
        const Interval iv = e.model.domain;
        REQUIRE(iv.a < iv.b);
        CHECK(e.bounds.provenance == Provenance::Exact);
        for (int i = 0; i <= 64; ++i) {
            const double t = iv.a + iv.width() * i / 64.0;
            const double d = e.model.deriv(t);
            CHECK(d >= e.bounds.lo - 1e-12);
            CHECK(d <= e.bounds.hi + 1e-12);
        }
        for (double k : e.kinks) CHECK(iv.contains(k));
    }
}

TEST_CASE("remap to the unit interval preserves values and scales bounds") {
    auto corpus = default_corpus();
    const auto& e = corpus[42];
    auto u = remap_to_unit(e);
    const Interval iv = e.model.domain;
    CHECK(u.model.domain.a == 0.0);
    CHECK(u.model.domain.b == 1.0);
    CHECK(u.bounds.lo == doctest::Approx(iv.width() * e.bounds.lo));
    for (int i = 0; i <= 16; ++i) {
        const double s = i / 16.0;
        CHECK(u.model(s) == doctest::Approx(e.model(iv.a + iv.width() * s)));
    }
}

TEST_CASE("normalized corpus keeps g' in [0, b-a]") {
    const Interval iv{0.5, 2.75};
    auto corpus = normalized_corpus(iv);
    REQUIRE(corpus.size() == 50);
    for (const auto& e : corpus) {
        for (int i = 0; i <= 64; ++i) {
            const double t = iv.a + iv.width() * i / 64.0;
            const double d = e.model.deriv(t);
            CHECK(d >= -1e-12);
            CHECK(d <= iv.width() + 1e-12);
        }
    }
}
