#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "quadbound/audit.hpp"

using namespace quadbound;
using nlohmann::json;

namespace {

const Interval unit{0.0, 1.0};
const DerivativeBounds unit_bounds{0.0, 1.0, Provenance::Exact};

FunctionModel half_square() {
    return testing::model([](double t) { return 0.5 * t * t; }, [](double t) { return t; }, unit,
                          "x^2/2");
}
FunctionModel min_half() {
    return testing::model([](double t) { return std::min(t, 0.5); },
                          [](double t) { return t < 0.5 ? 1.0 : 0.0; }, unit, "min(x,1/2)");
}
const std::vector<double> kMinKink{0.5};

AuditConfig quick(int samples, std::uint64_t seed) {
    AuditConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.hill_steps = 60;
    return cfg;
}

}  // namespace

TEST_CASE("closed-form violation: point rule on x^2/2 at the midpoint") {
    auto v = violation(InequalityCase::C2, half_square(), unit, 0.5, unit_bounds, 1e-10);
    CHECK(testing::close(v.primary, 1.0 / 24.0, 1e-9));
    CHECK(v.coarse < 0.0);  // 1/24 < 1/16
}

TEST_CASE("closed-form violation: symmetric rule on x^2/2 at the left end") {
    auto v = violation(InequalityCase::C3, half_square(), unit, 0.0, unit_bounds, 1e-10);
    CHECK(testing::close(v.evaluation.lhs, 1.0 / 12.0, 1e-9));
    CHECK(testing::close(v.evaluation.half_width_primary, -0.125, 1e-12));
    CHECK(testing::close(v.primary, 1.0 / 12.0 + 0.125, 1e-9));
    CHECK(testing::close(v.coarse, 1.0 / 24.0, 1e-9));  // 1/12 - 1/24

    // the two-point reference constant 1/8 still holds on the same instance
    auto gs = violation(InequalityCase::GS, half_square(), unit, 0.0, unit_bounds, 1e-10);
    CHECK(gs.primary < 0.0);
    CHECK(testing::close(gs.primary, 1.0 / 12.0 - 0.125, 1e-9));
}

TEST_CASE("closed-form tightness: weighted endpoints on min(x,1/2) at x=0") {
    auto v = violation(InequalityCase::C1, min_half(), unit, 0.0, unit_bounds, 1e-12, kMinKink);
    CHECK(testing::close(v.evaluation.lhs, 0.125, 1e-10));
    CHECK(testing::close(v.evaluation.half_width_primary, 0.125, 1e-12));
    CHECK(std::fabs(v.primary) <= 1e-10);  // equality witness, no violation
}

TEST_CASE("normalized point rule is refuted too") {
    auto v = violation(InequalityCase::T4, half_square(), unit, 0.5, unit_bounds, 1e-10);
    CHECK(v.primary > 1.0 / 24.0 - 1e-9);
}

TEST_CASE("audit: point rule over the canonical family") {
    auto report = audit(InequalityCase::C2, FamilyTag::Canonical, quick(3, 42));
    CHECK(report.verdict == AuditVerdict::ViolatedBoth);
    CHECK(report.worst_violation_primary >= 1.0 / 24.0 - 1e-9);
    CHECK(report.worst_violation_coarse >= 1.0 / 16.0 - 1e-9);
    CHECK(report.worst_violation_primary > 1e-11);  // clears the reporting threshold
    CHECK(report.witness.index >= 0);
}

TEST_CASE("audit: symmetric claim shows a negative printed bound") {
    auto report = audit(InequalityCase::T5, FamilyTag::Canonical, quick(3, 42));
    CHECK(report.verdict != AuditVerdict::NoViolationFound);
    CHECK(report.worst_violation_primary >= 1.0 / 12.0 + 0.125 - 1e-9);
}

TEST_CASE("audit: normalized point claim is refuted over the composite family") {
    auto report = audit(InequalityCase::T4, FamilyTag::All, quick(12, 3));
    CHECK(report.verdict != AuditVerdict::NoViolationFound);
    CHECK(report.worst_violation_primary >= 1.0 / 24.0 - 1e-9);
}

TEST_CASE("audit: verified weighted-endpoint case survives dprofiles") {
    auto report = audit(InequalityCase::C1, FamilyTag::DProfile, quick(120, 7));
    CHECK(report.verdict == AuditVerdict::NoViolationFound);
    CHECK(report.worst_violation_primary <= 1e-8);
    CHECK(report.worst_violation_coarse <= 1e-8);
}

TEST_CASE("audit: reference constants survive dprofiles") {
    for (InequalityCase c : {InequalityCase::DW, InequalityCase::GS}) {
        auto report = audit(c, FamilyTag::DProfile, quick(80, 7));
        CHECK(report.verdict == AuditVerdict::NoViolationFound);
    }
}

TEST_CASE("audit determinism: repeat runs and thread counts agree byte-for-byte") {
    auto cfg = quick(40, 42);
    auto a = report_to_json(audit(InequalityCase::C2, FamilyTag::DProfile, cfg));
    auto b = report_to_json(audit(InequalityCase::C2, FamilyTag::DProfile, cfg));
    CHECK(a == b);
    cfg.threads = 3;
    auto c = report_to_json(audit(InequalityCase::C2, FamilyTag::DProfile, cfg));
    CHECK(a == c);
}

TEST_CASE("report JSON carries the full schema") {
    auto report = audit(InequalityCase::C2, FamilyTag::All, quick(10, 5));
    const std::string text = report_to_json(report);
    CHECK(text.back() == '\n');
    const json j = json::parse(text);
    CHECK(j["case"] == "C2");
    CHECK(j["status"] == "CLAIMED");
    CHECK(j["family"] == "all");
    CHECK(j["samples"] == 10);
    CHECK(j["seed"] == 5);
    CHECK(j["worst_violation_primary"].is_number());
    CHECK(j["worst_violation_coarse"].is_number());
    CHECK(j["witness"]["theta"].is_array());
    CHECK(j["witness"]["x"].is_number());
    CHECK(j["witness"]["lhs"].is_number());
    CHECK(j["witness"]["width_primary"].is_number());
    CHECK(j["witness"]["width_coarse"].is_number());
    CHECK(j["verdict"].is_string());
}

TEST_CASE("report CSV is a header plus one row with matching columns") {
    auto report = audit(InequalityCase::GS, FamilyTag::Canonical, quick(3, 1));
    const std::string text = report_to_csv(report);
    const auto header_end = text.find('\n');
    REQUIRE(header_end != std::string::npos);
    const std::string header = text.substr(0, header_end);
    const std::string row = text.substr(header_end + 1);
    CHECK(std::count(header.begin(), header.end(), ',') == 13);
    CHECK(std::count(row.begin(), row.end(), ',') == 13);
    CHECK(row.find("GS") == 0);
}
