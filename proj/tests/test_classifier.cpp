#include <doctest.h>

#include <string>

#include "imcf/classifier.hpp"

using namespace imcf;

namespace {

const CompletenessReport& report_for(const std::vector<CompletenessReport>& reports,
                                     Branch branch) {
  for (const CompletenessReport& r : reports)
    if (r.branch == branch) return r;
  throw std::runtime_error("branch report missing");
}

}  // namespace

TEST_CASE("shape class of the undercritical solution") {
  CHECK(shape_class({1.0, 0.0}) == ShapeClass::Outside);    // c^2 = 1 > -4d = 0
  CHECK(shape_class({1.0, -1.0}) == ShapeClass::Inside);    // c^2 = 1 < -4d = 4
  CHECK(shape_class({1.0, -0.25}) == ShapeClass::OnRay);    // c^2 = 1 = -4d exactly
  CHECK(shape_class({0.5, 0.5}) == ShapeClass::Outside);    // -4d < 0 < c^2

  CHECK_THROWS_AS(shape_class({3.0, 0.0}), AdmissibilityError);   // overcritical
  CHECK_THROWS_AS(shape_class({2.0, 0.0}), AdmissibilityError);   // critical
  CHECK_THROWS_AS(shape_class({0.0, 0.0}), DegenerateMotionError);

  CHECK(std::string(shape_class_name(ShapeClass::Inside)) == "inside-spiral");
  CHECK(std::string(shape_class_name(ShapeClass::OnRay)) == "on-ray");
  CHECK(std::string(shape_class_name(ShapeClass::Outside)) == "outside-spiral");
}

TEST_CASE("the circle is the only compact complete branch") {
  const CompletenessReport circle = completeness({0.0, 1.0}, Branch::CriticalSpiral);
  CHECK(circle.compact);
  CHECK(circle.complete);
  CHECK(circle.smooth);
  REQUIRE(circle.embedded.has_value());
  CHECK(*circle.embedded);

  // the circle also appears as a zero-growth spiral branch: (c, 1) with
  // c > 0 makes beta = 0
  const CompletenessReport beta_circle = completeness({3.0, 1.0}, Branch::SpiralBeta);
  CHECK(beta_circle.compact);
  CHECK(beta_circle.complete);
}

TEST_CASE("logarithmic spirals are smooth, embedded, incomplete") {
  for (auto [params, branch] :
       {std::pair<SolitonParams, Branch>{{2.0, 0.0}, Branch::CriticalSpiral},
        std::pair<SolitonParams, Branch>{{3.0, 0.0}, Branch::SpiralAlpha},
        std::pair<SolitonParams, Branch>{{3.0, 0.0}, Branch::SpiralBeta}}) {
    const CompletenessReport r = completeness(params, branch);
    CHECK(r.smooth);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.compact);
    REQUIRE(r.embedded.has_value());
    CHECK(*r.embedded);
  }
}

TEST_CASE("overcritical plus branch completeness depends on d") {
  // d > 1: complete but with infinitely many self-intersections
  const CompletenessReport expanding = completeness({0.0, 2.0}, Branch::OvercriticalPlus);
  CHECK(expanding.smooth);
  CHECK(expanding.complete);
  CHECK_FALSE(expanding.compact);
  REQUIRE(expanding.embedded.has_value());
  CHECK_FALSE(*expanding.embedded);

  // d = 1: complete, limits onto a circle, still not embedded
  const CompletenessReport marginal = completeness({3.0, 1.0}, Branch::OvercriticalPlus);
  CHECK(marginal.complete);
  REQUIRE(marginal.embedded.has_value());
  CHECK_FALSE(*marginal.embedded);

  // d < 1: finite length toward one end; embeddedness left undetermined
  const CompletenessReport short_end = completeness({3.0, 0.0}, Branch::OvercriticalPlus);
  CHECK(short_end.smooth);
  CHECK_FALSE(short_end.complete);
  CHECK_FALSE(short_end.embedded.has_value());
}

TEST_CASE("cusped branches are neither smooth nor complete") {
  for (auto [params, branch] :
       {std::pair<SolitonParams, Branch>{{2.0, 0.0}, Branch::CriticalGeneral},
        std::pair<SolitonParams, Branch>{{3.0, 0.0}, Branch::OvercriticalMinus},
        std::pair<SolitonParams, Branch>{{1.0, 0.0}, Branch::UndercriticalGeneral},
        std::pair<SolitonParams, Branch>{{1.0, 0.0}, Branch::TranslatingCycloid}}) {
    const CompletenessReport r = completeness(params, branch);
    CHECK_FALSE(r.smooth);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.compact);
  }
}

TEST_CASE("undercritical report names the shape class") {
  const CompletenessReport outside = completeness({1.0, 0.0}, Branch::UndercriticalGeneral);
  CHECK(outside.notes.find("outside-spiral") != std::string::npos);
  const CompletenessReport inside = completeness({1.0, -1.0}, Branch::UndercriticalGeneral);
  CHECK(inside.notes.find("inside-spiral") != std::string::npos);
}

TEST_CASE("per-regime report lists") {
  CHECK(completeness_all({2.0, 0.0}).size() == 2);
  CHECK(completeness_all({3.0, 0.0}).size() == 4);
  CHECK(completeness_all({1.0, 0.0}).size() == 1);
  const auto over = completeness_all({3.0, 0.0});
  CHECK(report_for(over, Branch::SpiralAlpha).smooth);
  CHECK_FALSE(report_for(over, Branch::OvercriticalMinus).smooth);
  CHECK_THROWS_AS(completeness({1.0, 0.0}, Branch::SpiralAlpha), AdmissibilityError);
}
