#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fixtures.hpp"
#include "torickgk/compactify.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/potential.hpp"

using namespace torickgk;
using tfx::thrown_kind;

namespace {

const CheckItem* find_item(const ReportDoc& doc, const std::string& name) {
  for (const auto& it : doc.items)
    if (it.name == name) return &it;
  return nullptr;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

GKStructure doubled_square() {
  auto P = tfx::square();
  PotentialSpec two = sum_potential(
      {guillemin_potential(P), guillemin_potential(P)});
  return make_structure(P, std::move(two), Mat::Zero(2, 2));
}

}  // namespace

TEST_SUITE("compactify") {

TEST_CASE("sequence analysis: geometric decay converges") {
  std::vector<double> v;
  for (int k = 0; k < 8; ++k) v.push_back(3.0 + 0.5 * std::pow(0.5, k));
  SeqFit fit = analyze_sequence(v);
  CHECK(fit.converged);
  CHECK(fit.limit == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.reason.empty());
}

TEST_CASE("sequence analysis: growth is flagged, not extrapolated") {
  std::vector<double> v = {1, 2, 4, 8, 16, 32};
  SeqFit fit = analyze_sequence(v);
  CHECK_FALSE(fit.converged);
  CHECK(contains(fit.reason, "do not decay"));
}

TEST_CASE("sequence analysis: the noise floor follows the tolerance") {
  // Pure jitter around 5 at the 1e-6 scale. With the default tolerance the
  // last difference (3e-6) exceeds twice the first (1e-6) and the sequence is
  // conservatively rejected; a loosened tolerance raises the floor above the
  // jitter and the constant limit is recovered.
  std::vector<double> v = {5.0, 5.0 + 1e-6, 5.0, 5.0 - 1e-6, 5.0, 5.0 + 3e-6};
  CHECK_FALSE(analyze_sequence(v).converged);
  SeqFit loose = analyze_sequence(v, 1e-2);
  CHECK(loose.converged);
  CHECK(loose.limit == doctest::Approx(5.0).epsilon(1e-5));
}

TEST_CASE("sequence analysis: guards") {
  CHECK(thrown_kind([] { analyze_sequence({1.0, 2.0, 3.0}); }) ==
        "ShortSequence");
  const double inf = std::numeric_limits<double>::infinity();
  SeqFit fit = analyze_sequence({1.0, 2.0, inf, 2.0, 2.0});
  CHECK_FALSE(fit.converged);
  CHECK(contains(fit.reason, "non-finite"));
  CHECK(std::isnan(fit.limit));
  CHECK(std::isinf(fit.residual));
}

TEST_CASE("probe anchors sit over the facet interior") {
  auto P = tfx::square();
  std::vector<Vec> anchors = facet_probe_anchors(*P, 0, 5);
  REQUIRE(anchors.size() == 5);
  std::vector<double> mu2;
  for (const Vec& a : anchors) {
    CHECK(a[0] == doctest::Approx(0.175).epsilon(1e-12));
    mu2.push_back(a[1]);
  }
  // Targets spread over the facet at fractions {0, ±0.4, ±0.8} of the
  // half-segment, then pulled 35% toward the centroid.
  std::sort(mu2.begin(), mu2.end());
  const std::vector<double> expect = {0.24, 0.37, 0.5, 0.63, 0.76};
  for (size_t i = 0; i < expect.size(); ++i)
    CHECK(mu2[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  CHECK(thrown_kind([&] { facet_probe_anchors(*P, 7, 5); }) ==
        "BadFacetIndex");
}

TEST_CASE("boundary conditions pass for a constant antisymmetric part") {
  auto P = tfx::square();
  GKStructure ref = tfx::gk2(P, 0.0);
  GKStructure test = tfx::gk2(P, 0.3);
  ReportDoc doc = check_c1_c2(ref, test);
  CHECK(doc.pass());
  REQUIRE(doc.items.size() == 8);
  for (int j = 0; j < 4; ++j) {
    const CheckItem* c1 = find_item(doc, "C1.facet" + std::to_string(j));
    const CheckItem* c2 = find_item(doc, "C2.facet" + std::to_string(j));
    REQUIRE(c1 != nullptr);
    REQUIRE(c2 != nullptr);
    CHECK(c1->pass);
    CHECK(c2->pass);
    // The determinant ratio tends to 1 from above near the boundary.
    CHECK(c2->value >= 1e-6);
  }
}

TEST_CASE("boundary conditions reject a potential with the wrong growth") {
  GKStructure ref = tfx::gk2(tfx::square(), 0.0);
  ReportDoc doc = check_c1_c2(ref, doubled_square());
  CHECK_FALSE(doc.pass());
  const CheckItem* c1 = find_item(doc, "C1.facet0");
  REQUIRE(c1 != nullptr);
  CHECK_FALSE(c1->pass);
  // Doubling rescales the Hessian uniformly, so the determinant ratio
  // condition alone cannot see it.
  const CheckItem* c2 = find_item(doc, "C2.facet0");
  REQUIRE(c2 != nullptr);
  CHECK(c2->pass);
}

TEST_CASE("boundary conditions require a shared polytope") {
  GKStructure ref = tfx::gk2(tfx::square(), 0.0);
  GKStructure other = tfx::gk2(tfx::hirzebruch(), 0.0);
  CHECK(thrown_kind([&] { check_c1_c2(ref, other); }) == "PolytopeMismatch");
}

TEST_CASE("boundary form in dimension 4 is informational") {
  GKStructure ref = tfx::gk2(tfx::square(), 0.0);
  GKStructure test = tfx::gk2(tfx::square(), 0.3);
  ReportDoc doc = check_c3(ref, test);
  CHECK(doc.pass());
  REQUIRE(doc.items.size() == 4);
  bool saw_note = false;
  for (const auto& it : doc.items)
    saw_note |= contains(it.note, "informational in dimension 4");
  CHECK(saw_note);
}

TEST_CASE("boundary form in dimension 6 is decisive") {
  auto cb = tfx::cube3();
  GKStructure ref = make_structure(cb, guillemin_potential(cb), Mat::Zero(3, 3));
  CHECK(check_c3(ref, ref).pass());

  // Fault injection: a synthetic negative offset in a transverse direction
  // must be caught by the positivity test.
  C3Options opt;
  opt.synthetic_offset = Mat::Zero(3, 3);
  opt.synthetic_offset(0, 0) = -10.0;
  opt.synthetic_offset(2, 2) = 10.0;
  ReportDoc doc = check_c3(ref, ref, opt);
  CHECK_FALSE(doc.pass());
  const CheckItem* f2 = find_item(doc, "C3.facet2");
  REQUIRE(f2 != nullptr);
  CHECK_FALSE(f2->pass);
  CHECK(contains(f2->note, "synthetic offset injected"));

  C3Options bad;
  bad.synthetic_offset = Mat::Zero(2, 2);
  CHECK(thrown_kind([&] { check_c3(ref, ref, bad); }) == "BadOffsetSize");
}

TEST_CASE("boundary form refuses to extrapolate divergent data") {
  GKStructure ref = tfx::gk2(tfx::square(), 0.0);
  GKStructure test = doubled_square();
  CHECK(thrown_kind([&] { check_c3(ref, test); }) == "RequiresC1C2");
}

TEST_CASE("facet criterion holds exactly for the canonical square") {
  auto P = tfx::square();
  GKStructure G = tfx::gk2(P, 0.0);
  ReportDoc doc = acgtf_check(G, {});
  CHECK(doc.pass());
  const CheckItem* conv = find_item(doc, "acgtf.f0.converge");
  REQUIRE(conv != nullptr);
  CHECK(conv->pass);
  const CheckItem* slope = find_item(doc, "acgtf.f0.slope.0");
  REQUIRE(slope != nullptr);
  // The diagonal entry is a quadratic in the chart coordinate, so the
  // extrapolated secant slope is exact.
  CHECK(slope->value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(find_item(doc, "acgtf.f0.transverse_pd") != nullptr);
  // Vertex faces check both facet rows and carry no transverse block.
  CHECK(find_item(doc, "acgtf.f0,1.slope.1") != nullptr);
  CHECK(find_item(doc, "acgtf.f0,1.transverse_pd") == nullptr);
}

TEST_CASE("facet criterion rejects rescaled potentials") {
  GKStructure twice = doubled_square();
  ReportDoc doc = acgtf_check(twice, {});
  CHECK_FALSE(doc.pass());
  const CheckItem* slope = find_item(doc, "acgtf.f0.slope.0");
  REQUIRE(slope != nullptr);
  CHECK_FALSE(slope->pass);
  CHECK(slope->value == doctest::Approx(1.0).epsilon(1e-9));

  // The matching conformal rescaling restores the slope exactly.
  AcgtfOptions opt;
  opt.conformal_factor = [](const Vec&) { return 2.0; };
  CHECK(acgtf_check(twice, {}, opt).pass());
  // ... and the same factor breaks the correctly normalized structure.
  CHECK_FALSE(acgtf_check(tfx::gk2(tfx::square(), 0.0), {}, opt).pass());
}

TEST_CASE("facet criterion guards") {
  GKStructure G = tfx::gk2(tfx::square(), 0.0);
  CHECK(thrown_kind([&] { acgtf_check(G, {99}); }) == "BadFaceIndex");
  AcgtfOptions opt;
  opt.path_steps = 4;
  CHECK(thrown_kind([&] { acgtf_check(G, {}, opt); }) == "ShortSequence");
}

TEST_CASE("facet criterion accepts a finite-difference twin of the square") {
  auto P = tfx::square();
  PotentialSpec expr = expression_potential(
      "0.5*(mu1*log(mu1) + (1-mu1)*log(1-mu1)"
      " + mu2*log(mu2) + (1-mu2)*log(1-mu2))",
      2);
  GKStructure G = make_structure(P, std::move(expr), Mat::Zero(2, 2));
  std::vector<int> faces = {P->find_face({0}), P->find_face({0, 1})};
  ReportDoc doc = acgtf_check(G, faces);
  CHECK(doc.pass());
}

}  // TEST_SUITE
