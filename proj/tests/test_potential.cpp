#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/potential.hpp"

using namespace torickgk;
using tfx::thrown_kind;

namespace {

// Closed-form canonical data on the square: per-axis Hessian entry and its
// derivatives, from tau = 1/2 sum L_j log L_j.
double s_sq(double u) { return 0.5 * (1.0 / u + 1.0 / (1.0 - u)); }
double s_sq_d(double u) {
  return 0.5 * (-1.0 / (u * u) + 1.0 / ((1 - u) * (1 - u)));
}
double s_sq_dd(double u) {
  return 0.5 * (2.0 / (u * u * u) + 2.0 / ((1 - u) * (1 - u) * (1 - u)));
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("canonical potential: closed-form values and jets on the square") {
  auto P = tfx::square();
  PotentialSpec g = guillemin_potential(P);

  // Value at the center: 4 * (1/2) log(1/2) halved.
  CHECK(eval_value(g, tfx::vec2(0.5, 0.5)) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));

  const Vec x = tfx::vec2(0.3, 0.45);
  Jet4 jet = eval_jet4(g, x, P->boundary_distance(x), 4);
  CHECK(jet.hess(0, 0) == doctest::Approx(s_sq(0.3)).epsilon(1e-14));
  CHECK(jet.hess(1, 1) == doctest::Approx(s_sq(0.45)).epsilon(1e-14));
  CHECK(jet.hess(0, 1) == 0.0);
  // Product structure: mixed third/fourth derivatives vanish; the pure ones
  // match the one-dimensional closed forms.
  CHECK(jet.third(0, 0, 0) == doctest::Approx(s_sq_d(0.3)).epsilon(1e-14));
  CHECK(jet.third(1, 1, 1) == doctest::Approx(s_sq_d(0.45)).epsilon(1e-14));
  CHECK(jet.third(0, 0, 1) == 0.0);
  CHECK(jet.fourth(0, 0, 0, 0) == doctest::Approx(s_sq_dd(0.3)).epsilon(1e-14));
  CHECK(jet.fourth(0, 1, 0, 1) == 0.0);
  // Gradient of (1/2)(u log u - (1-u) log(1-u))' = (1/2) log(u/(1-u)).
  CHECK(jet.grad[0] ==
        doctest::Approx(0.5 * std::log(0.3 / 0.7)).epsilon(1e-14));

  CHECK(thrown_kind([&] { eval_value(g, tfx::vec2(-0.1, 0.5)); }) ==
        "OutsideDomain");
  CHECK(thrown_kind([&] { eval_jet4(g, tfx::vec2(0.0, 0.5)); }) ==
        "OutsideDomain");
}

TEST_CASE("canonical jets vs finite differences on a slanted polytope") {
  auto H = tfx::hirzebruch();
  PotentialSpec g = guillemin_potential(H);
  const Vec x = tfx::vec2(0.8, 0.35);
  Jet4 jet = eval_jet4(g, x, H->boundary_distance(x), 4);

  const double h = 1e-4;
  auto val = [&](double a, double b) { return eval_value(g, tfx::vec2(a, b)); };
  // Central second differences against every Hessian entry.
  const double fxx =
      (val(0.8 + h, 0.35) - 2 * val(0.8, 0.35) + val(0.8 - h, 0.35)) / (h * h);
  const double fyy =
      (val(0.8, 0.35 + h) - 2 * val(0.8, 0.35) + val(0.8, 0.35 - h)) / (h * h);
  const double fxy = (val(0.8 + h, 0.35 + h) - val(0.8 + h, 0.35 - h) -
                      val(0.8 - h, 0.35 + h) + val(0.8 - h, 0.35 - h)) /
                     (4 * h * h);
  CHECK(jet.hess(0, 0) == doctest::Approx(fxx).epsilon(1e-6));
  CHECK(jet.hess(1, 1) == doctest::Approx(fyy).epsilon(1e-6));
  CHECK(jet.hess(0, 1) == doctest::Approx(fxy).epsilon(1e-5));
  // Third derivative spot check: d/dx of S_00.
  auto s00 = [&](double a) {
    return eval_jet4(g, tfx::vec2(a, 0.35), -1, 2).hess(0, 0);
  };
  CHECK(jet.third(0, 0, 0) ==
        doctest::Approx((s00(0.8 + h) - s00(0.8 - h)) / (2 * h))
            .epsilon(1e-6));
}

TEST_CASE("quadratic potential is exact") {
  const Mat Q = tfx::mat2(2, 1, 1, 3);
  const Vec l = tfx::vec2(0.5, -1);
  PotentialSpec q = quadratic_potential(Q, l, 2.0);
  const Vec x = tfx::vec2(-3.7, 11.2);  // no domain restriction
  CHECK(eval_value(q, x) ==
        doctest::Approx(0.5 * x.dot(Q * x) + l.dot(x) + 2.0).epsilon(1e-15));
  Jet4 jet = eval_jet4(q, x);
  CHECK(tfx::max_abs(jet.hess - Q) == 0.0);
  CHECK((jet.grad - (Q * x + l)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(jet.third.max_abs() == 0.0);
  CHECK(jet.fourth.max_abs() == 0.0);

  CHECK(thrown_kind([&] {
          quadratic_potential(tfx::mat2(1, 2, 0, 1), Vec::Zero(2), 0);
        }) == "DimensionMismatch");
  CHECK(thrown_kind([&] {
          quadratic_potential(Mat::Identity(2, 2), Vec::Zero(3), 0);
        }) == "DimensionMismatch");
}

TEST_CASE("sums add jets termwise") {
  auto P = tfx::square();
  PotentialSpec g = guillemin_potential(P);
  PotentialSpec q = quadratic_potential(tfx::mat2(0.4, 0.1, 0.1, 0.2),
                                        tfx::vec2(1, -2), 0.3);
  PotentialSpec s = sum_potential({g, q});
  const Vec x = tfx::vec2(0.3, 0.45);
  CHECK(eval_value(s, x) ==
        doctest::Approx(eval_value(g, x) + eval_value(q, x)).epsilon(1e-15));
  Jet4 js = eval_jet4(s, x, P->boundary_distance(x), 4);
  Jet4 jg = eval_jet4(g, x, P->boundary_distance(x), 4);
  Jet4 jq = eval_jet4(q, x, P->boundary_distance(x), 4);
  CHECK(tfx::max_abs(js.hess - jg.hess - jq.hess) < 1e-14);
  CHECK(js.third(0, 0, 0) == doctest::Approx(jg.third(0, 0, 0)).epsilon(1e-14));

  CHECK(thrown_kind([&] { sum_potential({}); }) == "DimensionMismatch");
  CHECK(thrown_kind([&] {
          sum_potential({quadratic_potential(Mat::Identity(2, 2),
                                             Vec::Zero(2), 0),
                         quadratic_potential(Mat::Identity(3, 3),
                                             Vec::Zero(3), 0)});
        }) == "DimensionMismatch");
}

TEST_CASE("expression potentials: FD jets against an analytic twin") {
  // The same quadratic, once analytic and once as parsed text.
  const Mat Q = tfx::mat2(2, 1, 1, 3);
  PotentialSpec qa = quadratic_potential(Q, tfx::vec2(0.5, -1), 2.0);
  PotentialSpec qe = expression_potential(
      "mu1^2 + mu1*mu2 + 1.5*mu2^2 + 0.5*mu1 - mu2 + 2", 2);
  CHECK(potential_uses_fd(qe));
  CHECK_FALSE(potential_uses_fd(qa));
  CHECK(potential_uses_fd(sum_potential({qa, qe})));

  const Vec x = tfx::vec2(0.3, 0.45);
  CHECK(eval_value(qe, x) == doctest::Approx(eval_value(qa, x)).epsilon(1e-15));
  Jet4 ja = eval_jet4(qa, x, 0.3, 4);
  Jet4 je = eval_jet4(qe, x, 0.3, 4);
  CHECK((je.grad - ja.grad).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(tfx::max_abs(je.hess - ja.hess) < 1e-5);
  CHECK(std::abs(je.third(0, 0, 0) - 0.0) < 1e-3);
  CHECK(std::abs(je.fourth(0, 0, 0, 0) - 0.0) < 1e-1);
}

TEST_CASE("expression FD steps respect the boundary margin") {
  PotentialSpec e = expression_potential("mu1^2", 1);
  Vec x = 0.5 * Vec::Ones(1);
  // Orders <= 2 use small steps and work close to the boundary.
  CHECK_NOTHROW(eval_jet4(e, x, 1e-4, 2));
  // The 4th-order stencil would step across it.
  CHECK(thrown_kind([&] { eval_jet4(e, x, 1e-4, 4); }) == "FDStepUnderflow");
}

TEST_CASE("strict convexity certifier") {
  auto P = tfx::square();
  InteriorGrid grid = sample_interior(*P, 4, 0.05);

  CHECK(check_strict_convexity(guillemin_potential(P), grid.points).pass());

  ReportDoc bad = check_strict_convexity(
      quadratic_potential(tfx::mat2(1, 0, 0, -1), Vec::Zero(2), 0),
      grid.points);
  CHECK_FALSE(bad.pass());
  REQUIRE_FALSE(bad.items.empty());
  CHECK(bad.items.front().name == "positive definite Hessian");

  // A tiny positive pivot passes but adds a warning item.
  ReportDoc warn = check_strict_convexity(
      quadratic_potential(tfx::mat2(1, 0, 0, 1e-7), Vec::Zero(2), 0),
      grid.points);
  CHECK(warn.pass());
  CHECK(warn.items.size() == 2);
  CHECK(warn.items.back().name == "near-singular warning");

  ReportDoc empty = check_strict_convexity(guillemin_potential(P), {});
  CHECK_FALSE(empty.pass());
}

}  // TEST_SUITE
