// Acceptance gate: end-to-end checks of the library's headline guarantees,
// one criterion per line of output. Each criterion prints exactly one
// PASS/FAIL line together with the quantity it measured; the process exit
// code is the number of failed criteria, so 0 means the gate is green.
//
// Usage: torickgk_acceptance <path-to-cli-binary>
//
// The CLI path is needed only by the determinism criterion, which runs the
// `identities` subcommand twice and compares the report files byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "torickgk/common.hpp"
#include "torickgk/compactify.hpp"
#include "torickgk/curvature.hpp"
#include "torickgk/deform.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/oracle.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/potential.hpp"
#include "torickgk/rng.hpp"

namespace {

using namespace torickgk;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Rejection-sample a point with boundary distance at least `margin`.
Vec draw_interior(Rng& rng, const DelzantPolytope& P, double margin) {
  Vec lo = P.vertices.front(), hi = P.vertices.front();
  for (const auto& v : P.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  for (int attempt = 0; attempt < 200000; ++attempt) {
    Vec x(P.m);
    for (int i = 0; i < P.m; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (P.boundary_distance(x) >= margin) return x;
  }
  throw std::runtime_error("interior sampling failed to find a point");
}

GKStructure canonical(std::shared_ptr<const DelzantPolytope> P) {
  auto pot = guillemin_potential(P);
  const int m = P->m;
  return make_structure(std::move(P), std::move(pot), Mat::Zero(m, m));
}

/// Tracks the worst deviation as a fraction of its tolerance; a criterion
/// passes when the worst fraction stays at or below 1.
struct Worst {
  double frac = 0.0;
  void track(double deviation, double tolerance) {
    frac = std::max(frac, deviation / tolerance);
  }
  bool ok() const { return frac <= 1.0; }
  std::string text() const {
    return "worst deviation at " + fmt(100.0 * frac) + "% of tolerance";
  }
};

using Outcome = std::pair<bool, std::string>;

// ---------------------------------------------------------------------------
// 1. The canonical potentials have constant generalized scalar curvature with
//    the classical values: 4 on a segment, 12 on the standard simplex,
//    4/a + 4/b on an a×b box.
Outcome crit_abreu_constants() {
  struct Case {
    std::shared_ptr<const DelzantPolytope> P;
    double expect;
  };
  const Case cases[] = {{tfx::segment(), 4.0},
                        {tfx::simplex(), 12.0},
                        {tfx::rectangle(2.0, 3.0), 4.0 / 2.0 + 4.0 / 3.0}};
  Rng rng(101);
  double worst = 0.0;
  for (const auto& cs : cases) {
    const GKStructure G = canonical(cs.P);
    for (int k = 0; k < 100; ++k) {
      const Vec x = draw_interior(rng, *cs.P, 0.05);
      worst = std::max(worst, std::abs(u_gk_at(G, x) - cs.expect));
    }
  }
  return {worst <= 1e-9,
          "max |u_GK - const| = " + fmt(worst) + " over 300 points, tol 1e-9"};
}

// ---------------------------------------------------------------------------
// 2. u_GK does not move when the antisymmetric part C is turned on: the
//    curvature of the deformed structure equals the curvature of its Kähler
//    base at every point.
Outcome crit_c_invariance() {
  const std::shared_ptr<const DelzantPolytope> polys[] = {
      tfx::square(), tfx::simplex(), tfx::hirzebruch()};
  Rng rng(202);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto& P = polys[k % 3];
    const double c = rng.uniform(-5.0, 5.0);
    const Vec x = draw_interior(rng, *P, 0.05);
    const double u0 = u_gk_at(canonical(P), x);
    const double uc =
        u_gk_at(make_structure(P, guillemin_potential(P), tfx::cmat(c)), x);
    worst = std::max(worst, std::abs(uc - u0) / std::max(1.0, std::abs(u0)));
  }
  return {worst <= 1e-10,
          "max relative drift = " + fmt(worst) + " over 50 draws, tol 1e-10"};
}

// ---------------------------------------------------------------------------
// 3. The dimension-4 scalar identities hold at random interior points: the
//    determinant split, the two angle ratios, the divergence identity of
//    detS·S⁻¹, the Lee-form norm identity, and the agreement of the two
//    independent routes to the Hermitian scalar curvature; finally the chain's
//    Riemannian scalar curvature matches the finite-difference oracle.
Outcome crit_dim4_identities() {
  const auto sq = tfx::square();
  const auto hz = tfx::hirzebruch();
  const double cvals[] = {0.1, 0.3, 1.0};
  Rng rng(303);
  Worst w;
  for (int k = 0; k < 200; ++k) {
    const auto& P = (k % 2 == 0) ? sq : hz;
    const double c = cvals[k % 3];
    const GKStructure G = make_structure(P, guillemin_potential(P), tfx::cmat(c));
    const Vec x = draw_interior(rng, *P, 0.05);
    const PointFrame F = frame_at(G, x);

    w.track(std::abs(F.detPsi - (F.detS + c * c)),
            1e-12 * std::max(1.0, std::abs(F.detPsi)));
    w.track(std::abs((1.0 - F.p) / 2.0 - F.detS / F.detPsi), 1e-12);
    w.track(std::abs((1.0 + F.p) / 2.0 - c * c / F.detPsi), 1e-12);

    const DivergenceIdentity div = divergence_identity(F.jet);
    w.track(div.residual.cwiseAbs().maxCoeff(), 1e-8 * div.scale);

    const Dim4Scalars sc = dim4_scalars(F);
    w.track(std::abs(sc.theta2 * (1.0 - sc.p * sc.p) - sc.dp2),
            1e-8 * (1.0 + std::abs(sc.dp2)));

    const double u = u_gk_from_jet(F.jet);
    const double omp = 1.0 - sc.p;
    const double route_dp =
        u - 2.0 * sc.lap_p / omp + (4.0 + 2.0 * sc.p) / omp * sc.theta2;
    const double route_bracket =
        u + (4.0 - 2.0 * sc.p) / omp * sc.theta2 - 2.0 * sc.bracket / omp;
    w.track(std::abs(route_dp - route_bracket),
            1e-7 * (1.0 + std::abs(route_dp)));
  }

  // Cross-check s_g against the finite-difference Riemannian oracle at three
  // well-separated points (the oracle is O(h²), hence the looser tolerance).
  const GKStructure G = make_structure(sq, guillemin_potential(sq), tfx::cmat(0.3));
  const InvariantMetric met = metric_g(G);
  const Vec oracle_pts[] = {tfx::vec2(0.3, 0.4), tfx::vec2(0.55, 0.5),
                            tfx::vec2(0.45, 0.7)};
  for (const Vec& x : oracle_pts) {
    const double sg = dim4_chain(G, x).s_g;
    const double fd = scalar_curvature_fd(met, x, 1e-3 * sq->boundary_distance(x));
    w.track(std::abs(sg - fd), 1e-4 * std::max(1.0, std::abs(sg)));
  }
  return {w.ok(), w.text() + " over 200 points + 3 oracle points"};
}

// ---------------------------------------------------------------------------
// 4. The finite-difference oracle reproduces the Fubini–Study scalar
//    curvatures (4 on the segment's sphere, 12 on the simplex's CP²) and
//    converges at second order: halving h shrinks the error about 4×.
Outcome crit_oracle_convergence() {
  struct Case {
    GKStructure G;
    Vec x;
    double expect;
    const char* label;
  };
  Vec x1(1);
  x1 << 0.3;
  const Case cases[] = {
      {canonical(tfx::segment()), x1, 4.0, "segment"},
      {canonical(tfx::simplex()), tfx::vec2(0.4, 0.3), 12.0, "simplex"}};
  bool ok = true;
  std::string measured;
  for (const auto& cs : cases) {
    const InvariantMetric met = metric_g(cs.G);
    const double h = 1e-3 * cs.G.polytope->boundary_distance(cs.x);
    const double e1 = std::abs(scalar_curvature_fd(met, cs.x, h) - cs.expect);
    const double e2 =
        std::abs(scalar_curvature_fd(met, cs.x, h / 2.0) - cs.expect);
    const double ratio = e1 / std::max(e2, 1e-300);
    ok = ok && e1 <= 1e-3 && ratio >= 2.5 && ratio <= 6.0;
    measured += std::string(cs.label) + ": err " + fmt(e1) + ", halving ratio " +
                fmt(ratio) + "; ";
  }
  return {ok, measured + "tol 1e-3, ratio in [2.5, 6]"};
}

// ---------------------------------------------------------------------------
// 5. Boundary behavior: with C ≠ 0 the angle function tends to −1 along facet
//    approach paths; the ACGTF slopes of canonical potentials extrapolate to
//    2 on all three surfaces; doubling the potential is caught (slopes 1,
//    verdict fail).
Outcome crit_boundary_behavior() {
  bool ok = true;
  double worst_p = 0.0, worst_slope = 0.0, worst_control = 0.0;
  for (const auto& P :
       {tfx::square(), tfx::simplex(), tfx::hirzebruch()}) {
    const GKStructure G = tfx::gk2(P, 1.0);
    std::vector<double> ps;
    for (const Vec& x : facet_path(*P, 0, P->interior_point(), 12))
      ps.push_back(frame_at(G, x, 2).p);
    const SeqFit fit = analyze_sequence(ps);
    ok = ok && fit.converged && std::abs(fit.limit + 1.0) <= 1e-3;
    worst_p = std::max(worst_p, std::abs(fit.limit + 1.0));

    const ReportDoc doc = acgtf_check(G, {});
    ok = ok && doc.pass();
    for (const auto& it : doc.items)
      if (it.name.find(".slope.") != std::string::npos)
        worst_slope = std::max(worst_slope, std::abs(it.value - 2.0));
  }
  ok = ok && worst_slope <= 1e-3;

  // Negative control: the doubled potential halves every normal slope, and
  // the verdict must flip to fail.
  const auto sq = tfx::square();
  const PotentialSpec doubled =
      sum_potential({guillemin_potential(sq), guillemin_potential(sq)});
  const ReportDoc ctrl =
      acgtf_check(make_structure(sq, doubled, tfx::cmat(0.0)), {});
  bool saw_slope = false;
  for (const auto& it : ctrl.items)
    if (it.name.find(".slope.") != std::string::npos) {
      saw_slope = true;
      worst_control = std::max(worst_control, std::abs(it.value - 1.0));
    }
  ok = ok && !ctrl.pass() && saw_slope && worst_control <= 1e-3;
  return {ok, "max |p_limit + 1| = " + fmt(worst_p) + ", max |slope - 2| = " +
                  fmt(worst_slope) + ", control max |slope - 1| = " +
                  fmt(worst_control) + ", tol 1e-3"};
}

// ---------------------------------------------------------------------------
// 6. The interior/limit conditions (C1)+(C2′) and the ACGTF facet criterion
//    return the same verdict over a 20-case corpus of potentials on the
//    square and the Hirzebruch surface, and both match the expected verdict.
Outcome crit_criteria_agreement() {
  struct Variant {
    PotentialSpec pot;
    bool expect;
  };
  auto diag2 = [](double a, double b) {
    Mat Q = Mat::Zero(2, 2);
    Q(0, 0) = a;
    Q(1, 1) = b;
    return Q;
  };
  auto corpus = [&](const std::shared_ptr<const DelzantPolytope>& P,
                    const std::string& half_src) {
    const PotentialSpec gl = guillemin_potential(P);
    auto plus = [&](PotentialSpec extra) {
      return sum_potential({gl, std::move(extra)});
    };
    Mat mixed(2, 2);
    mixed << 0.2, 0.1, 0.1, 0.2;
    Vec l(2);
    l << 0.3, -0.2;
    std::vector<Variant> out;
    out.push_back({gl, true});
    out.push_back({plus(quadratic_potential(Mat::Zero(2, 2), l, 0.7)), true});
    out.push_back({plus(quadratic_potential(mixed, Vec::Zero(2), 0.0)), true});
    out.push_back(
        {plus(quadratic_potential(diag2(-0.2, 0.2), Vec::Zero(2), 0.0)), true});
    out.push_back({plus(quadratic_potential(0.05 * Mat::Identity(2, 2),
                                            Vec::Zero(2), 0.0)),
                   true});
    out.push_back({sum_potential({gl, gl}), false});
    out.push_back({sum_potential({gl, gl, gl}), false});
    out.push_back({expression_potential(half_src, 2), false});
    out.push_back(
        {quadratic_potential(Mat::Identity(2, 2), Vec::Zero(2), 0.0), false});
    out.push_back(
        {plus(quadratic_potential(diag2(-2.5, 0.0), Vec::Zero(2), 0.0)), false});
    return out;
  };

  struct Board {
    std::shared_ptr<const DelzantPolytope> P;
    std::string half_src;  // one half of the canonical potential, spelled out
  };
  const Board boards[] = {
      {tfx::square(),
       "0.25*(mu1*log(mu1) + (1-mu1)*log(1-mu1) + mu2*log(mu2) + "
       "(1-mu2)*log(1-mu2))"},
      {tfx::hirzebruch(),
       "0.25*(mu1*log(mu1) + mu2*log(mu2) + (1-mu2)*log(1-mu2) + "
       "(2-mu1-mu2)*log(2-mu1-mu2))"}};

  int total = 0, agree = 0, expected_ok = 0;
  for (const auto& board : boards) {
    const GKStructure ref = tfx::gk2(board.P, 0.0);
    for (const auto& v : corpus(board.P, board.half_src)) {
      const GKStructure test =
          make_structure(board.P, v.pot, tfx::cmat(0.0));
      const bool v1 = check_c1_c2(ref, test).pass();
      const bool v2 = acgtf_check(test, {}).pass();
      ++total;
      if (v1 == v2) ++agree;
      if (v1 == v.expect && v2 == v.expect) ++expected_ok;
    }
  }
  const bool ok = total == 20 && agree == 20 && expected_ok == 20;
  return {ok, "verdict agreement " + std::to_string(agree) +
                  "/20, expected verdicts " + std::to_string(expected_ok) +
                  "/20"};
}

// ---------------------------------------------------------------------------
// 7. Deformation family: pure C-deformations stay admissible over the whole
//    search window on all three surfaces; the analytic tangent matches finite
//    differences in t; the extremality fit classifies the simplex's canonical
//    structure (any C) as extremal and a quartic perturbation as not.
Outcome crit_deformation() {
  bool ok = true;
  std::string notes;
  for (const auto& P :
       {tfx::square(), tfx::simplex(), tfx::hirzebruch()}) {
    const DeformationFamily fam = make_family(tfx::gk2(P, 0.0), tfx::cmat(1.0));
    const AdmissibleRange ar = admissible_range(fam);
    ok = ok && ar.unbounded_lo && ar.unbounded_hi;
  }
  notes += "pure families unbounded";

  const DeformationFamily fam =
      make_family(tfx::gk2(tfx::square(), 0.0), tfx::cmat(1.0));
  const ReportDoc tangent = first_order_check(
      fam, {tfx::vec2(0.3, 0.4), tfx::vec2(0.5, 0.5), tfx::vec2(0.7, 0.6)});
  ok = ok && tangent.pass();
  notes += tangent.pass() ? ", tangent check pass" : ", tangent check FAIL";

  const auto sim = tfx::simplex();
  const InteriorGrid grid = sample_interior(*sim, 10, 0.04);
  const ExtremalFit f0 = extremal_fit(canonical(sim), grid);
  const ExtremalFit f8 = extremal_fit(
      make_structure(sim, guillemin_potential(sim), tfx::cmat(0.8)), grid);
  const PotentialSpec perturbed = sum_potential(
      {guillemin_potential(sim), expression_potential("0.05 * mu1^2 * mu2^2", 2)});
  const ExtremalFit fp =
      extremal_fit(make_structure(sim, perturbed, tfx::cmat(0.0)), grid);
  ok = ok && f0.is_extremal && f8.is_extremal && !fp.is_extremal &&
       fp.residual_rel > 1e-2;
  notes += ", extremal residuals " +
           fmt(std::max(f0.residual_rel, f8.residual_rel)) +
           ", perturbed residual " + fmt(fp.residual_rel) + " (> 0.01)";
  return {ok, notes};
}

// ---------------------------------------------------------------------------
// 8. Pointwise linear algebra at 500 random points across all fixture
//    polytopes: J and its symplectic adjoint square to −Id, the adjoint
//    relation and the (A, B) pair identities hold, Re Q = −S⁻¹, the volume
//    density and the block closed forms of (g, b) match, and the rescaled
//    metric is ω-compatible.
Outcome crit_pointwise_algebra() {
  Rng rng(808);
  Worst w;
  bool positive = true;
  struct Draw {
    std::shared_ptr<const DelzantPolytope> P;
    int n;
  };
  const Draw draws[] = {{tfx::square(), 130},   {tfx::simplex(), 100},
                        {tfx::hirzebruch(), 130}, {tfx::cube3(), 90},
                        {tfx::segment(), 25},     {tfx::rectangle(2.0, 3.0), 25}};
  int points = 0;
  for (const auto& d : draws) {
    const int m = d.P->m;
    const Mat Om = omega_matrix(m);
    const Mat I2m = Mat::Identity(2 * m, 2 * m);
    for (int k = 0; k < d.n; ++k) {
      Mat C = Mat::Zero(m, m);
      if (m == 2) {
        C = tfx::cmat(rng.uniform(-5.0, 5.0));
      } else if (m > 2) {
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) {
            const double v = rng.uniform(-2.0, 2.0);
            C(i, j) = v;
            C(j, i) = -v;
          }
      }
      const GKStructure G = make_structure(d.P, guillemin_potential(d.P), C);
      const Vec x = draw_interior(rng, *d.P, 0.05);
      const PointFrame F = frame_at(G, x, 2);
      ++points;

      const double nJ = F.J.cwiseAbs().maxCoeff();
      const double nJd = F.Jdual.cwiseAbs().maxCoeff();
      w.track((F.J * F.J + I2m).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, nJ * nJ));
      w.track((F.Jdual * F.Jdual + I2m).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, nJd * nJd));
      // ω(JX, Y) = ω(X, J^{*ω}Y) as a matrix identity on the Grams.
      w.track((F.J.transpose() * Om - Om * F.Jdual).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, nJ));
      // Reconstruction ω(·, J·) = g − b.
      w.track(((F.g - F.b) - Om * F.J).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, nJ));

      // Defining relations of the commuting pair, in multiplied-out form.
      const Mat D = F.J - F.Jdual;
      const Mat Sum = F.J + F.Jdual;
      const double nA = F.A.cwiseAbs().maxCoeff();
      const double nB = F.B.cwiseAbs().maxCoeff();
      const double nD = D.cwiseAbs().maxCoeff();
      w.track((F.A * D + 2.0 * I2m).cwiseAbs().maxCoeff(),
              1e-10 * std::max(1.0, nA * nD));
      w.track((F.B * D + Sum).cwiseAbs().maxCoeff(),
              1e-10 * std::max(1.0, nB * nD));
      const double sAB = std::max({1.0, nA * nA, nB * nB});
      w.track((F.A * F.A - F.B * F.B + I2m).cwiseAbs().maxCoeff(), 1e-10 * sAB);
      w.track((F.A * F.B + F.B * F.A).cwiseAbs().maxCoeff(), 1e-10 * sAB);

      const Eigen::MatrixXcd Q = q_matrix(F);
      w.track((Q.real() + F.Sinv).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, F.Sinv.cwiseAbs().maxCoeff()));
      w.track((Q.imag() + Q.imag().transpose()).cwiseAbs().maxCoeff(),
              1e-12 * std::max(1.0, Q.cwiseAbs().maxCoeff()));

      // Tamedness: the bihermitian metric is positive definite.
      const Eigen::SelfAdjointEigenSolver<Mat> es(F.g);
      positive = positive && es.eigenvalues().minCoeff() > 0.0;

      if (m == 2) {
        w.track(std::abs(std::sqrt(F.g.determinant()) - F.volume_ratio),
                1e-10 * std::max(1.0, F.volume_ratio));
        const Mat psi_s = 0.5 * (F.Psiinv + F.Psiinv.transpose());
        const Mat psi_a = 0.5 * (F.Psiinv - F.Psiinv.transpose());
        const double sg = std::max(1.0, F.S.cwiseAbs().maxCoeff());
        w.track((F.g.topLeftCorner(2, 2) - F.S).cwiseAbs().maxCoeff(),
                1e-12 * sg);
        w.track(F.g.topRightCorner(2, 2).cwiseAbs().maxCoeff(), 1e-12 * sg);
        w.track((F.g.bottomRightCorner(2, 2) - psi_s).cwiseAbs().maxCoeff(),
                1e-12);
        w.track((F.b.topLeftCorner(2, 2) + F.C).cwiseAbs().maxCoeff(),
                1e-12 * std::max(1.0, F.C.cwiseAbs().maxCoeff()));
        w.track(F.b.topRightCorner(2, 2).cwiseAbs().maxCoeff(), 1e-12 * sg);
        w.track((F.b.bottomRightCorner(2, 2) + psi_a).cwiseAbs().maxCoeff(),
                1e-12);
        // Rescaling by √(2/(1−p)) makes the metric ω-compatible: T² = −Id.
        const double kappa = std::sqrt(2.0 / (1.0 - F.p));
        const Mat T = -(Om * (kappa * F.g));
        w.track((T * T + I2m).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }

  // The module-level compatibility verdict on fixed structures.
  Rng rng2(809);
  bool compat = true;
  for (const auto& P :
       {tfx::square(), tfx::simplex(), tfx::hirzebruch()}) {
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(draw_interior(rng2, *P, 0.05));
    compat = compat && compatibility_check(tfx::gk2(P, 0.7), pts).pass();
  }

  const bool ok = w.ok() && positive && compat && points == 500;
  std::string text = w.text() + " over " + std::to_string(points) + " points";
  if (!positive) text += ", metric not positive definite somewhere";
  if (!compat) text += ", compatibility verdict failed";
  return {ok, text};
}

// ---------------------------------------------------------------------------
// 9. Determinism: two CLI runs of `identities` with the same config produce
//    byte-identical report files and exit 0.
Outcome crit_determinism(const std::string& cli) {
  const std::string cfg_path = "acceptance_identities_cfg.json";
  {
    std::ofstream f(cfg_path, std::ios::binary);
    f << R"({
  "schema": 1,
  "polytope": {"normals": [[1, 0], [0, 1], [-1, 0], [0, -1]], "offsets": [0, 0, 1, 1]},
  "potential": {"kind": "guillemin"},
  "C": [[0, 0.3], [-0.3, 0]],
  "seed": 7,
  "identities": {"n_points": 48, "with_oracle": true, "oracle_points": 2}
}
)";
  }
  auto run_once = [&](const std::string& out) {
    const std::string cmd = "\"" + cli + "\" identities -c " + cfg_path +
                            " --out " + out + " > /dev/null";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : ((rc >> 8) & 0xff);
  };
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const int rc1 = run_once("acceptance_report_1.json");
  const int rc2 = run_once("acceptance_report_2.json");
  const std::string a = slurp("acceptance_report_1.json");
  const std::string b = slurp("acceptance_report_2.json");
  const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  return {ok, "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) +
                  ", " + std::to_string(a.size()) + " report bytes, " +
                  (a == b && !a.empty() ? "byte-identical" : "NOT identical")};
}

// ---------------------------------------------------------------------------

struct Gate {
  int failures = 0;

  template <typename F>
  void run(int id, const std::string& what, F&& body) {
    bool ok = false;
    std::string measured;
    try {
      std::tie(ok, measured) = body();
    } catch (const std::exception& e) {
      ok = false;
      measured = std::string("exception: ") + e.what();
    }
    std::printf("%s %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                measured.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: torickgk_acceptance <path-to-cli-binary>\n");
    return 64;
  }
  const std::string cli = argv[1];

  Gate gate;
  gate.run(1, "canonical-potential curvature constants (4, 12, 4/a+4/b)",
           crit_abreu_constants);
  gate.run(2, "u_GK invariance under the antisymmetric deformation C",
           crit_c_invariance);
  gate.run(3, "dimension-4 identity chain at random interior points",
           crit_dim4_identities);
  gate.run(4, "finite-difference oracle: Fubini-Study curvatures, O(h^2) decay",
           crit_oracle_convergence);
  gate.run(5, "boundary behavior: p -> -1 and ACGTF slope extrapolation",
           crit_boundary_behavior);
  gate.run(6, "boundary criteria agree on the 20-case potential corpus",
           crit_criteria_agreement);
  gate.run(7, "deformation family: admissible range, tangent, extremal fit",
           crit_deformation);
  gate.run(8, "pointwise linear algebra at 500 random points",
           crit_pointwise_algebra);
  gate.run(9, "byte-identical reports across repeated CLI runs",
           [&] { return crit_determinism(cli); });
  return gate.failures;
}
