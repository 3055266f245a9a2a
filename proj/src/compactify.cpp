#include "torickgk/compactify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "torickgk/potential.hpp"

namespace torickgk {

namespace {

std::string point_str(const Vec& x) {
  std::string s = "(";
  for (int i = 0; i < x.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    s += buf;
    if (i + 1 < x.size()) s += ", ";
  }
  return s + ")";
}

std::string num_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_same_polytope(const GKStructure& ref, const GKStructure& test) {
  if (!ref.polytope || !test.polytope)
    throw_config("MissingPolytope", "both structures need a polytope");
  if (ref.polytope.get() == test.polytope.get()) return;
  const DelzantPolytope& a = *ref.polytope;
  const DelzantPolytope& b = *test.polytope;
  if (a.m != b.m || a.d != b.d || a.normals != b.normals ||
      a.offsets != b.offsets)
    throw_config("PolytopeMismatch",
                 "reference and test structures must share one polytope");
}

// One Richardson elimination level for a geometric (ratio ½) path:
// r_k = (w·a_{k+1} − a_k)/(w − 1) removes the leading w^{−k}-like term.
std::vector<double> richardson_level(const std::vector<double>& a, double w) {
  std::vector<double> r(a.size() - 1);
  for (std::size_t k = 0; k + 1 < a.size(); ++k)
    r[k] = (w * a[k + 1] - a[k]) / (w - 1.0);
  return r;
}

}  // namespace

SeqFit analyze_sequence(const std::vector<double>& values,
                        double agreement_tol) {
  const int n = static_cast<int>(values.size());
  if (n < 4)
    throw_config("ShortSequence",
                 "need at least 4 samples, got " + std::to_string(n));
  SeqFit fit;
  double amax = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      fit.limit = std::numeric_limits<double>::quiet_NaN();
      fit.residual = std::numeric_limits<double>::infinity();
      fit.reason = "non-finite value along approach path";
      return fit;
    }
    amax = std::max(amax, std::abs(v));
  }
  const double scale = 1.0 + amax;
  const double d_first = std::abs(values[1] - values[0]);
  const double d_last = std::abs(values[n - 1] - values[n - 2]);
  // The noise floor follows the agreement tolerance so callers evaluating
  // finite-difference jets can loosen both knobs together; at the default
  // tolerance it stays at 1e-9.
  const double noise_floor = std::max(1e-9, 1e-3 * agreement_tol) * scale;
  const bool exploding = d_last > std::max(2.0 * d_first, noise_floor);

  const std::vector<double> r1 = richardson_level(values, 2.0);
  const std::vector<double> r2 = richardson_level(r1, 4.0);
  const std::vector<double> r3 = richardson_level(r2, 8.0);
  fit.limit = r3.back();
  fit.residual = std::abs(r2.back() - r3.back()) / scale;
  if (exploding)
    fit.reason = "first differences do not decay along the path";
  else if (fit.residual > agreement_tol)
    fit.reason = "extrapolation levels disagree (residual " +
                 num_str(fit.residual) + ")";
  else
    fit.converged = true;
  return fit;
}

std::vector<Vec> facet_probe_anchors(const DelzantPolytope& P, int facet,
                                     int count) {
  if (facet < 0 || facet >= P.d)
    throw_config("BadFacetIndex", "facet index " + std::to_string(facet) +
                                      " out of range [0, " +
                                      std::to_string(P.d) + ")");
  const int fi = P.find_face({facet});
  if (fi < 0)
    throw_config("BadFacetIndex",
                 "facet " + std::to_string(facet) + " has no face entry");
  const auto& face = P.faces[fi];

  // Base points spread over the facet interior.
  std::vector<Vec> targets;
  Vec fc = Vec::Zero(P.m);
  for (int vid : face.vertex_ids) fc += P.vertices[vid];
  fc /= static_cast<double>(face.vertex_ids.size());
  if (P.m == 2) {
    // The facet is a segment; fc is its midpoint, so signed fractions of
    // (v − fc) cover both halves.
    const Vec v = P.vertices[face.vertex_ids.front()];
    for (double f : {0.0, 0.4, -0.4, 0.8, -0.8})
      targets.push_back(fc + f * (v - fc));
  } else {
    targets.push_back(fc);
    for (std::size_t i = 0; i < face.vertex_ids.size() && targets.size() < 5;
         ++i)
      targets.push_back(fc + 0.4 * (P.vertices[face.vertex_ids[i]] - fc));
  }
  if (count > 0 && static_cast<int>(targets.size()) > count)
    targets.resize(count);

  // Pull each base point toward the interior so the orthogonal projection of
  // the anchor lands back inside the facet.
  const Vec c = P.interior_point();
  std::vector<Vec> anchors;
  anchors.reserve(targets.size());
  for (const Vec& t : targets) anchors.push_back(t + 0.35 * (c - t));
  return anchors;
}

namespace {

// Frames of both structures along one approach path to a facet. `ok == false`
// marks an inconclusive probe (evaluation failed somewhere along the path).
struct ProbePair {
  bool ok = false;
  std::string reason;
  std::vector<Vec> path;
  std::vector<Mat> Psi_ref, Psi_test;
  std::vector<double> det_ref, det_test;
};

ProbePair eval_probe(const GKStructure& ref, const GKStructure& test,
                     int facet, const Vec& anchor, int steps) {
  ProbePair pr;
  try {
    pr.path = facet_path(*ref.polytope, facet, anchor, steps);
    for (const Vec& x : pr.path) {
      PointFrame fr = frame_at(ref, x, 2);
      PointFrame ft = frame_at(test, x, 2);
      pr.Psi_ref.push_back(fr.Psi);
      pr.Psi_test.push_back(ft.Psi);
      pr.det_ref.push_back(fr.detPsi);
      pr.det_test.push_back(ft.detPsi);
    }
    pr.ok = true;
  } catch (const Error& e) {
    pr.reason = e.what();
  }
  return pr;
}

}  // namespace

ReportDoc check_c1_c2(const GKStructure& ref, const GKStructure& test,
                      const CompactifyOptions& opt) {
  require_same_polytope(ref, test);
  const DelzantPolytope& P = *ref.polytope;
  const int m = ref.m;
  const double seq_tol = 1e-6 * opt.tol_scale;
  const double det_floor = 1e-6;

  ReportDoc doc;
  doc.title =
      "compactification conditions (C1) and (C2'), determinant-ratio form";
  doc.record_tolerance("sequence_agreement", seq_tol);
  doc.record_tolerance("det_ratio_floor", det_floor);

  for (int j = 0; j < P.d; ++j) {
    bool c1_ok = true, c2_ok = true;
    double c1_worst = 0.0;
    double c2_value = std::numeric_limits<double>::infinity();
    std::string c1_note, c2_note;
    std::optional<Vec> c1_wit, c2_wit;

    for (const Vec& anchor :
         facet_probe_anchors(P, j, opt.probes_per_facet)) {
      ProbePair pr = eval_probe(ref, test, j, anchor, opt.path_steps);
      if (!pr.ok) {
        const std::string why =
            "probe inconclusive at anchor " + point_str(anchor) + ": " +
            pr.reason;
        if (c1_ok) {
          c1_ok = false;
          c1_note = why;
          c1_wit = anchor;
        }
        if (c2_ok) {
          c2_ok = false;
          c2_note = why;
          c2_wit = anchor;
        }
        continue;
      }
      const int n = static_cast<int>(pr.path.size());

      // (C1): every entry of Ψ̊ − Ψ converges along the path.
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          std::vector<double> seq(n);
          for (int k = 0; k < n; ++k)
            seq[k] = pr.Psi_test[k](r, c) - pr.Psi_ref[k](r, c);
          SeqFit f = analyze_sequence(seq, seq_tol);
          if (std::isfinite(f.residual))
            c1_worst = std::max(c1_worst, f.residual);
          if (!f.converged && c1_ok) {
            c1_ok = false;
            c1_note = "entry (" + std::to_string(r) + "," +
                      std::to_string(c) + "): " + f.reason + " near " +
                      point_str(pr.path.back());
            c1_wit = pr.path.back();
          }
        }

      // (C2'): det(Ψ⁻¹Ψ̊) = detΨ̊/detΨ stays bounded away from zero and its
      // limit does too.
      std::vector<double> q(n);
      double qmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        q[k] = pr.det_test[k] / pr.det_ref[k];
        qmin = std::min(qmin, q[k]);
      }
      SeqFit fq = analyze_sequence(q, seq_tol);
      const double probe_val = std::min(qmin, fq.limit);
      c2_value = std::min(c2_value, probe_val);
      std::string why;
      if (qmin < det_floor)
        why = "determinant ratio drops to " + num_str(qmin) + " on the path";
      else if (!fq.converged)
        why = fq.reason;
      else if (fq.limit < det_floor)
        why = "determinant ratio limit " + num_str(fq.limit) +
              " below floor";
      if (!why.empty() && c2_ok) {
        c2_ok = false;
        c2_note = why + " near " + point_str(pr.path.back());
        c2_wit = pr.path.back();
      }
    }

    auto& i1 = doc.add("C1.facet" + std::to_string(j), c1_ok, c1_worst,
                       c1_note);
    i1.witness_point = c1_wit;
    auto& i2 = doc.add("C2.facet" + std::to_string(j), c2_ok, c2_value,
                       c2_note);
    i2.witness_point = c2_wit;
  }
  return doc;
}

ReportDoc check_c3(const GKStructure& ref, const GKStructure& test,
                   const C3Options& opt) {
  ReportDoc pre = check_c1_c2(ref, test, opt);
  if (!pre.pass()) {
    std::string first;
    for (const auto& it : pre.items)
      if (!it.pass) {
        first = it.name;
        break;
      }
    throw_numerical("RequiresC1C2",
                    "conditions (C1)/(C2') fail (first: " + first +
                        "); boundary limits for (C3) are undefined");
  }
  const DelzantPolytope& P = *ref.polytope;
  const int m = ref.m;
  Mat off = Mat::Zero(m, m);
  if (opt.synthetic_offset.size() > 0) {
    if (opt.synthetic_offset.rows() != m || opt.synthetic_offset.cols() != m)
      throw_config("BadOffsetSize", "synthetic_offset must be " +
                                        std::to_string(m) + "x" +
                                        std::to_string(m));
    off = opt.synthetic_offset;
  }
  const bool injected = off.cwiseAbs().maxCoeff() > 0.0;
  const double seq_tol = 1e-6 * opt.tol_scale;

  ReportDoc doc;
  doc.title = "compactification condition (C3): boundary form positivity";
  doc.record_tolerance("sequence_agreement", seq_tol);
  doc.record_tolerance("min_eigenvalue_floor", 0.0);

  for (int j = 0; j < P.d; ++j) {
    bool data_ok = true;
    double min_eig = std::numeric_limits<double>::infinity();
    std::string note;
    std::optional<Vec> wit;

    for (const Vec& anchor :
         facet_probe_anchors(P, j, opt.probes_per_facet)) {
      ProbePair pr = eval_probe(ref, test, j, anchor, opt.path_steps);
      if (!pr.ok) {
        if (data_ok) {
          data_ok = false;
          note = "probe inconclusive at anchor " + point_str(anchor) + ": " +
                 pr.reason;
          wit = anchor;
        }
        continue;
      }
      const int n = static_cast<int>(pr.path.size());

      // Extrapolated limits of the two correction blocks.
      Mat E1(m, m), E2(m, m);
      std::vector<Mat> W(n);
      for (int k = 0; k < n; ++k)
        W[k] = pr.Psi_ref[k].transpose() *
                   pr.Psi_test[k].inverse() * pr.Psi_ref[k] -
               pr.Psi_ref[k].transpose();
      bool probe_ok = true;
      std::string probe_why;
      for (int r = 0; r < m && probe_ok; ++r)
        for (int c = 0; c < m && probe_ok; ++c) {
          std::vector<double> s1(n), s2(n);
          for (int k = 0; k < n; ++k) {
            s1[k] = pr.Psi_test[k](r, c) - pr.Psi_ref[k](r, c);
            s2[k] = W[k](r, c);
          }
          SeqFit f1 = analyze_sequence(s1, seq_tol);
          SeqFit f2 = analyze_sequence(s2, seq_tol);
          if (!f1.converged || !f2.converged) {
            probe_ok = false;
            probe_why = "correction entry (" + std::to_string(r) + "," +
                        std::to_string(c) + "): " +
                        (f1.converged ? f2.reason : f1.reason);
            break;
          }
          E1(r, c) = f1.limit;
          E2(r, c) = f2.limit;
        }
      if (!probe_ok) {
        if (data_ok) {
          data_ok = false;
          note = probe_why + " near " + point_str(pr.path.back());
          wit = pr.path.back();
        }
        continue;
      }

      // Assemble the boundary bilinear form at the deepest probe point:
      // momentum block Ψ + E1, angle block Ψ⁻¹ + Ψ^{-T}E2 Ψ⁻¹ (pointwise,
      // before extrapolation, this reproduces the test structure's β-Gram).
      const Vec& xs = pr.path.back();
      PointFrame F = frame_at(ref, xs, 2);
      Mat top = F.Psi + E1 + off;
      Mat bot = F.Psiinv + F.Psiinv.transpose() * E2 * F.Psiinv;
      Mat G2 = Mat::Zero(2 * m, 2 * m);
      G2.topLeftCorner(m, m) = top;
      G2.bottomRightCorner(m, m) = bot;
      Mat sym = 0.5 * (G2 + G2.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(sym);
      const double ev = es.eigenvalues().minCoeff();
      if (ev < min_eig) {
        min_eig = ev;
        if (data_ok) wit = xs;
      }
    }

    bool pass = false;
    if (m == 2) {
      pass = data_ok;
      if (data_ok)
        note = "informational in dimension 4: positivity is implied by "
               "(C1)+(C2); smallest eigenvalue " +
               num_str(min_eig);
    } else {
      pass = data_ok && min_eig > 0.0;
      if (data_ok && !pass)
        note = "boundary form has nonpositive direction (eigenvalue " +
               num_str(min_eig) + ")";
    }
    if (injected) note += (note.empty() ? "" : "; ") + std::string(
                              "synthetic offset injected for validation");
    auto& item =
        doc.add("C3.facet" + std::to_string(j), pass, min_eig, note);
    item.witness_point = wit;
  }
  return doc;
}

ReportDoc acgtf_check(const GKStructure& G, const std::vector<int>& face_ids,
                      const AcgtfOptions& opt) {
  if (!G.polytope) throw_config("MissingPolytope", "structure has no polytope");
  const DelzantPolytope& P = *G.polytope;
  const int m = G.m;
  std::vector<int> ids = face_ids;
  if (ids.empty())
    for (int i = 0; i < static_cast<int>(P.faces.size()); ++i)
      ids.push_back(i);
  for (int i : ids)
    if (i < 0 || i >= static_cast<int>(P.faces.size()))
      throw_config("BadFaceIndex", "face index " + std::to_string(i) +
                                       " out of range [0, " +
                                       std::to_string(P.faces.size()) + ")");
  if (opt.path_steps < 5)
    throw_config("ShortSequence", "acgtf needs at least 5 path steps");

  const double seq_tol = 1e-6 * opt.tol_scale;
  const double slope_tol = opt.slope_tol * opt.tol_scale;
  const double zero_tol = opt.zero_tol * opt.tol_scale;

  ReportDoc doc;
  doc.title = "ACGTF boundary criterion (potential metric; C ignored)";
  doc.record_tolerance("slope_target", 2.0);
  doc.record_tolerance("slope_tol", slope_tol);
  doc.record_tolerance("facet_row_zero_tol", zero_tol);
  doc.record_tolerance("sequence_agreement", seq_tol);

  const Vec anchor = P.interior_point();

  for (int fi : ids) {
    const auto& face = P.faces[fi];
    std::string label = "f";
    for (std::size_t a = 0; a < face.facets.size(); ++a) {
      if (a) label += ",";
      label += std::to_string(face.facets[a]);
    }
    const int nf = static_cast<int>(face.facets.size());

    // Geometric approach path from the face's vertex centroid toward the
    // interior anchor, plus the Gram H = N S⁻¹ Nᵀ over the adapted selection.
    Vec x0 = Vec::Zero(m);
    for (int vid : face.vertex_ids) x0 += P.vertices[vid];
    x0 /= static_cast<double>(face.vertex_ids.size());

    const int K = opt.path_steps;
    std::vector<Mat> H;
    std::vector<Vec> y;
    bool data_ok = true;
    std::string reason;
    AffineChart chart;
    try {
      chart = adapted_chart(P, face.facets, x0);
      for (int k = 1; k <= K; ++k) {
        const Vec x = x0 + std::ldexp(1.0, -k) * (anchor - x0);
        Jet4 jet = eval_jet4(G.potential, x, P.boundary_distance(x), 2);
        Eigen::SelfAdjointEigenSolver<Mat> es(jet.hess);
        if (es.eigenvalues().minCoeff() <=
            1e-12 * std::max(1.0, jet.hess.trace()))
          throw_numerical("NotConvexAt", "Hessian not positive definite at " +
                                             point_str(x));
        Mat Hk = chart.N * jet.hess.inverse() * chart.N.transpose();
        if (opt.conformal_factor) Hk *= opt.conformal_factor(x);
        H.push_back(Hk);
        y.push_back(chart.to_chart(x));
      }
    } catch (const Error& e) {
      data_ok = false;
      reason = e.what();
    }
    if (!data_ok) {
      auto& it = doc.add("acgtf." + label + ".converge", false, 0.0,
                         "probe inconclusive: " + reason);
      it.witness_point = x0;
      continue;
    }

    // (i) every entry converges; collect the extrapolated limit matrix.
    bool conv_ok = true;
    double conv_worst = 0.0;
    std::string conv_note;
    double hmax = 0.0;
    for (const Mat& Hk : H) hmax = std::max(hmax, Hk.cwiseAbs().maxCoeff());
    Mat Hlim(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        std::vector<double> seq(K);
        for (int k = 0; k < K; ++k) seq[k] = H[k](r, c);
        SeqFit f = analyze_sequence(seq, seq_tol);
        Hlim(r, c) = f.limit;
        if (std::isfinite(f.residual))
          conv_worst = std::max(conv_worst, f.residual);
        if (!f.converged && conv_ok) {
          conv_ok = false;
          conv_note = "entry (" + std::to_string(r) + "," +
                      std::to_string(c) + "): " + f.reason;
        }
      }
    auto& ic = doc.add("acgtf." + label + ".converge", conv_ok, conv_worst,
                       conv_note);
    ic.witness_point = x0;

    // (ii) rows of the face's own facets vanish at the limit, and the
    // diagonal grows with slope 2 in the matching chart coordinate. The
    // secant slopes along the ray converge to ∂H_aa/∂y^a because H_aa
    // vanishes identically on the facet, killing tangential derivatives.
    const double row_scale = 1.0 + hmax;
    for (int a = 0; a < nf; ++a) {
      const std::string fs = std::to_string(face.facets[a]);
      double rowmax = 0.0;
      for (int c = 0; c < m; ++c)
        rowmax = std::max(rowmax, std::abs(Hlim(a, c)));
      auto& ir = doc.add("acgtf." + label + ".facet_row." + fs,
                         conv_ok && rowmax <= zero_tol * row_scale, rowmax,
                         "");
      ir.witness_point = x0;

      std::vector<double> s(K - 1);
      for (int k = 0; k + 1 < K; ++k)
        s[k] = (H[k](a, a) - H[k + 1](a, a)) / (y[k][a] - y[k + 1][a]);
      std::vector<double> u1(s.size() - 1), u2;
      for (std::size_t k = 0; k + 1 < s.size(); ++k)
        u1[k] = 2.0 * s[k + 1] - s[k];
      u2.resize(u1.size() - 1);
      for (std::size_t k = 0; k + 1 < u1.size(); ++k)
        u2[k] = (4.0 * u1[k + 1] - u1[k]) / 3.0;
      const double slope = u2.back();
      auto& is = doc.add("acgtf." + label + ".slope." + fs,
                         std::abs(slope - 2.0) <= slope_tol, slope, "");
      is.witness_point = x0;
    }

    // (iii) the transverse block of the limit is positive definite.
    if (nf < m) {
      Mat T = Hlim.block(nf, nf, m - nf, m - nf);
      Mat Ts = 0.5 * (T + T.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(Ts);
      const double ev = es.eigenvalues().minCoeff();
      auto& it = doc.add("acgtf." + label + ".transverse_pd",
                         conv_ok && ev > 0.0, ev, "");
      it.witness_point = x0;
    }
  }
  return doc;
}

}  // namespace torickgk
