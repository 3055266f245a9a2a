#include "torickgk/oracle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

namespace torickgk {

namespace {

std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Evaluate the metric, translating any evaluation failure (stencil point out
// of the domain, convexity loss) into the oracle's own error vocabulary.
Mat eval_metric(const InvariantMetric& met, const Vec& x) {
  try {
    return met.at(x);
  } catch (const Error& e) {
    throw_numerical("StepTooLarge",
                    std::string("metric stencil evaluation failed: ") + e.what());
  }
}

}  // namespace

InvariantMetric metric_g(const GKStructure& G) {
  InvariantMetric met;
  met.m = G.m;
  met.at = [G](const Vec& x) { return frame_at(G, x, 2).g; };
  return met;
}

InvariantMetric metric_gk(const GKStructure& G) {
  InvariantMetric met;
  met.m = G.m;
  const int m = G.m;
  GKStructure K = G;
  K.C = Mat::Zero(m, m);
  met.at = [K, m](const Vec& x) {
    const PointFrame F = frame_at(K, x, 2);
    Mat g = Mat::Zero(2 * m, 2 * m);
    g.topLeftCorner(m, m) = F.S;
    g.bottomRightCorner(m, m) = F.Sinv;
    return g;
  };
  return met;
}

InvariantMetric metric_flat(int m) {
  InvariantMetric met;
  met.m = m;
  met.at = [m](const Vec&) { return Mat::Identity(2 * m, 2 * m); };
  return met;
}

double scalar_curvature_fd(const InvariantMetric& met, const Vec& x, double h) {
  if (!(h > 0)) throw_config("StepTooLarge", "step h must be positive");
  const int m = met.m;
  const int n = 2 * m;

  const Mat g0 = eval_metric(met, x);
  Eigen::LLT<Mat> llt(g0);
  if (llt.info() != Eigen::Success)
    throw_numerical("NotPositiveDefinite",
                    "metric not positive definite at " + point_str(x));
  const Mat ginv = g0.inverse();

  // Metric first and second derivatives. Only the momentum directions carry
  // any dependence; angle derivatives are identically zero.
  std::vector<Mat> gp(m), gm(m);  // g(x ± h e_a)
  for (int a = 0; a < m; ++a) {
    Vec xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    gp[a] = eval_metric(met, xp);
    gm[a] = eval_metric(met, xm);
  }
  std::vector<Mat> dg(n, Mat::Zero(n, n));
  for (int a = 0; a < m; ++a) dg[a] = (gp[a] - gm[a]) / (2.0 * h);

  std::vector<std::vector<Mat>> d2g(n, std::vector<Mat>(n, Mat::Zero(n, n)));
  for (int a = 0; a < m; ++a)
    d2g[a][a] = (gp[a] - 2.0 * g0 + gm[a]) / (h * h);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[a] += h; xpp[b] += h;
      xpm[a] += h; xpm[b] -= h;
      xmp[a] -= h; xmp[b] += h;
      xmm[a] -= h; xmm[b] -= h;
      const Mat mixed = (eval_metric(met, xpp) - eval_metric(met, xpm) -
                         eval_metric(met, xmp) + eval_metric(met, xmm)) /
                        (4.0 * h * h);
      d2g[a][b] = mixed;
      d2g[b][a] = mixed;
    }

  // ∂_a g⁻¹ = −g⁻¹ (∂_a g) g⁻¹.
  std::vector<Mat> dginv(n, Mat::Zero(n, n));
  for (int a = 0; a < m; ++a) dginv[a] = -ginv * dg[a] * ginv;

  // Γ^a_{bc} = ½ g^{ad}(∂_b g_{dc} + ∂_c g_{db} − ∂_d g_{bc})
  Tensor3 Gam(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int d = 0; d < n; ++d)
          s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        Gam(a, b, c) = 0.5 * s;
      }

  // ∂_e Γ^a_{bc}, analytically from ∂g, ∂²g and ∂g⁻¹.
  Tensor4 dGam(n);
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double s = 0;
          for (int d = 0; d < n; ++d) {
            s += dginv[e](a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
            s += ginv(a, d) *
                 (d2g[e][b](d, c) + d2g[e][c](d, b) - d2g[e][d](b, c));
          }
          dGam(e, a, b, c) = 0.5 * s;
        }

  // Ric_{bd} = ∂_a Γ^a_{db} − ∂_d Γ^a_{ab} + Γ^a_{ae}Γ^e_{db} − Γ^a_{de}Γ^e_{ab}
  Mat Ric = Mat::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      double s = 0;
      for (int a = 0; a < n; ++a) {
        if (a < m) s += dGam(a, a, d, b);
        if (d < m) s -= dGam(d, a, a, b);
        for (int e = 0; e < n; ++e)
          s += Gam(a, a, e) * Gam(e, d, b) - Gam(a, d, e) * Gam(e, a, b);
      }
      Ric(b, d) = s;
    }

  double scal = 0;
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) scal += ginv(b, d) * Ric(b, d);
  if (!std::isfinite(scal))
    throw_numerical("StepTooLarge",
                    "scalar curvature did not evaluate finitely at " +
                        point_str(x));
  return scal;
}

double laplace_beltrami_fd(const InvariantMetric& met,
                           const std::function<double(const Vec&)>& f,
                           const Vec& x, double h) {
  if (!(h > 0)) throw_config("StepTooLarge", "step h must be positive");
  const int m = met.m;

  // Flux Φ_i(y) = √det g · Σ_j g^{ij} ∂_j f, restricted to the momentum block
  // by T-invariance.
  const auto flux = [&](const Vec& y, int i) {
    const Mat g = eval_metric(met, y);
    const double det = g.determinant();
    if (!(det > 0))
      throw_numerical("NotPositiveDefinite",
                      "metric degenerate at " + point_str(y));
    const Mat ginv_mu = g.topLeftCorner(m, m).inverse();
    double s = 0;
    for (int j = 0; j < m; ++j) {
      Vec yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      s += ginv_mu(i, j) * (f(yp) - f(ym)) / (2.0 * h);
    }
    return std::sqrt(det) * s;
  };

  // NOTE: g is block diagonal for every metric this oracle is fed
  // (diag(S, sym Ψ⁻¹) and g_K), so inverting the μ-block equals taking the
  // μ-block of g⁻¹; the flux above relies on that.
  const Mat g0 = eval_metric(met, x);
  if (g0.topRightCorner(m, m).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + g0.cwiseAbs().maxCoeff()))
    throw_config("UnsupportedMetric",
                 "laplace_beltrami_fd requires a block-diagonal invariant metric");
  const double sqrtdet = std::sqrt(g0.determinant());

  double div = 0;
  for (int i = 0; i < m; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    div += (flux(xp, i) - flux(xm, i)) / (2.0 * h);
  }
  const double lap = -div / sqrtdet;  // Δ = −div grad
  if (!std::isfinite(lap))
    throw_numerical("StepTooLarge",
                    "Laplacian did not evaluate finitely at " + point_str(x));
  return lap;
}

ReportDoc compatibility_check(const GKStructure& G,
                              const std::vector<Vec>& points,
                              CompatibilityFactor factor, double tol_scale) {
  if (G.m != 2)
    throw_config("Dim4Only", "compatibility_check requires m = 2");
  ReportDoc doc;
  doc.title = "omega-compatibility of the conformally rescaled metric";
  const double tol = 1e-10 * tol_scale;
  doc.record_tolerance("T2_identity", tol);

  const Mat omega_inv = -omega_matrix(2);  // Ω⁻¹ = −Ω for the standard block form
  for (const Vec& x : points) {
    const PointFrame F = frame_at(G, x, 2);
    double factor2 = 0;
    switch (factor) {
      case CompatibilityFactor::compatible:
        factor2 = 2.0 / (1.0 - F.p);
        break;
      case CompatibilityFactor::reciprocal:
        factor2 = (1.0 - F.p) / 2.0;
        break;
      case CompatibilityFactor::angle_flipped:
        factor2 = (1.0 + F.p) / 2.0;
        break;
    }
    if (!(factor2 > 0)) {
      doc.add("factor." + point_str(x), false, factor2,
              "conformal factor not positive");
      continue;
    }
    const Mat g_ak = std::sqrt(factor2) * F.g;
    const Mat T = omega_inv * g_ak;
    const double dev = (T * T + Mat::Identity(4, 4)).cwiseAbs().maxCoeff();
    Eigen::LLT<Mat> llt(g_ak);
    const bool pd = llt.info() == Eigen::Success;
    auto& item = doc.add("T2." + point_str(x), dev <= tol && pd, dev,
                         pd ? "" : "rescaled metric not positive definite");
    item.witness_point = x;
  }
  return doc;
}

}  // namespace torickgk
