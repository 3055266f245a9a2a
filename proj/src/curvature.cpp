#include "torickgk/curvature.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "torickgk/oracle.hpp"
#include "torickgk/rng.hpp"

namespace torickgk {

namespace {

std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

Mat slice3(const Jet4& jet, int k) {
  Mat M(jet.m, jet.m);
  for (int i = 0; i < jet.m; ++i)
    for (int j = 0; j < jet.m; ++j) M(i, j) = jet.third(i, j, k);
  return M;
}

Mat slice4(const Jet4& jet, int k, int l) {
  Mat M(jet.m, jet.m);
  for (int i = 0; i < jet.m; ++i)
    for (int j = 0; j < jet.m; ++j) M(i, j) = jet.fourth(i, j, k, l);
  return M;
}

void require_convex(const Jet4& jet, const Vec& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(jet.hess);
  if (es.eigenvalues().minCoeff() <= 1e-10 * std::max(1.0, jet.hess.trace()))
    throw_numerical("NotConvexAt",
                    "Hessian not positive definite at " + point_str(x));
}

// ρ_{kj} = Σ_i ∂_k(f_{,i} Ψ^{ij}), f = −½ log detS + log detΨ.
Mat ricci_from_jet(const Jet4& jet, const Mat& C) {
  const int m = jet.m;
  const Mat Sinv = jet.hess.inverse();
  const Mat Psi = jet.hess + C;
  const Mat Psiinv = Psi.inverse();

  std::vector<Mat> Sk(m);
  for (int k = 0; k < m; ++k) Sk[k] = slice3(jet, k);

  Vec df(m);
  for (int i = 0; i < m; ++i)
    df[i] = -0.5 * (Sinv * Sk[i]).trace() + (Psiinv * Sk[i]).trace();

  Mat d2f(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const Mat Sik = slice4(jet, i, k);
      d2f(i, k) = -0.5 * ((Sinv * Sik).trace() -
                          (Sinv * Sk[k] * Sinv * Sk[i]).trace()) +
                  ((Psiinv * Sik).trace() -
                   (Psiinv * Sk[k] * Psiinv * Sk[i]).trace());
    }

  Mat rho(m, m);
  for (int k = 0; k < m; ++k) {
    const Mat dPsiinv = -Psiinv * Sk[k] * Psiinv;  // ∂_k Ψ⁻¹
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int i = 0; i < m; ++i)
        s += d2f(i, k) * Psiinv(i, j) + df[i] * dPsiinv(i, j);
      rho(k, j) = s;
    }
  }
  return rho;
}

}  // namespace

double u_gk_from_jet(const Jet4& jet) {
  const int m = jet.m;
  const Mat Sinv = jet.hess.inverse();
  std::vector<Mat> Sk(m);
  for (int k = 0; k < m; ++k) Sk[k] = slice3(jet, k);
  double u = 0;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const Mat inner =
          Sk[k] * Sinv * Sk[l] + Sk[l] * Sinv * Sk[k] - slice4(jet, k, l);
      u -= (Sinv * inner * Sinv)(k, l);
    }
  return u;
}

double u_gk_at(const GKStructure& G, const Vec& x) {
  if (G.polytope->eval_L(x).minCoeff() <= 0.0)
    throw_numerical("OutsideDomain", "point " + point_str(x) +
                                         " is not in the polytope interior");
  const Jet4 jet =
      eval_jet4(G.potential, x, G.polytope->boundary_distance(x), 4);
  require_convex(jet, x);
  return u_gk_from_jet(jet);
}

CurvaturePointData dim4_chain(const GKStructure& G, const Vec& x) {
  if (G.m != 2)
    throw_config("Dim4Only", "the curvature chain requires m = 2, got m = " +
                                 std::to_string(G.m));
  const PointFrame F = frame_at(G, x, 4);
  const Dim4Scalars sc = dim4_scalars(F);

  CurvaturePointData out;
  out.u_gk = u_gk_from_jet(F.jet);
  out.dim4_valid = true;
  out.p = sc.p;
  out.lee2 = sc.theta2;
  out.lap_p = sc.lap_p;
  out.bracket = sc.bracket;
  out.rho = ricci_from_jet(F.jet, F.C);

  const double omp = 1.0 - sc.p;  // 1 − p > 0 by tamedness
  if (omp < 1e-10)
    throw_numerical("AngleSingularity",
                    "1 − p below 1e-10 at " + point_str(x));

  // Lee-form norm identity |θ|²(1−p²) = |dp|²_g.
  const double lee_lhs = sc.theta2 * (1.0 - sc.p * sc.p);
  if (std::abs(lee_lhs - sc.dp2) > 1e-8 * (1.0 + std::abs(sc.dp2)))
    throw_numerical("IdentityViolation",
                    "Lee-form norm identity failed at " + point_str(x));

  // Two routes to the Hermitian scalar curvature: through Δp directly, and
  // through the bracket term.
  const double route_dp =
      out.u_gk - 2.0 * sc.lap_p / omp + (4.0 + 2.0 * sc.p) / omp * sc.theta2;
  const double route_bracket = out.u_gk + (4.0 - 2.0 * sc.p) / omp * sc.theta2 -
                               2.0 * sc.bracket / omp;
  if (std::abs(route_dp - route_bracket) > 1e-7 * (1.0 + std::abs(route_dp)))
    throw_numerical("ChainMismatch",
                    "Hermitian scalar curvature routes disagree at " +
                        point_str(x));
  out.u_j = route_dp;
  out.s_g = out.u_j - 0.5 * sc.theta2;

  // Closing identity: u_GK recovered from s_g, Δp, and |dp|².
  const double opp = 1.0 - sc.p * sc.p;
  if (opp > 1e-10) {
    const double u_closed = out.s_g + 2.0 * sc.lap_p / omp -
                            (1.0 / opp) * ((4.0 + 2.0 * sc.p) / omp - 0.5) * sc.dp2;
    if (std::abs(u_closed - out.u_gk) > 1e-7 * (1.0 + std::abs(out.u_gk)))
      throw_numerical("ChainMismatch",
                      "scalar-curvature closing identity failed at " +
                          point_str(x));
  }
  return out;
}

Mat ricci_chern_components(const GKStructure& G, const Vec& x) {
  if (G.m != 2)
    throw_config("Dim4Only", "Chern-Ricci components require m = 2");
  if (G.polytope->eval_L(x).minCoeff() <= 0.0)
    throw_numerical("OutsideDomain", "point " + point_str(x) +
                                         " is not in the polytope interior");
  const Jet4 jet =
      eval_jet4(G.potential, x, G.polytope->boundary_distance(x), 4);
  require_convex(jet, x);
  return ricci_from_jet(jet, G.C);
}

double wedge4(const Mat& A, const Mat& B) {
  return A(0, 1) * B(2, 3) - A(0, 2) * B(1, 3) + A(0, 3) * B(1, 2) +
         A(2, 3) * B(0, 1) - A(1, 3) * B(0, 2) + A(1, 2) * B(0, 3);
}

double u_from_ricci(const GKStructure& G, const Vec& x) {
  if (G.m != 2)
    throw_config("Dim4Only", "the Ricci-form contraction requires m = 2");
  const PointFrame F = frame_at(G, x, 4);
  const Mat rho = ricci_from_jet(F.jet, F.C);
  Mat R = Mat::Zero(4, 4);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      R(k, 2 + j) += rho(k, j);
      R(2 + j, k) -= rho(k, j);
    }
  // Gram of the fundamental form F(X,Y) = g(JX, Y).
  const Mat Fg = F.J.transpose() * F.g;
  const double denom = wedge4(Fg, Fg);
  if (std::abs(denom) < 1e-300)
    throw_numerical("DegenerateVolume",
                    "F∧F vanished at " + point_str(x));
  return 4.0 * wedge4(R, Fg) / denom;
}

ExtremalFit extremal_fit(const GKStructure& G, const InteriorGrid& grid,
                         double threshold) {
  const int m = G.m;
  const int n = static_cast<int>(grid.points.size());
  if (n < m + 2)
    throw_config("DegenerateGrid",
                 "need more than " + std::to_string(m + 1) + " points, got " +
                     std::to_string(n));
  Mat X(n, m + 1);
  Vec u(n);
  for (int r = 0; r < n; ++r) {
    X.row(r).head(m) = grid.points[r].transpose();
    X(r, m) = 1.0;
    u[r] = u_gk_at(G, grid.points[r]);
  }
  Eigen::ColPivHouseholderQR<Mat> qr(X);
  if (qr.rank() < m + 1)
    throw_config("DegenerateGrid", "grid points are affinely degenerate");
  ExtremalFit fit;
  fit.coeffs = qr.solve(u);
  const double unorm = std::max(u.norm(), 1e-30);
  fit.residual_rel = (X * fit.coeffs - u).norm() / unorm;
  if (threshold <= 0)
    threshold = potential_uses_fd(G.potential) ? 1e-3 : 1e-6;
  fit.is_extremal = fit.residual_rel < threshold;
  return fit;
}

ReportDoc identity_suite(const GKStructure& G, const IdentityOptions& opt) {
  if (G.m != 2)
    throw_config("Dim4Only", "the identity suite requires m = 2");
  const DelzantPolytope& P = *G.polytope;

  ReportDoc doc;
  doc.title = "dimension-4 identity suite";
  const double ts = opt.tol_scale;
  doc.record_tolerance("determinant_split", 1e-12 * ts);
  doc.record_tolerance("angle_identities", 1e-12 * ts);
  doc.record_tolerance("divergence_identity", 1e-8 * ts);
  doc.record_tolerance("lee_norm", 1e-8 * ts);
  doc.record_tolerance("u_j_routes", 1e-7 * ts);
  doc.record_tolerance("q_matrix", 1e-12 * ts);
  doc.record_tolerance("volume_density", 1e-10 * ts);
  doc.record_tolerance("oracle_s_g", 1e-4 * ts);
  doc.record_tolerance("boundary_angle_limit", 1e-3 * ts);

  // Deterministic interior sample: rejection from the bounding box, margin
  // 1% of the box diagonal.
  Vec lo = P.vertices[0], hi = P.vertices[0];
  for (const Vec& v : P.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double margin = 0.01 * (hi - lo).norm();
  Rng rng(opt.seed);
  std::vector<Vec> pts;
  long tries = 0;
  while (static_cast<int>(pts.size()) < opt.n_points) {
    if (++tries > 10000L * opt.n_points)
      throw_numerical("SamplingFailure",
                      "could not draw interior points with margin " +
                          std::to_string(margin));
    Vec x(2);
    for (int i = 0; i < 2; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (P.boundary_distance(x) >= margin) pts.push_back(x);
  }

  struct Worst {
    double value = 0;
    Vec point;
    void update(double v, const Vec& x) {
      if (v >= value) {
        value = v;
        point = x;
      }
    }
  };
  Worst det_split, angle_m, angle_p, divg, lee, routes, qreal, qskew, vol;

  const double c = G.C(0, 1);
  for (const Vec& x : pts) {
    const PointFrame F = frame_at(G, x, 4);
    det_split.update(std::abs(F.detPsi - (F.detS + c * c)) /
                         (1.0 + std::abs(F.detPsi)),
                     x);
    angle_m.update(std::abs((1.0 - F.p) / 2.0 - F.detS / F.detPsi), x);
    angle_p.update(std::abs((1.0 + F.p) / 2.0 - c * c / F.detPsi), x);

    const DivergenceIdentity di = divergence_identity(F.jet);
    divg.update(di.residual.cwiseAbs().maxCoeff() / (1.0 + di.scale), x);

    const Dim4Scalars sc = dim4_scalars(F);
    lee.update(std::abs(sc.theta2 * (1.0 - sc.p * sc.p) - sc.dp2) /
                   (1.0 + std::abs(sc.dp2)),
               x);

    const CurvaturePointData cd = dim4_chain(G, x);
    const double omp = 1.0 - sc.p;
    const double alt = cd.u_gk + (4.0 - 2.0 * sc.p) / omp * sc.theta2 -
                       2.0 * sc.bracket / omp;
    routes.update(std::abs(cd.u_j - alt) / (1.0 + std::abs(cd.u_j)), x);

    const Eigen::MatrixXcd Q = q_matrix(F);
    qreal.update((Q.real() + F.Sinv).cwiseAbs().maxCoeff() /
                     (1.0 + F.Sinv.cwiseAbs().maxCoeff()),
                 x);
    qskew.update((Q.imag() + Q.imag().transpose()).cwiseAbs().maxCoeff() /
                     (1.0 + Q.imag().cwiseAbs().maxCoeff()),
                 x);

    vol.update(std::abs(std::sqrt(F.g.determinant()) - F.volume_ratio) /
                   (1.0 + std::abs(F.volume_ratio)),
               x);
  }

  const auto put = [&doc](const char* name, const Worst& w, double tol) {
    auto& item = doc.add(name, w.value <= tol, w.value, "");
    if (w.point.size()) item.witness_point = w.point;
  };
  put("determinant_split", det_split, 1e-12 * ts);
  put("angle_identity_minus", angle_m, 1e-12 * ts);
  put("angle_identity_plus", angle_p, 1e-12 * ts);
  put("divergence_identity", divg, 1e-8 * ts);
  put("lee_norm", lee, 1e-8 * ts);
  put("u_j_routes", routes, 1e-7 * ts);
  put("q_matrix_real_part", qreal, 1e-12 * ts);
  put("q_matrix_imag_antisymmetry", qskew, 1e-12 * ts);
  put("volume_density", vol, 1e-10 * ts);

  // Independent Riemannian cross-check at the best-conditioned sample points
  // (largest boundary distance).
  if (opt.with_oracle) {
    std::vector<Vec> best(pts.begin(), pts.end());
    std::sort(best.begin(), best.end(), [&P](const Vec& a, const Vec& b) {
      return P.boundary_distance(a) > P.boundary_distance(b);
    });
    const InvariantMetric met = metric_g(G);
    Worst worst;
    for (int i = 0; i < opt.oracle_points && i < static_cast<int>(best.size());
         ++i) {
      const Vec& x = best[i];
      const double s_fd =
          scalar_curvature_fd(met, x, 1e-3 * P.boundary_distance(x));
      const CurvaturePointData cd = dim4_chain(G, x);
      worst.update(std::abs(s_fd - cd.s_g) / (1.0 + std::abs(cd.s_g)), x);
    }
    put("oracle_s_g", worst, 1e-4 * ts);
  }

  // Boundary shadow: the angle function tends to −1 along facet paths.
  {
    Worst worst;
    const Vec anchor = P.interior_point();
    for (int j = 0; j < P.d; ++j) {
      const std::vector<Vec> path = facet_path(P, j, anchor, 10);
      std::vector<double> vals;
      for (const Vec& x : path) vals.push_back(frame_at(G, x, 2).p);
      // One Richardson level on the geometric (ratio ½) tail.
      double extrap = vals.back();
      if (vals.size() >= 2)
        extrap = 2.0 * vals[vals.size() - 1] - vals[vals.size() - 2];
      worst.update(std::abs(extrap + 1.0), path.back());
    }
    put("boundary_angle_limit", worst, 1e-3 * ts);
  }

  return doc;
}

}  // namespace torickgk
