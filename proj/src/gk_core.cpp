#include "torickgk/gk_core.hpp"

#include <cmath>
#include <sstream>

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

// ∂_k S as a matrix, from the third-derivative tensor.
Mat slice3(const Jet4& jet, int k) {
  Mat M(jet.m, jet.m);
  for (int i = 0; i < jet.m; ++i)
    for (int j = 0; j < jet.m; ++j) M(i, j) = jet.third(i, j, k);
  return M;
}

// ∂_k∂_l S as a matrix, from the fourth-derivative tensor.
Mat slice4(const Jet4& jet, int k, int l) {
  Mat M(jet.m, jet.m);
  for (int i = 0; i < jet.m; ++i)
    for (int j = 0; j < jet.m; ++j) M(i, j) = jet.fourth(i, j, k, l);
  return M;
}

}  // namespace

GKStructure make_structure(std::shared_ptr<const DelzantPolytope> P,
                           PotentialSpec potential, const Mat& C) {
  if (!P) throw_config("InvalidStructure", "polytope is null");
  GKStructure G;
  G.m = P->m;
  if (potential.m != G.m)
    throw_config("DimensionMismatch",
                 "potential dimension " + std::to_string(potential.m) +
                     " does not match polytope dimension " + std::to_string(G.m));
  if (C.rows() != G.m || C.cols() != G.m)
    throw_config("DimensionMismatch", "C must be " + std::to_string(G.m) + "x" +
                                          std::to_string(G.m));
  for (int i = 0; i < G.m; ++i)
    for (int j = 0; j < G.m; ++j)
      if (C(i, j) + C(j, i) != 0.0)
        throw_config("NotAntisymmetric",
                     "C + C^T must vanish exactly; entry (" + std::to_string(i) +
                         "," + std::to_string(j) + ") violates it");
  G.polytope = std::move(P);
  G.potential = std::move(potential);
  G.C = C;
  return G;
}

Mat omega_matrix(int m) {
  Mat O = Mat::Zero(2 * m, 2 * m);
  O.topRightCorner(m, m) = Mat::Identity(m, m);
  O.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
  return O;
}

PointFrame frame_at(const GKStructure& G, const Vec& x, int max_order) {
  const int m = G.m;
  const Vec L = G.polytope->eval_L(x);
  if (L.minCoeff() <= 0.0)
    throw_numerical("OutsideDomain", "point " + point_str(x) +
                                         " is not in the polytope interior");
  PointFrame F;
  F.m = m;
  F.x = x;
  F.jet = eval_jet4(G.potential, x, G.polytope->boundary_distance(x), max_order);

  F.S = F.jet.hess;
  Eigen::SelfAdjointEigenSolver<Mat> es(F.S);
  const double conv_tol = 1e-10 * std::max(1.0, F.S.trace());
  if (es.eigenvalues().minCoeff() <= conv_tol)
    throw_numerical("NotConvexAt",
                    "Hessian not positive definite at " + point_str(x) +
                        " (smallest eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()) + ")");

  F.C = G.C;
  F.Psi = F.S + F.C;
  F.detS = F.S.determinant();
  F.detPsi = F.Psi.determinant();
  // det(S + C) ≥ det S > 0 for S ≻ 0 and C antisymmetric, so this cannot
  // fire once convexity held; keep it as a hard stop for corrupted input.
  if (!(std::abs(F.detPsi) > 1e-300))
    throw_numerical("SingularPsi", "det(S + C) vanished at " + point_str(x));
  F.Sinv = F.S.inverse();
  F.Psiinv = F.Psi.inverse();

  F.J = Mat::Zero(2 * m, 2 * m);
  F.J.topRightCorner(m, m) = -F.Psiinv;
  F.J.bottomLeftCorner(m, m) = F.Psi;
  F.Jdual = Mat::Zero(2 * m, 2 * m);
  F.Jdual.topRightCorner(m, m) = F.Psiinv.transpose();
  F.Jdual.bottomLeftCorner(m, m) = -F.Psi.transpose();

  const Mat omega_J = omega_matrix(m) * F.J;
  F.g = 0.5 * (omega_J + omega_J.transpose());
  F.b = -0.5 * (omega_J - omega_J.transpose());

  const Mat diff = F.J - F.Jdual;
  F.A = -2.0 * diff.lu().solve(Mat::Identity(2 * m, 2 * m));
  F.B = 0.5 * (F.J + F.Jdual) * F.A;

  F.p = -(F.J * F.Jdual).trace() / (2.0 * m);
  F.volume_ratio = F.detS / F.detPsi;
  if (m == 2) {
    // Double-entry bookkeeping: the trace definition must reproduce the
    // determinant closed form (c² − detS)/detΨ.
    const double c = F.C(0, 1);
    const double p_det = (c * c - F.detS) / F.detPsi;
    if (std::abs(F.p - p_det) > 1e-9 * (1.0 + std::abs(p_det)))
      throw_numerical("AngleMismatch",
                      "trace and determinant forms of the angle function "
                      "disagree at " +
                          point_str(x));
  }
  return F;
}

Eigen::MatrixXcd q_matrix(const PointFrame& F) {
  const int m = F.m;
  const Eigen::MatrixXcd K =
      F.A.cast<std::complex<double>>() +
      std::complex<double>(0, 1) * F.B.cast<std::complex<double>>();
  // ω(u, ∂/∂t^j) picks out the μ-component u_j, so Q_{ij} = (K ∂/∂t^i)_j.
  Eigen::MatrixXcd Q(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Q(i, j) = K(j, m + i);
  return Q;
}

DetSDerivatives dets_derivatives(const Jet4& jet) {
  const int m = jet.m;
  const Mat Sinv = jet.hess.inverse();
  DetSDerivatives d;
  d.detS = jet.hess.determinant();
  d.grad = Vec::Zero(m);
  d.hess = Mat::Zero(m, m);
  std::vector<Mat> Sk(m);
  for (int k = 0; k < m; ++k) {
    Sk[k] = slice3(jet, k);
    d.grad[k] = d.detS * (Sinv * Sk[k]).trace();
  }
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const double t1 = (Sinv * Sk[k]).trace() * (Sinv * Sk[l]).trace();
      const double t2 = (Sinv * Sk[l] * Sinv * Sk[k]).trace();
      const double t3 = (Sinv * slice4(jet, k, l)).trace();
      d.hess(k, l) = d.detS * (t1 - t2 + t3);
    }
  return d;
}

DivergenceIdentity divergence_identity(const Jet4& jet) {
  const int m = jet.m;
  const Mat Sinv = jet.hess.inverse();
  const DetSDerivatives d = dets_derivatives(jet);
  DivergenceIdentity out;
  out.residual = Vec::Zero(m);
  out.scale = 0.0;
  for (int j = 0; j < m; ++j) {
    double r = 0.0;
    for (int i = 0; i < m; ++i) {
      const Mat dSinv = -Sinv * slice3(jet, i) * Sinv;  // ∂_i S⁻¹
      const double t1 = d.detS * dSinv(i, j);
      const double t2 = d.grad[i] * Sinv(i, j);
      r += t1 + t2;
      out.scale = std::max({out.scale, std::abs(t1), std::abs(t2)});
    }
    out.residual[j] = r;
  }
  return out;
}

Dim4Scalars dim4_scalars(const PointFrame& F) {
  if (F.m != 2)
    throw_config("Dim4Only", "angle-function scalars require m = 2, got m = " +
                                 std::to_string(F.m));
  const double c = F.C(0, 1);
  Dim4Scalars out;
  out.p = F.p;
  if (c != 0.0 && std::abs(1.0 - std::abs(F.p)) < 1e-12)
    throw_numerical("DegenerateAngle",
                    "angle function at " + point_str(F.x) +
                        " is numerically ±1; Lee-form quantities undefined");

  const DetSDerivatives d = dets_derivatives(F.jet);
  const double V = F.detPsi;
  const double c2 = c * c;
  out.dp = Vec::Zero(2);
  for (int i = 0; i < 2; ++i) out.dp[i] = -2.0 * c2 * d.grad[i] / (V * V);
  const double grad_norm2 = d.grad.dot(F.Sinv * d.grad);  // Σ D_{,i}D_{,j}S^{ij}
  out.dp2 = out.dp.dot(F.Sinv * out.dp);
  out.theta2 = c2 * grad_norm2 / (V * V * d.detS);
  // Δ = −div grad; Δp = (2c²/V²) Σ S^{ij}[(detS)_{,ij} − (3/V)(detS)_{,i}(detS)_{,j}].
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      acc += F.Sinv(i, j) * (d.hess(i, j) - 3.0 / V * d.grad[i] * d.grad[j]);
  out.lap_p = 2.0 * c2 / (V * V) * acc;
  out.bracket = out.lap_p - 2.0 * out.p * out.theta2;
  return out;
}

}  // namespace torickgk
