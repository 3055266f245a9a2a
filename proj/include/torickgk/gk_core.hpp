// torickgk — pointwise linear algebra of a toric generalized Kähler structure
// in momentum-angle coordinates (basis ∂/∂μ^1..∂/∂μ^m, ∂/∂t^1..∂/∂t^m):
// Ψ = S + C, the complex structure J and its symplectic adjoint, the
// commuting pair (A, B), the bihermitian metric data (g, b), the angle
// function, and the Q-matrix.
#pragma once

#include <memory>

#include "torickgk/common.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/potential.hpp"

namespace torickgk {

struct GKStructure {
  std::shared_ptr<const DelzantPolytope> polytope;
  PotentialSpec potential;
  Mat C;  // constant antisymmetric m×m
  int m = 0;
};

/// Build and validate a structure (C antisymmetric exactly, sizes agree).
GKStructure make_structure(std::shared_ptr<const DelzantPolytope> P,
                           PotentialSpec potential, const Mat& C);

/// Gram matrix of ω = Σ dμ^j ∧ dt^j in the coordinate basis: [[0, I], [−I, 0]].
Mat omega_matrix(int m);

/// All pointwise matrices at x. The 2m×2m blocks follow the anti-diagonal
/// form: J maps ∂/∂μ^j ↦ Σ_i Ψ_{ij} ∂/∂t^i and ∂/∂t^j ↦ −Σ_i Ψ^{ij} ∂/∂μ^i.
struct PointFrame {
  int m = 0;
  Vec x;
  Jet4 jet;          // 4-jet of the potential at x
  Mat S, C, Psi;     // m×m
  Mat Sinv, Psiinv;
  double detS = 0, detPsi = 0;
  Mat J, Jdual;      // 2m×2m; Jdual = symplectic adjoint J^{*ω}
  Mat A, B;          // A = −2(J−J^{*ω})⁻¹, B = −(J+J^{*ω})(J−J^{*ω})⁻¹
  Mat g, b;          // Grams: g = sym ω(·,J·), b = −antisym ω(·,J·)
  double p = 0;      // −tr(J·J^{*ω})/(2m); the angle function when m = 2
  double volume_ratio = 0;  // detS/detΨ = √det g
};

/// Assemble the frame. Errors: OutsideDomain, NotConvexAt(x) (Hessian not
/// positive definite), SingularPsi (defensive; cannot occur when S ≻ 0).
PointFrame frame_at(const GKStructure& G, const Vec& x, int max_order = 4);

/// Q_{ij} = ω(K·K_i, K_j) with K = A + iB and K_i = ∂/∂t^i.
/// Re Q = −S⁻¹ and Im Q is antisymmetric.
Eigen::MatrixXcd q_matrix(const PointFrame& F);

/// Closed-form scalar data of the dimension-4 chain, assembled from the jet:
/// p and dp, the Lee-form norm |θ|², Δp (geometer sign: −div grad), and
/// bracket = ⟨[J, J^{*ω}], dθ⟩ recovered from Δp = 2p|θ|² + bracket.
struct Dim4Scalars {
  double p = 0;
  Vec dp;          // (∂p/∂μ^1, ∂p/∂μ^2)
  double dp2 = 0;  // |dp|²_g = Σ dp_i dp_j S^{ij}
  double theta2 = 0;
  double lap_p = 0;
  double bracket = 0;
};
Dim4Scalars dim4_scalars(const PointFrame& F);

/// detS derivatives from the jet: value, gradient, Hessian of det S(μ).
/// Shared by the curvature chain.
struct DetSDerivatives {
  double detS = 0;
  Vec grad;
  Mat hess;
};
DetSDerivatives dets_derivatives(const Jet4& jet);

/// Residuals of Σ_i [ (detS)·∂_i(S⁻¹)_{ij} + (detS)_{,i}·S^{ij} ] = 0, one per
/// column j, plus the scale used for relative comparison.
struct DivergenceIdentity {
  Vec residual;
  double scale = 0;
};
DivergenceIdentity divergence_identity(const Jet4& jet);

}  // namespace torickgk
