// torickgk — generalized Hermitian scalar curvature (Abreu-type formula),
// the dimension-4 curvature chain relating it to the Hermitian and Riemannian
// scalar curvatures through the angle function and the Lee form, the
// Chern–Ricci form, the extremality fit, and the consolidated identity suite.
#pragma once

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/report.hpp"

namespace torickgk {

/// −Σ_{k,l} ∂_k∂_l (S⁻¹)_{kl}, assembled analytically from the 4-jet via
/// d(S⁻¹) = −S⁻¹ dS S⁻¹. Independent of C.
double u_gk_from_jet(const Jet4& jet);
double u_gk_at(const GKStructure& G, const Vec& x);

struct CurvaturePointData {
  double u_gk = 0;
  // Dimension-4 chain (meaningful when dim4_valid):
  bool dim4_valid = false;
  double p = 0;
  double u_j = 0;   // Hermitian scalar curvature of (g, J)
  double s_g = 0;   // Riemannian scalar curvature, via u_J − ½|θ|²
  double lee2 = 0;  // |θ|²
  double lap_p = 0;
  double bracket = 0;
  Mat rho;  // Chern–Ricci coefficients of dμ^k∧dt^j (row k, column j)
};

/// Full m = 2 chain at a point. Computes u_GK, then the Hermitian scalar
/// curvature u_J along two independent routes (the Δp route and the bracket
/// route), asserting agreement to 1e-7 relative; s_g = u_J − ½|θ|²; also
/// verifies |θ|²(1−p²) = |dp|²_g to 1e-8 relative. Errors: Dim4Only,
/// AngleSingularity(x) when 1−p < 1e-10, ChainMismatch on route disagreement.
CurvaturePointData dim4_chain(const GKStructure& G, const Vec& x);

/// Coefficients ρ_{kj} of the Chern–Ricci form ρ^∇ = Σ ρ_{kj} dμ^k∧dt^j for a
/// T-invariant structure: ρ_{kj} = Σ_i ∂_k(f_{,i} Ψ^{ij}) with
/// f = −½ log detS + log detΨ. m = 2 only.
Mat ricci_chern_components(const GKStructure& G, const Vec& x);

/// (α∧β)(∂μ¹, ∂μ², ∂t¹, ∂t²) for 2-forms given by 4×4 antisymmetric Grams.
double wedge4(const Mat& A, const Mat& B);

/// Recover the Hermitian scalar curvature from the Chern–Ricci form by the
/// contraction u = 4 ρ∧F / (F∧F), with F = g(J·,·) the fundamental form.
double u_from_ricci(const GKStructure& G, const Vec& x);

struct ExtremalFit {
  Vec coeffs;           // (a_1, ..., a_m, constant)
  double residual_rel = 0;
  bool is_extremal = false;
};

/// Least-squares fit of u_GK over the grid to an affine function of μ.
/// is_extremal ⇔ relative RMS residual < threshold (1e-6 for analytic jets,
/// 1e-3 when the potential needs finite differences; override with
/// threshold > 0). Errors: DegenerateGrid.
ExtremalFit extremal_fit(const GKStructure& G, const InteriorGrid& grid,
                         double threshold = -1.0);

struct IdentityOptions {
  int n_points = 200;        // random interior sample size
  unsigned long long seed = 42;
  double tol_scale = 1.0;    // multiplies every tolerance
  bool with_oracle = true;   // include the FD-oracle cross-check (slowest item)
  int oracle_points = 3;     // points fed to the FD scalar-curvature oracle
};

/// The consolidated dimension-4 identity suite: determinant and angle
/// identities, the divergence identity of detS·S⁻¹, the Lee-form norm
/// identity, the two-route u_J agreement, the oracle cross-check of the
/// Riemannian scalar curvature, the Q-matrix real part, and the boundary
/// shadow p → −1 along facet paths. Deterministic for a fixed seed.
ReportDoc identity_suite(const GKStructure& G, const IdentityOptions& opt);

}  // namespace torickgk
