// torickgk — the one-parameter deformation family Ψ(t) = S_t + t·C of a toric
// generalized Kähler structure: family members, the admissible parameter
// interval, first-order (tangent) verification against finite differences,
// and the associated holomorphic Poisson data.
#pragma once

#include <string>
#include <vector>

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/report.hpp"

namespace torickgk {

/// Family through `base` (which must have C = 0 and a potential valid on all
/// of Δ): member t has C = t·direction and potential τ + ½ t μᵀ(defect)μ.
/// A zero defect is the pure C-deformation, which leaves the Hessian — and
/// hence the generalized Hermitian scalar curvature — untouched.
struct DeformationFamily {
  GKStructure base;
  Mat direction;  // antisymmetric m×m
  Mat defect;     // symmetric m×m (zero = pure C-deformation)
  double search_limit = 1e6;

  GKStructure at(double t) const;
};

/// Validate and assemble a family (direction exactly antisymmetric, defect
/// exactly symmetric, base.C = 0). An empty `defect` means zero.
DeformationFamily make_family(GKStructure base, const Mat& direction,
                              const Mat& defect = Mat());

/// Largest verified admissible interval around t = 0. A member is admissible
/// when its potential is strictly convex on an interior grid and it satisfies
/// (C1)/(C2′) against the base (plus (C3) when m > 2). The search grows
/// geometrically to `search_limit` and bisects onto each finite endpoint;
/// `witness_*` names the first condition that fails just past the endpoint.
struct AdmissibleRange {
  double t_lo = 0.0, t_hi = 0.0;
  bool unbounded_lo = false, unbounded_hi = false;  // within search_limit
  std::string witness_lo, witness_hi;
};

struct AdmissibleOptions {
  int grid_resolution = 5;
  double tol_scale = 1.0;
};

AdmissibleRange admissible_range(const DeformationFamily& fam,
                                 const AdmissibleOptions& opt = {});

/// Verify the analytic first-order response at t = 0 against central finite
/// differences in t at each point: (Ψ⁻¹)′(0) = −S⁻¹(direction + defect)S⁻¹,
/// and — for pure C-deformations — the Dolbeault-type tangent one-form
/// α_{j̄k} = i(C S⁻¹)_{kj} recovered from J̇ applied to the ∂z̄-frame, with the
/// anti-holomorphic residual of J̇(∂z̄_j) vanishing.
ReportDoc first_order_check(const DeformationFamily& fam,
                            const std::vector<Vec>& points,
                            double tol_scale = 1.0);

/// Coefficient matrix of the holomorphic Poisson bivector attached to the
/// family, in the frame of (1,0)-lifts K^{1,0}: 2·direction. (In the
/// coordinate frame ∂z the same bivector reads −2·direction; see
/// poisson_sigma.)
Eigen::MatrixXcd poisson_matrix(const DeformationFamily& fam);

/// Pointwise Poisson coefficients σ^{jk} = dz^j(P dz^k) computed from the
/// frame via P = ¼[J, J^{*ω}] g⁻¹ (g⁻¹ turning covectors into vectors), with
/// dz^k = Σ_i Ψ_{ki} dμ^i + i dt^k. For a family member at parameter t this
/// is −2t·direction.
Eigen::MatrixXcd poisson_sigma(const GKStructure& G, const Vec& x);

/// One row of a parameter scan over `points`: the largest drift of the
/// generalized Hermitian scalar curvature from its t = 0 value, the range of
/// the angle function, and the admissibility verdict at this t.
struct DeformScanRow {
  double t = 0.0;
  double max_u_gk_drift = 0.0;
  double p_min = 0.0, p_max = 0.0;
  bool admissible = false;
};
std::vector<DeformScanRow> deform_scan(const DeformationFamily& fam,
                                       const std::vector<double>& ts,
                                       const std::vector<Vec>& points);

}  // namespace torickgk
