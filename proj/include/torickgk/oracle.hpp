// torickgk — independent finite-difference Riemannian toolbox, used only for
// cross-validation. It consumes raw metric entries g(x) in the coordinate
// basis (∂/∂μ, ∂/∂t) and never any closed-form curvature, so agreement with
// the analytic chain is evidence, not tautology.
#pragma once

#include <functional>

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/report.hpp"

namespace torickgk {

/// A T^m-invariant metric: x is the m-dimensional momentum coordinate, the
/// returned Gram matrix is 2m×2m symmetric positive definite and constant in
/// the angle coordinates.
struct InvariantMetric {
  int m = 0;
  std::function<Mat(const Vec&)> at;
};

/// The bihermitian metric g of a structure (block diag(S, sym Ψ⁻¹)).
InvariantMetric metric_g(const GKStructure& G);
/// The toric Kähler metric g_K = S dμ⊗dμ + S⁻¹ dt⊗dt of the potential alone.
InvariantMetric metric_gk(const GKStructure& G);
/// The Euclidean metric on ℝ^m × T^m.
InvariantMetric metric_flat(int m);

/// Scalar curvature at x by central-difference metric derivatives (step h),
/// Christoffel symbols, and the Ricci contraction; O(h²) accurate.
/// Errors: StepTooLarge (a stencil point left the metric's domain),
/// NotPositiveDefinite.
double scalar_curvature_fd(const InvariantMetric& met, const Vec& x, double h);

/// Laplace–Beltrami of a momentum-space function, convention Δ = −div grad
/// (flat metric, f = μ₁² ↦ −2). The sign is calibrated so that applying the
/// oracle to the angle function reproduces its closed-form Laplacian
/// (positive at the square's center). Errors as above.
double laplace_beltrami_fd(const InvariantMetric& met,
                           const std::function<double(const Vec&)>& f,
                           const Vec& x, double h);

/// Conformal factor applied to g before the ω-compatibility test.
enum class CompatibilityFactor {
  compatible,     // 2/(1−p): the unique positive factor with T² = −Id
  reciprocal,     // (1−p)/2: negative control (fails away from the Kähler locus)
  angle_flipped,  // (1+p)/2: negative control
};

/// Verifies that g_AK := √(2/(1−p))·g is ω-compatible at the given points:
/// T := ω⁻¹·g_AK satisfies T² = −Id (≤ 1e-10·tol_scale) and g_AK ≻ 0.
/// The non-default factors are deliberate detector controls.
ReportDoc compatibility_check(
    const GKStructure& G, const std::vector<Vec>& points,
    CompatibilityFactor factor = CompatibilityFactor::compatible,
    double tol_scale = 1.0);

}  // namespace torickgk
