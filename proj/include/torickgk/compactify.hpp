// torickgk — numerical admissibility checks at the polytope boundary:
// conditions (C1)/(C2′)/(C3) of a test structure against a reference valid on
// all of Δ, and the ACGTF facet criterion (H → 0 on facet rows, normal slope
// 2, trailing block positive definite).
//
// "Smooth extension" is operationalized as Cauchy convergence of values with
// bounded first differences along geometric approach paths (ratio ½); limits
// come from three levels of Richardson extrapolation. Inconclusive probes are
// failures with a reason, never passes.
#pragma once

#include <functional>
#include <vector>

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/report.hpp"

namespace torickgk {

/// Limit analysis of a sequence sampled along a geometric (ratio ½) approach
/// path. `limit` is the deepest Richardson level; `converged` requires finite
/// values, non-exploding first differences, and agreement of the last two
/// Richardson levels within 1e-6·(1 + max|a_k|).
struct SeqFit {
  double limit = 0;
  bool converged = false;
  double residual = 0;  // |level2 − level3| agreement, scale-normalized
  std::string reason;   // set when not converged
};
SeqFit analyze_sequence(const std::vector<double>& values,
                        double agreement_tol = 1e-6);

struct CompactifyOptions {
  int probes_per_facet = 5;
  int path_steps = 8;
  double tol_scale = 1.0;
};

/// Probe base points on facet j (spread over the facet interior) paired with
/// interior anchors; shared by the boundary checks.
std::vector<Vec> facet_probe_anchors(const DelzantPolytope& P, int facet,
                                     int count);

/// (C1): entries of Ψ̊ − Ψ converge along every approach path.
/// (C2′): det(Ψ⁻¹Ψ̊) stays ≥ 1e-6 along every path and its limit is ≥ 1e-6.
/// `ref` must be valid on all of Δ (e.g. Guillemin-based); same polytope.
ReportDoc check_c1_c2(const GKStructure& ref, const GKStructure& test,
                      const CompactifyOptions& opt = {});

struct C3Options : CompactifyOptions {
  /// Fault-injection control for validating the detector: added to the
  /// extrapolated limit of Ψ̊ − Ψ before assembling the boundary form.
  Mat synthetic_offset;
};

/// (C3): the boundary bilinear form
///   β + Σ(Ψ̊−Ψ)_{ij} dμ^i⊗dμ^j + (ΨᵀΨ̊⁻¹Ψ−Ψᵀ)_{ij} (J dμ^i)⊗(J dμ^j)
/// assembled from extrapolated limits, checked positive definite at the
/// deepest probe point of every path. In m = 2 the verdict is informational
/// (implied by (C1)+(C2)); the smallest eigenvalue is still reported.
/// Errors: RequiresC1C2 when the (C1)/(C2′) pre-check fails.
ReportDoc check_c3(const GKStructure& ref, const GKStructure& test,
                   const C3Options& opt = {});

struct AcgtfOptions {
  int path_steps = 10;
  double slope_tol = 1e-3;
  double zero_tol = 1e-5;
  double tol_scale = 1.0;
  /// Optional conformal scaling of the metric: H is multiplied by this factor
  /// (identically 1 when unset).
  std::function<double(const Vec&)> conformal_factor;
};

/// ACGTF boundary criterion for the Kähler metric of the potential alone
/// (C is ignored): H_{ab}(x) = ν_{σ(a)}ᵀ S(x)⁻¹ ν_{σ(b)} over the adapted
/// selection σ of each face. Conditions per face: (i) all entries converge;
/// (ii) rows of the face's own facets vanish at the limit and the normal
/// slopes ∂H_ii/∂y^i tend to 2; (iii) the trailing submatrix is positive
/// definite at the limit. `face_ids` indexes into P.faces (empty = all).
ReportDoc acgtf_check(const GKStructure& G, const std::vector<int>& face_ids,
                      const AcgtfOptions& opt = {});

}  // namespace torickgk
