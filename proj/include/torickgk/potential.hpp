// torickgk — symplectic potentials with 4-jets: the canonical boundary
// potential ½ Σ L_j log L_j, quadratic/linear terms, expression potentials
// (finite-difference jets), and sums; plus the strict-convexity certifier.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "torickgk/common.hpp"
#include "torickgk/expr.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/report.hpp"

namespace torickgk {

/// Value and derivatives of τ at a point: gradient, Hessian S, and the
/// third/fourth derivative tensors S_{ij,k}, S_{ij,kl} (fully symmetric).
struct Jet4 {
  int m = 0;
  double value = 0.0;
  Vec grad;
  Mat hess;
  Tensor3 third;
  Tensor4 fourth;
};

struct PotentialSpec {
  enum class Kind { guillemin, quadratic, expression, sum };
  Kind kind = Kind::quadratic;
  int m = 0;

  std::shared_ptr<const DelzantPolytope> polytope;  // guillemin
  Mat Q;        // quadratic: ½ xᵀQx + lᵀx + c0
  Vec l;
  double c0 = 0.0;
  std::optional<Expression> expr;   // expression
  std::vector<PotentialSpec> terms; // sum
};

PotentialSpec guillemin_potential(std::shared_ptr<const DelzantPolytope> P);
PotentialSpec quadratic_potential(const Mat& Q, const Vec& l, double c0);
PotentialSpec expression_potential(const std::string& src, int m);
PotentialSpec sum_potential(std::vector<PotentialSpec> terms);

/// τ(x). Errors: OutsideDomain (canonical potential at L ≤ 0), expression
/// domain errors.
double eval_value(const PotentialSpec& spec, const Vec& x);

/// Jet of τ at x up to `max_order` (2..4; lower orders leave the higher
/// tensors zero). `boundary_dist` is the distance to ∂Δ used to scale FD
/// steps for expression potentials; pass a non-positive value when unknown
/// (unit scale is used). Analytic kinds ignore it.
/// Errors: OutsideDomain, FDStepUnderflow.
Jet4 eval_jet4(const PotentialSpec& spec, const Vec& x, double boundary_dist = -1.0,
               int max_order = 4);

/// First polytope found inside the spec (guillemin terms), or nullptr.
/// Used to derive per-point boundary distances for FD steps.
std::shared_ptr<const DelzantPolytope> find_polytope(const PotentialSpec& spec);

/// True when any part of the spec needs finite-difference jets (an expression
/// potential, directly or inside a sum); such jets carry looser tolerances.
bool potential_uses_fd(const PotentialSpec& spec);

/// Positive-definiteness of Hess(τ) over the sample points: LDLᵀ pivots must
/// exceed 1e-10·max(1, trace); pivots below 1e-6 (absolute) add a
/// near-singular warning item without failing.
ReportDoc check_strict_convexity(const PotentialSpec& spec, const std::vector<Vec>& points);

}  // namespace torickgk
