// torickgk — potential jets: closed forms for the analytic families and a
// Richardson-extrapolated central-difference engine for expression potentials.
#include "torickgk/potential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

namespace torickgk {

namespace {

/// d^k/dt^k of t log t, k = 0..4.
inline double tlogt_deriv(double t, int k) {
  switch (k) {
    case 0:
      return t * std::log(t);
    case 1:
      return std::log(t) + 1.0;
    case 2:
      return 1.0 / t;
    case 3:
      return -1.0 / (t * t);
    default:
      return 2.0 / (t * t * t);
  }
}

Jet4 zero_jet(int m) {
  Jet4 j;
  j.m = m;
  j.value = 0.0;
  j.grad = Vec::Zero(m);
  j.hess = Mat::Zero(m, m);
  j.third = Tensor3(m);
  j.fourth = Tensor4(m);
  return j;
}

Jet4 guillemin_jet(const DelzantPolytope& P, const Vec& x, int max_order) {
  Jet4 jet = zero_jet(P.m);
  Vec L = P.eval_L(x);
  if (L.minCoeff() <= 0.0)
    throw_numerical("OutsideDomain",
                    "canonical potential evaluated at a non-interior point (min L = " +
                        format_double(L.minCoeff()) + ")");
  const int m = P.m;
  for (int f = 0; f < P.d; ++f) {
    Vec nu = P.normals_d.row(f).transpose();
    double t = L(f);
    jet.value += 0.5 * tlogt_deriv(t, 0);
    double d1 = 0.5 * tlogt_deriv(t, 1);
    for (int i = 0; i < m; ++i) jet.grad(i) += d1 * nu(i);
    if (max_order < 2) continue;
    double d2 = 0.5 * tlogt_deriv(t, 2);
    jet.hess += d2 * nu * nu.transpose();
    if (max_order < 3) continue;
    double d3 = 0.5 * tlogt_deriv(t, 3);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) jet.third(i, j, k) += d3 * nu(i) * nu(j) * nu(k);
    if (max_order < 4) continue;
    double d4 = 0.5 * tlogt_deriv(t, 4);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            jet.fourth(i, j, k, l) += d4 * nu(i) * nu(j) * nu(k) * nu(l);
  }
  return jet;
}

Jet4 quadratic_jet(const PotentialSpec& spec, const Vec& x) {
  Jet4 jet = zero_jet(spec.m);
  jet.value = 0.5 * x.dot(spec.Q * x) + spec.l.dot(x) + spec.c0;
  jet.grad = spec.Q * x + spec.l;
  jet.hess = spec.Q;
  return jet;
}

// ---------------------------------------------------------------------------
// Finite-difference jets for expression potentials.
//
// Central stencils are O(h²) with even error series, so one Richardson level
// (4·D(h/2) − D(h))/3 upgrades everything to O(h⁴). The pinned step
// max(1e-4·dist, 1e-6) is adequate for orders ≤ 2, but the rounding error of
// an order-k difference grows like eps/h^k, so orders 3 and 4 use larger
// steps scaled to the boundary distance.
// ---------------------------------------------------------------------------

using ScalarFn = std::function<double(const Vec&)>;

/// Central difference for the multi-index `axes` (size = order) with step h.
/// Leading repeated axes use the 3-point second-difference stencil.
double fd_partial(const ScalarFn& f, const Vec& x, const std::vector<int>& axes,
                  double h) {
  const size_t n = axes.size();
  if (n == 1) {
    Vec xp = x, xm = x;
    xp(axes[0]) += h;
    xm(axes[0]) -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
  }
  if (n == 2 && axes[0] == axes[1]) {
    Vec xp = x, xm = x;
    xp(axes[0]) += h;
    xm(axes[0]) -= h;
    return (f(xp) - 2.0 * f(x) + f(xm)) / (h * h);
  }
  if (n == 2) {
    Vec xpp = x, xpm = x, xmp = x, xmm = x;
    xpp(axes[0]) += h;
    xpp(axes[1]) += h;
    xpm(axes[0]) += h;
    xpm(axes[1]) -= h;
    xmp(axes[0]) -= h;
    xmp(axes[1]) += h;
    xmm(axes[0]) -= h;
    xmm(axes[1]) -= h;
    return (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
  }
  std::vector<int> rest(axes.begin() + (axes[0] == axes[1] ? 2 : 1), axes.end());
  if (axes[0] == axes[1]) {
    Vec xp = x, xm = x;
    xp(axes[0]) += h;
    xm(axes[0]) -= h;
    return (fd_partial(f, xp, rest, h) - 2.0 * fd_partial(f, x, rest, h) +
            fd_partial(f, xm, rest, h)) /
           (h * h);
  }
  Vec xp = x, xm = x;
  xp(axes[0]) += h;
  xm(axes[0]) -= h;
  return (fd_partial(f, xp, rest, h) - fd_partial(f, xm, rest, h)) / (2.0 * h);
}

double fd_richardson(const ScalarFn& f, const Vec& x, const std::vector<int>& axes,
                     double h) {
  double coarse = fd_partial(f, x, axes, h);
  double fine = fd_partial(f, x, axes, h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

Jet4 expression_jet(const PotentialSpec& spec, const Vec& x, double boundary_dist,
                    int max_order) {
  const int m = spec.m;
  const Expression& expr = *spec.expr;
  ScalarFn f = [&expr](const Vec& p) { return eval_expression(expr, p); };

  double dist = boundary_dist > 0 ? boundary_dist : 1.0;
  double h12 = std::max(1e-4 * dist, 1e-6);
  double h3 = std::max(6e-3 * dist, 2e-5);
  double h4 = std::max(1.5e-2 * dist, 1e-4);
  // The widest stencil reaches 4 steps from x (nested second differences plus
  // the Richardson halving never exceed that).
  if (boundary_dist > 0 && 4.0 * h4 >= boundary_dist && max_order >= 3)
    throw_numerical("FDStepUnderflow",
                    "point too close to the boundary for order-3/4 stencils "
                    "(dist = " +
                        format_double(boundary_dist) + ")");

  Jet4 jet = zero_jet(m);
  try {
    jet.value = f(x);
    for (int i = 0; i < m; ++i) jet.grad(i) = fd_richardson(f, x, {i}, h12);
    if (max_order >= 2) {
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          double v = fd_richardson(f, x, {i, j}, h12);
          jet.hess(i, j) = v;
          jet.hess(j, i) = v;
        }
    }
    if (max_order >= 3) {
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (int k = j; k < m; ++k) {
            double v = fd_richardson(f, x, {i, j, k}, h3);
            int idx[3] = {i, j, k};
            std::sort(idx, idx + 3);
            do {
              jet.third(idx[0], idx[1], idx[2]) = v;
            } while (std::next_permutation(idx, idx + 3));
          }
    }
    if (max_order >= 4) {
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (int k = j; k < m; ++k)
            for (int l = k; l < m; ++l) {
              double v = fd_richardson(f, x, {i, j, k, l}, h4);
              int idx[4] = {i, j, k, l};
              std::sort(idx, idx + 4);
              do {
                jet.fourth(idx[0], idx[1], idx[2], idx[3]) = v;
              } while (std::next_permutation(idx, idx + 4));
            }
    }
  } catch (const Error& e) {
    if (e.kind() == "DomainError" || e.kind() == "DivByZero" ||
        e.kind() == "OutsideDomain")
      throw_numerical("FDStepUnderflow",
                      std::string("finite-difference stencil left the expression "
                                  "domain: ") +
                          e.what());
    throw;
  }
  return jet;
}

void add_jet(Jet4& acc, const Jet4& other) {
  const int m = acc.m;
  acc.value += other.value;
  acc.grad += other.grad;
  acc.hess += other.hess;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        acc.third(i, j, k) += other.third(i, j, k);
        for (int l = 0; l < m; ++l) acc.fourth(i, j, k, l) += other.fourth(i, j, k, l);
      }
}

}  // namespace

PotentialSpec guillemin_potential(std::shared_ptr<const DelzantPolytope> P) {
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::guillemin;
  s.m = P->m;
  s.polytope = std::move(P);
  return s;
}

PotentialSpec quadratic_potential(const Mat& Q, const Vec& l, double c0) {
  if (Q.rows() != Q.cols() || Q.rows() != l.size())
    throw_config("DimensionMismatch", "quadratic potential: Q and l sizes disagree");
  if (!Q.isApprox(Q.transpose(), 1e-14))
    throw_config("DimensionMismatch", "quadratic potential: Q must be symmetric");
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::quadratic;
  s.m = static_cast<int>(Q.rows());
  s.Q = 0.5 * (Q + Q.transpose());  // exact symmetry
  s.l = l;
  s.c0 = c0;
  return s;
}

PotentialSpec expression_potential(const std::string& src, int m) {
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::expression;
  s.m = m;
  s.expr = parse_expression(src, m);
  return s;
}

PotentialSpec sum_potential(std::vector<PotentialSpec> terms) {
  if (terms.empty()) throw_config("DimensionMismatch", "sum potential needs terms");
  PotentialSpec s;
  s.kind = PotentialSpec::Kind::sum;
  s.m = terms.front().m;
  for (const auto& t : terms)
    if (t.m != s.m) throw_config("DimensionMismatch", "sum potential members disagree on m");
  s.terms = std::move(terms);
  return s;
}

double eval_value(const PotentialSpec& spec, const Vec& x) {
  switch (spec.kind) {
    case PotentialSpec::Kind::guillemin: {
      Vec L = spec.polytope->eval_L(x);
      if (L.minCoeff() <= 0.0)
        throw_numerical("OutsideDomain", "canonical potential at a non-interior point");
      double v = 0.0;
      for (int j = 0; j < L.size(); ++j) v += 0.5 * L(j) * std::log(L(j));
      return v;
    }
    case PotentialSpec::Kind::quadratic:
      return 0.5 * x.dot(spec.Q * x) + spec.l.dot(x) + spec.c0;
    case PotentialSpec::Kind::expression:
      return eval_expression(*spec.expr, x);
    case PotentialSpec::Kind::sum: {
      double v = 0.0;
      for (const auto& t : spec.terms) v += eval_value(t, x);
      return v;
    }
  }
  throw_numerical("DomainError", "corrupt potential spec");
}

Jet4 eval_jet4(const PotentialSpec& spec, const Vec& x, double boundary_dist,
               int max_order) {
  if (x.size() != spec.m)
    throw_config("DimensionMismatch", "point dimension does not match potential");
  switch (spec.kind) {
    case PotentialSpec::Kind::guillemin:
      return guillemin_jet(*spec.polytope, x, max_order);
    case PotentialSpec::Kind::quadratic:
      return quadratic_jet(spec, x);
    case PotentialSpec::Kind::expression:
      return expression_jet(spec, x, boundary_dist, max_order);
    case PotentialSpec::Kind::sum: {
      Jet4 acc = zero_jet(spec.m);
      for (const auto& t : spec.terms) add_jet(acc, eval_jet4(t, x, boundary_dist, max_order));
      return acc;
    }
  }
  throw_numerical("DomainError", "corrupt potential spec");
}

std::shared_ptr<const DelzantPolytope> find_polytope(const PotentialSpec& spec) {
  if (spec.kind == PotentialSpec::Kind::guillemin) return spec.polytope;
  if (spec.kind == PotentialSpec::Kind::sum)
    for (const auto& t : spec.terms)
      if (auto P = find_polytope(t)) return P;
  return nullptr;
}

bool potential_uses_fd(const PotentialSpec& spec) {
  if (spec.kind == PotentialSpec::Kind::expression) return true;
  if (spec.kind == PotentialSpec::Kind::sum)
    for (const auto& t : spec.terms)
      if (potential_uses_fd(t)) return true;
  return false;
}

ReportDoc check_strict_convexity(const PotentialSpec& spec, const std::vector<Vec>& points) {
  ReportDoc report;
  report.title = "strict convexity";
  report.record_tolerance("pivot_relative", 1e-10);
  report.record_tolerance("near_singular_warning", 1e-6);
  if (points.empty()) {
    report.add("nonempty sample", false, 0.0, "no points supplied");
    return report;
  }

  auto P = find_polytope(spec);
  double worst_pivot = std::numeric_limits<double>::infinity();
  Vec worst_point;
  int warnings = 0;
  Vec first_warn_point;
  double first_warn_pivot = 0.0;
  for (const Vec& x : points) {
    double dist = P ? P->boundary_distance(x) : -1.0;
    Jet4 jet = eval_jet4(spec, x, dist, 2);
    Eigen::LDLT<Mat> ldlt(jet.hess);
    double min_pivot = ldlt.vectorD().minCoeff();
    if (ldlt.info() != Eigen::Success) min_pivot = std::min(min_pivot, 0.0);
    double trace = jet.hess.trace();
    double threshold = 1e-10 * std::max(1.0, trace);
    if (min_pivot <= threshold) {
      Eigen::SelfAdjointEigenSolver<Mat> es(jet.hess);
      auto& item = report.add("positive definite Hessian", false, es.eigenvalues().minCoeff(),
                              "smallest eigenvalue at witness point");
      item.witness_point = x;
      return report;
    }
    if (min_pivot < worst_pivot) {
      worst_pivot = min_pivot;
      worst_point = x;
    }
    if (min_pivot < 1e-6) {
      if (warnings == 0) {
        first_warn_point = x;
        first_warn_pivot = min_pivot;
      }
      ++warnings;
    }
  }
  auto& ok = report.add("positive definite Hessian", true, worst_pivot,
                        "smallest LDL^T pivot over " + std::to_string(points.size()) +
                            " points");
  ok.witness_point = worst_point;
  if (warnings > 0) {
    auto& warn = report.add("near-singular warning", true, first_warn_pivot,
                            std::to_string(warnings) +
                                " point(s) with pivot below 1e-6 (passes, flagged)");
    warn.witness_point = first_warn_point;
  }
  return report;
}

}  // namespace torickgk
