#include "torickgk/deform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "torickgk/compactify.hpp"
#include "torickgk/curvature.hpp"
#include "torickgk/potential.hpp"

namespace torickgk {

namespace {

std::string first_fail(const ReportDoc& doc) {
  for (const auto& it : doc.items)
    if (!it.pass) return it.name + (it.note.empty() ? "" : " (" + it.note + ")");
  return "";
}

}  // namespace

GKStructure DeformationFamily::at(double t) const {
  if (t == 0.0) return base;
  PotentialSpec pot = base.potential;
  if (defect.size() > 0 && defect.cwiseAbs().maxCoeff() > 0.0) {
    pot = sum_potential(
        {base.potential,
         quadratic_potential(t * defect, Vec::Zero(base.m), 0.0)});
  }
  return make_structure(base.polytope, std::move(pot), t * direction);
}

DeformationFamily make_family(GKStructure base, const Mat& direction,
                              const Mat& defect) {
  const int m = base.m;
  if (base.C.cwiseAbs().maxCoeff() != 0.0)
    throw_config("BaseNotPlain",
                 "family base must carry C = 0; C enters through t*direction");
  if (direction.rows() != m || direction.cols() != m)
    throw_config("BadDirectionSize", "direction must be " + std::to_string(m) +
                                         "x" + std::to_string(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (direction(i, j) + direction(j, i) != 0.0)
        throw_config("NotAntisymmetric",
                     "direction must be exactly antisymmetric");
  Mat D = defect;
  if (D.size() == 0) D = Mat::Zero(m, m);
  if (D.rows() != m || D.cols() != m)
    throw_config("BadDefectSize",
                 "defect must be " + std::to_string(m) + "x" +
                     std::to_string(m) + " (or empty for zero)");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (D(i, j) != D(j, i))
        throw_config("NotSymmetric", "defect must be exactly symmetric");
  DeformationFamily fam;
  fam.base = std::move(base);
  fam.direction = direction;
  fam.defect = std::move(D);
  return fam;
}

namespace {

struct Verdict {
  bool ok = false;
  std::string why;
};

// Admissibility of one family member: strict convexity on the interior grid,
// then the boundary conditions against the base structure.
Verdict family_verdict(const DeformationFamily& fam, double t,
                       const InteriorGrid& grid, double tol_scale) {
  Verdict v;
  try {
    GKStructure Gt = fam.at(t);
    ReportDoc conv = check_strict_convexity(Gt.potential, grid.points);
    if (!conv.pass()) {
      v.why = "convexity: " + first_fail(conv);
      return v;
    }
    CompactifyOptions copt;
    copt.tol_scale = tol_scale;
    ReportDoc c12 = check_c1_c2(fam.base, Gt, copt);
    if (!c12.pass()) {
      v.why = first_fail(c12);
      return v;
    }
    if (fam.base.m > 2) {
      C3Options c3opt;
      c3opt.tol_scale = tol_scale;
      ReportDoc c3 = check_c3(fam.base, Gt, c3opt);
      if (!c3.pass()) {
        v.why = first_fail(c3);
        return v;
      }
    }
    v.ok = true;
  } catch (const Error& e) {
    v.why = e.what();
  }
  return v;
}

// Search one direction (sgn = ±1): geometric growth to the limit, then
// bisection onto the boundary of admissibility.
void search_direction(const DeformationFamily& fam, const InteriorGrid& grid,
                      double tol_scale, int sgn, double& endpoint,
                      bool& unbounded, std::string& witness) {
  const double limit = fam.search_limit;
  double good = 0.0;
  double bad = 0.0;
  std::string bad_why;
  double t = 1.0;
  while (true) {
    if (t > limit) {
      Verdict v = family_verdict(fam, sgn * limit, grid, tol_scale);
      if (v.ok) {
        endpoint = sgn * limit;
        unbounded = true;
        return;
      }
      bad = limit;
      bad_why = v.why;
      break;
    }
    Verdict v = family_verdict(fam, sgn * t, grid, tol_scale);
    if (v.ok) {
      good = t;
      t *= 2.0;
    } else {
      bad = t;
      bad_why = v.why;
      break;
    }
  }
  for (int it = 0; it < 80 && bad - good > 1e-12 * (1.0 + bad); ++it) {
    const double mid = 0.5 * (good + bad);
    Verdict v = family_verdict(fam, sgn * mid, grid, tol_scale);
    if (v.ok) {
      good = mid;
    } else {
      bad = mid;
      bad_why = v.why;
    }
  }
  endpoint = sgn * good;
  unbounded = false;
  witness = bad_why;
}

}  // namespace

AdmissibleRange admissible_range(const DeformationFamily& fam,
                                 const AdmissibleOptions& opt) {
  const DelzantPolytope& P = *fam.base.polytope;
  AdmissibleRange r;

  const bool pure = fam.defect.cwiseAbs().maxCoeff() == 0.0;
  if (fam.base.m == 2 && pure) {
    // Closed form: det Ψ(t) = det S + t²c² ≥ det S, so every member keeps the
    // convexity and boundary behavior of the base. Spot-check the determinant
    // ratio before declaring the interval unbounded.
    bool verified = true;
    const Vec c0 = P.interior_point();
    std::vector<Vec> spots = {c0};
    for (int j = 0; j < P.d && static_cast<int>(spots.size()) < 4; ++j)
      spots.push_back(c0 + 0.5 * (P.vertices[j % P.vertices.size()] - c0));
    for (double t : {-fam.search_limit, -1.0, 1.0, fam.search_limit}) {
      GKStructure Gt = fam.at(t);
      for (const Vec& x : spots) {
        const double ratio =
            frame_at(Gt, x, 2).detPsi / frame_at(fam.base, x, 2).detPsi;
        if (!(ratio >= 1.0 - 1e-12)) verified = false;
      }
    }
    if (verified) {
      r.t_lo = -fam.search_limit;
      r.t_hi = fam.search_limit;
      r.unbounded_lo = r.unbounded_hi = true;
      return r;
    }
    // fall through to the generic search if the spot-check ever failed
  }

  InteriorGrid grid = sample_interior(P, opt.grid_resolution, 1e-9);
  search_direction(fam, grid, opt.tol_scale, +1, r.t_hi, r.unbounded_hi,
                   r.witness_hi);
  search_direction(fam, grid, opt.tol_scale, -1, r.t_lo, r.unbounded_lo,
                   r.witness_lo);
  return r;
}

ReportDoc first_order_check(const DeformationFamily& fam,
                            const std::vector<Vec>& points,
                            double tol_scale) {
  const int m = fam.base.m;
  const double h = 1e-5;
  const double tol_dpsi = 1e-8 * tol_scale;
  const double tol_alpha = 1e-7 * tol_scale;
  const bool pure = fam.defect.cwiseAbs().maxCoeff() == 0.0;
  const Mat M = fam.direction + fam.defect;

  ReportDoc doc;
  doc.title = "first-order deformation response at t = 0";
  doc.record_tolerance("dpsi_inv", tol_dpsi);
  if (pure) doc.record_tolerance("alpha", tol_alpha);

  const std::complex<double> I(0.0, 1.0);
  int idx = 0;
  for (const Vec& x : points) {
    PointFrame F0 = frame_at(fam.base, x, 2);
    PointFrame Fp = frame_at(fam.at(h), x, 2);
    PointFrame Fm = frame_at(fam.at(-h), x, 2);

    const Mat fd = (Fp.Psiinv - Fm.Psiinv) / (2.0 * h);
    const Mat an = -F0.Sinv * M * F0.Sinv;
    const double dev = (fd - an).cwiseAbs().maxCoeff();
    doc.add("dpsi_inv.p" + std::to_string(idx), dev <= tol_dpsi, dev)
        .witness_point = x;

    if (pure) {
      // J̇ applied to the anti-holomorphic frame ∂z̄_j = ½(S⁻¹e_j ; i e_j),
      // decomposed over {∂z_k, ∂z̄_k}: the ∂z-components are α_{j̄k} and the
      // ∂z̄-components must vanish.
      const Mat Jdot = (Fp.J - Fm.J) / (2.0 * h);
      Eigen::MatrixXcd basis(2 * m, 2 * m);
      for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
          basis(i, k) = 0.5 * F0.Sinv(i, k);
          basis(i, m + k) = 0.5 * F0.Sinv(i, k);
          basis(m + i, k) = (i == k) ? -0.5 * I : 0.0;
          basis(m + i, m + k) = (i == k) ? 0.5 * I : 0.0;
        }
      }
      const Mat CS = fam.direction * F0.Sinv;
      double worst_alpha = 0.0, worst_res = 0.0;
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(basis);
      for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd v(2 * m);
        for (int i = 0; i < m; ++i) {
          v[i] = 0.5 * F0.Sinv(i, j);
          v[m + i] = (i == j) ? 0.5 * I : 0.0;
        }
        const Eigen::VectorXcd w = Jdot.cast<std::complex<double>>() * v;
        const Eigen::VectorXcd coef = lu.solve(w);
        for (int k = 0; k < m; ++k) {
          worst_alpha = std::max(worst_alpha, std::abs(coef[k] - I * CS(k, j)));
          worst_res = std::max(worst_res, std::abs(coef[m + k]));
        }
      }
      doc.add("alpha.p" + std::to_string(idx), worst_alpha <= tol_alpha,
              worst_alpha)
          .witness_point = x;
      doc.add("alpha_antiholo.p" + std::to_string(idx),
              worst_res <= tol_alpha, worst_res)
          .witness_point = x;
    }
    ++idx;
  }
  return doc;
}

Eigen::MatrixXcd poisson_matrix(const DeformationFamily& fam) {
  return 2.0 * fam.direction.cast<std::complex<double>>();
}

Eigen::MatrixXcd poisson_sigma(const GKStructure& G, const Vec& x) {
  PointFrame F = frame_at(G, x, 2);
  const int m = F.m;
  const Mat comm = F.J * F.Jdual - F.Jdual * F.J;
  const Mat P = 0.25 * comm * F.g.inverse();
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd Dz = Eigen::MatrixXcd::Zero(m, 2 * m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) Dz(k, i) = F.Psi(k, i);
    Dz(k, m + k) = I;
  }
  return Dz * P.cast<std::complex<double>>() * Dz.transpose();
}

std::vector<DeformScanRow> deform_scan(const DeformationFamily& fam,
                                       const std::vector<double>& ts,
                                       const std::vector<Vec>& points) {
  if (points.empty())
    throw_config("EmptyPointSet", "deform_scan needs at least one point");
  const bool pure = fam.defect.cwiseAbs().maxCoeff() == 0.0;
  std::vector<double> u0;
  u0.reserve(points.size());
  for (const Vec& x : points) u0.push_back(u_gk_at(fam.base, x));

  InteriorGrid grid;
  const bool fast = fam.base.m == 2 && pure;
  if (!fast) grid = sample_interior(*fam.base.polytope, 5, 1e-9);

  std::vector<DeformScanRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    DeformScanRow row;
    row.t = t;
    row.p_min = std::numeric_limits<double>::infinity();
    row.p_max = -std::numeric_limits<double>::infinity();
    row.admissible = fast ? true : family_verdict(fam, t, grid, 1.0).ok;
    try {
      GKStructure Gt = fam.at(t);
      for (std::size_t i = 0; i < points.size(); ++i) {
        PointFrame F = frame_at(Gt, points[i], 2);
        row.max_u_gk_drift = std::max(
            row.max_u_gk_drift, std::abs(u_gk_at(Gt, points[i]) - u0[i]));
        row.p_min = std::min(row.p_min, F.p);
        row.p_max = std::max(row.p_max, F.p);
      }
    } catch (const Error&) {
      // A scan point left the member's domain of validity (e.g. convexity
      // lost at this t). The row keeps its verdict; the samples are marked
      // undefined rather than aborting the whole scan.
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.max_u_gk_drift = nan;
      row.p_min = nan;
      row.p_max = nan;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace torickgk
