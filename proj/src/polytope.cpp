// torickgk — construction and validation of Delzant polytopes.
#include "torickgk/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace torickgk {

namespace {

constexpr double kMembershipTol = 1e-9;  // absolute, on L-values

std::string point_to_string(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << format_double(x(i));
  }
  os << ")";
  return os.str();
}

/// Next k-combination of {0..n-1} in lexicographic order; returns false when
/// exhausted. `c` must start as {0,1,...,k-1}.
bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

MatI select_rows(const MatI& M, const std::vector<int>& rows) {
  MatI R(static_cast<int>(rows.size()), M.cols());
  for (size_t i = 0; i < rows.size(); ++i) R.row(static_cast<int>(i)) = M.row(rows[i]);
  return R;
}

/// Nontrivial recession direction test: Δ is unbounded iff the cone
/// {v : ν_j·v ≥ 0 ∀j} contains a nonzero vector. Every extreme ray of that
/// cone lies in the kernel of some (m−1)-subset of normals, and a cone that
/// is a positive-dimensional subspace shows up in the kernel of the full set,
/// so checking those kernels is complete.
bool has_recession_direction(const MatI& normals) {
  const int d = static_cast<int>(normals.rows());
  const int m = static_cast<int>(normals.cols());
  Mat Nd = normals.cast<double>();

  auto admits_direction = [&](const Mat& kernel) {
    for (int c = 0; c < kernel.cols(); ++c) {
      Vec v = kernel.col(c);
      double norm = v.norm();
      if (norm < 1e-12) continue;
      v /= norm;
      for (double sign : {1.0, -1.0}) {
        bool ok = true;
        for (int j = 0; j < d; ++j) {
          if (sign * Nd.row(j).dot(v) < -kMembershipTol) {
            ok = false;
            break;
          }
        }
        if (ok) return true;
      }
    }
    return false;
  };

  {
    Eigen::FullPivLU<Mat> lu(Nd);
    if (lu.rank() < m) {
      if (admits_direction(lu.kernel())) return true;
    }
  }

  const int k = m - 1;
  if (k == 0) {
    // m = 1: unbounded iff all normals share a sign.
    bool has_pos = false, has_neg = false;
    for (int j = 0; j < d; ++j) (normals(j, 0) > 0 ? has_pos : has_neg) = true;
    return !(has_pos && has_neg);
  }
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  do {
    Mat sub = select_rows(normals, comb).cast<double>();
    Eigen::FullPivLU<Mat> lu(sub);
    if (lu.rank() == m) continue;  // shouldn't happen for k = m−1, defensive
    if (admits_direction(lu.kernel())) return true;
  } while (next_combination(comb, d));
  return false;
}

}  // namespace

long long integer_determinant(const MatI& M) {
  const int n = static_cast<int>(M.rows());
  if (n != M.cols()) throw_numerical("DimensionMismatch", "determinant of non-square matrix");
  // Fraction-free Bareiss elimination; exact in int64 for the small integer
  // normals supported here.
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Vec DelzantPolytope::eval_L(const Vec& x) const { return normals_d * x + offsets; }

double DelzantPolytope::boundary_distance(const Vec& x) const {
  Vec L = eval_L(x);
  double dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d; ++j) dist = std::min(dist, L(j) / normals_d.row(j).norm());
  return dist;
}

Vec DelzantPolytope::interior_point() const {
  Vec c = Vec::Zero(m);
  for (const Vec& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

int DelzantPolytope::find_face(const std::vector<int>& query) const {
  // The canonical face is the one whose vertex set is exactly the vertices
  // lying on all queried facets; its label is the intersection of their
  // facet sets.
  std::vector<int> verts;
  for (size_t v = 0; v < vertices.size(); ++v) {
    bool on_all = true;
    for (int q : query)
      if (!std::binary_search(vertex_facets[v].begin(), vertex_facets[v].end(), q)) {
        on_all = false;
        break;
      }
    if (on_all) verts.push_back(static_cast<int>(v));
  }
  if (verts.empty()) return -1;
  std::vector<int> label = vertex_facets[verts[0]];
  for (size_t i = 1; i < verts.size(); ++i) {
    std::vector<int> tmp;
    std::set_intersection(label.begin(), label.end(), vertex_facets[verts[i]].begin(),
                          vertex_facets[verts[i]].end(), std::back_inserter(tmp));
    label.swap(tmp);
  }
  for (size_t f = 0; f < faces.size(); ++f)
    if (faces[f].facets == label) return static_cast<int>(f);
  return -1;
}

std::shared_ptr<const DelzantPolytope> build_polytope(const MatI& normals,
                                                      const Vec& offsets) {
  auto P = std::make_shared<DelzantPolytope>();
  P->m = static_cast<int>(normals.cols());
  P->d = static_cast<int>(normals.rows());
  P->normals = normals;
  P->offsets = offsets;
  P->normals_d = normals.cast<double>();
  const int m = P->m, d = P->d;

  if (m < 1) throw_config("EmptyInterior", "dimension must be positive");
  if (offsets.size() != d)
    throw_config("DimensionMismatch", "normals/offsets length mismatch");
  if (d < m + 1)
    throw_config("EmptyInterior",
                 "need at least m+1 half-spaces to bound a polytope with interior");
  for (int j = 0; j < d; ++j)
    if (normals.row(j).isZero())
      throw_config("NotDelzant", "normal " + std::to_string(j) + " is zero");

  if (has_recession_direction(normals))
    throw_config("Unbounded", "the half-space intersection has a recession direction");

  // Vertex enumeration: every m-subset of facet hyperplanes with independent
  // normals, filtered by Δ-membership.
  std::vector<int> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;
  do {
    MatI sub = select_rows(normals, comb);
    if (integer_determinant(sub) == 0) continue;
    Mat A = sub.cast<double>();
    Vec rhs(m);
    for (int i = 0; i < m; ++i) rhs(i) = -offsets(comb[i]);
    Vec x = A.partialPivLu().solve(rhs);
    Vec L = P->eval_L(x);
    if (L.minCoeff() < -kMembershipTol) continue;
    bool duplicate = false;
    for (const Vec& v : P->vertices)
      if ((v - x).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
        duplicate = true;
        break;
      }
    if (!duplicate) P->vertices.push_back(x);
  } while (next_combination(comb, d));

  if (P->vertices.empty())
    throw_config("EmptyInterior", "no vertex satisfies all half-space constraints");

  // Record active facets per vertex; simplicity and unimodularity checks.
  for (const Vec& v : P->vertices) {
    std::vector<int> active;
    Vec L = P->eval_L(v);
    for (int j = 0; j < d; ++j)
      if (std::abs(L(j)) <= kMembershipTol) active.push_back(j);
    P->vertex_facets.push_back(active);
  }

  {
    Vec c = P->interior_point();
    if (P->eval_L(c).minCoeff() <= kMembershipTol)
      throw_config("EmptyInterior", "the vertex centroid " + point_to_string(c) +
                                        " is not strictly interior");
  }

  for (size_t v = 0; v < P->vertices.size(); ++v) {
    const auto& active = P->vertex_facets[v];
    if (static_cast<int>(active.size()) != m)
      throw_config("NotDelzant",
                   "vertex " + point_to_string(P->vertices[v]) + " lies on " +
                       std::to_string(active.size()) + " facets (expected " +
                       std::to_string(m) + ")");
    long long det = integer_determinant(select_rows(normals, active));
    if (det != 1 && det != -1)
      throw_config("NotDelzant", "vertex " + point_to_string(P->vertices[v]) +
                                     " has normal determinant " + std::to_string(det));
  }

  // Redundancy: every facet must carry a full (m−1)-dimensional piece of ∂Δ.
  for (int j = 0; j < d; ++j) {
    std::vector<int> on_facet;
    for (size_t v = 0; v < P->vertices.size(); ++v)
      if (std::binary_search(P->vertex_facets[v].begin(), P->vertex_facets[v].end(), j))
        on_facet.push_back(static_cast<int>(v));
    if (on_facet.empty())
      throw_config("RedundantHalfspace",
                   "half-space " + std::to_string(j) + " touches no vertex");
    if (m >= 2) {
      Mat diffs(static_cast<int>(on_facet.size()) - 1, m);
      for (size_t i = 1; i < on_facet.size(); ++i)
        diffs.row(static_cast<int>(i) - 1) =
            (P->vertices[on_facet[i]] - P->vertices[on_facet[0]]).transpose();
      int rank = 0;
      if (diffs.rows() > 0) {
        Eigen::JacobiSVD<Mat> svd(diffs);
        double thresh = 1e-7 * (1.0 + svd.singularValues().maxCoeff());
        for (int i = 0; i < svd.singularValues().size(); ++i)
          if (svd.singularValues()(i) > thresh) ++rank;
      }
      if (rank < m - 1)
        throw_config("RedundantHalfspace", "half-space " + std::to_string(j) +
                                               " meets the polytope in a face of "
                                               "dimension < m-1");
    }
  }

  // Face lattice: labels of faces are intersections of vertex labels
  // (vertices are the atoms; the polytope is simple, so dim = m − |label|).
  std::set<std::vector<int>> labels;
  for (const auto& vf : P->vertex_facets) labels.insert(vf);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(labels.begin(), labels.end());
    for (size_t i = 0; i < current.size(); ++i)
      for (size_t j = i + 1; j < current.size(); ++j) {
        std::vector<int> inter;
        std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                              current[j].end(), std::back_inserter(inter));
        if (!inter.empty() && labels.insert(inter).second) grew = true;
      }
  }
  for (const auto& label : labels) {
    DelzantPolytope::Face f;
    f.facets = label;
    f.dim = m - static_cast<int>(label.size());
    for (size_t v = 0; v < P->vertices.size(); ++v)
      if (std::includes(P->vertex_facets[v].begin(), P->vertex_facets[v].end(),
                        label.begin(), label.end()))
        f.vertex_ids.push_back(static_cast<int>(v));
    P->faces.push_back(std::move(f));
  }
  std::sort(P->faces.begin(), P->faces.end(),
            [](const DelzantPolytope::Face& a, const DelzantPolytope::Face& b) {
              if (a.dim != b.dim) return a.dim > b.dim;
              return a.facets < b.facets;
            });

  return P;
}

Vec AffineChart::to_chart(const Vec& x) const { return N * x + lambda_sel - L0_sel; }

Vec AffineChart::from_chart(const Vec& y) const {
  return N.partialPivLu().solve(y + L0_sel - lambda_sel);
}

AffineChart adapted_chart(const DelzantPolytope& P, const std::vector<int>& face,
                          const Vec& x0) {
  for (int j : face)
    if (j < 0 || j >= P.d)
      throw_config("DimensionMismatch", "facet index " + std::to_string(j) + " out of range");

  int face_id = P.find_face(face);
  if (face_id < 0)
    throw_numerical("ChartFailure", "the requested facet intersection is empty");
  const auto& F = P.faces[face_id];

  // x0 must lie on exactly the facets of the canonical label.
  Vec L = P.eval_L(x0);
  for (int j = 0; j < P.d; ++j) {
    bool in_label = std::binary_search(F.facets.begin(), F.facets.end(), j);
    if (in_label && std::abs(L(j)) > kMembershipTol)
      throw_numerical("PointNotOnFaceInterior",
                      "L_" + std::to_string(j) + "(x0) = " + format_double(L(j)) +
                          " does not vanish on the face");
    if (!in_label && L(j) <= kMembershipTol)
      throw_numerical("PointNotOnFaceInterior",
                      "x0 touches facet " + std::to_string(j) +
                          " outside the face label (relative interior required)");
  }

  // Completion: try each vertex of the face; candidate tuple = label + remaining
  // normals of the vertex (both ascending); keep unit-determinant selections
  // and pick the lexicographically smallest tuple.
  std::vector<int> best;
  for (int vid : F.vertex_ids) {
    std::vector<int> completion;
    std::set_difference(P.vertex_facets[vid].begin(), P.vertex_facets[vid].end(),
                        F.facets.begin(), F.facets.end(), std::back_inserter(completion));
    std::vector<int> tuple = F.facets;
    tuple.insert(tuple.end(), completion.begin(), completion.end());
    long long det = integer_determinant(select_rows(P.normals, tuple));
    if (det != 1 && det != -1) continue;
    if (best.empty() || tuple < best) best = tuple;
  }
  if (best.empty())
    throw_numerical("NoVertexSelection",
                    "no vertex of the face yields a unit-determinant normal selection");

  AffineChart chart;
  chart.selection = best;
  chart.x0 = x0;
  chart.N = select_rows(P.normals, best).cast<double>();
  chart.lambda_sel = Vec(P.m);
  for (int i = 0; i < P.m; ++i) chart.lambda_sel(i) = P.offsets(best[i]);
  chart.L0_sel = chart.N * x0 + chart.lambda_sel;
  return chart;
}

InteriorGrid sample_interior(const DelzantPolytope& P, int resolution, double epsilon) {
  if (resolution < 1) throw_config("EmptyGrid", "resolution must be positive");
  if (epsilon <= 0) throw_config("EmptyGrid", "epsilon must be positive");
  InteriorGrid G;
  G.m = P.m;
  G.resolution = resolution;
  G.epsilon = epsilon;
  G.lo = Vec::Constant(P.m, std::numeric_limits<double>::infinity());
  G.hi = Vec::Constant(P.m, -std::numeric_limits<double>::infinity());
  for (const Vec& v : P.vertices) {
    G.lo = G.lo.cwiseMin(v);
    G.hi = G.hi.cwiseMax(v);
  }

  // Row-major sweep: mu1 slowest, last axis fastest.
  std::vector<int> idx(P.m, 0);
  for (;;) {
    Vec x(P.m);
    for (int a = 0; a < P.m; ++a)
      x(a) = G.lo(a) + (idx[a] + 0.5) * (G.hi(a) - G.lo(a)) / resolution;
    if (P.eval_L(x).minCoeff() >= epsilon) {
      G.points.push_back(x);
      G.multi_index.push_back(idx);
    }
    int a = P.m - 1;
    while (a >= 0 && ++idx[a] == resolution) idx[a--] = 0;
    if (a < 0) break;
  }
  if (G.points.empty())
    throw_numerical("EmptyGrid", "no grid point is epsilon-interior (epsilon = " +
                                     format_double(epsilon) + ")");
  return G;
}

std::vector<Vec> facet_path(const DelzantPolytope& P, int j, const Vec& x_in,
                            int n_steps) {
  if (j < 0 || j >= P.d)
    throw_config("DimensionMismatch", "facet index " + std::to_string(j) + " out of range");
  Vec L = P.eval_L(x_in);
  if (L.minCoeff() <= 0)
    throw_numerical("OutsideDomain", "x_in " + point_to_string(x_in) + " is not interior");

  Vec nu = P.normals_d.row(j).transpose();
  Vec x_proj = x_in - (L(j) / nu.squaredNorm()) * nu;
  Vec Lp = P.eval_L(x_proj);
  for (int k = 0; k < P.d; ++k) {
    if (k == j) continue;
    if (Lp(k) <= kMembershipTol)
      throw_numerical("PointNotOnFaceInterior",
                      "orthogonal projection " + point_to_string(x_proj) +
                          " leaves the relative interior of facet " + std::to_string(j));
  }

  std::vector<Vec> path;
  path.reserve(n_steps);
  double scale = 1.0;
  for (int k = 1; k <= n_steps; ++k) {
    scale *= 0.5;
    path.push_back(x_proj + scale * (x_in - x_proj));
  }
  return path;
}

}  // namespace torickgk
