// torickgk — Delzant polytopes: half-space data, validation, face lattice,
// face-adapted affine charts, interior sampling, and boundary approach paths.
//
// Conventions: Δ = {x ∈ ℝ^m : L_j(x) = ⟨ν_j, x⟩ + λ_j ≥ 0, j = 0..d-1} with
// integer normals ν_j; the lattice is ℤ^m in the fixed basis. All facet/face
// indices are 0-based.
#pragma once

#include <memory>
#include <vector>

#include "torickgk/common.hpp"

namespace torickgk {

class DelzantPolytope {
public:
  int m = 0;  // ambient dimension
  int d = 0;  // number of facets
  MatI normals;   // d×m, integer rows ν_j
  Vec offsets;    // d, reals λ_j
  Mat normals_d;  // normals cast to double (cached)

  std::vector<Vec> vertices;
  // Per vertex: sorted indices of the m facets whose L_j vanish there.
  std::vector<std::vector<int>> vertex_facets;

  /// A nonempty proper face, canonically labeled by the full set of facets
  /// vanishing on it. dim = m − |facets| (the polytope is simple).
  struct Face {
    std::vector<int> facets;      // sorted, canonical label
    int dim = 0;
    std::vector<int> vertex_ids;  // indices into `vertices`
  };
  std::vector<Face> faces;  // sorted by (dim descending, label lexicographic)

  /// (L_0(x), ..., L_{d-1}(x)).
  Vec eval_L(const Vec& x) const;

  /// Euclidean distance to ∂Δ: min_j L_j(x)/‖ν_j‖₂ (negative outside).
  double boundary_distance(const Vec& x) const;

  /// Centroid of the vertices — strictly interior for a Delzant polytope.
  Vec interior_point() const;

  /// Locate the canonical face containing exactly the facets that vanish on
  /// the intersection ∩_{j∈query} F_j; returns index into `faces` or -1.
  int find_face(const std::vector<int>& query) const;
};

/// Validate half-space data and build the polytope. Checks, in order:
/// Unbounded (nontrivial recession cone), EmptyInterior, NotDelzant
/// (vertex with ≠ m active facets or lattice determinant ≠ ±1),
/// RedundantHalfspace (facet of affine dimension < m−1).
std::shared_ptr<const DelzantPolytope> build_polytope(const MatI& normals,
                                                      const Vec& offsets);

/// Face-adapted affine chart y^i = L_{σ(i)}(x) − L_{σ(i)}(x0): the face's own
/// normals come first (ascending facet index), completed to a unit-determinant
/// selection by the remaining normals of a vertex of the face; among valid
/// completions the lexicographically smallest full index tuple wins.
struct AffineChart {
  std::vector<int> selection;  // m facet indices, in chart order
  Vec x0;
  Mat N;        // m×m, rows = selected normals (double)
  Vec L0_sel;   // L_{σ(i)}(x0)
  Vec lambda_sel;

  Vec to_chart(const Vec& x) const;
  Vec from_chart(const Vec& y) const;
};

/// Build the chart adapted to the face cut out by `face` (any generating set
/// of facet indices) centered at x0 ∈ F̊.
/// Errors: ChartFailure (empty face), PointNotOnFaceInterior, NoVertexSelection.
AffineChart adapted_chart(const DelzantPolytope& P, const std::vector<int>& face,
                          const Vec& x0);

/// Cell-centered rectangular grid over the bounding box, keeping points with
/// min_j L_j ≥ epsilon. `multi_index` stores the box cell of each kept point
/// (for heatmap emission). Errors: EmptyGrid.
struct InteriorGrid {
  int m = 0;
  int resolution = 0;
  double epsilon = 0.0;
  Vec lo, hi;  // bounding box
  std::vector<Vec> points;
  std::vector<std::vector<int>> multi_index;
};
InteriorGrid sample_interior(const DelzantPolytope& P, int resolution, double epsilon);

/// Geometric approach path to facet j: project x_in orthogonally onto the
/// facet hyperplane (the projection must land in F̊_j), then return
/// x_k = x_proj + 2^{-k}(x_in − x_proj), k = 1..n_steps.
/// Errors: OutsideDomain (x_in not interior), PointNotOnFaceInterior.
std::vector<Vec> facet_path(const DelzantPolytope& P, int j, const Vec& x_in,
                            int n_steps);

/// Exact determinant of an integer matrix (fraction-free Bareiss in int64).
long long integer_determinant(const MatI& M);

}  // namespace torickgk
