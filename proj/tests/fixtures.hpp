// Shared fixtures for the unit suites: the standard polytopes, small matrix
// builders, and an exception-kind extractor.
#pragma once

#include <memory>
#include <string>
#include <utility>

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/potential.hpp"

namespace tfx {

using torickgk::Mat;
using torickgk::MatI;
using torickgk::Vec;

inline std::shared_ptr<const torickgk::DelzantPolytope> square() {
  MatI N(4, 2);
  N << 1, 0, 0, 1, -1, 0, 0, -1;
  Vec l(4);
  l << 0, 0, 1, 1;
  return torickgk::build_polytope(N, l);
}

/// [0, a] × [0, b].
inline std::shared_ptr<const torickgk::DelzantPolytope> rectangle(double a,
                                                                  double b) {
  MatI N(4, 2);
  N << 1, 0, 0, 1, -1, 0, 0, -1;
  Vec l(4);
  l << 0, 0, a, b;
  return torickgk::build_polytope(N, l);
}

/// The standard simplex {mu >= 0, mu1 + mu2 <= 1}.
inline std::shared_ptr<const torickgk::DelzantPolytope> simplex() {
  MatI N(3, 2);
  N << 1, 0, 0, 1, -1, -1;
  Vec l(3);
  l << 0, 0, 1;
  return torickgk::build_polytope(N, l);
}

/// The segment [0, 1].
inline std::shared_ptr<const torickgk::DelzantPolytope> segment() {
  MatI N(2, 1);
  N << 1, -1;
  Vec l(2);
  l << 0, 1;
  return torickgk::build_polytope(N, l);
}

/// First Hirzebruch surface: vertices (0,0), (2,0), (1,1), (0,1).
inline std::shared_ptr<const torickgk::DelzantPolytope> hirzebruch() {
  MatI N(4, 2);
  N << 1, 0, 0, 1, 0, -1, -1, -1;
  Vec l(4);
  l << 0, 0, 1, 2;
  return torickgk::build_polytope(N, l);
}

inline std::shared_ptr<const torickgk::DelzantPolytope> cube3() {
  MatI N(6, 3);
  N << 1, 0, 0, 0, 1, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0, 0, 0, -1;
  Vec l(6);
  l << 0, 0, 0, 1, 1, 1;
  return torickgk::build_polytope(N, l);
}

/// 2×2 antisymmetric [[0, c], [-c, 0]].
inline Mat cmat(double c) {
  Mat C(2, 2);
  C << 0, c, -c, 0;
  return C;
}

inline Mat mat2(double a, double b, double c, double d) {
  Mat M(2, 2);
  M << a, b, c, d;
  return M;
}

inline Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

inline Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

/// Canonical-potential structure over P with the given 2×2 C entry.
inline torickgk::GKStructure gk2(
    std::shared_ptr<const torickgk::DelzantPolytope> P, double c) {
  auto pot = torickgk::guillemin_potential(P);
  return torickgk::make_structure(std::move(P), std::move(pot), cmat(c));
}

/// Run f and return the kind() of the torickgk::Error it throws ("" if none).
template <typename F>
std::string thrown_kind(F&& f) {
  try {
    f();
  } catch (const torickgk::Error& e) {
    return e.kind();
  }
  return "";
}

inline double max_abs(const Mat& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace tfx
