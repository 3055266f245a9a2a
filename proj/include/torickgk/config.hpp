// torickgk — strict JSON run configuration: schema-1 validation (fail fast,
// unknown keys rejected with their full path) and materialization of the
// configured polytope, potential, and structure. Validation never touches
// numerical code.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torickgk/common.hpp"
#include "torickgk/gk_core.hpp"
#include "torickgk/polytope.hpp"
#include "torickgk/potential.hpp"

namespace torickgk {

/// Potential description as configured, before binding to a polytope.
struct PotentialConfig {
  std::string kind = "guillemin";  // guillemin | quadratic | expression | sum
  Mat Q;                           // quadratic: ½ xᵀQx + lᵀx + c0
  Vec l;
  double c0 = 0.0;
  std::string src;                 // expression
  std::vector<PotentialConfig> terms;  // sum
};

struct GridSpec {
  int resolution = 12;
  double epsilon = 0.05;
};

struct OutputSpec {
  std::string format = "csv";  // csv | json | pgm
  std::string path;            // empty = stdout
};

struct CompactifySpec {
  std::string against = "guillemin";  // guillemin | self
  std::string mode = "c1c2";          // c1c2 | c3 | acgtf
  std::optional<PotentialConfig> reference;  // explicit reference potential
  Mat synthetic_offset;               // c3 fault injection (empty = none)
  std::vector<int> faces;             // acgtf face subset (empty = all)
};

struct DeformSpec {
  Mat direction;
  Mat defect;  // empty = zero
  std::vector<double> t_list;
  double search_limit = 1e6;
};

struct IdentitySpec {
  int n_points = 200;
  bool with_oracle = true;
  int oracle_points = 3;
};

struct ExtremalSpec {
  double threshold = -1.0;  // <0 = pick automatically
};

/// Everything a run needs. The polytope is kept as raw half-space data so
/// `check-polytope` can turn construction failures into verdicts.
struct RunConfig {
  MatI normals;
  Vec offsets;
  PotentialConfig potential;
  Mat C;  // empty = zero
  GridSpec grid;
  OutputSpec output;
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
  std::optional<CompactifySpec> compactify;
  std::optional<DeformSpec> deform;
  IdentitySpec identities;
  ExtremalSpec extremal;
};

/// Parse and validate configuration text ("schema": 1 required). Errors
/// (config category): ConfigParse, ConfigSchema, ConfigMissing, ConfigType,
/// ConfigUnknownKey, ConfigValue — each naming the offending path, e.g.
/// "polytope.normals[2]".
RunConfig parse_config(const std::string& json_text);

/// Read and parse a file. Errors: ConfigRead.
RunConfig load_config(const std::string& path);

/// Bind a configured potential to a polytope.
PotentialSpec realize_potential(const PotentialConfig& pc,
                                std::shared_ptr<const DelzantPolytope> P);

/// Build the configured structure (polytope, potential, C).
GKStructure realize_structure(const RunConfig& cfg);

}  // namespace torickgk
