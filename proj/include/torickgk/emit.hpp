// torickgk — scalar-field artifacts: CSV (bit-exact round trip), JSON, and
// binary PGM (P5) heatmaps for m = 2 grids.
#pragma once

#include <string>
#include <vector>

#include "torickgk/common.hpp"
#include "torickgk/polytope.hpp"

namespace torickgk {

/// One scalar sampled over grid points. `resolution`/`multi_index` carry the
/// raster geometry needed for heatmaps; fields reconstructed from CSV have
/// only points and values.
struct ScalarField {
  int m = 0;
  std::vector<Vec> points;
  std::vector<double> values;
  int resolution = 0;                         // 0 when no raster is known
  std::vector<std::vector<int>> multi_index;  // raster cell of each point
};

/// Pair an interior grid with sampled values (sizes must agree).
ScalarField make_field(const InteriorGrid& grid, std::vector<double> values);

/// CSV with header mu1,...,mum,value; 17 significant digits; one row per grid
/// point in grid order. Errors: EmptyField.
std::string emit_csv(const ScalarField& f);

/// Inverse of emit_csv on points and values (bit-exact; raster geometry is
/// not serialized). Errors: BadFieldCsv.
ScalarField parse_field_csv(const std::string& text);

/// JSON {"grid": [[...], ...], "values": [...]} with every number rendered
/// through the shared 17-significant-digit formatter. Errors: EmptyField.
std::string emit_json(const ScalarField& f);

/// Binary PGM (P5), resolution×resolution; linear min–max normalization to
/// 0..255, constant fields and cells without a sample map to 0; rows are
/// written top-to-bottom in decreasing second coordinate. m = 2 only.
/// Errors: UnsupportedFormatForDim, EmptyField, MissingRaster.
std::string emit_pgm(const ScalarField& f);

}  // namespace torickgk
