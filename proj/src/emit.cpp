#include "torickgk/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "torickgk/report.hpp"

namespace torickgk {

ScalarField make_field(const InteriorGrid& grid, std::vector<double> values) {
  if (values.size() != grid.points.size())
    throw_config("SizeMismatch",
                 "field needs one value per grid point (" +
                     std::to_string(values.size()) + " values, " +
                     std::to_string(grid.points.size()) + " points)");
  ScalarField f;
  f.m = grid.m;
  f.points = grid.points;
  f.values = std::move(values);
  f.resolution = grid.resolution;
  f.multi_index = grid.multi_index;
  return f;
}

std::string emit_csv(const ScalarField& f) {
  if (f.values.empty()) throw_config("EmptyField", "no samples to emit");
  std::string out;
  for (int i = 0; i < f.m; ++i) {
    out += "mu" + std::to_string(i + 1);
    out += ",";
  }
  out += "value\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    for (int i = 0; i < f.m; ++i) {
      out += format_double(f.points[k][i]);
      out += ",";
    }
    out += format_double(f.values[k]);
    out += "\n";
  }
  return out;
}

ScalarField parse_field_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw_config("BadFieldCsv", "empty input");
  // Header: mu1,...,mum,value.
  int m = 0;
  {
    std::istringstream hs(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(hs, col, ',')) cols.push_back(col);
    if (cols.size() < 2 || cols.back() != "value")
      throw_config("BadFieldCsv", "header must end in 'value'");
    m = static_cast<int>(cols.size()) - 1;
    for (int i = 0; i < m; ++i)
      if (cols[i] != "mu" + std::to_string(i + 1))
        throw_config("BadFieldCsv",
                     "unexpected header column '" + cols[i] + "'");
  }
  ScalarField f;
  f.m = m;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> nums;
    while (std::getline(ls, cell, ',')) {
      const char* s = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || *end != '\0')
        throw_config("BadFieldCsv", "line " + std::to_string(lineno) +
                                        ": not a number: '" + cell + "'");
      nums.push_back(v);
    }
    if (static_cast<int>(nums.size()) != m + 1)
      throw_config("BadFieldCsv", "line " + std::to_string(lineno) +
                                      ": expected " + std::to_string(m + 1) +
                                      " columns");
    Vec x(m);
    for (int i = 0; i < m; ++i) x[i] = nums[i];
    f.points.push_back(std::move(x));
    f.values.push_back(nums.back());
  }
  if (f.values.empty()) throw_config("BadFieldCsv", "no data rows");
  return f;
}

std::string emit_json(const ScalarField& f) {
  if (f.values.empty()) throw_config("EmptyField", "no samples to emit");
  nlohmann::ordered_json doc;
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const Vec& x : f.points) {
    nlohmann::ordered_json pt = nlohmann::ordered_json::array();
    for (int i = 0; i < x.size(); ++i) pt.push_back(format_double(x[i]));
    grid.push_back(std::move(pt));
  }
  doc["grid"] = std::move(grid);
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (double v : f.values) vals.push_back(format_double(v));
  doc["values"] = std::move(vals);
  return doc.dump(2) + "\n";
}

std::string emit_pgm(const ScalarField& f) {
  if (f.m != 2)
    throw_config("UnsupportedFormatForDim",
                 "pgm heatmaps require m = 2, got m = " + std::to_string(f.m));
  if (f.values.empty()) throw_config("EmptyField", "no samples to emit");
  if (f.resolution <= 0 || f.multi_index.size() != f.values.size())
    throw_config("MissingRaster",
                 "pgm needs the grid raster (resolution and cell indices)");
  const int R = f.resolution;
  double vmin = f.values[0], vmax = f.values[0];
  for (double v : f.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double span = vmax - vmin;
  std::vector<unsigned char> raster(static_cast<std::size_t>(R) * R, 0);
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const int ix = f.multi_index[k][0];
    const int iy = f.multi_index[k][1];
    if (ix < 0 || ix >= R || iy < 0 || iy >= R)
      throw_config("MissingRaster", "cell index out of raster bounds");
    unsigned char pix = 0;
    if (span > 0.0) {
      const double t = (f.values[k] - vmin) / span;
      pix = static_cast<unsigned char>(std::lround(255.0 * t));
    }
    // Row 0 is the top of the image = largest second coordinate.
    raster[static_cast<std::size_t>(R - 1 - iy) * R + ix] = pix;
  }
  std::string out = "P5\n" + std::to_string(R) + " " + std::to_string(R) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.data()), raster.size());
  return out;
}

}  // namespace torickgk
