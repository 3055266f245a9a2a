#include "torickgk/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace torickgk {

namespace {

using njson = nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail_type(const std::string& path, const char* expected) {
  throw_config("ConfigType", path + ": expected " + expected);
}

void reject_unknown(const njson& obj, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw_config("ConfigUnknownKey", join(path, it.key()));
  }
}

const njson* find(const njson& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const njson& require(const njson& obj, const std::string& path,
                     const char* key) {
  const njson* v = find(obj, key);
  if (!v) throw_config("ConfigMissing", join(path, key));
  return *v;
}

double as_number(const njson& v, const std::string& path) {
  if (!v.is_number()) fail_type(path, "a number");
  return v.get<double>();
}

long long as_integer(const njson& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return static_cast<long long>(d);
  }
  fail_type(path, "an integer");
}

bool as_bool(const njson& v, const std::string& path) {
  if (!v.is_boolean()) fail_type(path, "a boolean");
  return v.get<bool>();
}

std::string as_string(const njson& v, const std::string& path) {
  if (!v.is_string()) fail_type(path, "a string");
  return v.get<std::string>();
}

Vec parse_vec(const njson& v, const std::string& path) {
  if (!v.is_array()) fail_type(path, "an array of numbers");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<int>(i)] =
        as_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Mat parse_mat(const njson& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail_type(path, "an array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail_type(rp, "an array of numbers");
    if (i == 0)
      cols = v[i].size();
    else if (v[i].size() != cols)
      throw_config("ConfigValue", rp + ": ragged matrix rows");
  }
  if (cols == 0) fail_type(path, "nonempty rows");
  Mat out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = as_number(
          v[i][j],
          path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  return out;
}

MatI parse_mati(const njson& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail_type(path, "an array of integer rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail_type(rp, "an array of integers");
    if (i == 0)
      cols = v[i].size();
    else if (v[i].size() != cols)
      throw_config("ConfigValue", rp + ": ragged matrix rows");
  }
  if (cols == 0) fail_type(path, "nonempty rows");
  MatI out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string ep =
          path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      const long long e = as_integer(v[i][j], ep);
      if (e < -1000000 || e > 1000000)
        throw_config("ConfigValue", ep + ": integer entry out of range");
      out(static_cast<int>(i), static_cast<int>(j)) = static_cast<int>(e);
    }
  return out;
}

PotentialConfig parse_potential(const njson& v, const std::string& path) {
  if (!v.is_object()) fail_type(path, "an object");
  PotentialConfig pc;
  pc.kind = as_string(require(v, path, "kind"), join(path, "kind"));
  if (pc.kind == "guillemin") {
    reject_unknown(v, path, {"kind"});
  } else if (pc.kind == "quadratic") {
    reject_unknown(v, path, {"kind", "Q", "l", "c0"});
    pc.Q = parse_mat(require(v, path, "Q"), join(path, "Q"));
    if (pc.Q.rows() != pc.Q.cols())
      throw_config("ConfigValue", join(path, "Q") + ": must be square");
    if (const njson* l = find(v, "l")) pc.l = parse_vec(*l, join(path, "l"));
    if (const njson* c = find(v, "c0"))
      pc.c0 = as_number(*c, join(path, "c0"));
  } else if (pc.kind == "expression") {
    reject_unknown(v, path, {"kind", "src"});
    pc.src = as_string(require(v, path, "src"), join(path, "src"));
  } else if (pc.kind == "sum") {
    reject_unknown(v, path, {"kind", "terms"});
    const njson& terms = require(v, path, "terms");
    if (!terms.is_array() || terms.empty())
      fail_type(join(path, "terms"), "a nonempty array");
    for (std::size_t i = 0; i < terms.size(); ++i)
      pc.terms.push_back(parse_potential(
          terms[i], join(path, "terms") + "[" + std::to_string(i) + "]"));
  } else {
    throw_config("ConfigValue",
                 join(path, "kind") + ": unknown potential kind '" + pc.kind +
                     "' (guillemin|quadratic|expression|sum)");
  }
  return pc;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  njson doc = njson::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    throw_config("ConfigParse", "input is not valid JSON");
  if (!doc.is_object()) fail_type("(root)", "an object");

  reject_unknown(doc, "",
                 {"schema", "polytope", "potential", "C", "grid", "seed",
                  "tol_scale", "output", "compactify", "deform", "identities",
                  "extremal"});

  const long long schema = as_integer(require(doc, "", "schema"), "schema");
  if (schema != 1)
    throw_config("ConfigSchema", "schema: expected 1, got " +
                                     std::to_string(schema));

  RunConfig cfg;

  const njson& poly = require(doc, "", "polytope");
  if (!poly.is_object()) fail_type("polytope", "an object");
  reject_unknown(poly, "polytope", {"normals", "offsets"});
  cfg.normals =
      parse_mati(require(poly, "polytope", "normals"), "polytope.normals");
  cfg.offsets =
      parse_vec(require(poly, "polytope", "offsets"), "polytope.offsets");

  cfg.potential = parse_potential(require(doc, "", "potential"), "potential");

  if (const njson* c = find(doc, "C")) cfg.C = parse_mat(*c, "C");

  if (const njson* g = find(doc, "grid")) {
    if (!g->is_object()) fail_type("grid", "an object");
    reject_unknown(*g, "grid", {"resolution", "epsilon"});
    if (const njson* r = find(*g, "resolution")) {
      cfg.grid.resolution =
          static_cast<int>(as_integer(*r, "grid.resolution"));
      if (cfg.grid.resolution < 1)
        throw_config("ConfigValue", "grid.resolution: must be >= 1");
    }
    if (const njson* e = find(*g, "epsilon")) {
      cfg.grid.epsilon = as_number(*e, "grid.epsilon");
      if (!(cfg.grid.epsilon >= 0))
        throw_config("ConfigValue", "grid.epsilon: must be >= 0");
    }
  }

  if (const njson* s = find(doc, "seed")) {
    const long long v = as_integer(*s, "seed");
    if (v < 0) throw_config("ConfigValue", "seed: must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  if (const njson* t = find(doc, "tol_scale")) {
    cfg.tol_scale = as_number(*t, "tol_scale");
    if (!(cfg.tol_scale > 0))
      throw_config("ConfigValue", "tol_scale: must be > 0");
  }

  if (const njson* o = find(doc, "output")) {
    if (!o->is_object()) fail_type("output", "an object");
    reject_unknown(*o, "output", {"format", "path"});
    if (const njson* f = find(*o, "format")) {
      cfg.output.format = as_string(*f, "output.format");
      if (cfg.output.format != "csv" && cfg.output.format != "json" &&
          cfg.output.format != "pgm")
        throw_config("ConfigValue",
                     "output.format: must be csv, json, or pgm");
    }
    if (const njson* p = find(*o, "path"))
      cfg.output.path = as_string(*p, "output.path");
  }

  if (const njson* c = find(doc, "compactify")) {
    if (!c->is_object()) fail_type("compactify", "an object");
    reject_unknown(*c, "compactify",
                   {"against", "mode", "reference", "synthetic_offset",
                    "faces"});
    CompactifySpec sp;
    if (const njson* a = find(*c, "against")) {
      sp.against = as_string(*a, "compactify.against");
      if (sp.against != "guillemin" && sp.against != "self")
        throw_config("ConfigValue",
                     "compactify.against: must be guillemin or self");
    }
    if (const njson* m = find(*c, "mode")) {
      sp.mode = as_string(*m, "compactify.mode");
      if (sp.mode != "c1c2" && sp.mode != "c3" && sp.mode != "acgtf")
        throw_config("ConfigValue",
                     "compactify.mode: must be c1c2, c3, or acgtf");
    }
    if (const njson* r = find(*c, "reference"))
      sp.reference = parse_potential(*r, "compactify.reference");
    if (const njson* so = find(*c, "synthetic_offset"))
      sp.synthetic_offset = parse_mat(*so, "compactify.synthetic_offset");
    if (const njson* f = find(*c, "faces")) {
      if (!f->is_array()) fail_type("compactify.faces", "an array");
      for (std::size_t i = 0; i < f->size(); ++i)
        sp.faces.push_back(static_cast<int>(as_integer(
            (*f)[i], "compactify.faces[" + std::to_string(i) + "]")));
    }
    cfg.compactify = std::move(sp);
  }

  if (const njson* d = find(doc, "deform")) {
    if (!d->is_object()) fail_type("deform", "an object");
    reject_unknown(*d, "deform",
                   {"direction", "defect", "t_list", "search_limit"});
    DeformSpec sp;
    sp.direction =
        parse_mat(require(*d, "deform", "direction"), "deform.direction");
    if (const njson* de = find(*d, "defect"))
      sp.defect = parse_mat(*de, "deform.defect");
    if (const njson* ts = find(*d, "t_list")) {
      if (!ts->is_array()) fail_type("deform.t_list", "an array of numbers");
      for (std::size_t i = 0; i < ts->size(); ++i)
        sp.t_list.push_back(as_number(
            (*ts)[i], "deform.t_list[" + std::to_string(i) + "]"));
    }
    if (const njson* sl = find(*d, "search_limit")) {
      sp.search_limit = as_number(*sl, "deform.search_limit");
      if (!(sp.search_limit > 0))
        throw_config("ConfigValue", "deform.search_limit: must be > 0");
    }
    cfg.deform = std::move(sp);
  }

  if (const njson* i = find(doc, "identities")) {
    if (!i->is_object()) fail_type("identities", "an object");
    reject_unknown(*i, "identities",
                   {"n_points", "with_oracle", "oracle_points"});
    if (const njson* n = find(*i, "n_points")) {
      cfg.identities.n_points =
          static_cast<int>(as_integer(*n, "identities.n_points"));
      if (cfg.identities.n_points < 1)
        throw_config("ConfigValue", "identities.n_points: must be >= 1");
    }
    if (const njson* w = find(*i, "with_oracle"))
      cfg.identities.with_oracle = as_bool(*w, "identities.with_oracle");
    if (const njson* op = find(*i, "oracle_points")) {
      cfg.identities.oracle_points =
          static_cast<int>(as_integer(*op, "identities.oracle_points"));
      if (cfg.identities.oracle_points < 0)
        throw_config("ConfigValue", "identities.oracle_points: must be >= 0");
    }
  }

  if (const njson* e = find(doc, "extremal")) {
    if (!e->is_object()) fail_type("extremal", "an object");
    reject_unknown(*e, "extremal", {"threshold"});
    if (const njson* t = find(*e, "threshold"))
      cfg.extremal.threshold = as_number(*t, "extremal.threshold");
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw_config("ConfigRead", "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

PotentialSpec realize_potential(const PotentialConfig& pc,
                                std::shared_ptr<const DelzantPolytope> P) {
  if (pc.kind == "guillemin") return guillemin_potential(P);
  if (pc.kind == "quadratic") {
    Vec l = pc.l;
    if (l.size() == 0) l = Vec::Zero(pc.Q.rows());
    if (l.size() != pc.Q.rows())
      throw_config("ConfigValue", "quadratic potential: l/Q size mismatch");
    if (pc.Q.rows() != P->m)
      throw_config("ConfigValue",
                   "quadratic potential: Q must match the polytope dimension");
    return quadratic_potential(pc.Q, l, pc.c0);
  }
  if (pc.kind == "expression") return expression_potential(pc.src, P->m);
  std::vector<PotentialSpec> terms;
  terms.reserve(pc.terms.size());
  for (const auto& t : pc.terms) terms.push_back(realize_potential(t, P));
  return sum_potential(std::move(terms));
}

GKStructure realize_structure(const RunConfig& cfg) {
  auto P = build_polytope(cfg.normals, cfg.offsets);
  PotentialSpec pot = realize_potential(cfg.potential, P);
  Mat C = cfg.C;
  if (C.size() == 0) C = Mat::Zero(P->m, P->m);
  return make_structure(P, std::move(pot), C);
}

}  // namespace torickgk
