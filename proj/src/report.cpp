// torickgk — JSON rendering of ReportDoc and the shared double formatter.
#include "torickgk/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace torickgk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string ReportDoc::to_json() const {
  nlohmann::ordered_json doc;
  doc["title"] = title;
  doc["pass"] = pass();
  nlohmann::ordered_json items_json = nlohmann::ordered_json::array();
  for (const auto& it : items) {
    nlohmann::ordered_json j;
    j["name"] = it.name;
    j["pass"] = it.pass;
    // Rendered as a string so output bytes do not depend on the JSON
    // library's float printer.
    j["value"] = format_double(it.value);
    if (!it.note.empty()) j["note"] = it.note;
    if (it.witness_point) {
      nlohmann::ordered_json pt = nlohmann::ordered_json::array();
      for (int i = 0; i < it.witness_point->size(); ++i)
        pt.push_back(format_double((*it.witness_point)(i)));
      j["witness_point"] = pt;
    }
    items_json.push_back(std::move(j));
  }
  doc["items"] = std::move(items_json);
  nlohmann::ordered_json tols = nlohmann::ordered_json::object();
  for (const auto& [name, value] : tolerances) tols[name] = format_double(value);
  doc["tolerances"] = std::move(tols);
  return doc.dump(2) + "\n";
}

}  // namespace torickgk
