// torickgk — structured pass/fail reports shared by the checking modules.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torickgk/common.hpp"

namespace torickgk {

/// One named check inside a report: verdict, the measured value, and an
/// optional witness (point and/or free-form note).
struct CheckItem {
  std::string name;
  bool pass = false;
  double value = 0.0;               // the measured quantity the verdict is about
  std::string note;                 // witness description, empty if none
  std::optional<Vec> witness_point; // offending point, if any
};

/// Aggregated verdict document. `pass` is true iff every item passed.
struct ReportDoc {
  std::string title;
  std::vector<CheckItem> items;
  std::vector<std::pair<std::string, double>> tolerances; // name → value used

  bool pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }

  CheckItem& add(const std::string& name, bool ok, double value,
                 const std::string& note = "") {
    items.push_back(CheckItem{name, ok, value, note, std::nullopt});
    return items.back();
  }

  void record_tolerance(const std::string& name, double value) {
    tolerances.emplace_back(name, value);
  }

  /// Deterministic JSON rendering (keys in fixed order, doubles at 17
  /// significant digits).
  std::string to_json() const;
};

}  // namespace torickgk
