#pragma once

#include <string>
#include <vector>

#include "frobcat/common.hpp"

namespace frobcat {

/* Every bounded verification produces a flat list of labeled entries; an
 * entry records which check ran, over which window, at which depth/budget,
 * and — on failure — the smallest witnessing instance found.  Reports never
 * throw: a violated axiom is data, not an error. */

struct ReportEntry {
  std::string check;
  std::string window;
  int depth = 0;
  uint64_t budget = 0;
  Tri status = Tri::undetermined;
  std::string detail;
  std::string counterexample;
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;

  void add(ReportEntry e) { entries.push_back(std::move(e)); }

  Tri status() const {
    Tri s = Tri::yes;
    for (const auto& e : entries) s = tri_and(s, e.status);
    return s;
  }
  bool passed() const { return status() == Tri::yes; }

  const ReportEntry* find(const std::string& check) const {
    for (const auto& e : entries)
      if (e.check == check) return &e;
    return nullptr;
  }

  void merge(const Report& other, const std::string& prefix = "") {
    for (auto e : other.entries) {
      if (!prefix.empty()) e.check = prefix + "." + e.check;
      entries.push_back(std::move(e));
    }
  }
};

/// Plain-text rendering, one line per entry.
std::string render_report_text(const Report& r);

/// Deterministic JSON rendering (sorted keys, no whitespace dependence on
/// platform); byte-identical for identical report contents.
std::string render_report_json(const Report& r);

}  // namespace frobcat
