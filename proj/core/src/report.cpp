#include "frobcat/report.hpp"

#include <json.hpp>
#include <sstream>

namespace frobcat {

std::string render_report_text(const Report& r) {
  std::ostringstream out;
  if (!r.title.empty()) out << r.title << "\n";
  for (const auto& e : r.entries) {
    out << "[" << tri_name(e.status) << "] " << e.check;
    if (e.depth > 0) out << " (depth " << e.depth << ")";
    if (!e.detail.empty()) out << ": " << e.detail;
    if (!e.counterexample.empty()) out << " -- counterexample: " << e.counterexample;
    out << "\n";
  }
  out << "status: " << tri_name(r.status()) << "\n";
  return out.str();
}

std::string render_report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["status"] = tri_name(r.status());
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json je;
    je["check"] = e.check;
    je["window"] = e.window;
    je["depth"] = e.depth;
    je["budget"] = e.budget;
    je["status"] = tri_name(e.status);
    je["detail"] = e.detail;
    je["counterexample"] = e.counterexample;
    j["entries"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

}  // namespace frobcat
