#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace frobcat {

/// Three-valued verdicts for depth/budget-bounded checks.
enum class Tri { yes, no, undetermined };

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::undetermined || b == Tri::undetermined) return Tri::undetermined;
  return Tri::yes;
}

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "undetermined";
  }
}

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

/* Search budget for the operations that fall back from exhaustive scans to
 * seeded sampling.  Identical (budget, seed) inputs replay identically; the
 * salt keeps independent call sites decorrelated under one scenario seed. */
struct SearchBudget {
  uint64_t max_candidates = 4096;
  uint64_t seed = 0;

  SearchBudget with_salt(std::string_view site) const {
    return {max_candidates, seed ^ fnv1a(site)};
  }
};

}  // namespace frobcat
