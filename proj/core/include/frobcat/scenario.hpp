#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobcat/recollement.hpp"

namespace frobcat {

/* Scenario files are JSON documents naming algebras, modules, a bimodule,
 * comma objects, windows, pair builders and the per-command check configs.
 * Parsing resolves every reference eagerly and throws ScenarioError (exit
 * code 2 territory: malformed input) on anything unresolvable; mathematical
 * failures discovered while running checks are report entries, never
 * exceptions. */

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* ------------------------------------------------------------------
 *  Parsed check configurations, one flavour per CLI command.
 * ------------------------------------------------------------------ */

struct ExtCheck {
  std::string algebra, from, to;
};

/* Comma-level Ext compared against the module-level values through both
 * reductions: Ext(Z_A X, B) against Ext_A(X, B.x) and Ext(T_B Y, B) against
 * Ext_B(Y, B.y); the latter needs the derived tensor of Y to vanish. */
struct ExtPatternCheck {
  bool enabled = false;
  std::string modules_a, modules_b, targets;  // window ids; targets is a comma window
  int max_degree = 3;
};

struct TorCheck {
  std::string y;
};

struct FrobCheck {
  std::string pair, window;
  // For lifted pairs: recover the two base classes through Z_A and T_B.
  std::string recovery_window_a, recovery_window_b;
};

struct TriangleCheck {
  std::string sub, mid;
  std::vector<std::vector<int>> mono;  // matrix of the embedding sub -> mid
  std::string connecting;              // "invertible" | "zero" | "" (report only)
};

struct StableCheck {
  std::string pair;
  std::vector<std::array<std::string, 2>> hom;
  std::vector<std::string> suspension_fixed_points;
  std::vector<TriangleCheck> triangles;
  std::vector<std::array<std::string, 2>> w_agreement_pairs;
  std::string w_agreement_window;
};

struct RecollementCheck {
  bool enabled = false;
  std::string pair_a, pair_b, window_a, window_b, window_c;
};

struct GpCheck {
  bool enabled = false;
  std::string algebra, window;
  int bound = 1;
  bool cross = false;
  int lambda_bound = 3;
  std::string cross_window;
};

struct ConvertCheck {
  bool enabled = false;
  std::string window;  // comma window
};

struct Checks {
  std::vector<ExtCheck> ext;
  ExtPatternCheck ext_patterns;
  std::vector<TorCheck> tor;
  std::vector<FrobCheck> frobenius;
  std::vector<StableCheck> stable;
  RecollementCheck recollement;
  GpCheck gp;
  ConvertCheck convert;
};

/* ------------------------------------------------------------------
 *  Pair and window specs.  Windows and pairs depend on the run-time
 *  depth/budget, so the scenario stores their recipes only.
 * ------------------------------------------------------------------ */

struct PairSpec {
  std::string kind;  // "mod_inj" | "gp" | "explicit" | "cotorsion" | "lift"
  std::string algebra;
  int bound = 1;                        // gp
  std::vector<std::string> x_ids, w_ids;  // explicit (empty x = all modules)
  bool strong_hint = false;               // explicit
  std::string x_class, y_class, preenvelope, window;  // cotorsion
  std::string pair_a, pair_b, window_b;               // lift
};

struct WindowSpec {
  bool is_comma = false;
  std::string algebra;                  // module windows
  std::vector<std::string> module_ids;  // explicit module window
  std::vector<std::string> comma_ids;   // comma window
  int enumerate_max_dim = -1;           // >= 0: enumerate instead of listing
};

struct Scenario {
  std::string name;
  std::string source;  // file path or "<string>", for error messages
  int p = 2;
  int depth = 4;
  uint64_t budget = 4096;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, ModulePtr> modules;
  BimodulePtr bimodule;   // may be null
  CommaContextPtr ctx;    // non-null iff bimodule present
  std::map<std::string, CommaObjPtr> comma_objects;
  std::map<std::string, WindowSpec> windows;
  std::map<std::string, PairSpec> pairs;
  Checks checks;
};

Scenario parse_scenario(const std::string& json_text, const std::string& source_name = "<string>");
Scenario load_scenario_file(const std::string& path);

/* All modules of dimension <= max_dim up to isomorphism, found by running
 * through every action tuple (the unit constraint eliminates one basis
 * element) and deduplicating with the isomorphism search.  `exhaustive` is
 * true only when the whole space fit the budget and every dedup comparison
 * was itself exhaustive. */
struct EnumWindow {
  std::vector<ModulePtr> modules;
  bool exhaustive = true;
};
EnumWindow enumerate_window(const ModuleCat& cat, int max_dim, const SearchBudget& budget);

/* Run one CLI command against the scenario.  exit_code: 0 all checks pass,
 * 1 at least one entry failed or stayed undetermined.  Unresolvable data
 * throws ScenarioError (the CLI maps that to exit 2). */
struct RunResult {
  Report report;
  int exit_code = 0;
};
RunResult run_command(const Scenario& sc, const std::string& command, int depth,
                      const SearchBudget& budget);

/// The command names accepted by run_command, in CLI order.
const std::vector<std::string>& command_names();

}  // namespace frobcat
