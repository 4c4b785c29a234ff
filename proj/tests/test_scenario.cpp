#include <doctest.h>

#include "fixtures.hpp"
#include "frobcat/scenario.hpp"

using namespace frobcat;

namespace {

std::string scenario_path(const char* file) {
  return std::string(FROBCAT_SCENARIO_DIR) + "/" + file;
}

const ReportEntry* find_entry(const Report& rep, const std::string& check) {
  return rep.find(check);
}

// Dual numbers with one product redirected: (1*x)*x = 0 but (x*1)*x = x,
// so associativity genuinely fails (and x*1 = 1 breaks the unit law too).
const char* kCorruptedTable = R"({
  "name": "corrupted",
  "p": 2,
  "algebras": {
    "A": {"dim": 2, "table": [[[1,0],[0,1]],[[1,0],[0,0]]], "unit": [1,0]}
  },
  "modules": {"k": {"algebra": "A", "dim": 1, "actions": [[[1]],[[0]]]}},
  "checks": {"ext": {"pairs": [{"algebra": "A", "from": "k", "to": "k"}]}}
})";

}  // namespace

TEST_CASE("scenario files resolve algebras, shorthands and comma objects") {
  auto sc = load_scenario_file(scenario_path("triangular_f2x2.json"));
  CHECK(sc.name == "dual-numbers-triangular");
  CHECK(sc.p == 2);
  CHECK(sc.depth == 4);
  CHECK(sc.budget == 4096);

  REQUIRE(sc.algebras.count("A") == 1);
  CHECK(sc.algebras.at("A")->dim() == 2);
  CHECK(sc.modules.at("k")->dim() == 1);
  CHECK(sc.modules.at("reg")->dim() == 2);   // regular shorthand
  CHECK(sc.modules.at("kk")->dim() == 2);    // sum shorthand
  CHECK(sc.modules.at("kA")->dim() == 3);
  CHECK(sc.modules.at("z")->dim() == 0);

  REQUIRE(sc.bimodule != nullptr);
  CHECK(sc.bimodule->dim() == 2);  // regular bimodule of the dual numbers
  REQUIRE(sc.ctx != nullptr);

  const auto& socle = sc.comma_objects.at("socle_ext");
  CHECK(socle->x()->dim() == 2);
  CHECK(socle->y()->dim() == 1);
  CHECK_FALSE(socle->phi().mat.is_zero());
  CHECK(socle->validate().empty());
  CHECK(sc.comma_objects.at("tk")->phi().mat == FpMatrix::identity(2, 1));

  CHECK(sc.windows.at("winEnum").enumerate_max_dim == 2);
  CHECK(sc.windows.at("winC").is_comma);
  CHECK(sc.pairs.at("pa").kind == "mod_inj");
  CHECK(sc.pairs.at("pc").kind == "lift");
  CHECK(sc.checks.recollement.enabled);
  CHECK(sc.checks.ext_patterns.max_degree == 3);
}

TEST_CASE("parse errors carry positions and bad references are rejected") {
  CHECK_THROWS_WITH_AS(parse_scenario("{ \"p\": ", "broken.json"),
                       doctest::Contains("parse error at line"), ScenarioError);
  CHECK_THROWS_WITH_AS(parse_scenario("{\"p\": 4}"), doctest::Contains("must be prime"),
                       ScenarioError);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"windows": {"w": {"algebra": "nope", "modules": []}}})"),
      doctest::Contains("unknown algebra"), ScenarioError);
  CHECK_THROWS_WITH_AS(
      parse_scenario(
          R"({"algebras": {"A": {"dim": 2, "table": [[[1,0],[0,1]],[[0,1],[0,0]]], "unit": [1,0]}},
              "modules": {"k": {"algebra": "A", "dim": 1, "actions": [[[1]],[[0]],[[0]]]}}})"),
      doctest::Contains("expected 2 action matrices"), ScenarioError);
  // phi shape is checked against T(y) before any comma object is built
  CHECK_THROWS_WITH_AS(
      parse_scenario(
          R"({"algebras": {"A": {"dim": 2, "table": [[[1,0],[0,1]],[[0,1],[0,0]]], "unit": [1,0]}},
              "modules": {"k": {"algebra": "A", "dim": 1, "actions": [[[1]],[[0]]]}},
              "bimodule": {"regular_of": "A"},
              "comma_objects": {"c": {"x": "k", "y": "k", "phi": [[1,0]]}}})"),
      doctest::Contains("expected 1 columns"), ScenarioError);
}

TEST_CASE("window enumeration lists modules up to isomorphism") {
  SearchBudget budget{4096, 0};
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);

  auto win = enumerate_window(cat, 2, budget);
  CHECK(win.exhaustive);
  REQUIRE(win.modules.size() == 4);  // 0, k, k+k, A
  std::vector<int> dims;
  for (const auto& m : win.modules) dims.push_back(m->dim());
  CHECK(dims == std::vector<int>{0, 1, 2, 2});
  for (size_t i = 0; i < win.modules.size(); ++i)
    for (size_t j = i + 1; j < win.modules.size(); ++j)
      CHECK(is_isomorphic(win.modules[i], win.modules[j], budget).verdict == Tri::no);
  int regs = 0, sums = 0;
  for (const auto& m : win.modules) {
    if (is_isomorphic(m, regular_module(a), budget).verdict == Tri::yes) ++regs;
    auto k = fixtures::dn_simple(a);
    if (is_isomorphic(m, direct_sum({k, k}).object, budget).verdict == Tri::yes) ++sums;
  }
  CHECK(regs == 1);
  CHECK(sums == 1);

  auto only_zero = enumerate_window(cat, 0, budget);
  CHECK(only_zero.exhaustive);
  REQUIRE(only_zero.modules.size() == 1);
  CHECK(only_zero.modules[0]->dim() == 0);

  // Semisimple F_2 x F_2: two orthogonal idempotents, two simples in dim 1.
  std::vector<std::vector<std::vector<int>>> table = {
      {{1, 0}, {0, 0}},
      {{0, 0}, {0, 1}},
  };
  auto ss = std::make_shared<Algebra>(2, 2, table, std::vector<int>{1, 1}, "F2xF2");
  auto win1 = enumerate_window(ModuleCat(ss), 1, budget);
  CHECK(win1.exhaustive);
  CHECK(win1.modules.size() == 3);  // 0 and the two simples
}

TEST_CASE("structural validation gates every command") {
  auto sc = parse_scenario(kCorruptedTable, "corrupted.json");
  auto res = run_command(sc, "validate", -1, SearchBudget{0, 0});
  CHECK(res.exit_code == 1);
  const auto* assoc = find_entry(res.report, "algebras.A.associativity");
  REQUIRE(assoc != nullptr);
  CHECK(assoc->status == Tri::no);
  CHECK(assoc->counterexample.find("associativity") != std::string::npos);
  const auto* unit = find_entry(res.report, "algebras.A.unit");
  REQUIRE(unit != nullptr);
  CHECK(unit->status == Tri::no);

  // Any other command refuses to run checks over corrupted data.
  auto ext = run_command(sc, "ext", -1, SearchBudget{0, 0});
  CHECK(ext.exit_code == 1);
  CHECK(ext.report.title.find("structural validation failed") != std::string::npos);
  CHECK(find_entry(ext.report, "algebras.A.associativity") != nullptr);
}

TEST_CASE("reports replay byte-identically for a fixed scenario and seed") {
  auto sc = load_scenario_file(scenario_path("triangular_f2x2.json"));
  for (const char* cmd : {"validate", "ext", "stable", "gp"}) {
    auto r1 = run_command(sc, cmd, -1, SearchBudget{0, 0});
    auto r2 = run_command(sc, cmd, -1, SearchBudget{0, 0});
    CHECK(render_report_json(r1.report) == render_report_json(r2.report));
    CHECK(r1.exit_code == 0);
  }
}

TEST_CASE("stable command reports dimensions, fixed points and triangles") {
  auto sc = load_scenario_file(scenario_path("triangular_f2x2.json"));
  auto res = run_command(sc, "stable", -1, SearchBudget{0, 0});
  REQUIRE(res.exit_code == 0);

  const auto* endk = find_entry(res.report, "pa.hom(k,k)");
  REQUIRE(endk != nullptr);
  CHECK(endk->detail == "hom_dim=1 w_subspace_dim=0 stable_dim=1");
  const auto* enda = find_entry(res.report, "pa.hom(reg,reg)");
  REQUIRE(enda != nullptr);
  CHECK(enda->detail == "hom_dim=2 w_subspace_dim=2 stable_dim=0");

  const auto* sigma = find_entry(res.report, "pa.sigma-fixes(k)");
  REQUIRE(sigma != nullptr);
  CHECK(sigma->status == Tri::yes);

  const auto* tri = find_entry(res.report, "pa.triangle(k->reg)");
  REQUIRE(tri != nullptr);
  CHECK(tri->status == Tri::yes);
  CHECK(tri->detail.find("stably invertible: yes") != std::string::npos);

  const auto* agree = find_entry(res.report, "pa.w-agreement(k,k)");
  REQUIRE(agree != nullptr);
  CHECK(agree->status == Tri::yes);
}

TEST_CASE("frobenius command recovers the base classes from the lifted pair") {
  auto sc = load_scenario_file(scenario_path("triangular_f2x2.json"));
  auto res = run_command(sc, "frobenius-check", -1, SearchBudget{0, 0});
  REQUIRE(res.exit_code == 0);
  const auto* level = find_entry(res.report, "pairs.pc.level");
  REQUIRE(level != nullptr);
  CHECK(level->detail == "strict inclusions; strong: yes");
  int recoveries = 0;
  for (const auto& e : res.report.entries)
    if (e.check.find("pc.recovery.") != std::string::npos) {
      CHECK(e.status == Tri::yes);
      ++recoveries;
    }
  CHECK(recoveries == 16);  // 4 enumerated modules x {za, tb} x {x, w}
}

TEST_CASE("broken fixtures fail with their designated entries") {
  {
    auto sc = load_scenario_file(scenario_path("broken_w_not_summand_closed.json"));
    auto res = run_command(sc, "frobenius-check", -1, SearchBudget{0, 0});
    CHECK(res.exit_code == 1);
    const auto* e = find_entry(res.report, "pe.w-summands-closed");
    REQUIRE(e != nullptr);
    CHECK(e->status == Tri::no);
    CHECK(e->counterexample.find("summand") != std::string::npos);
  }
  {
    auto sc = load_scenario_file(scenario_path("broken_l1t_nonzero.json"));
    auto res = run_command(sc, "recollement-verify", -1, SearchBudget{0, 0});
    CHECK(res.exit_code == 1);
    const auto* e = find_entry(res.report, "hypotheses.derived-tensor-vanishing");
    REQUIRE(e != nullptr);
    CHECK(e->status == Tri::no);
    CHECK(e->counterexample.find("derived degree 1") != std::string::npos);
  }
}

TEST_CASE("gp command transfers membership to the triangular matrix algebra") {
  auto sc = load_scenario_file(scenario_path("gp_f2x2.json"));
  auto res = run_command(sc, "gp", -1, SearchBudget{0, 0});
  REQUIRE(res.exit_code == 0);
  const auto* ver = find_entry(res.report, "gorenstein-verified");
  REQUIRE(ver != nullptr);
  CHECK(ver->status == Tri::yes);
  const auto* mem = find_entry(res.report, "membership(k)");
  REQUIRE(mem != nullptr);
  CHECK(mem->detail == "Gorenstein projective: yes");  // selfinjective: everything is
  const auto* transfer = find_entry(res.report, "gp-transfer");
  REQUIRE(transfer != nullptr);
  CHECK(transfer->status == Tri::yes);
}

TEST_CASE("ext command checks both comma reduction patterns") {
  auto sc = load_scenario_file(scenario_path("triangular_f2x2.json"));
  auto res = run_command(sc, "ext", -1, SearchBudget{0, 0});
  REQUIRE(res.exit_code == 0);
  const auto* plain = find_entry(res.report, "ext(k,k)");
  REQUIRE(plain != nullptr);
  CHECK(plain->detail.find("[1, 1, 1, 1, 1]") != std::string::npos);
  int za = 0, tb = 0;
  for (const auto& e : res.report.entries) {
    if (e.check.rfind("za-pattern", 0) == 0) ++za;
    if (e.check.rfind("tb-pattern", 0) == 0) ++tb;
    if (e.check.find("-pattern") != std::string::npos) CHECK(e.status == Tri::yes);
  }
  CHECK(za == 18);  // 3 modules x 6 comma targets
  CHECK(tb == 18);
}
