#include <doctest.h>

#include "fixtures.hpp"
#include "frobcat/recollement.hpp"

using namespace frobcat;

namespace {

struct DnSetup {
  AlgebraPtr a;
  CommaContextPtr ctx;
  RecollementSetting rs;
  ModulePtr k, reg;
};

DnSetup dn_setup() {
  auto a = fixtures::dual_numbers();
  auto ctx = make_comma_context(regular_bimodule(a));
  CommaCat ccat(ctx);
  ModuleCat cat(a);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);
  auto rs = make_recollement_setting(ccat, mod_inj_pair(cat), mod_inj_pair(cat),
                                     {zero_module(a), k, reg}, 3);
  REQUIRE(rs.has_value());
  return {a, ctx, *rs, k, reg};
}

std::vector<CommaObjPtr> dn_comma_window(const DnSetup& s) {
  CommaCat ccat(s.ctx);
  return {ccat.zero(),
          comma_z_a(s.ctx, s.k),
          comma_z_a(s.ctx, s.reg),
          comma_t_b(s.ctx, s.k),
          comma_t_b(s.ctx, s.reg),
          make_comma(s.ctx, s.reg, s.k, FpMatrix::from_rows(2, {{0}, {1}}), "socle-ext")};
}

BimodulePtr dn_bimodule_k(const AlgebraPtr& a) {
  std::vector<FpMatrix> triv = {FpMatrix::identity(2, 1), FpMatrix(2, 1, 1)};
  return std::make_shared<Bimodule>(a, a, 1, triv, triv, "k");
}

}  // namespace

TEST_CASE("recollement setting over the dual numbers is strong at strict inclusions") {
  auto s = dn_setup();
  CHECK(s.rs.strong);
  CHECK(s.rs.strict_level);
  CHECK(s.rs.hypotheses.passed());
  CHECK(s.rs.pair_c.strong);

  Report why;
  CommaCat broken(make_comma_context(dn_bimodule_k(s.a)));
  ModuleCat cat(s.a);
  auto refused = make_recollement_setting(broken, mod_inj_pair(cat), mod_inj_pair(cat), {s.k}, 2,
                                          &why);
  CHECK(!refused.has_value());
  REQUIRE(why.find("derived-tensor-vanishing") != nullptr);
  CHECK(why.find("derived-tensor-vanishing")->status == Tri::no);
}

TEST_CASE("s sends the simple module to the socle extension") {
  auto s = dn_setup();
  auto sk = sbar_apply(s.rs, s.k);
  CHECK(sk.object->y()->dim() == 1);
  CHECK(sk.object->x()->dim() == 2);
  CHECK(is_isomorphic(sk.object->x(), s.reg, SearchBudget{}).verdict == Tri::yes);
  // the structure map embeds T(k) into the socle: x acts as zero on its image
  const auto& phi = sk.object->phi().mat;
  CHECK(!phi.is_zero());
  CHECK(is_mono(sk.object->phi()));
  CHECK(sk.object->x()->action(1).mul(phi).is_zero());
  // the image object belongs to the lifted class but not to its cogenerators
  CHECK(s.rs.pair_c.in_x(sk.object, 3) == Tri::yes);
  CHECK(s.rs.pair_c.in_w(sk.object, 3) == Tri::no);
}

TEST_CASE("s on morphisms: identity goes to the stable identity, lifts are unambiguous") {
  auto s = dn_setup();
  CommaCat ccat(s.ctx);
  auto sk = sbar_apply(s.rs, s.k);
  auto m = sbar_mor(s.rs, sk, sk, s.rs.pair_b.cat.identity(s.k));
  CHECK(m.validate().empty());
  auto sh = stable_hom(s.rs.pair_c, sk.object, sk.object);
  CHECK(sh.stably_equal(ccat, m, ccat.identity(sk.object)));

  auto sa = sbar_apply(s.rs, s.reg);
  for (const auto* from : {&sk, &sa})
    for (const auto* to : {&sk, &sa}) {
      auto rep = sbar_well_defined(s.rs, *from, *to);
      INFO(rep.entries.front().counterexample);
      CHECK(rep.passed());
    }
}

TEST_CASE("kernel of the Y-projection is exactly the stable image of the X-embedding") {
  auto s = dn_setup();
  auto rep = verify_im_eq_ker(s.rs, dn_comma_window(s), 3, SearchBudget{});
  INFO(rep.entries.front().counterexample);
  CHECK(rep.passed());
}

TEST_CASE("full recollement verification over the dual numbers, strong upgrade included") {
  auto s = dn_setup();
  std::vector<ModulePtr> wa = {zero_module(s.a), s.k, s.reg};
  auto rep = verify_recollement(s.rs, wa, wa, dn_comma_window(s), 3, SearchBudget{});
  for (const auto& e : rep.entries) {
    INFO(e.check, ": ", e.counterexample);
    CHECK(e.status == Tri::yes);
  }
  CHECK(rep.passed());

  // every structural section is present
  for (const char* check :
       {"hypotheses.derived-tensor-vanishing", "step1.qbar.sigma-commutes",
        "step1.qbar.triangles", "step1.zbar-a.sigma-commutes", "step1.ubar-a.triangles",
        "step1.tbar-b.sigma-commutes", "step1.ubar-b.triangles", "step1.sbar.sigma-commutes",
        "step1.sbar.well-defined", "adjunctions.q-za.mutually-inverse",
        "adjunctions.za-ua.natural", "adjunctions.tb-ub.well-defined",
        "adjunctions.ub-s.mutually-inverse", "fully-faithful.zbar-a.fully-faithful",
        "fully-faithful.tbar-b.fully-faithful", "fully-faithful.sbar.fully-faithful",
        "middle.im-eq-ker", "composite.ub-za", "composite.q-tb",
        "strong.suspension-loop-a", "strong.suspension-loop-b",
        "strong.suspension-loop-comma"}) {
    INFO(check);
    CHECK(rep.find(check) != nullptr);
  }
}

TEST_CASE("path algebra: right triangulated recollement without the strong upgrade") {
  auto a = fixtures::path_a2();
  auto ctx = make_comma_context(regular_bimodule(a));
  CommaCat ccat(ctx);
  ModuleCat cat(a);
  std::vector<ModulePtr> wb = {zero_module(a), fixtures::a2_s1(a), fixtures::a2_s2(a),
                               fixtures::a2_p1(a), regular_module(a)};
  auto rs = make_recollement_setting(ccat, mod_inj_pair(cat), mod_inj_pair(cat), wb, 3);
  REQUIRE(rs.has_value());
  CHECK(!rs->strong);
  CHECK(rs->strict_level);

  std::vector<CommaObjPtr> wc = {
      ccat.zero(),
      comma_z_a(ctx, fixtures::a2_s1(a)),
      comma_z_a(ctx, fixtures::a2_p1(a)),
      comma_t_b(ctx, fixtures::a2_s2(a)),
      comma_t_b(ctx, fixtures::a2_p1(a)),
      make_comma(ctx, fixtures::a2_p1(a), fixtures::a2_s2(a), FpMatrix::from_rows(2, {{0}, {1}}),
                 "radical-ext"),
  };
  auto rep = verify_recollement(*rs, wb, wb, wc, 3, SearchBudget{});
  for (const auto& e : rep.entries) {
    INFO(e.check, ": ", e.counterexample);
    CHECK(e.status == Tri::yes);
  }
  CHECK(rep.passed());
  CHECK(rep.find("strong.skipped") != nullptr);      // not claimed triangulated
  CHECK(rep.find("strong.suspension-loop-a") == nullptr);
}

TEST_CASE("Gorenstein membership transfers to the triangular matrix algebra") {
  auto s = dn_setup();
  CommaCat ccat(s.ctx);
  auto window = dn_comma_window(s);
  // add an object outside the glued class: zero structure map is not monic
  window.push_back(make_comma(s.ctx, s.reg, s.k, FpMatrix(2, 2, 1), "zero-phi"));
  auto rep = gp_triangular_cross_check(ccat, 1, 3, window, 3);
  INFO(rep.entries.front().counterexample);
  CHECK(rep.passed());
}
