#include <doctest.h>

#include "fixtures.hpp"
#include "frobcat/stable.hpp"

using namespace frobcat;

namespace {

// 0 -> k -> A -> k -> 0 over the dual numbers: socle embedding, top projection.
ShortExact<ModuleCat> socle_sequence(const AlgebraPtr& a) {
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);
  Morphism iota{k, reg, FpMatrix::from_rows(2, {{0}, {1}})};
  Morphism pi{reg, k, FpMatrix::from_rows(2, {{1, 0}})};
  return {k, reg, k, iota, pi};
}

}  // namespace

TEST_CASE("stable Hom spaces over the dual numbers: dimensions and zero objects") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);

  auto end_k = stable_hom(pair, k, k);
  CHECK(end_k.hom_dim() == 1);
  CHECK(end_k.w_dim() == 0);
  CHECK(end_k.stable_dim() == 1);  // stable End(k) is one-dimensional
  CHECK(!end_k.stably_zero(cat, cat.identity(k)));

  auto end_a = stable_hom(pair, reg, reg);
  CHECK(end_a.hom_dim() == 2);
  CHECK(end_a.w_dim() == 2);
  CHECK(end_a.stable_dim() == 0);  // injectives vanish stably

  auto k_to_a = stable_hom(pair, k, reg);
  CHECK(k_to_a.hom_dim() == 1);
  CHECK(k_to_a.stable_dim() == 0);

  CHECK(is_stably_zero(pair, reg));
  CHECK(is_stably_zero(pair, cat.zero()));
  CHECK(!is_stably_zero(pair, k));
  CHECK(!is_stably_zero(pair, direct_sum({k, reg}).object));
}

TEST_CASE("factoring subspace agrees with brute force over all small cogenerators") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);

  for (const auto& y : {k, reg, direct_sum({k, reg}).object}) {
    auto hom = cat.hom(k, y);
    auto via_approx = w_subspace_via(cat, pair.right_approx(k), k, y, hom);

    // independent oracle: span of every composite through an injective of dim <= 4
    std::vector<ModulePtr> ws = {cat.zero(), reg, direct_sum({reg, reg}).object};
    FpMatrix rows(cat.p(), 0, static_cast<int>(hom.size()));
    for (const auto& w : ws)
      for (const auto& h : cat.hom(k, w))
        for (const auto& g : cat.hom(w, y)) {
          auto c = hom_coords(cat, hom, cat.compose(g, h));
          REQUIRE(c.has_value());
          std::vector<std::vector<int>> one = {std::vector<int>(c->begin(), c->end())};
          rows = rows.vstack(FpMatrix::from_rows(cat.p(), one, static_cast<int>(hom.size())));
        }
    CHECK(via_approx == Subspace::from_rows(rows));
  }
}

TEST_CASE("factoring subspace is independent of the chosen approximation") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);
  auto aa = direct_sum({reg, reg}).object;

  // second embedding: diagonal socle map into A + A
  Morphism diag{k, aa, FpMatrix::from_rows(2, {{0}, {1}, {0}, {1}})};
  auto ck = cat.cokernel(diag);
  ShortExact<ModuleCat> other{k, aa, ck.object, diag, ck.map};
  REQUIRE(is_short_exact(cat, other));

  for (const auto& y : {k, reg}) {
    auto hom = cat.hom(k, y);
    CHECK(w_subspace_via(cat, pair.right_approx(k), k, y, hom) ==
          w_subspace_via(cat, other, k, y, hom));
  }

  // the two cosyzygies are stably isomorphic via the comparison map
  auto v = cosyzygy_compare(pair, pair.right_approx(k), other);
  CHECK(stable_inverse(pair, v).has_value());
}

TEST_CASE("suspension and loop of the simple module are the simple module") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);

  auto sk = suspend(pair, k);
  REQUIRE(is_short_exact(cat, sk.ses));
  CHECK(is_isomorphic(sk.object(), k, SearchBudget{}).verdict == Tri::yes);

  auto lk = loop(pair, k);
  REQUIRE(is_short_exact(cat, lk.ses));
  CHECK(is_isomorphic(lk.object(), k, SearchBudget{}).verdict == Tri::yes);

  // suspension of the identity is stably the identity
  auto sid = suspend_mor(pair, sk, sk, cat.identity(k));
  auto endk = stable_hom(pair, sk.object(), sk.object());
  CHECK(endk.stably_equal(cat, sid, cat.identity(sk.object())));
}

TEST_CASE("loop demands a strong pair") {
  auto a = fixtures::path_a2();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  CHECK(!pair.strong);
  CHECK_THROWS_WITH(loop(pair, fixtures::a2_s1(a)), "pair not strong");
}

TEST_CASE("triangle completion: connecting map of the socle sequence is a stable iso") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto ses = socle_sequence(a);
  REQUIRE(is_short_exact(cat, ses));

  auto tri = complete_triangle(pair, ses);
  // the lifting square commutes exactly
  CHECK(cat.mor_eq(cat.compose(tri.square, tri.f), tri.susp.ses.i));
  CHECK(cat.mor_eq(cat.compose(tri.h, tri.g), cat.compose(tri.susp.ses.p, tri.square)));
  // the connecting map is invertible stably: the sequence does not split
  CHECK(stable_inverse(pair, tri.h).has_value());
}

TEST_CASE("triangle completion: split sequences get stably zero connecting maps") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto sum = direct_sum({k, k});
  ShortExact<ModuleCat> split{k, sum.object, k, sum.injections[0], sum.projections[1]};
  REQUIRE(is_short_exact(cat, split));

  auto tri = complete_triangle(pair, split);
  auto sh = stable_hom(pair, tri.x3, tri.susp.object());
  CHECK(sh.stably_zero(cat, tri.h));
}

TEST_CASE("stable isomorphism search: positives, negatives, stably zero pairs") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);

  auto same = is_stable_iso(pair, k, k, SearchBudget{});
  CHECK(same.verdict == Tri::yes);
  REQUIRE(same.map.has_value());
  REQUIRE(same.inverse.has_value());

  // k + A loses its injective summand stably
  auto absorb = is_stable_iso(pair, k, direct_sum({k, reg}).object, SearchBudget{});
  CHECK(absorb.verdict == Tri::yes);

  // two stably zero objects are stably isomorphic through zero maps
  auto zeros = is_stable_iso(pair, reg, direct_sum({reg, reg}).object, SearchBudget{});
  CHECK(zeros.verdict == Tri::yes);

  auto distinct = is_stable_iso(pair, k, reg, SearchBudget{});
  CHECK(distinct.verdict == Tri::no);
  CHECK(distinct.exhaustive);
}

TEST_CASE("rotation: the cone of each triangle map reproduces the next vertex stably") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto ses = socle_sequence(a);
  auto tri = complete_triangle(pair, ses);

  // cone of f : X1 -> X2 is stably X3
  auto cf = cone(pair, tri.f);
  REQUIRE(is_short_exact(cat, cf));
  CHECK(is_stable_iso(pair, cf.c, tri.x3, SearchBudget{}).verdict == Tri::yes);

  // cone of g : X2 -> X3 is stably Sigma X1
  auto cg = cone(pair, tri.g);
  REQUIRE(is_short_exact(cat, cg));
  CHECK(is_stable_iso(pair, cg.c, tri.susp.object(), SearchBudget{}).verdict == Tri::yes);
}

TEST_CASE("strong pairs: suspension and loop are mutually inverse stably") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = mod_inj_pair(cat);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);

  for (const auto& x : {k, direct_sum({k, reg}).object, direct_sum({k, k}).object}) {
    auto up = suspension_of_loop_iso(pair, x);  // x -> Sigma Omega x
    CHECK(stable_inverse(pair, up).has_value());
    auto down = loop_of_suspension_iso(pair, x);  // Omega Sigma x -> x
    CHECK(stable_inverse(pair, down).has_value());
  }
}

TEST_CASE("cone admissibility criterion: surjective Hom restriction forces a good cone") {
  auto a = fixtures::dual_numbers();
  ModuleCat cat(a);
  auto pair = gp_pair(cat, 1);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);
  std::vector<ModulePtr> ws = {reg};

  Morphism iota{k, reg, FpMatrix::from_rows(2, {{0}, {1}})};
  CHECK(hom_restriction_epi(cat, iota, ws) == Tri::yes);
  CHECK(is_mono(iota));
  CHECK(pair.in_x(cat.cokernel(iota).object, 2) == Tri::yes);

  Morphism pi{reg, k, FpMatrix::from_rows(2, {{1, 0}})};
  CHECK(hom_restriction_epi(cat, pi, ws) == Tri::no);
  CHECK(!is_mono(pi));
}

TEST_CASE("stable structure lifts to the comma category") {
  auto a = fixtures::dual_numbers();
  auto ctx = make_comma_context(regular_bimodule(a));
  CommaCat ccat(ctx);
  ModuleCat cat(a);
  auto k = fixtures::dn_simple(a);
  auto reg = regular_module(a);
  auto lift = lift_pair(ccat, mod_inj_pair(cat), mod_inj_pair(cat), {cat.zero(), k, reg}, 2);
  REQUIRE(lift.pair.has_value());
  const auto& lp = *lift.pair;

  auto socle = make_comma(ctx, reg, k, FpMatrix::from_rows(2, {{0}, {1}}), "socle-ext");
  CHECK(!is_stably_zero(lp, socle));
  CHECK(is_stably_zero(lp, comma_t_b(ctx, reg)));  // lifted-W objects vanish

  auto susp = suspend(lp, socle);
  CHECK(is_short_exact(ccat, susp.ses));
  auto lk = loop(lp, socle);
  CHECK(is_short_exact(ccat, lk.ses));
  CHECK(stable_inverse(lp, suspension_of_loop_iso(lp, socle)).has_value());

  // the embedding Z_A is stably faithful on End(k)
  auto stable_comma = stable_hom(lp, comma_z_a(ctx, k), comma_z_a(ctx, k));
  auto stable_base = stable_hom(mod_inj_pair(cat), k, k);
  CHECK(stable_comma.stable_dim() == stable_base.stable_dim());
}
