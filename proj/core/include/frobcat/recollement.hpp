#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frobcat/stable.hpp"

/* Recollement verification for the stable categories attached to a comma
 * category: the six induced functors between the three stable categories,
 * their adjunctions as explicit linear correspondences, full faithfulness of
 * the embeddings, and the image = kernel condition in the middle.
 *
 * Everything is checked on finite windows of objects; each claim reduces to
 * matrix identities between stable quotient spaces found by exact solves.
 */

namespace frobcat {

/* ------------------------------------------------------------------ *
 *  Generic window verifiers (any pair of category flavours).
 * ------------------------------------------------------------------ */

/// One adjunction F -| G with F : C -> D, presented by the explicit
/// correspondence Hom_D(F c, d) <-> Hom_C(c, G d).
template <class CatC, class CatD>
struct AdjunctionData {
  std::string name;
  const FrobeniusPair<CatC>* pc = nullptr;  // stable structure on C
  const FrobeniusPair<CatD>* pd = nullptr;  // stable structure on D
  std::function<typename CatD::Obj(const typename CatC::Obj&)> f_obj;
  std::function<typename CatD::Mor(const typename CatC::Mor&)> f_mor;
  std::function<typename CatC::Obj(const typename CatD::Obj&)> g_obj;
  std::function<typename CatC::Mor(const typename CatD::Mor&)> g_mor;
  // forward: Hom_D(F c, d) -> Hom_C(c, G d); backward: its inverse.
  std::function<typename CatC::Mor(const typename CatC::Obj&, const typename CatD::Obj&,
                                   const typename CatD::Mor&)>
      fwd;
  std::function<typename CatD::Mor(const typename CatC::Obj&, const typename CatD::Obj&,
                                   const typename CatC::Mor&)>
      bwd;
};

/// A functor between stable categories, for triangle / faithfulness checks.
template <class CatC, class CatD>
struct StableFunctor {
  std::string name;
  const FrobeniusPair<CatC>* pc = nullptr;
  const FrobeniusPair<CatD>* pd = nullptr;
  std::function<typename CatD::Obj(const typename CatC::Obj&)> obj;
  std::function<typename CatD::Mor(const typename CatC::Mor&)> mor;
};

namespace detail {

template <class Cat>
std::vector<typename Cat::Mor> window_morphisms(const Cat& cat,
                                                const std::vector<typename Cat::Obj>& window) {
  std::vector<typename Cat::Mor> out;
  for (const auto& u : window)
    for (const auto& v : window)
      for (const auto& h : cat.hom(u, v)) out.push_back(h);
  return out;
}

}  // namespace detail

/// Check one adjunction on windows: the correspondence must send the
/// factoring subspaces into each other (well-defined), the two induced
/// matrices on stable Hom spaces must be mutually inverse, and the
/// correspondence must be natural against every basis morphism of the
/// windows on both sides.
template <class CatC, class CatD>
Report verify_adjunction(const AdjunctionData<CatC, CatD>& adj,
                         const std::vector<typename CatC::Obj>& cwin,
                         const std::vector<typename CatD::Obj>& dwin, int depth) {
  const CatC& cc = adj.pc->cat;
  const CatD& cd = adj.pd->cat;
  Report rep{"adjunction " + adj.name};
  ReportEntry well{adj.name + ".well-defined"};
  ReportEntry inv{adj.name + ".mutually-inverse"};
  ReportEntry nat{adj.name + ".natural"};
  well.depth = inv.depth = nat.depth = depth;
  well.status = inv.status = nat.status = Tri::yes;
  well.detail = "factoring subspaces map to factoring subspaces, both directions";
  inv.detail = "correspondence matrices between stable Hom spaces compose to identity";
  nat.detail = "checked against every basis morphism of both windows";

  for (const auto& c : cwin) {
    for (const auto& d : dwin) {
      auto fc = adj.f_obj(c);
      auto gd = adj.g_obj(d);
      auto side_d = stable_hom(*adj.pd, fc, d);
      auto side_c = stable_hom(*adj.pc, c, gd);
      std::string where = "at (" + cc.describe(c) + ", " + cd.describe(d) + ")";

      // well-definedness: relations land on stably zero morphisms
      for (int r = 0; r < side_d.w_subspace.dim(); ++r) {
        auto m = linear_combination(cd, side_d.hom, side_d.w_subspace.basis().row(r), fc, d);
        if (!side_c.stably_zero(cc, adj.fwd(c, d, m))) {
          detail::worsen(well.status, Tri::no);
          if (well.counterexample.empty())
            well.counterexample = "forward image of a factoring morphism survives " + where;
        }
      }
      for (int r = 0; r < side_c.w_subspace.dim(); ++r) {
        auto m = linear_combination(cc, side_c.hom, side_c.w_subspace.basis().row(r), c, gd);
        if (!side_d.stably_zero(cd, adj.bwd(c, d, m))) {
          detail::worsen(well.status, Tri::no);
          if (well.counterexample.empty())
            well.counterexample = "backward image of a factoring morphism survives " + where;
        }
      }

      // the two correspondence matrices on stable coordinates
      FpMatrix fmat(cc.p(), side_c.stable_dim(), side_d.stable_dim());
      for (int j = 0; j < side_d.stable_dim(); ++j) {
        std::vector<uint8_t> e(static_cast<size_t>(side_d.stable_dim()), 0);
        e[static_cast<size_t>(j)] = 1;
        auto img = side_c.stable_coords(cc, adj.fwd(c, d, side_d.representative(cd, e)));
        for (int i = 0; i < side_c.stable_dim(); ++i) fmat.set(i, j, img[static_cast<size_t>(i)]);
      }
      FpMatrix bmat(cc.p(), side_d.stable_dim(), side_c.stable_dim());
      for (int j = 0; j < side_c.stable_dim(); ++j) {
        std::vector<uint8_t> e(static_cast<size_t>(side_c.stable_dim()), 0);
        e[static_cast<size_t>(j)] = 1;
        auto img = side_d.stable_coords(cd, adj.bwd(c, d, side_c.representative(cc, e)));
        for (int i = 0; i < side_d.stable_dim(); ++i) bmat.set(i, j, img[static_cast<size_t>(i)]);
      }
      bool iso = fmat.mul(bmat) == FpMatrix::identity(cc.p(), side_c.stable_dim()) &&
                 bmat.mul(fmat) == FpMatrix::identity(cc.p(), side_d.stable_dim());
      if (!iso) {
        detail::worsen(inv.status, Tri::no);
        if (inv.counterexample.empty())
          inv.counterexample = "stable correspondence is not a bijection " + where;
      }
    }
  }

  // naturality in the C argument: fwd(u . F t) = fwd(u) . t for t : c' -> c
  for (const auto& t : detail::window_morphisms(cc, cwin)) {
    for (const auto& d : dwin) {
      auto ft = adj.f_mor(t);
      auto side_d = stable_hom(*adj.pd, ft.target, d);
      auto side_c2 = stable_hom(*adj.pc, t.source, adj.g_obj(d));
      for (int j = 0; j < side_d.stable_dim(); ++j) {
        std::vector<uint8_t> e(static_cast<size_t>(side_d.stable_dim()), 0);
        e[static_cast<size_t>(j)] = 1;
        auto u = side_d.representative(cd, e);
        auto lhs = adj.fwd(t.source, d, cd.compose(u, ft));
        auto rhs = cc.compose(adj.fwd(t.target, d, u), t);
        if (!side_c2.stably_equal(cc, lhs, rhs)) {
          detail::worsen(nat.status, Tri::no);
          if (nat.counterexample.empty())
            nat.counterexample = "naturality fails in the source argument at (" +
                                 cc.describe(t.source) + " -> " + cc.describe(t.target) + ", " +
                                 cd.describe(d) + ")";
        }
      }
    }
  }
  // naturality in the D argument: fwd(s . u) = G s . fwd(u) for s : d -> d'
  for (const auto& s : detail::window_morphisms(cd, dwin)) {
    for (const auto& c : cwin) {
      auto fc = adj.f_obj(c);
      auto side_d = stable_hom(*adj.pd, fc, s.source);
      auto side_c2 = stable_hom(*adj.pc, c, adj.g_obj(s.target));
      for (int j = 0; j < side_d.stable_dim(); ++j) {
        std::vector<uint8_t> e(static_cast<size_t>(side_d.stable_dim()), 0);
        e[static_cast<size_t>(j)] = 1;
        auto u = side_d.representative(cd, e);
        auto lhs = adj.fwd(c, s.target, cd.compose(s, u));
        auto rhs = cc.compose(adj.g_mor(s), adj.fwd(c, s.source, u));
        if (!side_c2.stably_equal(cc, lhs, rhs)) {
          detail::worsen(nat.status, Tri::no);
          if (nat.counterexample.empty())
            nat.counterexample = "naturality fails in the target argument at (" +
                                 cc.describe(c) + ", " + cd.describe(s.source) + " -> " +
                                 cd.describe(s.target) + ")";
        }
      }
    }
  }

  rep.add(well);
  rep.add(inv);
  rep.add(nat);
  return rep;
}

/// Right-triangle-functor checks on a window: the functor commutes with
/// suspension objectwise up to stable isomorphism, and sends the standard
/// triangle of each sampled conflation to a triangle (its image cone agrees
/// with the image of the third vertex, stably).
template <class CatC, class CatD>
Report verify_triangle_functor(const StableFunctor<CatC, CatD>& fun,
                               const std::vector<typename CatC::Obj>& window,
                               const std::vector<ShortExact<CatC>>& samples,
                               const SearchBudget& budget) {
  const CatC& cc = fun.pc->cat;
  const CatD& cd = fun.pd->cat;
  Report rep{"triangle functor " + fun.name};
  ReportEntry sig{fun.name + ".sigma-commutes"};
  ReportEntry tri{fun.name + ".triangles"};
  sig.status = tri.status = Tri::yes;
  sig.budget = tri.budget = budget.max_candidates;
  sig.detail = "image of the suspension is stably isomorphic to the suspension of the image";
  tri.detail = "image cone of each sampled conflation matches the image of its third vertex";

  for (const auto& c : window) {
    auto lhs = fun.obj(suspend(*fun.pc, c).ses.c);
    auto rhs = suspend(*fun.pd, fun.obj(c)).ses.c;
    auto iso = is_stable_iso(*fun.pd, lhs, rhs, budget);
    detail::worsen(sig.status, iso.verdict);
    if (iso.verdict != Tri::yes && sig.counterexample.empty())
      sig.counterexample = cc.describe(c) + (iso.verdict == Tri::no ? ": images differ stably"
                                                                    : ": search undetermined");
  }

  for (const auto& s : samples) {
    auto t = complete_triangle(*fun.pc, s);
    auto image_cone = cone(*fun.pd, fun.mor(t.f));
    auto iso = is_stable_iso(*fun.pd, image_cone.c, fun.obj(t.x3), budget);
    detail::worsen(tri.status, iso.verdict);
    if (iso.verdict != Tri::yes && tri.counterexample.empty())
      tri.counterexample = "conflation at " + cc.describe(s.a) +
                           (iso.verdict == Tri::no ? ": image is not a triangle"
                                                   : ": search undetermined");
  }

  rep.add(sig);
  rep.add(tri);
  return rep;
}

/// Full faithfulness on a window: the induced map of stable Hom spaces is
/// well-defined and bijective for every ordered pair of window objects.
template <class CatC, class CatD>
Report verify_fully_faithful(const StableFunctor<CatC, CatD>& fun,
                             const std::vector<typename CatC::Obj>& window, int depth) {
  const CatC& cc = fun.pc->cat;
  const CatD& cd = fun.pd->cat;
  Report rep{"fully faithful " + fun.name};
  ReportEntry e{fun.name + ".fully-faithful"};
  e.depth = depth;
  e.status = Tri::yes;
  e.detail = "stable Hom spaces map bijectively on the window";

  for (const auto& u : window) {
    for (const auto& v : window) {
      auto src = stable_hom(*fun.pc, u, v);
      auto dst = stable_hom(*fun.pd, fun.obj(u), fun.obj(v));
      std::string where = "at (" + cc.describe(u) + ", " + cc.describe(v) + ")";
      bool ok = src.stable_dim() == dst.stable_dim();
      // well-defined: factoring morphisms stay factoring
      for (int r = 0; ok && r < src.w_subspace.dim(); ++r) {
        auto m = linear_combination(cc, src.hom, src.w_subspace.basis().row(r), u, v);
        if (!dst.stably_zero(cd, fun.mor(m))) ok = false;
      }
      // bijective: the matrix of the induced stable map is invertible
      if (ok) {
        FpMatrix mat(cc.p(), dst.stable_dim(), src.stable_dim());
        for (int j = 0; j < src.stable_dim(); ++j) {
          std::vector<uint8_t> ecol(static_cast<size_t>(src.stable_dim()), 0);
          ecol[static_cast<size_t>(j)] = 1;
          auto img = dst.stable_coords(cd, fun.mor(src.representative(cc, ecol)));
          for (int i = 0; i < dst.stable_dim(); ++i) mat.set(i, j, img[static_cast<size_t>(i)]);
        }
        ok = mat.rank() == src.stable_dim() && mat.rank() == dst.stable_dim();
      }
      if (!ok) {
        detail::worsen(e.status, Tri::no);
        if (e.counterexample.empty()) e.counterexample = where;
      }
    }
  }
  rep.add(e);
  return rep;
}

/* ------------------------------------------------------------------ *
 *  The concrete recollement of a comma category.
 * ------------------------------------------------------------------ */

struct RecollementSetting {
  CommaCat ccat;
  FrobeniusPair<ModuleCat> pair_a, pair_b;
  FrobeniusPair<CommaCat> pair_c;  // lifted pair
  Report hypotheses;
  bool strict_level = false;
  bool strong = false;

  const CommaContextPtr& ctx() const { return ccat.ctx; }
};

/// Lift the two pairs and bundle the result; nullopt (with the hypothesis
/// report in *why, if given) when the lifting hypotheses fail.
std::optional<RecollementSetting> make_recollement_setting(
    const CommaCat& ccat, const FrobeniusPair<ModuleCat>& pair_a,
    const FrobeniusPair<ModuleCat>& pair_b, const std::vector<ModulePtr>& window_b, int depth,
    Report* why = nullptr);

/// s(Y) = (W, Y, sigma) from the chosen W-approximation of T(Y).
struct SbarImage {
  CommaObjPtr object;
  ShortExact<ModuleCat> approx;  // 0 -> T(Y) -> W -> coker -> 0
};
SbarImage sbar_apply(const RecollementSetting& rs, const ModulePtr& y);

/// s(g) for g : Y -> Y', lifting through the approximations.
CommaMorphism sbar_mor(const RecollementSetting& rs, const SbarImage& sy, const SbarImage& sy2,
                       const Morphism& g);

/// Every two lifts of the same g differ by a morphism vanishing on the
/// structure image; check that all such differences are stably zero.
Report sbar_well_defined(const RecollementSetting& rs, const SbarImage& sy,
                         const SbarImage& sy2);

/// Image of Z-bar equals the kernel of U_B-bar on the window: for each
/// object, Y stably zero in B must coincide with the object being stably
/// isomorphic to Z_A(coker phi), witnessed by an explicit splitting.
Report verify_im_eq_ker(const RecollementSetting& rs, const std::vector<CommaObjPtr>& window,
                        int depth, const SearchBudget& budget);

/// Membership transfer between the comma description and the triangular
/// matrix algebra: glued Gorenstein-projectivity agrees with direct
/// Gorenstein-projectivity of the corresponding triangular module.
Report gp_triangular_cross_check(const CommaCat& ccat, int gorenstein_bound, int lambda_bound,
                                 const std::vector<CommaObjPtr>& window, int depth);

/// The aggregate check: lifting hypotheses, triangle functors, the four
/// adjunctions, full faithfulness, image = kernel, composite vanishing and
/// (for strong pairs) the suspension-loop equivalences in all three stable
/// categories.
Report verify_recollement(const RecollementSetting& rs, const std::vector<ModulePtr>& window_a,
                          const std::vector<ModulePtr>& window_b,
                          const std::vector<CommaObjPtr>& window_c, int depth,
                          const SearchBudget& budget);

}  // namespace frobcat
