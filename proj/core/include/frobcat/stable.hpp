#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobcat/classes.hpp"

/* Stable categories of Frobenius pairs.
 *
 * For a pair (X-class, W-class) the stable category keeps the objects of the
 * X-class and divides each Hom space by the subgroup of morphisms factoring
 * through the W-class.  Everything here is exact linear algebra over F_p:
 * the factoring subgroup is a subspace, the stable Hom is an explicit
 * quotient with projection and section, and suspension / loop / triangle
 * completion are solved morphism-lifting systems.
 */

namespace frobcat {

/* ------------------------------------------------------------------ *
 *  Stable Hom spaces.
 * ------------------------------------------------------------------ */

template <class Cat>
struct StableHom {
  typename Cat::Obj source, target;
  std::vector<typename Cat::Mor> hom;  // canonical basis of Hom(source, target)
  Subspace w_subspace;                 // coords of morphisms factoring through W
  QuotientMap quotient;                // Hom coords -> stable coords

  int hom_dim() const { return static_cast<int>(hom.size()); }
  int w_dim() const { return w_subspace.dim(); }
  int stable_dim() const { return quotient.quotient_dim; }

  std::vector<uint8_t> stable_coords(const Cat& cat, const typename Cat::Mor& f) const {
    auto c = hom_coords(cat, hom, f);
    if (!c) throw std::logic_error("stable coordinates: morphism outside the Hom space");
    return quotient.projection.mul_vec(*c);
  }

  /// Representative morphism for a stable coordinate vector.
  typename Cat::Mor representative(const Cat& cat, const std::vector<uint8_t>& v) const {
    return linear_combination(cat, hom, quotient.section.mul_vec(v), source, target);
  }

  bool stably_zero(const Cat& cat, const typename Cat::Mor& f) const {
    for (auto c : stable_coords(cat, f))
      if (c != 0) return false;
    return true;
  }

  bool stably_equal(const Cat& cat, const typename Cat::Mor& f,
                    const typename Cat::Mor& g) const {
    return stable_coords(cat, f) == stable_coords(cat, g);
  }
};

/// Subspace of Hom(x, y) of morphisms factoring through the middle term of a
/// given W-approximation 0 -> x -> W -> x' -> 0.  Because Ext^1(x', W') = 0
/// for every W' in the class, every factorization through the class extends
/// over this single embedding, so the subspace does not depend on the choice.
template <class Cat>
Subspace w_subspace_via(const Cat& cat, const ShortExact<Cat>& approx,
                        const typename Cat::Obj& x, const typename Cat::Obj& y,
                        const std::vector<typename Cat::Mor>& hom) {
  auto through = cat.hom(approx.b, y);
  int n = static_cast<int>(hom.size());
  FpMatrix rows(cat.p(), static_cast<int>(through.size()), n);
  for (size_t r = 0; r < through.size(); ++r) {
    auto c = hom_coords(cat, hom, cat.compose(through[r], approx.i));
    if (!c) throw std::logic_error("factoring subspace: composite escaped the Hom space");
    for (int j = 0; j < n; ++j) rows.set(static_cast<int>(r), j, (*c)[static_cast<size_t>(j)]);
  }
  (void)x;
  return Subspace::from_rows(rows);
}

template <class Cat>
StableHom<Cat> stable_hom(const FrobeniusPair<Cat>& pair, const typename Cat::Obj& x,
                          const typename Cat::Obj& y) {
  const Cat& cat = pair.cat;
  StableHom<Cat> sh;
  sh.source = x;
  sh.target = y;
  sh.hom = cat.hom(x, y);
  sh.w_subspace = w_subspace_via(cat, pair.right_approx(x), x, y, sh.hom);
  sh.quotient = quotient_map(static_cast<int>(sh.hom.size()), sh.w_subspace, cat.p());
  return sh;
}

/* ------------------------------------------------------------------ *
 *  Suspension and loop.
 * ------------------------------------------------------------------ */

/// Chosen cosyzygy sequence 0 -> x -> W -> Sigma x -> 0.
template <class Cat>
struct Suspension {
  ShortExact<Cat> ses;
  const typename Cat::Obj& object() const { return ses.c; }
};

template <class Cat>
Suspension<Cat> suspend(const FrobeniusPair<Cat>& pair, const typename Cat::Obj& x) {
  return {pair.right_approx(x)};
}

/// Sigma f for f : x -> y, via a lift a : W_x -> W_y with a i_x = i_y f.
template <class Cat>
typename Cat::Mor suspend_mor(const FrobeniusPair<Cat>& pair, const Suspension<Cat>& sx,
                              const Suspension<Cat>& sy, const typename Cat::Mor& f) {
  const Cat& cat = pair.cat;
  auto a = solve_postcompose(cat, sx.ses.b, sy.ses.b, sx.ses.i, cat.compose(sy.ses.i, f));
  if (!a)
    throw std::runtime_error(
        "suspension of a morphism: lift through the approximations does not exist "
        "(Ext-vanishing hypothesis violated)");
  auto sf = solve_postcompose(cat, sx.ses.c, sy.ses.c, sx.ses.p, cat.compose(sy.ses.p, *a));
  if (!sf) throw std::logic_error("suspension of a morphism: cokernel descent failed");
  return *sf;
}

/// Chosen syzygy sequence 0 -> Omega x -> W -> x -> 0 (strong pairs only).
template <class Cat>
struct Loop {
  ShortExact<Cat> ses;
  const typename Cat::Obj& object() const { return ses.a; }
};

template <class Cat>
Loop<Cat> loop(const FrobeniusPair<Cat>& pair, const typename Cat::Obj& x) {
  if (!pair.strong || !pair.left_approx) throw std::runtime_error("pair not strong");
  return {pair.left_approx(x)};
}

template <class Cat>
typename Cat::Mor loop_mor(const FrobeniusPair<Cat>& pair, const Loop<Cat>& lx,
                           const Loop<Cat>& ly, const typename Cat::Mor& f) {
  const Cat& cat = pair.cat;
  auto a = solve_precompose(cat, lx.ses.b, ly.ses.b, ly.ses.p, cat.compose(f, lx.ses.p));
  if (!a)
    throw std::runtime_error(
        "loop of a morphism: lift through the covers does not exist "
        "(Ext-vanishing hypothesis violated)");
  auto lf = solve_precompose(cat, lx.ses.a, ly.ses.a, ly.ses.i, cat.compose(*a, lx.ses.i));
  if (!lf) throw std::logic_error("loop of a morphism: kernel restriction failed");
  return *lf;
}

/* ------------------------------------------------------------------ *
 *  Distinguished right triangles.
 * ------------------------------------------------------------------ */

template <class Cat>
struct RightTriangle {
  typename Cat::Obj x1, x2, x3;
  typename Cat::Mor f, g, h;  // x1 -> x2 -> x3 -> Sigma x1
  Suspension<Cat> susp;       // witness 0 -> x1 -> W -> Sigma x1 -> 0
  typename Cat::Mor square;   // a : x2 -> W completing the ladder
};

/// Standard triangle of a short exact sequence with terms in the X-class:
/// solve a with a f = iota, then the connecting map h with h g = pi a.
template <class Cat>
RightTriangle<Cat> complete_triangle(const FrobeniusPair<Cat>& pair,
                                     const ShortExact<Cat>& ses) {
  const Cat& cat = pair.cat;
  auto susp = suspend(pair, ses.a);
  auto a = solve_postcompose(cat, ses.b, susp.ses.b, ses.i, susp.ses.i);
  if (!a)
    throw std::runtime_error(
        "triangle completion: approximation does not extend over the sequence "
        "(Ext-vanishing hypothesis violated)");
  auto h = solve_postcompose(cat, ses.c, susp.ses.c, ses.p, cat.compose(susp.ses.p, *a));
  if (!h) throw std::logic_error("triangle completion: connecting map descent failed");
  return {ses.a, ses.b, ses.c, ses.i, ses.p, *h, susp, *a};
}

/// Mapping cone of u : x -> y.  The embedding (u, iota) : x -> y + W_x is
/// monic, and its cokernel completes u to a distinguished triangle after
/// identifying y + W_x with y stably.
template <class Cat>
ShortExact<Cat> cone(const FrobeniusPair<Cat>& pair, const typename Cat::Mor& u) {
  const Cat& cat = pair.cat;
  auto approx = pair.right_approx(u.source);
  auto sum = cat.sum({u.target, approx.b});
  auto m = cat.add(cat.compose(sum.injections[0], u), cat.compose(sum.injections[1], approx.i));
  auto ck = cat.cokernel(m);
  return {u.source, sum.object, ck.object, m, ck.map};
}

/* ------------------------------------------------------------------ *
 *  Stable isomorphism tests.
 * ------------------------------------------------------------------ */

template <class Cat>
bool is_stably_zero(const FrobeniusPair<Cat>& pair, const typename Cat::Obj& x) {
  auto sh = stable_hom(pair, x, x);
  return sh.stably_zero(pair.cat, pair.cat.identity(x));
}

/// Two-sided stable inverse of f, solved exactly: the unknown inverse is a
/// stable coordinate vector and both composites are linear in it.
template <class Cat>
std::optional<typename Cat::Mor> stable_inverse(const FrobeniusPair<Cat>& pair,
                                                const typename Cat::Mor& f) {
  const Cat& cat = pair.cat;
  auto xy = stable_hom(pair, f.source, f.target);
  auto yx = stable_hom(pair, f.target, f.source);
  auto xx = stable_hom(pair, f.source, f.source);
  auto yy = stable_hom(pair, f.target, f.target);

  int q = yx.stable_dim();
  int rows = xx.stable_dim() + yy.stable_dim();
  FpMatrix sys(cat.p(), rows, q);
  std::vector<typename Cat::Mor> reps;
  reps.reserve(static_cast<size_t>(q));
  for (int j = 0; j < q; ++j) {
    std::vector<uint8_t> e(static_cast<size_t>(q), 0);
    e[static_cast<size_t>(j)] = 1;
    auto g = yx.representative(cat, e);
    reps.push_back(g);
    auto gf = xx.stable_coords(cat, cat.compose(g, f));
    auto fg = yy.stable_coords(cat, cat.compose(f, g));
    for (int i = 0; i < xx.stable_dim(); ++i) sys.set(i, j, gf[static_cast<size_t>(i)]);
    for (int i = 0; i < yy.stable_dim(); ++i)
      sys.set(xx.stable_dim() + i, j, fg[static_cast<size_t>(i)]);
  }
  std::vector<uint8_t> rhs = xx.stable_coords(cat, cat.identity(f.source));
  auto idy = yy.stable_coords(cat, cat.identity(f.target));
  rhs.insert(rhs.end(), idy.begin(), idy.end());
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  auto g = cat.zero_mor(f.target, f.source);
  for (int j = 0; j < q; ++j)
    if ((*sol)[static_cast<size_t>(j)] != 0)
      g = cat.add(g, cat.scale(reps[static_cast<size_t>(j)], (*sol)[static_cast<size_t>(j)]));
  return g;
}

template <class Cat>
struct StableIso {
  Tri verdict = Tri::undetermined;
  std::optional<typename Cat::Mor> map, inverse;
  bool exhaustive = true;
};

/// Search for a stable isomorphism x -> y.  Candidates run over stable
/// coordinate vectors (exhaustively when p^dim fits the budget, a seeded
/// sample otherwise); each candidate's inverse is solved exactly.
template <class Cat>
StableIso<Cat> is_stable_iso(const FrobeniusPair<Cat>& pair, const typename Cat::Obj& x,
                             const typename Cat::Obj& y, const SearchBudget& budget) {
  const Cat& cat = pair.cat;
  StableIso<Cat> out;
  auto xy = stable_hom(pair, x, y);
  auto scan = coefficient_scan(cat.p(), xy.stable_dim(), budget.with_salt("stable-iso"), 64);
  out.exhaustive = scan.exhaustive;
  for (const auto& v : scan.vectors) {
    auto f = xy.representative(cat, v);
    auto inv = stable_inverse(pair, f);
    if (inv) {
      out.verdict = Tri::yes;
      out.map = f;
      out.inverse = inv;
      return out;
    }
  }
  out.verdict = scan.exhaustive ? Tri::no : Tri::undetermined;
  return out;
}

/* ------------------------------------------------------------------ *
 *  Choice independence and the strong-pair equivalences.
 * ------------------------------------------------------------------ */

/// Comparison map between the cokernels of two W-approximations of the same
/// object; it is always a stable isomorphism.
template <class Cat>
typename Cat::Mor cosyzygy_compare(const FrobeniusPair<Cat>& pair, const ShortExact<Cat>& s1,
                                   const ShortExact<Cat>& s2) {
  const Cat& cat = pair.cat;
  auto u = solve_postcompose(cat, s1.b, s2.b, s1.i, s2.i);
  if (!u)
    throw std::runtime_error(
        "cosyzygy comparison: approximations do not lift against each other "
        "(Ext-vanishing hypothesis violated)");
  auto v = solve_postcompose(cat, s1.c, s2.c, s1.p, cat.compose(s2.p, *u));
  if (!v) throw std::logic_error("cosyzygy comparison: cokernel descent failed");
  return *v;
}

/// Comparison map between the kernels of two W-covers of the same object
/// (strong pairs); it is always a stable isomorphism.
template <class Cat>
typename Cat::Mor syzygy_compare(const FrobeniusPair<Cat>& pair, const ShortExact<Cat>& s1,
                                 const ShortExact<Cat>& s2) {
  const Cat& cat = pair.cat;
  auto u = solve_precompose(cat, s1.b, s2.b, s2.p, s1.p);
  if (!u)
    throw std::runtime_error(
        "syzygy comparison: covers do not lift against each other "
        "(Ext-vanishing hypothesis violated)");
  auto v = solve_precompose(cat, s1.a, s2.a, s2.i, cat.compose(*u, s1.i));
  if (!v) throw std::logic_error("syzygy comparison: kernel restriction failed");
  return *v;
}

/// Stable isomorphism x -> Sigma Omega x for a strong pair: the syzygy
/// sequence 0 -> Omega x -> W -> x -> 0 is itself a W-approximation of
/// Omega x, so comparing it with the chosen one lands on x.
template <class Cat>
typename Cat::Mor suspension_of_loop_iso(const FrobeniusPair<Cat>& pair,
                                         const typename Cat::Obj& x) {
  auto lx = loop(pair, x);
  auto sx = suspend(pair, lx.object());
  return cosyzygy_compare(pair, lx.ses, sx.ses);
}

/// Stable isomorphism Omega Sigma x -> x for a strong pair, dually.
template <class Cat>
typename Cat::Mor loop_of_suspension_iso(const FrobeniusPair<Cat>& pair,
                                         const typename Cat::Obj& x) {
  auto sx = suspend(pair, x);
  auto lsx = loop(pair, sx.object());
  return syzygy_compare(pair, lsx.ses, sx.ses);
}

/// Criterion for a morphism to be completable to a cone inside the X-class:
/// Hom(f, W) surjective for every W in the window forces f monic with
/// cokernel in the class.  Returns yes when the restriction maps are all
/// surjective on the window.
template <class Cat>
Tri hom_restriction_epi(const Cat& cat, const typename Cat::Mor& f,
                        const std::vector<typename Cat::Obj>& w_window) {
  for (const auto& w : w_window) {
    auto from = cat.hom(f.target, w);
    auto to = cat.hom(f.source, w);
    int n = static_cast<int>(to.size());
    FpMatrix image(cat.p(), static_cast<int>(from.size()), n);
    for (size_t r = 0; r < from.size(); ++r) {
      auto c = hom_coords(cat, to, cat.compose(from[r], f));
      if (!c) return Tri::undetermined;
      for (int j = 0; j < n; ++j) image.set(static_cast<int>(r), j, (*c)[static_cast<size_t>(j)]);
    }
    if (image.rank() < n) return Tri::no;
  }
  return Tri::yes;
}

}  // namespace frobcat
