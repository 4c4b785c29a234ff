#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobcat/bimodule.hpp"
#include "frobcat/category.hpp"
#include "frobcat/common.hpp"

namespace frobcat {

/* ------------------------------------------------------------------ *
 *  Generic solvers: every lift/extension in the workbench reduces to
 *  a linear system over the relevant Hom space.
 * ------------------------------------------------------------------ */

/// Find f : B -> C with f . u = v, where u : A -> B and v : A -> C.
/// Returns nullopt when no morphism extends v along u.
template <class Cat>
std::optional<typename Cat::Mor> solve_postcompose(const Cat& cat,
                                                   const typename Cat::Obj& b,
                                                   const typename Cat::Obj& c,
                                                   const typename Cat::Mor& u,
                                                   const typename Cat::Mor& v) {
  auto basis = cat.hom(b, c);
  // Columns: coords of h_i . u ; rhs: coords of v.  Both live in Hom(A, C) coords.
  std::vector<uint8_t> rhs = cat.coords(v);
  int m = static_cast<int>(rhs.size());
  FpMatrix sys(cat.p(), m, static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    auto col = cat.coords(cat.compose(basis[j], u));
    for (int i = 0; i < m; ++i) sys.set(i, static_cast<int>(j), col[static_cast<size_t>(i)]);
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  typename Cat::Mor f = cat.zero_mor(b, c);
  for (size_t j = 0; j < basis.size(); ++j)
    if ((*sol)[j] != 0) f = cat.add(f, cat.scale(basis[j], (*sol)[j]));
  return f;
}

/// Find f : A -> B with u . f = v, where u : B -> C and v : A -> C.
/// Returns nullopt when v does not lift through u.
template <class Cat>
std::optional<typename Cat::Mor> solve_precompose(const Cat& cat,
                                                  const typename Cat::Obj& a,
                                                  const typename Cat::Obj& b,
                                                  const typename Cat::Mor& u,
                                                  const typename Cat::Mor& v) {
  auto basis = cat.hom(a, b);
  std::vector<uint8_t> rhs = cat.coords(v);
  int m = static_cast<int>(rhs.size());
  FpMatrix sys(cat.p(), m, static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    auto col = cat.coords(cat.compose(u, basis[j]));
    for (int i = 0; i < m; ++i) sys.set(i, static_cast<int>(j), col[static_cast<size_t>(i)]);
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  typename Cat::Mor f = cat.zero_mor(a, b);
  for (size_t j = 0; j < basis.size(); ++j)
    if ((*sol)[j] != 0) f = cat.add(f, cat.scale(basis[j], (*sol)[j]));
  return f;
}

/// Coordinates of f in the canonical basis of Hom(source, target); nullopt if
/// f is not a morphism of that Hom space (should not happen for valid input).
template <class Cat>
std::optional<std::vector<uint8_t>> hom_coords(const Cat& cat,
                                               const std::vector<typename Cat::Mor>& basis,
                                               const typename Cat::Mor& f) {
  std::vector<uint8_t> rhs = cat.coords(f);
  int m = static_cast<int>(rhs.size());
  FpMatrix sys(cat.p(), m, static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    auto col = cat.coords(basis[j]);
    for (int i = 0; i < m; ++i) sys.set(i, static_cast<int>(j), col[static_cast<size_t>(i)]);
  }
  return solve(sys, rhs);
}

/* ------------------------------------------------------------------ *
 *  Short exact sequences, pushout / pullback.
 * ------------------------------------------------------------------ */

template <class Cat>
struct ShortExact {
  typename Cat::Obj a, b, c;  // 0 -> a -> b -> c -> 0
  typename Cat::Mor i;        // a -> b
  typename Cat::Mor p;        // b -> c
};

template <class Cat>
bool is_short_exact(const Cat& cat, const ShortExact<Cat>& s) {
  if (!cat.is_mono(s.i) || !cat.is_epi(s.p)) return false;
  if (!cat.is_zero_mor(cat.compose(s.p, s.i))) return false;
  // im i = ker p by dimension count (mono + epi + zero composite).
  return cat.dim(s.a) + cat.dim(s.c) == cat.dim(s.b);
}

template <class Cat>
struct PushoutData {
  typename Cat::Obj object;
  typename Cat::Mor from_b;  // B -> P
  typename Cat::Mor from_c;  // C -> P
};

/// Pushout of B <-f- A -g-> C, as coker(A -> B (+) C).
template <class Cat>
PushoutData<Cat> pushout(const Cat& cat, const typename Cat::Mor& f, const typename Cat::Mor& g) {
  auto s = cat.sum({f.target, g.target});
  auto m = cat.sub(cat.compose(s.injections[0], f), cat.compose(s.injections[1], g));
  auto ck = cat.cokernel(m);
  return {ck.object, cat.compose(ck.map, s.injections[0]), cat.compose(ck.map, s.injections[1])};
}

template <class Cat>
struct PullbackData {
  typename Cat::Obj object;
  typename Cat::Mor to_b;  // P -> B
  typename Cat::Mor to_c;  // P -> C
};

/// Pullback of B -f-> A <-g- C, as ker(B (+) C -> A).
template <class Cat>
PullbackData<Cat> pullback(const Cat& cat, const typename Cat::Mor& f, const typename Cat::Mor& g) {
  auto s = cat.sum({f.source, g.source});
  auto m = cat.sub(cat.compose(f, s.projections[0]), cat.compose(g, s.projections[1]));
  auto k = cat.kernel(m);
  return {k.object, cat.compose(s.projections[0], k.map), cat.compose(s.projections[1], k.map)};
}

/* ------------------------------------------------------------------ *
 *  Resolutions by covers.
 * ------------------------------------------------------------------ */

template <class Cat>
struct Resolution {
  typename Cat::Obj target;
  std::vector<typename Cat::Obj> terms;          // F_0 .. F_len
  std::vector<typename Cat::Mor> differentials;  // d_i : F_{i+1} -> F_i
  typename Cat::Mor augmentation;                // F_0 ->> target
  std::vector<typename Cat::Obj> syzygies;       // K_1 .. K_{len+1}, K_i = ker(F_{i-1} -> K_{i-1})
  std::vector<typename Cat::Mor> syzygy_incl;    // K_{i+1} -> F_i
  std::vector<typename Cat::Mor> cover_epis;     // F_i ->> K_i (F_0 ->> target first)
};

/// Cover-by-cover resolution with terms F_0 .. F_len.  `plain` forces
/// basis-indexed free covers even when sharper cover data is available.
template <class Cat>
Resolution<Cat> resolve(const Cat& cat, const typename Cat::Obj& x, int length, bool plain = false) {
  Resolution<Cat> res;
  res.target = x;
  typename Cat::Obj current = x;
  for (int i = 0; i <= length; ++i) {
    auto cov = plain ? cat.plain_free_cover(current) : cat.free_cover(current);
    res.terms.push_back(cov.object);
    res.cover_epis.push_back(cov.epi);
    if (i == 0) {
      res.augmentation = cov.epi;
    } else {
      res.differentials.push_back(cat.compose(res.syzygy_incl.back(), cov.epi));
    }
    auto k = cat.kernel(cov.epi);
    res.syzygies.push_back(k.object);
    res.syzygy_incl.push_back(k.map);
    current = k.object;
  }
  return res;
}

/* ------------------------------------------------------------------ *
 *  Hom cochain complexes and Ext dimensions.
 * ------------------------------------------------------------------ */

template <class Cat>
struct HomCochain {
  std::vector<std::vector<typename Cat::Mor>> bases;  // Hom(terms[i], y)
  std::vector<FpMatrix> d;                            // d[i] : level i -> level i+1 coords
};

/// Apply Hom(-, y) to a chain  terms[len] -> ... -> terms[0]  with
/// diffs[i] : terms[i+1] -> terms[i].
template <class Cat>
HomCochain<Cat> hom_cochain(const Cat& cat, const std::vector<typename Cat::Obj>& terms,
                            const std::vector<typename Cat::Mor>& diffs,
                            const typename Cat::Obj& y) {
  HomCochain<Cat> cochain;
  for (const auto& t : terms) cochain.bases.push_back(cat.hom(t, y));
  for (size_t i = 0; i < diffs.size(); ++i) {
    const auto& src = cochain.bases[i];
    const auto& dst = cochain.bases[i + 1];
    FpMatrix mat(cat.p(), static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
      auto composed = cat.compose(src[j], diffs[i]);
      auto cc = hom_coords(cat, dst, composed);
      if (!cc) throw std::logic_error("hom_cochain: composite escapes Hom basis");
      for (size_t r = 0; r < cc->size(); ++r) mat.set(static_cast<int>(r), static_cast<int>(j), (*cc)[r]);
    }
    cochain.d.push_back(mat);
  }
  return cochain;
}

/// Cohomology dimensions of a cochain  0 -> B_0 -> B_1 -> ... given by the
/// matrices d[i] : level i -> level i+1.  Entry i is dim ker d_i - rank d_{i-1}.
inline std::vector<int> cochain_homology_dims(const std::vector<int>& level_dims,
                                              const std::vector<FpMatrix>& d) {
  std::vector<int> ranks(d.size());
  for (size_t i = 0; i < d.size(); ++i) ranks[i] = d[i].rank();
  std::vector<int> out;
  for (size_t i = 0; i + 1 <= d.size(); ++i) {
    int ker = level_dims[i] - ranks[i];
    int im = i == 0 ? 0 : ranks[i - 1];
    out.push_back(ker - im);
  }
  return out;
}

/// dim Ext^i(resolved object, y) for 0 <= i <= maxdeg, reusing a resolution
/// of length >= maxdeg + 1 (amortizes the resolve across many targets).
template <class Cat>
std::vector<int> ext_dims_from_resolution(const Cat& cat, const Resolution<Cat>& res,
                                          const typename Cat::Obj& y, int maxdeg) {
  auto cochain = hom_cochain(cat, res.terms, res.differentials, y);
  std::vector<int> level_dims;
  for (const auto& b : cochain.bases) level_dims.push_back(static_cast<int>(b.size()));
  auto h = cochain_homology_dims(level_dims, cochain.d);
  h.resize(static_cast<size_t>(maxdeg) + 1);
  return h;
}

/// dim Ext^i(x, y) for 0 <= i <= maxdeg (entry 0 is dim Hom(x, y)).
template <class Cat>
std::vector<int> ext_dims(const Cat& cat, const typename Cat::Obj& x, const typename Cat::Obj& y,
                          int maxdeg, bool plain_covers = false) {
  if (maxdeg < 0) return {};
  auto res = resolve(cat, x, maxdeg + 1, plain_covers);
  return ext_dims_from_resolution(cat, res, y, maxdeg);
}

/* ------------------------------------------------------------------ *
 *  Ext^1 as a coordinatized space: representatives, realization as a
 *  short exact sequence, classification of a given sequence.
 * ------------------------------------------------------------------ */

template <class Cat>
struct Ext1Space {
  const Cat* cat;
  typename Cat::Obj x, y;
  typename Cat::Obj k1, f0;
  typename Cat::Mor incl;  // K1 -> F0
  typename Cat::Mor aug;   // F0 ->> X
  std::vector<typename Cat::Mor> cocycle_basis;  // Hom(K1, Y)
  QuotientMap quot;  // Hom(K1,Y) coords  ->>  Ext^1 coords

  int dim() const { return quot.quotient_dim; }

  /// Short exact sequence 0 -> Y -> E -> X -> 0 representing the class with
  /// the given Ext^1 coordinates (size dim()).
  ShortExact<Cat> realize(const std::vector<uint8_t>& cls) const {
    const Cat& c = *cat;
    std::vector<uint8_t> padded(static_cast<size_t>(quot.section.cols()), 0);
    for (size_t i = 0; i < cls.size() && i < padded.size(); ++i) padded[i] = cls[i];
    std::vector<uint8_t> lifted = quot.section.mul_vec(padded);
    typename Cat::Mor psi = c.zero_mor(k1, y);
    for (size_t j = 0; j < cocycle_basis.size(); ++j)
      if (lifted[j] != 0) psi = c.add(psi, c.scale(cocycle_basis[j], lifted[j]));
    // E = coker( (incl, -psi) : K1 -> F0 (+) Y ).
    auto s = c.sum({f0, y});
    auto m = c.sub(c.compose(s.injections[0], incl), c.compose(s.injections[1], psi));
    auto ck = c.cokernel(m);
    typename Cat::Mor yin = c.compose(ck.map, s.injections[1]);
    // E -> X induced by (aug, 0) : F0 (+) Y -> X.
    auto flat = c.compose(aug, s.projections[0]);
    auto eps = solve_postcompose(c, ck.object, x, ck.map, flat);
    if (!eps) throw std::logic_error("ext1 realize: cokernel factorization failed");
    return {y, ck.object, x, yin, *eps};
  }

  /// Ext^1 coordinates of a short exact sequence 0 -> Y -> E -> X -> 0.
  std::vector<uint8_t> classify(const ShortExact<Cat>& s) const {
    const Cat& c = *cat;
    auto mu = solve_precompose(c, f0, s.b, s.p, aug);  // F0 -> E over X
    if (!mu) throw std::logic_error("ext1 classify: cover does not lift (is F0 projective?)");
    auto nu = c.compose(*mu, incl);  // K1 -> E, lands in ker p = im i
    auto psi = solve_precompose(c, k1, s.a, s.i, nu);
    if (!psi) throw std::logic_error("ext1 classify: boundary does not factor through Y");
    auto cc = hom_coords(c, cocycle_basis, *psi);
    if (!cc) throw std::logic_error("ext1 classify: cocycle escapes Hom basis");
    return quot.projection.mul_vec(*cc);
  }
};

template <class Cat>
Ext1Space<Cat> ext1_space(const Cat& cat, const typename Cat::Obj& x, const typename Cat::Obj& y) {
  Ext1Space<Cat> sp;
  sp.cat = &cat;
  sp.x = x;
  sp.y = y;
  auto cov = cat.free_cover(x);
  sp.f0 = cov.object;
  sp.aug = cov.epi;
  auto k = cat.kernel(cov.epi);
  sp.k1 = k.object;
  sp.incl = k.map;
  sp.cocycle_basis = cat.hom(sp.k1, y);
  // Coboundaries: image of restriction Hom(F0, Y) -> Hom(K1, Y).
  auto homf0y = cat.hom(sp.f0, y);
  int ambient = static_cast<int>(sp.cocycle_basis.size());
  FpMatrix rows(cat.p(), static_cast<int>(homf0y.size()), ambient);
  for (size_t r = 0; r < homf0y.size(); ++r) {
    auto cc = hom_coords(cat, sp.cocycle_basis, cat.compose(homf0y[r], sp.incl));
    if (!cc) throw std::logic_error("ext1_space: restriction escapes Hom basis");
    for (int j = 0; j < ambient; ++j) rows.set(static_cast<int>(r), j, (*cc)[static_cast<size_t>(j)]);
  }
  sp.quot = quotient_map(ambient, Subspace::from_rows(rows), cat.p());
  return sp;
}

/* ------------------------------------------------------------------ *
 *  Module-category specifics: projectivity, injectivity, bounds,
 *  derived tensor, compatibility of a bimodule with acyclic complexes.
 * ------------------------------------------------------------------ */

bool is_projective_module(const ModuleCat& cat, const ModulePtr& x);
bool is_injective_module(const ModuleCat& cat, const ModulePtr& x);

/// Least i <= n with the i-th syzygy projective (= projective dimension when
/// it exists); nullopt means "> n".
std::optional<int> pd_bound(const ModuleCat& cat, const ModulePtr& x, int n);
/// Injective dimension via the dual module over the opposite algebra.
std::optional<int> id_bound(const ModuleCat& cat, const ModulePtr& x, int n);

/// L_0 T(y) .. L_n T(y) for the right-exact functor T = M (x)_S -.
std::vector<ModulePtr> derived_tensor(const TensorFunctor& t, const ModulePtr& y, int n);

/// Doubly infinite exact complex of projectives through x (selfinjective
/// algebras only): F_depth -> .. -> F_0 -> I_0 -> .. -> I_depth, spliced at x.
struct CompleteResolution {
  std::vector<ModulePtr> terms;     // left to right
  std::vector<Morphism> maps;       // maps[k] : terms[k] -> terms[k+1]
  int splice_position = 0;          // index of F_0 (x = im of maps[splice_position])
};
CompleteResolution complete_resolution(const ModuleCat& cat, const ModulePtr& x, int depth);

/// Exactness defects of a finite complex at every inner position
/// (dim ker(outgoing) - rank(incoming); all zero = exact in the middle).
std::vector<int> complex_exactness_defects(const std::vector<ModulePtr>& terms,
                                           const std::vector<Morphism>& maps);

struct CompatEntry {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct CompatReport {
  Tri c1 = Tri::undetermined;  // T sends exact complexes of projectives to exact complexes
  Tri c2 = Tri::undetermined;  // Hom(complete A-resolutions, T(proj)) stays exact
  std::vector<CompatEntry> entries;
};

/// Sample-based check that the tensor functor is compatible with complete
/// resolutions on both sides (report-only; undetermined when no nontrivial
/// sample complex exists at this depth).
CompatReport check_compatible(const TensorFunctor& t, const std::vector<ModulePtr>& sample_b,
                              const std::vector<ModulePtr>& sample_a, int depth);

}  // namespace frobcat
