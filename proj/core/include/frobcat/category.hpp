#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobcat/algebra.hpp"

namespace frobcat {

/* Small structure packs shared by every abelian-category backend.  The
 * homological templates in homology.hpp are written against the duck-typed
 * interface below (ModuleCat here, CommaCat in comma.hpp):
 *
 *   Obj / Mor, p(), dim, is_zero, eq, describe,
 *   zero(), identity, zero_mor, compose, add, sub, scale, mor_eq,
 *   hom (canonical basis), coords / from_coords / coord_dim,
 *   is_mono / is_epi / is_iso, kernel / cokernel, sum, free_cover.
 */

template <class Obj, class Mor>
struct SubPair {
  Obj object;
  Mor map;  // inclusion (kernel) or projection (cokernel)
};

template <class Obj, class Mor>
struct SumPack {
  Obj object;
  std::vector<Mor> injections;
  std::vector<Mor> projections;
};

template <class Obj, class Mor>
struct CoverPair {
  Obj object;
  Mor epi;
};

/// Module category of a fixed algebra, with cover data sharpened by the
/// algebra's optional radical and idempotents.
struct ModuleCat {
  using Obj = ModulePtr;
  using Mor = Morphism;

  AlgebraPtr algebra;

  explicit ModuleCat(AlgebraPtr a) : algebra(std::move(a)) {}

  int p() const { return algebra->p(); }
  int dim(const Obj& x) const { return x->dim(); }
  bool is_zero(const Obj& x) const { return x->dim() == 0; }
  bool eq(const Obj& a, const Obj& b) const { return same_module(a, b); }
  uint64_t fingerprint(const Obj& x) const { return x->fingerprint(); }
  std::string describe(const Obj& x) const {
    return x->name().empty() ? "module(dim " + std::to_string(x->dim()) + ")" : x->name();
  }

  Obj zero() const { return zero_module(algebra); }
  Mor identity(const Obj& x) const { return identity_morphism(x); }
  Mor zero_mor(const Obj& a, const Obj& b) const { return zero_morphism(a, b); }
  Mor compose(const Mor& g, const Mor& f) const { return frobcat::compose(g, f); }
  Mor add(const Mor& f, const Mor& g) const { return mor_add(f, g); }
  Mor sub(const Mor& f, const Mor& g) const { return mor_sub(f, g); }
  Mor scale(const Mor& f, int c) const { return mor_scale(f, c); }
  bool mor_eq(const Mor& f, const Mor& g) const { return f.mat == g.mat; }
  bool is_zero_mor(const Mor& f) const { return f.mat.is_zero(); }

  std::vector<Mor> hom(const Obj& a, const Obj& b) const { return hom_basis(a, b); }
  int coord_dim(const Obj& a, const Obj& b) const { return a->dim() * b->dim(); }
  std::vector<uint8_t> coords(const Mor& f) const { return f.mat.flatten(); }
  Mor from_coords(const Obj& a, const Obj& b, const std::vector<uint8_t>& v) const {
    return {a, b, FpMatrix::reshape(p(), b->dim(), a->dim(), v)};
  }

  bool is_mono(const Mor& f) const { return frobcat::is_mono(f); }
  bool is_epi(const Mor& f) const { return frobcat::is_epi(f); }
  bool is_iso(const Mor& f) const { return frobcat::is_iso(f); }

  SubPair<Obj, Mor> kernel(const Mor& f) const {
    auto k = frobcat::kernel(f);
    return {k.object, k.map};
  }
  SubPair<Obj, Mor> cokernel(const Mor& f) const {
    auto c = frobcat::cokernel(f);
    return {c.object, c.map};
  }
  SumPack<Obj, Mor> sum(const std::vector<Obj>& parts) const {
    auto s = direct_sum(parts);
    return {s.object, s.injections, s.projections};
  }

  /// Epi from a projective (sum of A e_i over top generators when the radical
  /// and idempotents are available, full free copies otherwise).
  CoverPair<Obj, Mor> free_cover(const Obj& x) const { return free_cover_impl(x, true); }
  /// Plain basis-indexed free cover, ignoring the radical (used to check that
  /// Ext does not depend on the resolution).
  CoverPair<Obj, Mor> plain_free_cover(const Obj& x) const { return free_cover_impl(x, false); }

private:
  CoverPair<Obj, Mor> free_cover_impl(const Obj& x, bool use_radical) const;
};

}  // namespace frobcat
