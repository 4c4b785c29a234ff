#pragma once

#include <memory>
#include <string>
#include <vector>

#include "frobcat/bimodule.hpp"
#include "frobcat/category.hpp"

namespace frobcat {

/* The comma construction for a tensor functor T = M (x)_S - : Mod-S -> Mod-R:
 * objects are triples (X, Y, phi : T(Y) -> X), morphisms are pairs (a, b)
 * with a . phi = phi' . T(b).  Kernels and cokernels are componentwise with
 * induced structure maps, so the category is abelian and the six canonical
 * functors below are exact or one-sided exact as expected. */

struct CommaContext {
  TensorFunctorPtr t;
  ModuleCat cat_a;  // where X lives (target of T)
  ModuleCat cat_b;  // where Y lives (source of T)

  explicit CommaContext(TensorFunctorPtr tf)
      : t(std::move(tf)), cat_a(t->target_algebra()), cat_b(t->source_algebra()) {}
};

using CommaContextPtr = std::shared_ptr<const CommaContext>;

CommaContextPtr make_comma_context(const BimodulePtr& m);

class CommaObject;
using CommaObjPtr = std::shared_ptr<const CommaObject>;

class CommaObject {
public:
  CommaObject(CommaContextPtr ctx, ModulePtr x, ModulePtr y, FpMatrix phi_mat,
              std::string name = "");

  const CommaContextPtr& ctx() const { return ctx_; }
  const ModulePtr& x() const { return x_; }
  const ModulePtr& y() const { return y_; }
  const TensorApplication& ty() const { return ty_; }
  const Morphism& phi() const { return phi_; }
  int dim() const { return x_->dim() + y_->dim(); }
  const std::string& name() const { return name_; }
  uint64_t fingerprint() const { return fingerprint_; }

  std::vector<std::string> validate() const;

private:
  CommaContextPtr ctx_;
  ModulePtr x_, y_;
  TensorApplication ty_;
  Morphism phi_;  // ty_.result -> x_
  std::string name_;
  uint64_t fingerprint_;
};

CommaObjPtr make_comma(const CommaContextPtr& ctx, const ModulePtr& x, const ModulePtr& y,
                       const FpMatrix& phi, std::string name = "");

bool same_comma(const CommaObjPtr& a, const CommaObjPtr& b);

struct CommaMorphism {
  CommaObjPtr source, target;
  Morphism a;  // X -> X'
  Morphism b;  // Y -> Y'

  std::vector<std::string> validate() const;
};

/// Category interface over a fixed comma context (same duck type as ModuleCat,
/// so all of homology.hpp applies verbatim).
struct CommaCat {
  using Obj = CommaObjPtr;
  using Mor = CommaMorphism;

  CommaContextPtr ctx;

  explicit CommaCat(CommaContextPtr c) : ctx(std::move(c)) {}

  int p() const { return ctx->cat_a.p(); }
  int dim(const Obj& o) const { return o->dim(); }
  bool is_zero(const Obj& o) const { return o->dim() == 0; }
  bool eq(const Obj& a, const Obj& b) const { return same_comma(a, b); }
  uint64_t fingerprint(const Obj& o) const { return o->fingerprint(); }
  std::string describe(const Obj& o) const;

  Obj zero() const;
  Mor identity(const Obj& o) const;
  Mor zero_mor(const Obj& s, const Obj& t) const;
  Mor compose(const Mor& g, const Mor& f) const;
  Mor add(const Mor& f, const Mor& g) const;
  Mor sub(const Mor& f, const Mor& g) const;
  Mor scale(const Mor& f, int c) const;
  bool mor_eq(const Mor& f, const Mor& g) const { return f.a.mat == g.a.mat && f.b.mat == g.b.mat; }
  bool is_zero_mor(const Mor& f) const { return f.a.mat.is_zero() && f.b.mat.is_zero(); }

  std::vector<Mor> hom(const Obj& s, const Obj& t) const;
  int coord_dim(const Obj& s, const Obj& t) const {
    return s->x()->dim() * t->x()->dim() + s->y()->dim() * t->y()->dim();
  }
  std::vector<uint8_t> coords(const Mor& f) const;
  Mor from_coords(const Obj& s, const Obj& t, const std::vector<uint8_t>& v) const;

  bool is_mono(const Mor& f) const { return frobcat::is_mono(f.a) && frobcat::is_mono(f.b); }
  bool is_epi(const Mor& f) const { return frobcat::is_epi(f.a) && frobcat::is_epi(f.b); }
  bool is_iso(const Mor& f) const { return frobcat::is_iso(f.a) && frobcat::is_iso(f.b); }

  SubPair<Obj, Mor> kernel(const Mor& f) const;
  SubPair<Obj, Mor> cokernel(const Mor& f) const;
  SumPack<Obj, Mor> sum(const std::vector<Obj>& parts) const;

  /// Projective cover-style epi from T_B(cover of Y) (+) Z_A(cover of coker phi).
  CoverPair<Obj, Mor> free_cover(const Obj& o) const { return free_cover_impl(o, false); }
  CoverPair<Obj, Mor> plain_free_cover(const Obj& o) const { return free_cover_impl(o, true); }

private:
  CoverPair<Obj, Mor> free_cover_impl(const Obj& o, bool plain) const;
};

/* ------------------------------------------------------------------ *
 *  The six canonical functors of the comma situation.
 * ------------------------------------------------------------------ */

/// T_B(Y) = (T(Y), Y, id).
CommaObjPtr comma_t_b(const CommaContextPtr& ctx, const ModulePtr& y);
CommaMorphism comma_t_b_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& g);

/// Z_A(X) = (X, 0, 0).
CommaObjPtr comma_z_a(const CommaContextPtr& ctx, const ModulePtr& x);
CommaMorphism comma_z_a_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& a);

/// Z_B(Y) = (0, Y, 0).
CommaObjPtr comma_z_b(const CommaContextPtr& ctx, const ModulePtr& y);
CommaMorphism comma_z_b_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& g);

/// U_A(X, Y, phi) = X  and  U_B(X, Y, phi) = Y (projections onto the legs).
inline ModulePtr comma_u_a(const CommaObjPtr& o) { return o->x(); }
inline Morphism comma_u_a_mor(const CommaMorphism& f) { return f.a; }
inline ModulePtr comma_u_b(const CommaObjPtr& o) { return o->y(); }
inline Morphism comma_u_b_mor(const CommaMorphism& f) { return f.b; }

struct CokerLeg {
  ModulePtr object;  // coker(phi)
  Morphism proj;     // X ->> coker(phi)
};

/// q(X, Y, phi) = coker(phi), with its projection from X.
CokerLeg comma_q(const CommaObjPtr& o);
/// Induced morphism coker(phi) -> coker(phi') of a comma morphism.
Morphism comma_q_mor(const CokerLeg& qs, const CokerLeg& qt, const CommaMorphism& f);

/* ------------------------------------------------------------------ *
 *  Equivalence with modules over the triangular matrix algebra
 *  Lambda = (R M; 0 S).
 * ------------------------------------------------------------------ */

/// Basis order: R-basis, then M-basis, then S-basis.  The radical (J_R + M +
/// J_S) and idempotent lists are carried over when both corners have them.
AlgebraPtr triangular_matrix_algebra(const BimodulePtr& m);

/// Lambda-module on X (+) Y matching the comma object.
ModulePtr comma_to_triangular(const AlgebraPtr& lambda, const CommaObjPtr& o);
/// Comma object recovered from a Lambda-module (corner idempotent splitting).
CommaObjPtr triangular_to_comma(const CommaContextPtr& ctx, const AlgebraPtr& lambda,
                                const ModulePtr& z);

}  // namespace frobcat
