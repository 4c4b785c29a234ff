#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobcat/common.hpp"
#include "frobcat/fp.hpp"

namespace frobcat {

/* Finite-dimensional F_p-algebra given by structure constants:
 * b_i * b_j = sum_k table[i][j][k] b_k.  The optional radical (a nilpotent
 * two-sided ideal) and orthogonal idempotent list sharpen projective covers;
 * nothing else depends on them. */
class Algebra {
public:
  Algebra(int p, int dim, std::vector<std::vector<std::vector<int>>> table,
          std::vector<int> unit, std::string name = "A");

  int p() const { return p_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<uint8_t>& unit() const { return unit_; }

  /// Coordinates of b_i * b_j.
  std::vector<uint8_t> product_of_basis(int i, int j) const;
  std::vector<uint8_t> multiply(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) const;

  /// Matrix of left multiplication by b_i (column j = coords of b_i * b_j).
  const FpMatrix& left_regular(int i) const { return left_reg_[i]; }
  /// Matrix of right multiplication by b_i (column j = coords of b_j * b_i).
  const FpMatrix& right_regular(int i) const { return right_reg_[i]; }

  FpMatrix left_mul_matrix(const std::vector<uint8_t>& a) const;

  void set_radical(const Subspace& rad) { radical_ = rad; }
  void set_idempotents(std::vector<std::vector<uint8_t>> es) { idempotents_ = std::move(es); }
  const std::optional<Subspace>& radical() const { return radical_; }
  const std::vector<std::vector<uint8_t>>& idempotents() const { return idempotents_; }

  /// Associativity, unit laws, and the optional radical/idempotent claims.
  std::vector<std::string> validate() const;

  uint64_t fingerprint() const;

private:
  int p_, dim_;
  std::string name_;
  std::vector<std::vector<std::vector<uint8_t>>> table_;
  std::vector<uint8_t> unit_;
  std::vector<FpMatrix> left_reg_, right_reg_;
  std::optional<Subspace> radical_;
  std::vector<std::vector<uint8_t>> idempotents_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Same space, reversed multiplication; radical and idempotents carry over.
AlgebraPtr opposite_algebra(const AlgebraPtr& a);

/* Left module: one action matrix per algebra basis element, acting on column
 * vectors, with rho(b_i) rho(b_j) = sum_k table[i][j][k] rho(b_k). */
class Module {
public:
  Module(AlgebraPtr algebra, int dim, std::vector<FpMatrix> actions, std::string name = "");

  const AlgebraPtr& algebra() const { return algebra_; }
  int p() const { return algebra_->p(); }
  int dim() const { return dim_; }
  const std::vector<FpMatrix>& actions() const { return actions_; }
  const FpMatrix& action(int i) const { return actions_[i]; }
  const std::string& name() const { return name_; }

  /// rho(a) for an arbitrary element written in the algebra basis.
  FpMatrix action_of(const std::vector<uint8_t>& coords) const;

  std::vector<std::string> validate() const;
  uint64_t fingerprint() const { return fingerprint_; }

private:
  AlgebraPtr algebra_;
  int dim_;
  std::vector<FpMatrix> actions_;
  std::string name_;
  uint64_t fingerprint_;
};

using ModulePtr = std::shared_ptr<const Module>;

ModulePtr make_module(AlgebraPtr algebra, std::vector<FpMatrix> actions, std::string name = "");
ModulePtr zero_module(const AlgebraPtr& algebra);
ModulePtr regular_module(const AlgebraPtr& algebra);
ModulePtr free_module(const AlgebraPtr& algebra, int rank);

bool same_module(const ModulePtr& a, const ModulePtr& b);

struct Morphism {
  ModulePtr source;
  ModulePtr target;
  FpMatrix mat;  // target.dim x source.dim

  bool is_zero() const { return mat.is_zero(); }
  std::vector<std::string> validate() const;
};

Morphism identity_morphism(const ModulePtr& m);
Morphism zero_morphism(const ModulePtr& source, const ModulePtr& target);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism mor_add(const Morphism& f, const Morphism& g);
Morphism mor_sub(const Morphism& f, const Morphism& g);
Morphism mor_scale(const Morphism& f, int c);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);
bool is_iso(const Morphism& f);

/// Basis of Hom_A(M, N) in canonical (rref-of-intertwiner-system) order.
std::vector<Morphism> hom_basis(const ModulePtr& m, const ModulePtr& n);

struct SubquotientData {
  ModulePtr object;
  Morphism map;  // inclusion for kernels/images, projection for cokernels
};

SubquotientData kernel(const Morphism& f);
SubquotientData cokernel(const Morphism& f);

struct ImageData {
  ModulePtr object;
  Morphism inclusion;   // into target
  Morphism projection;  // from source, inclusion o projection = f
};
ImageData image(const Morphism& f);

/// Submodule on an action-invariant subspace, with its inclusion.
SubquotientData submodule(const ModulePtr& m, const Subspace& s);
/// Quotient by an action-invariant subspace, with its projection.
SubquotientData quotient_module(const ModulePtr& m, const Subspace& s);

struct SumData {
  ModulePtr object;
  std::vector<Morphism> injections;
  std::vector<Morphism> projections;
};
SumData direct_sum(const std::vector<ModulePtr>& parts);

struct SplitData {
  ModulePtr image;
  Morphism inclusion;   // image -> M
  Morphism projection;  // M -> image, inclusion o projection = e
  ModulePtr complement;
  Morphism complement_inclusion;
};
/// Split a module along an idempotent endomorphism.
SplitData split_idempotent(const Morphism& e);

struct IsoResult {
  Tri verdict = Tri::undetermined;
  std::optional<Morphism> witness;
};
/* Isomorphism search: exhaustive over Hom(M,N) when p^dim(Hom) fits the
 * budget (then a miss is a definite no), seeded random trials otherwise
 * (then a miss stays undetermined). */
IsoResult is_isomorphic(const ModulePtr& m, const ModulePtr& n, const SearchBudget& budget);

/// Dual space as a left module over the given opposite algebra.
ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& opposite);
Morphism dual_morphism(const Morphism& f, const AlgebraPtr& opposite);

/// Coordinates of f in the span of basis (solving against the flattened span).
std::optional<std::vector<uint8_t>> coords_in_hom_basis(const std::vector<Morphism>& basis,
                                                        const Morphism& f);

}  // namespace frobcat
