#pragma once

#include "frobcat/algebra.hpp"

namespace frobcat {

/* R-S-bimodule: commuting left R-action and right S-action on one space.
 * right_action(i) is the matrix of m |-> m * s_i, so right_action(i) o
 * right_action(j) must equal the right action of s_j * s_i. */
class Bimodule {
public:
  Bimodule(AlgebraPtr left, AlgebraPtr right, int dim, std::vector<FpMatrix> left_actions,
           std::vector<FpMatrix> right_actions, std::string name = "M");

  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  int dim() const { return dim_; }
  int p() const { return left_->p(); }
  const std::string& name() const { return name_; }
  const FpMatrix& left_action(int i) const { return left_actions_[i]; }
  const FpMatrix& right_action(int i) const { return right_actions_[i]; }

  std::vector<std::string> validate() const;

private:
  AlgebraPtr left_, right_;
  int dim_;
  std::vector<FpMatrix> left_actions_, right_actions_;
  std::string name_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

/// The algebra itself as a bimodule over (A, A).
BimodulePtr regular_bimodule(const AlgebraPtr& a);
/// A^rank as a bimodule over (A, A).
BimodulePtr free_bimodule(const AlgebraPtr& a, int rank);

struct TensorApplication {
  ModulePtr result;   // M tensor_S Y as a left R-module
  FpMatrix projection;  // from M tensor_k Y coordinates (index a*dim(Y)+b)
  FpMatrix section;     // projection o section = id
};

/* T = M tensor_S - : Mod-S -> Mod-R, computed as the quotient of M tensor_k Y
 * by the balancing relations (m s) x y - m x (s y), with the canonical rref
 * pivot basis.  Right exact; left-derived functors live in homology.hpp. */
class TensorFunctor {
public:
  explicit TensorFunctor(BimodulePtr m) : m_(std::move(m)) {}

  const BimodulePtr& bimodule() const { return m_; }
  const AlgebraPtr& source_algebra() const { return m_->right_algebra(); }
  const AlgebraPtr& target_algebra() const { return m_->left_algebra(); }

  TensorApplication apply_object(const ModulePtr& y) const;
  Morphism apply_morphism(const Morphism& g) const;
  Morphism apply_morphism(const TensorApplication& src, const TensorApplication& dst,
                          const Morphism& g) const;

private:
  BimodulePtr m_;
};

using TensorFunctorPtr = std::shared_ptr<const TensorFunctor>;

}  // namespace frobcat
