#include "frobcat/bimodule.hpp"

#include <stdexcept>

namespace frobcat {

Bimodule::Bimodule(AlgebraPtr left, AlgebraPtr right, int dim, std::vector<FpMatrix> left_actions,
                   std::vector<FpMatrix> right_actions, std::string name)
    : left_(std::move(left)),
      right_(std::move(right)),
      dim_(dim),
      left_actions_(std::move(left_actions)),
      right_actions_(std::move(right_actions)),
      name_(std::move(name)) {
  if (left_->p() != right_->p()) throw std::invalid_argument("Bimodule: field mismatch");
  if (static_cast<int>(left_actions_.size()) != left_->dim() ||
      static_cast<int>(right_actions_.size()) != right_->dim())
    throw std::invalid_argument("Bimodule: action count mismatch");
  for (const auto& m : left_actions_)
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("Bimodule: left action shape");
  for (const auto& m : right_actions_)
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("Bimodule: right action shape");
}

std::vector<std::string> Bimodule::validate() const {
  std::vector<std::string> errs;
  int p = left_->p();
  auto combo = [&](const std::vector<FpMatrix>& acts, const std::vector<uint8_t>& coords) {
    FpMatrix m(p, dim_, dim_);
    for (size_t i = 0; i < acts.size(); ++i)
      if (coords[i]) m = m.add(acts[i].scale(coords[i]));
    return m;
  };
  if (combo(left_actions_, left_->unit()) != FpMatrix::identity(p, dim_))
    errs.push_back(name_ + ": left unit does not act as identity");
  if (combo(right_actions_, right_->unit()) != FpMatrix::identity(p, dim_))
    errs.push_back(name_ + ": right unit does not act as identity");
  for (int i = 0; i < left_->dim() && errs.size() < 8; ++i)
    for (int j = 0; j < left_->dim() && errs.size() < 8; ++j)
      if (left_actions_[i].mul(left_actions_[j]) != combo(left_actions_, left_->product_of_basis(i, j)))
        errs.push_back(name_ + ": left action incompatible with table");
  // m (s_j s_i) = (m s_j) s_i, i.e. rho(s_i) rho(s_j) = rho of the product s_j * s_i.
  for (int i = 0; i < right_->dim() && errs.size() < 8; ++i)
    for (int j = 0; j < right_->dim() && errs.size() < 8; ++j)
      if (right_actions_[i].mul(right_actions_[j]) !=
          combo(right_actions_, right_->product_of_basis(j, i)))
        errs.push_back(name_ + ": right action incompatible with table");
  for (int i = 0; i < left_->dim() && errs.size() < 8; ++i)
    for (int j = 0; j < right_->dim() && errs.size() < 8; ++j)
      if (left_actions_[i].mul(right_actions_[j]) != right_actions_[j].mul(left_actions_[i]))
        errs.push_back(name_ + ": left and right actions do not commute");
  return errs;
}

BimodulePtr regular_bimodule(const AlgebraPtr& a) {
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < a->dim(); ++i) {
    left.push_back(a->left_regular(i));
    right.push_back(a->right_regular(i));
  }
  return std::make_shared<Bimodule>(a, a, a->dim(), std::move(left), std::move(right), a->name());
}

BimodulePtr free_bimodule(const AlgebraPtr& a, int rank) {
  FpMatrix idr = FpMatrix::identity(a->p(), rank);
  std::vector<FpMatrix> left, right;
  for (int i = 0; i < a->dim(); ++i) {
    left.push_back(idr.kron(a->left_regular(i)));
    right.push_back(idr.kron(a->right_regular(i)));
  }
  return std::make_shared<Bimodule>(a, a, rank * a->dim(), std::move(left), std::move(right),
                                    a->name() + "^" + std::to_string(rank));
}

TensorApplication TensorFunctor::apply_object(const ModulePtr& y) const {
  const AlgebraPtr& s_alg = m_->right_algebra();
  const AlgebraPtr& r_alg = m_->left_algebra();
  if (y->algebra()->fingerprint() != s_alg->fingerprint())
    throw std::invalid_argument("TensorFunctor: module is not over the right-hand algebra");
  int p = m_->p();
  int e = m_->dim(), n = y->dim();
  int ambient = e * n;
  // Balancing relations (m_a s_t) x y_b - m_a x (s_t y_b) on index a*n+b.
  std::vector<std::vector<int>> rows;
  rows.reserve(static_cast<size_t>(s_alg->dim()) * e * n);
  for (int t = 0; t < s_alg->dim(); ++t) {
    const FpMatrix& ms = m_->right_action(t);
    const FpMatrix& ys = y->action(t);
    for (int a = 0; a < e; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<int> v(ambient, 0);
        for (int c = 0; c < e; ++c)
          if (ms.at(c, a)) v[c * n + b] += ms.at(c, a);
        for (int d = 0; d < n; ++d)
          if (ys.at(d, b)) v[a * n + d] -= ys.at(d, b);
        rows.push_back(std::move(v));
      }
  }
  Subspace rel = ambient
                     ? Subspace::from_rows(FpMatrix::from_rows(p, rows, ambient))
                     : Subspace(p, 0);
  QuotientMap qm = quotient_map(ambient, rel, p);
  std::vector<FpMatrix> actions;
  actions.reserve(r_alg->dim());
  FpMatrix idn = FpMatrix::identity(p, n);
  for (int i = 0; i < r_alg->dim(); ++i)
    actions.push_back(qm.projection.mul(m_->left_action(i).kron(idn)).mul(qm.section));
  auto result = std::make_shared<Module>(
      r_alg, qm.quotient_dim, std::move(actions),
      "T(" + (y->name().empty() ? "?" : y->name()) + ")");
  return {result, qm.projection, qm.section};
}

Morphism TensorFunctor::apply_morphism(const Morphism& g) const {
  return apply_morphism(apply_object(g.source), apply_object(g.target), g);
}

Morphism TensorFunctor::apply_morphism(const TensorApplication& src, const TensorApplication& dst,
                                       const Morphism& g) const {
  int p = m_->p();
  FpMatrix ide = FpMatrix::identity(p, m_->dim());
  FpMatrix mid = ide.kron(g.mat);  // id_M tensor g on the plain tensor coordinates
  return {src.result, dst.result, dst.projection.mul(mid).mul(src.section)};
}

}  // namespace frobcat
