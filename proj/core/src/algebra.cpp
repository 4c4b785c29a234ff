#include "frobcat/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frobcat {

namespace {

std::vector<uint8_t> reduce_vec(const std::vector<int>& v, int p) {
  std::vector<uint8_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<uint8_t>(((v[i] % p) + p) % p);
  return out;
}

}  // namespace

Algebra::Algebra(int p, int dim, std::vector<std::vector<std::vector<int>>> table,
                 std::vector<int> unit, std::string name)
    : p_(p), dim_(dim), name_(std::move(name)) {
  if (!is_small_prime(p)) throw std::invalid_argument("Algebra: p must be a prime in [2,97]");
  if (dim <= 0 || dim > 200) throw std::invalid_argument("Algebra: dim out of range");
  if (static_cast<int>(table.size()) != dim || static_cast<int>(unit.size()) != dim)
    throw std::invalid_argument("Algebra: table/unit shape mismatch");
  table_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(table[i].size()) != dim)
      throw std::invalid_argument("Algebra: table row shape mismatch");
    table_[i].resize(dim);
    for (int j = 0; j < dim; ++j) {
      if (static_cast<int>(table[i][j].size()) != dim)
        throw std::invalid_argument("Algebra: table entry shape mismatch");
      table_[i][j] = reduce_vec(table[i][j], p);
    }
  }
  unit_ = reduce_vec(unit, p);
  left_reg_.reserve(dim);
  right_reg_.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    FpMatrix l(p, dim, dim), r(p, dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        l.set(k, j, table_[i][j][k]);
        r.set(k, j, table_[j][i][k]);
      }
    left_reg_.push_back(std::move(l));
    right_reg_.push_back(std::move(r));
  }
}

std::vector<uint8_t> Algebra::product_of_basis(int i, int j) const { return table_[i][j]; }

std::vector<uint8_t> Algebra::multiply(const std::vector<uint8_t>& a,
                                       const std::vector<uint8_t>& b) const {
  std::vector<int> acc(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < dim_; ++j) {
      if (!b[j]) continue;
      int c = a[i] * b[j] % p_;
      for (int k = 0; k < dim_; ++k) acc[k] = (acc[k] + c * table_[i][j][k]) % p_;
    }
  }
  return reduce_vec(acc, p_);
}

FpMatrix Algebra::left_mul_matrix(const std::vector<uint8_t>& a) const {
  FpMatrix m(p_, dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (a[i]) m = m.add(left_reg_[i].scale(a[i]));
  return m;
}

std::vector<std::string> Algebra::validate() const {
  std::vector<std::string> errs;
  for (int i = 0; i < dim_ && errs.size() < 8; ++i)
    for (int j = 0; j < dim_ && errs.size() < 8; ++j)
      for (int k = 0; k < dim_ && errs.size() < 8; ++k) {
        std::vector<uint8_t> lhs = right_reg_[k].mul_vec(table_[i][j]);  // (b_i b_j) b_k
        std::vector<uint8_t> rhs = left_reg_[i].mul_vec(table_[j][k]);   // b_i (b_j b_k)
        if (lhs != rhs) {
          std::ostringstream os;
          os << name_ << ": associativity fails at (" << i << "," << j << "," << k << ")";
          errs.push_back(os.str());
        }
      }
  FpMatrix lu = left_mul_matrix(unit_);
  if (lu != FpMatrix::identity(p_, dim_)) errs.push_back(name_ + ": unit is not a left unit");
  FpMatrix ru(p_, dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (unit_[i]) ru = ru.add(right_reg_[i].scale(unit_[i]));
  if (ru != FpMatrix::identity(p_, dim_)) errs.push_back(name_ + ": unit is not a right unit");

  if (radical_) {
    const Subspace& j = *radical_;
    if (j.ambient_dim() != dim_) {
      errs.push_back(name_ + ": radical ambient dimension mismatch");
    } else {
      for (int i = 0; i < dim_; ++i)
        for (int r = 0; r < j.dim(); ++r) {
          auto v = j.basis().row(r);
          if (!j.contains_vector(left_reg_[i].mul_vec(v)))
            errs.push_back(name_ + ": radical is not a left ideal");
          if (!j.contains_vector(right_reg_[i].mul_vec(v)))
            errs.push_back(name_ + ": radical is not a right ideal");
          if (errs.size() >= 8) break;
        }
      // Nilpotency: J^(t+1) spanned by products of J^t basis with J basis.
      Subspace power = j;
      bool nil = (power.dim() == 0);
      for (int t = 0; t < dim_ + 1 && !nil; ++t) {
        std::vector<std::vector<int>> rows;
        for (int a = 0; a < power.dim(); ++a)
          for (int b = 0; b < j.dim(); ++b) {
            auto prod = multiply(power.basis().row(a), j.basis().row(b));
            rows.emplace_back(prod.begin(), prod.end());
          }
        power = Subspace::from_rows(FpMatrix::from_rows(p_, rows, dim_));
        if (power.dim() == 0) nil = true;
      }
      if (!nil) errs.push_back(name_ + ": radical is not nilpotent");
    }
  }
  if (!idempotents_.empty()) {
    std::vector<uint8_t> sum(dim_, 0);
    for (size_t a = 0; a < idempotents_.size(); ++a) {
      const auto& e = idempotents_[a];
      if (multiply(e, e) != e) errs.push_back(name_ + ": idempotent is not idempotent");
      for (size_t b = 0; b < idempotents_.size(); ++b) {
        if (a == b) continue;
        auto prod = multiply(e, idempotents_[b]);
        if (std::any_of(prod.begin(), prod.end(), [](uint8_t x) { return x; }))
          errs.push_back(name_ + ": idempotents are not orthogonal");
      }
      for (int i = 0; i < dim_; ++i) sum[i] = static_cast<uint8_t>((sum[i] + e[i]) % p_);
    }
    if (sum != unit_) errs.push_back(name_ + ": idempotents do not sum to the unit");
  }
  return errs;
}

uint64_t Algebra::fingerprint() const {
  uint64_t h = fnv1a(name_);
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(p_);
  mix(dim_);
  for (const auto& row : table_)
    for (const auto& cell : row)
      for (uint8_t x : cell) mix(x);
  for (uint8_t x : unit_) mix(x);
  return h;
}

AlgebraPtr opposite_algebra(const AlgebraPtr& a) {
  int d = a->dim();
  std::vector<std::vector<std::vector<int>>> table(d,
      std::vector<std::vector<int>>(d, std::vector<int>(d, 0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto prod = a->product_of_basis(j, i);
      for (int k = 0; k < d; ++k) table[i][j][k] = prod[k];
    }
  std::vector<int> unit(a->unit().begin(), a->unit().end());
  auto op = std::make_shared<Algebra>(a->p(), d, std::move(table), std::move(unit),
                                      a->name() + "^op");
  // The radical and any orthogonal idempotents are the same subsets.
  if (a->radical()) op->set_radical(*a->radical());
  if (!a->idempotents().empty()) op->set_idempotents(a->idempotents());
  return op;
}

Module::Module(AlgebraPtr algebra, int dim, std::vector<FpMatrix> actions, std::string name)
    : algebra_(std::move(algebra)), dim_(dim), actions_(std::move(actions)), name_(std::move(name)) {
  if (dim_ < 0 || dim_ > 200) throw std::invalid_argument("Module: dim out of range");
  if (static_cast<int>(actions_.size()) != algebra_->dim())
    throw std::invalid_argument("Module: need one action matrix per algebra basis element");
  for (const auto& m : actions_)
    if (m.rows() != dim_ || m.cols() != dim_ || m.p() != algebra_->p())
      throw std::invalid_argument("Module: action matrix shape/field mismatch");
  uint64_t h = algebra_->fingerprint();
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(dim_));
  for (const auto& m : actions_) mix(m.fingerprint());
  fingerprint_ = h;
}

FpMatrix Module::action_of(const std::vector<uint8_t>& coords) const {
  FpMatrix m(p(), dim_, dim_);
  for (int i = 0; i < algebra_->dim(); ++i)
    if (coords[i]) m = m.add(actions_[i].scale(coords[i]));
  return m;
}

std::vector<std::string> Module::validate() const {
  std::vector<std::string> errs;
  if (action_of(algebra_->unit()) != FpMatrix::identity(p(), dim_))
    errs.push_back("module " + name_ + ": unit does not act as identity");
  int d = algebra_->dim();
  for (int i = 0; i < d && errs.size() < 8; ++i)
    for (int j = 0; j < d && errs.size() < 8; ++j) {
      FpMatrix lhs = actions_[i].mul(actions_[j]);
      FpMatrix rhs = action_of(algebra_->product_of_basis(i, j));
      if (lhs != rhs) {
        std::ostringstream os;
        os << "module " << name_ << ": action incompatible with table at (" << i << "," << j << ")";
        errs.push_back(os.str());
      }
    }
  return errs;
}

ModulePtr make_module(AlgebraPtr algebra, std::vector<FpMatrix> actions, std::string name) {
  int dim = actions.empty() ? 0 : actions[0].rows();
  return std::make_shared<Module>(std::move(algebra), dim, std::move(actions), std::move(name));
}

ModulePtr zero_module(const AlgebraPtr& algebra) {
  std::vector<FpMatrix> actions(algebra->dim(), FpMatrix(algebra->p(), 0, 0));
  return std::make_shared<Module>(algebra, 0, std::move(actions), "0");
}

ModulePtr regular_module(const AlgebraPtr& algebra) {
  std::vector<FpMatrix> actions;
  actions.reserve(algebra->dim());
  for (int i = 0; i < algebra->dim(); ++i) actions.push_back(algebra->left_regular(i));
  return std::make_shared<Module>(algebra, algebra->dim(), std::move(actions), algebra->name());
}

ModulePtr free_module(const AlgebraPtr& algebra, int rank) {
  if (rank == 0) return zero_module(algebra);
  int d = algebra->dim();
  std::vector<FpMatrix> actions;
  actions.reserve(d);
  FpMatrix idr = FpMatrix::identity(algebra->p(), rank);
  for (int i = 0; i < d; ++i) actions.push_back(idr.kron(algebra->left_regular(i)));
  return std::make_shared<Module>(algebra, rank * d, std::move(actions),
                                  algebra->name() + "^" + std::to_string(rank));
}

bool same_module(const ModulePtr& a, const ModulePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->fingerprint() != b->fingerprint()) return false;
  return a->dim() == b->dim() && a->actions() == b->actions();
}

std::vector<std::string> Morphism::validate() const {
  std::vector<std::string> errs;
  if (mat.rows() != target->dim() || mat.cols() != source->dim()) {
    errs.push_back("morphism: matrix shape mismatch");
    return errs;
  }
  int d = source->algebra()->dim();
  for (int i = 0; i < d; ++i)
    if (mat.mul(source->action(i)) != target->action(i).mul(mat)) {
      errs.push_back("morphism: does not commute with action of basis element " + std::to_string(i));
      if (errs.size() >= 4) break;
    }
  return errs;
}

Morphism identity_morphism(const ModulePtr& m) {
  return {m, m, FpMatrix::identity(m->p(), m->dim())};
}

Morphism zero_morphism(const ModulePtr& source, const ModulePtr& target) {
  return {source, target, FpMatrix(source->p(), target->dim(), source->dim())};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!same_module(g.source, f.target)) throw std::invalid_argument("compose: middle object mismatch");
  return {f.source, g.target, g.mat.mul(f.mat)};
}

Morphism mor_add(const Morphism& f, const Morphism& g) { return {f.source, f.target, f.mat.add(g.mat)}; }
Morphism mor_sub(const Morphism& f, const Morphism& g) { return {f.source, f.target, f.mat.sub(g.mat)}; }
Morphism mor_scale(const Morphism& f, int c) { return {f.source, f.target, f.mat.scale(c)}; }

bool is_mono(const Morphism& f) { return f.mat.rank() == f.source->dim(); }
bool is_epi(const Morphism& f) { return f.mat.rank() == f.target->dim(); }
bool is_iso(const Morphism& f) { return f.source->dim() == f.target->dim() && f.mat.rank() == f.source->dim(); }

std::vector<Morphism> hom_basis(const ModulePtr& m, const ModulePtr& n) {
  int md = m->dim(), nd = n->dim();
  int unknowns = md * nd;
  if (unknowns == 0) return {};
  int d = m->algebra()->dim();
  int p = m->p();
  // f rho_M(b_t) = rho_N(b_t) f, coefficient of f[a][b] in equation (t,i,j):
  //   delta_{a,i} rhoM_t[b][j] - rhoN_t[i][a] delta_{b,j}
  FpMatrix sys(p, d * unknowns, unknowns);
  int r = 0;
  for (int t = 0; t < d; ++t) {
    const FpMatrix& am = m->action(t);
    const FpMatrix& an = n->action(t);
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < md; ++j, ++r) {
        for (int b = 0; b < md; ++b) sys.set(r, i * md + b, am.at(b, j));
        for (int a = 0; a < nd; ++a) {
          int cur = sys.at(r, a * md + j);
          sys.set(r, a * md + j, cur - an.at(i, a));
        }
      }
  }
  Subspace ker = kernel_basis(sys);
  std::vector<Morphism> basis;
  basis.reserve(ker.dim());
  for (int i = 0; i < ker.dim(); ++i)
    basis.push_back({m, n, FpMatrix::reshape(p, nd, md, ker.basis().row(i))});
  return basis;
}

SubquotientData submodule(const ModulePtr& m, const Subspace& s) {
  if (s.ambient_dim() != m->dim()) throw std::invalid_argument("submodule: ambient mismatch");
  FpMatrix b = s.basis().transpose();  // columns span s
  int d = m->algebra()->dim();
  std::vector<FpMatrix> actions;
  actions.reserve(d);
  for (int i = 0; i < d; ++i) {
    auto x = solve_matrix(b, m->action(i).mul(b));
    if (!x) throw std::logic_error("submodule: subspace is not action-invariant");
    actions.push_back(std::move(*x));
  }
  auto sub = std::make_shared<Module>(m->algebra(), s.dim(), std::move(actions));
  return {sub, Morphism{sub, m, b}};
}

SubquotientData quotient_module(const ModulePtr& m, const Subspace& s) {
  if (s.ambient_dim() != m->dim()) throw std::invalid_argument("quotient_module: ambient mismatch");
  QuotientMap qm = quotient_map(m->dim(), s, m->p());
  int d = m->algebra()->dim();
  std::vector<FpMatrix> actions;
  actions.reserve(d);
  for (int i = 0; i < d; ++i) actions.push_back(qm.projection.mul(m->action(i)).mul(qm.section));
  auto quo = std::make_shared<Module>(m->algebra(), qm.quotient_dim, std::move(actions));
  return {quo, Morphism{m, quo, qm.projection}};
}

SubquotientData kernel(const Morphism& f) { return submodule(f.source, kernel_basis(f.mat)); }

SubquotientData cokernel(const Morphism& f) { return quotient_module(f.target, column_space(f.mat)); }

ImageData image(const Morphism& f) {
  SubquotientData sub = submodule(f.target, column_space(f.mat));
  auto proj = solve_matrix(sub.map.mat, f.mat);
  if (!proj) throw std::logic_error("image: factorization failed");
  return {sub.object, sub.map, Morphism{f.source, sub.object, *proj}};
}

SumData direct_sum(const std::vector<ModulePtr>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
  AlgebraPtr alg = parts[0]->algebra();
  int p = alg->p(), d = alg->dim();
  int total = 0;
  for (const auto& m : parts) total += m->dim();
  std::vector<FpMatrix> actions(d, FpMatrix(p, total, total));
  int off = 0;
  for (const auto& m : parts) {
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < m->dim(); ++a)
        for (int b = 0; b < m->dim(); ++b)
          if (m->action(i).at(a, b)) actions[i].set(off + a, off + b, m->action(i).at(a, b));
    off += m->dim();
  }
  auto sum = std::make_shared<Module>(alg, total, std::move(actions));
  SumData out{sum, {}, {}};
  off = 0;
  for (const auto& m : parts) {
    FpMatrix inj(p, total, m->dim()), proj(p, m->dim(), total);
    for (int a = 0; a < m->dim(); ++a) {
      inj.set(off + a, a, 1);
      proj.set(a, off + a, 1);
    }
    out.injections.push_back({m, sum, inj});
    out.projections.push_back({sum, m, proj});
    off += m->dim();
  }
  return out;
}

SplitData split_idempotent(const Morphism& e) {
  if (!same_module(e.source, e.target)) throw std::invalid_argument("split_idempotent: not an endomorphism");
  if (e.mat.mul(e.mat) != e.mat) throw std::invalid_argument("split_idempotent: not idempotent");
  ImageData im = image(e);
  SubquotientData ker = kernel(e);
  return {im.object, im.inclusion, im.projection, ker.object, ker.map};
}

IsoResult is_isomorphic(const ModulePtr& m, const ModulePtr& n, const SearchBudget& budget) {
  if (m->dim() != n->dim()) return {Tri::no, std::nullopt};
  if (m->dim() == 0) return {Tri::yes, zero_morphism(m, n)};
  std::vector<Morphism> hom = hom_basis(m, n);
  if (hom.empty()) return {Tri::no, std::nullopt};
  int p = m->p();
  int h = static_cast<int>(hom.size());
  // Does p^h fit in the budget?
  long double total = 1;
  bool exhaustive = true;
  for (int i = 0; i < h; ++i) {
    total *= p;
    if (total > static_cast<long double>(budget.max_candidates)) {
      exhaustive = false;
      break;
    }
  }
  auto candidate = [&](const std::vector<uint8_t>& coeff) -> std::optional<Morphism> {
    FpMatrix acc(p, n->dim(), m->dim());
    for (int i = 0; i < h; ++i)
      if (coeff[i]) acc = acc.add(hom[i].mat.scale(coeff[i]));
    Morphism f{m, n, acc};
    if (is_iso(f)) return f;
    return std::nullopt;
  };
  if (exhaustive) {
    std::vector<uint8_t> coeff(h, 0);
    while (true) {
      // odometer increment, little-endian
      int pos = 0;
      while (pos < h) {
        if (++coeff[pos] < p) break;
        coeff[pos] = 0;
        ++pos;
      }
      if (pos == h) break;  // wrapped: full scan done
      if (auto f = candidate(coeff)) return {Tri::yes, f};
    }
    return {Tri::no, std::nullopt};
  }
  uint64_t state = budget.seed ^ 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (uint64_t t = 0; t < budget.max_candidates; ++t) {
    std::vector<uint8_t> coeff(h);
    bool nonzero = false;
    for (int i = 0; i < h; ++i) {
      coeff[i] = static_cast<uint8_t>(next() % p);
      nonzero |= coeff[i] != 0;
    }
    if (!nonzero) continue;
    if (auto f = candidate(coeff)) return {Tri::yes, f};
  }
  return {Tri::undetermined, std::nullopt};
}

ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& opposite) {
  std::vector<FpMatrix> actions;
  actions.reserve(m->actions().size());
  for (const auto& a : m->actions()) actions.push_back(a.transpose());
  return std::make_shared<Module>(opposite, m->dim(), std::move(actions),
                                  m->name().empty() ? "" : "D(" + m->name() + ")");
}

Morphism dual_morphism(const Morphism& f, const AlgebraPtr& opposite) {
  return {dual_module(f.target, opposite), dual_module(f.source, opposite), f.mat.transpose()};
}

std::optional<std::vector<uint8_t>> coords_in_hom_basis(const std::vector<Morphism>& basis,
                                                        const Morphism& f) {
  if (basis.empty()) {
    if (f.mat.is_zero()) return std::vector<uint8_t>{};
    return std::nullopt;
  }
  int p = f.mat.p();
  int nm = f.mat.rows() * f.mat.cols();
  FpMatrix sys(p, nm, static_cast<int>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    auto flat = basis[c].mat.flatten();
    for (int r = 0; r < nm; ++r) sys.set(r, static_cast<int>(c), flat[r]);
  }
  return solve(sys, f.mat.flatten());
}

}  // namespace frobcat
