#include "frobcat/comma.hpp"

#include <stdexcept>

#include "frobcat/homology.hpp"

namespace frobcat {

CommaContextPtr make_comma_context(const BimodulePtr& m) {
  return std::make_shared<CommaContext>(std::make_shared<TensorFunctor>(m));
}

CommaObject::CommaObject(CommaContextPtr ctx, ModulePtr x, ModulePtr y, FpMatrix phi_mat,
                         std::string name)
    : ctx_(std::move(ctx)),
      x_(std::move(x)),
      y_(std::move(y)),
      ty_(ctx_->t->apply_object(y_)),
      phi_{ty_.result, x_, std::move(phi_mat)},
      name_(std::move(name)) {
  if (phi_.mat.rows() != x_->dim() || phi_.mat.cols() != ty_.result->dim())
    throw std::invalid_argument("CommaObject: structure map has shape " +
                                std::to_string(phi_.mat.rows()) + "x" +
                                std::to_string(phi_.mat.cols()) + ", expected " +
                                std::to_string(x_->dim()) + "x" + std::to_string(ty_.result->dim()));
  auto errs = phi_.validate();
  if (!errs.empty())
    throw std::invalid_argument("CommaObject: structure map is not a module morphism: " + errs.front());
  uint64_t h = fnv1a("comma");
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(x_->fingerprint());
  mix(y_->fingerprint());
  mix(phi_.mat.fingerprint());
  fingerprint_ = h;
}

std::vector<std::string> CommaObject::validate() const {
  std::vector<std::string> errs;
  auto ex = x_->validate();
  auto ey = y_->validate();
  errs.insert(errs.end(), ex.begin(), ex.end());
  errs.insert(errs.end(), ey.begin(), ey.end());
  auto ep = phi_.validate();
  errs.insert(errs.end(), ep.begin(), ep.end());
  return errs;
}

CommaObjPtr make_comma(const CommaContextPtr& ctx, const ModulePtr& x, const ModulePtr& y,
                       const FpMatrix& phi, std::string name) {
  return std::make_shared<CommaObject>(ctx, x, y, phi, std::move(name));
}

bool same_comma(const CommaObjPtr& a, const CommaObjPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->fingerprint() != b->fingerprint()) return false;
  return same_module(a->x(), b->x()) && same_module(a->y(), b->y()) &&
         a->phi().mat == b->phi().mat;
}

std::vector<std::string> CommaMorphism::validate() const {
  std::vector<std::string> errs;
  auto ea = a.validate();
  auto eb = b.validate();
  errs.insert(errs.end(), ea.begin(), ea.end());
  errs.insert(errs.end(), eb.begin(), eb.end());
  if (a.mat.rows() != target->x()->dim() || a.mat.cols() != source->x()->dim())
    errs.push_back("comma morphism: X-component shape mismatch");
  if (b.mat.rows() != target->y()->dim() || b.mat.cols() != source->y()->dim())
    errs.push_back("comma morphism: Y-component shape mismatch");
  if (errs.empty()) {
    Morphism tb = source->ctx()->t->apply_morphism(source->ty(), target->ty(), b);
    if (a.mat.mul(source->phi().mat) != target->phi().mat.mul(tb.mat))
      errs.push_back("comma morphism: square a . phi = phi' . T(b) does not commute");
  }
  return errs;
}

std::string CommaCat::describe(const Obj& o) const {
  if (!o->name().empty()) return o->name();
  return "(" + std::to_string(o->x()->dim()) + "," + std::to_string(o->y()->dim()) + ")-object";
}

CommaCat::Obj CommaCat::zero() const {
  return make_comma(ctx, ctx->cat_a.zero(), ctx->cat_b.zero(), FpMatrix(p(), 0, 0));
}

CommaCat::Mor CommaCat::identity(const Obj& o) const {
  return {o, o, identity_morphism(o->x()), identity_morphism(o->y())};
}

CommaCat::Mor CommaCat::zero_mor(const Obj& s, const Obj& t) const {
  return {s, t, zero_morphism(s->x(), t->x()), zero_morphism(s->y(), t->y())};
}

CommaCat::Mor CommaCat::compose(const Mor& g, const Mor& f) const {
  if (!same_comma(g.source, f.target)) throw std::invalid_argument("comma compose: middle object mismatch");
  return {f.source, g.target, frobcat::compose(g.a, f.a), frobcat::compose(g.b, f.b)};
}

CommaCat::Mor CommaCat::add(const Mor& f, const Mor& g) const {
  return {f.source, f.target, mor_add(f.a, g.a), mor_add(f.b, g.b)};
}

CommaCat::Mor CommaCat::sub(const Mor& f, const Mor& g) const {
  return {f.source, f.target, mor_sub(f.a, g.a), mor_sub(f.b, g.b)};
}

CommaCat::Mor CommaCat::scale(const Mor& f, int c) const {
  return {f.source, f.target, mor_scale(f.a, c), mor_scale(f.b, c)};
}

std::vector<CommaCat::Mor> CommaCat::hom(const Obj& s, const Obj& t) const {
  auto ha = hom_basis(s->x(), t->x());
  auto hb = hom_basis(s->y(), t->y());
  // Coefficients (u, v) with sum u_i (h_i . phi) - sum v_j (phi' . T(g_j)) = 0.
  int ambient = t->x()->dim() * s->ty().result->dim();
  FpMatrix sys(p(), ambient, static_cast<int>(ha.size() + hb.size()));
  for (size_t i = 0; i < ha.size(); ++i) {
    auto flat = ha[i].mat.mul(s->phi().mat).flatten();
    for (int r = 0; r < ambient; ++r) sys.set(r, static_cast<int>(i), flat[static_cast<size_t>(r)]);
  }
  for (size_t j = 0; j < hb.size(); ++j) {
    Morphism tg = ctx->t->apply_morphism(s->ty(), t->ty(), hb[j]);
    auto flat = t->phi().mat.mul(tg.mat).neg().flatten();
    for (int r = 0; r < ambient; ++r)
      sys.set(r, static_cast<int>(ha.size() + j), flat[static_cast<size_t>(r)]);
  }
  Subspace sols = kernel_basis(sys);
  std::vector<Mor> out;
  for (int r = 0; r < sols.dim(); ++r) {
    auto coeff = sols.basis().row(r);
    Morphism a = zero_morphism(s->x(), t->x());
    Morphism b = zero_morphism(s->y(), t->y());
    for (size_t i = 0; i < ha.size(); ++i)
      if (coeff[i]) a = mor_add(a, mor_scale(ha[i], coeff[i]));
    for (size_t j = 0; j < hb.size(); ++j)
      if (coeff[ha.size() + j]) b = mor_add(b, mor_scale(hb[j], coeff[ha.size() + j]));
    out.push_back({s, t, a, b});
  }
  return out;
}

std::vector<uint8_t> CommaCat::coords(const Mor& f) const {
  auto va = f.a.mat.flatten();
  auto vb = f.b.mat.flatten();
  va.insert(va.end(), vb.begin(), vb.end());
  return va;
}

CommaCat::Mor CommaCat::from_coords(const Obj& s, const Obj& t, const std::vector<uint8_t>& v) const {
  int na = t->x()->dim() * s->x()->dim();
  std::vector<uint8_t> va(v.begin(), v.begin() + na);
  std::vector<uint8_t> vb(v.begin() + na, v.end());
  return {s, t, {s->x(), t->x(), FpMatrix::reshape(p(), t->x()->dim(), s->x()->dim(), va)},
          {s->y(), t->y(), FpMatrix::reshape(p(), t->y()->dim(), s->y()->dim(), vb)}};
}

SubPair<CommaCat::Obj, CommaCat::Mor> CommaCat::kernel(const Mor& f) const {
  auto ka = frobcat::kernel(f.a);
  auto kb = frobcat::kernel(f.b);
  TensorApplication tyk = ctx->t->apply_object(kb.object);
  Morphism tincl = ctx->t->apply_morphism(tyk, f.source->ty(), kb.map);
  auto phik = solve_matrix(ka.map.mat, f.source->phi().mat.mul(tincl.mat));
  if (!phik) throw std::logic_error("comma kernel: structure map does not restrict");
  Obj k = make_comma(ctx, ka.object, kb.object, *phik);
  return {k, {k, f.source, ka.map, kb.map}};
}

SubPair<CommaCat::Obj, CommaCat::Mor> CommaCat::cokernel(const Mor& f) const {
  auto ca = frobcat::cokernel(f.a);
  auto cb = frobcat::cokernel(f.b);
  TensorApplication tyc = ctx->t->apply_object(cb.object);
  Morphism tproj = ctx->t->apply_morphism(f.target->ty(), tyc, cb.map);
  auto phic = solve_left(tproj.mat, ca.map.mat.mul(f.target->phi().mat));
  if (!phic) throw std::logic_error("comma cokernel: structure map does not descend");
  Obj c = make_comma(ctx, ca.object, cb.object, *phic);
  return {c, {f.target, c, ca.map, cb.map}};
}

SumPack<CommaCat::Obj, CommaCat::Mor> CommaCat::sum(const std::vector<Obj>& parts) const {
  if (parts.empty()) return {zero(), {}, {}};
  std::vector<ModulePtr> xs, ys;
  for (const auto& o : parts) {
    xs.push_back(o->x());
    ys.push_back(o->y());
  }
  auto sx = direct_sum(xs);
  auto sy = direct_sum(ys);
  TensorApplication tysum = ctx->t->apply_object(sy.object);
  FpMatrix phi(p(), sx.object->dim(), tysum.result->dim());
  for (size_t i = 0; i < parts.size(); ++i) {
    Morphism tproj = ctx->t->apply_morphism(tysum, parts[i]->ty(), sy.projections[i]);
    phi = phi.add(sx.injections[i].mat.mul(parts[i]->phi().mat).mul(tproj.mat));
  }
  Obj total = make_comma(ctx, sx.object, sy.object, phi);
  SumPack<Obj, Mor> out{total, {}, {}};
  for (size_t i = 0; i < parts.size(); ++i) {
    out.injections.push_back({parts[i], total, sx.injections[i], sy.injections[i]});
    out.projections.push_back({total, parts[i], sx.projections[i], sy.projections[i]});
  }
  return out;
}

CoverPair<CommaCat::Obj, CommaCat::Mor> CommaCat::free_cover_impl(const Obj& o, bool plain) const {
  if (o->dim() == 0) {
    Obj z = zero();
    return {z, zero_mor(z, o)};
  }
  auto covb = plain ? ctx->cat_b.plain_free_cover(o->y()) : ctx->cat_b.free_cover(o->y());
  Obj tbq = comma_t_b(ctx, covb.object);
  Morphism tq = ctx->t->apply_morphism(tbq->ty(), o->ty(), covb.epi);
  Mor onto_image{tbq, o, {tbq->x(), o->x(), o->phi().mat.mul(tq.mat)}, covb.epi};

  auto qleg = comma_q(o);
  auto covc = plain ? ctx->cat_a.plain_free_cover(qleg.object) : ctx->cat_a.free_cover(qleg.object);
  auto lift = solve_precompose(ctx->cat_a, covc.object, o->x(), qleg.proj, covc.epi);
  if (!lift) throw std::logic_error("comma free_cover: projective lift through the cokernel failed");
  Obj zap = comma_z_a(ctx, covc.object);
  Mor onto_coker{zap, o, *lift, zero_morphism(zap->y(), o->y())};

  auto s = sum({tbq, zap});
  Mor epi = add(compose(onto_image, s.projections[0]), compose(onto_coker, s.projections[1]));
  if (!is_epi(epi)) throw std::logic_error("comma free_cover: cover is not epi");
  return {s.object, epi};
}

/* ------------------------------------------------------------------ *
 *  Functors.
 * ------------------------------------------------------------------ */

CommaObjPtr comma_t_b(const CommaContextPtr& ctx, const ModulePtr& y) {
  TensorApplication app = ctx->t->apply_object(y);
  return make_comma(ctx, app.result, y, FpMatrix::identity(ctx->cat_a.p(), app.result->dim()),
                    y->name().empty() ? "" : "T_B(" + y->name() + ")");
}

CommaMorphism comma_t_b_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& g) {
  Morphism tg = src->ctx()->t->apply_morphism(src->ty(), dst->ty(), g);
  return {src, dst, {src->x(), dst->x(), tg.mat}, g};
}

CommaObjPtr comma_z_a(const CommaContextPtr& ctx, const ModulePtr& x) {
  return make_comma(ctx, x, ctx->cat_b.zero(), FpMatrix(ctx->cat_a.p(), x->dim(), 0),
                    x->name().empty() ? "" : "Z_A(" + x->name() + ")");
}

CommaMorphism comma_z_a_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& a) {
  return {src, dst, a, zero_morphism(src->y(), dst->y())};
}

CommaObjPtr comma_z_b(const CommaContextPtr& ctx, const ModulePtr& y) {
  TensorApplication app = ctx->t->apply_object(y);
  return make_comma(ctx, ctx->cat_a.zero(), y, FpMatrix(ctx->cat_a.p(), 0, app.result->dim()),
                    y->name().empty() ? "" : "Z_B(" + y->name() + ")");
}

CommaMorphism comma_z_b_mor(const CommaObjPtr& src, const CommaObjPtr& dst, const Morphism& g) {
  return {src, dst, zero_morphism(src->x(), dst->x()), g};
}

CokerLeg comma_q(const CommaObjPtr& o) {
  auto ck = cokernel(o->phi());
  return {ck.object, ck.map};
}

Morphism comma_q_mor(const CokerLeg& qs, const CokerLeg& qt, const CommaMorphism& f) {
  auto mat = solve_left(qs.proj.mat, qt.proj.mat.mul(f.a.mat));
  if (!mat) throw std::logic_error("comma_q_mor: morphism does not descend to cokernels");
  return {qs.object, qt.object, *mat};
}

/* ------------------------------------------------------------------ *
 *  Triangular matrix algebra equivalence.
 * ------------------------------------------------------------------ */

AlgebraPtr triangular_matrix_algebra(const BimodulePtr& m) {
  AlgebraPtr r = m->left_algebra();
  AlgebraPtr s = m->right_algebra();
  const int p = r->p();
  const int dr = r->dim(), dm = m->dim(), ds = s->dim();
  const int d = dr + dm + ds;
  std::vector<std::vector<std::vector<int>>> table(
      static_cast<size_t>(d),
      std::vector<std::vector<int>>(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0)));

  for (int i = 0; i < dr; ++i)
    for (int j = 0; j < dr; ++j) {
      auto prod = r->product_of_basis(i, j);
      for (int k = 0; k < dr; ++k) table[i][j][k] = prod[static_cast<size_t>(k)];
    }
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j) {
      auto prod = s->product_of_basis(i, j);
      for (int k = 0; k < ds; ++k) table[dr + dm + i][dr + dm + j][dr + dm + k] = prod[static_cast<size_t>(k)];
    }
  for (int i = 0; i < dr; ++i)
    for (int a = 0; a < dm; ++a)
      for (int c = 0; c < dm; ++c) table[i][dr + a][dr + c] = m->left_action(i).at(c, a);
  for (int a = 0; a < dm; ++a)
    for (int j = 0; j < ds; ++j)
      for (int c = 0; c < dm; ++c) table[dr + a][dr + dm + j][dr + c] = m->right_action(j).at(c, a);

  std::vector<int> unit(static_cast<size_t>(d), 0);
  for (int i = 0; i < dr; ++i) unit[static_cast<size_t>(i)] = r->unit()[static_cast<size_t>(i)];
  for (int j = 0; j < ds; ++j) unit[static_cast<size_t>(dr + dm + j)] = s->unit()[static_cast<size_t>(j)];

  auto lam = std::make_shared<Algebra>(p, d, std::move(table), std::move(unit),
                                       "tri(" + r->name() + "|" + m->name() + "|" + s->name() + ")");

  if (r->radical() && s->radical()) {
    FpMatrix rows(p, r->radical()->dim() + dm + s->radical()->dim(), d);
    int row = 0;
    for (int i = 0; i < r->radical()->dim(); ++i, ++row)
      for (int c = 0; c < dr; ++c) rows.set(row, c, r->radical()->basis().at(i, c));
    for (int a = 0; a < dm; ++a, ++row) rows.set(row, dr + a, 1);
    for (int j = 0; j < s->radical()->dim(); ++j, ++row)
      for (int c = 0; c < ds; ++c) rows.set(row, dr + dm + c, s->radical()->basis().at(j, c));
    lam->set_radical(Subspace::from_rows(rows));
  }

  auto embed = [&](const std::vector<uint8_t>& v, int offset, int len) {
    std::vector<uint8_t> out(static_cast<size_t>(d), 0);
    for (int i = 0; i < len; ++i) out[static_cast<size_t>(offset + i)] = v[static_cast<size_t>(i)];
    return out;
  };
  std::vector<std::vector<uint8_t>> es;
  if (!r->idempotents().empty())
    for (const auto& e : r->idempotents()) es.push_back(embed(e, 0, dr));
  else
    es.push_back(embed(r->unit(), 0, dr));
  if (!s->idempotents().empty())
    for (const auto& e : s->idempotents()) es.push_back(embed(e, dr + dm, ds));
  else
    es.push_back(embed(s->unit(), dr + dm, ds));
  lam->set_idempotents(std::move(es));
  return lam;
}

ModulePtr comma_to_triangular(const AlgebraPtr& lambda, const CommaObjPtr& o) {
  const int p = lambda->p();
  AlgebraPtr r = o->ctx()->t->target_algebra();
  AlgebraPtr s = o->ctx()->t->source_algebra();
  const int dr = r->dim(), ds = s->dim();
  const int dm = o->ctx()->t->bimodule()->dim();
  if (lambda->dim() != dr + dm + ds)
    throw std::invalid_argument("comma_to_triangular: algebra does not match the bimodule corners");
  const int dx = o->x()->dim(), dy = o->y()->dim();
  const int n = dx + dy;
  FpMatrix phip = o->phi().mat.mul(o->ty().projection);  // M (x)_k Y -> X

  std::vector<FpMatrix> actions;
  for (int i = 0; i < dr; ++i) {
    FpMatrix act(p, n, n);
    for (int a = 0; a < dx; ++a)
      for (int b = 0; b < dx; ++b) act.set(a, b, o->x()->action(i).at(a, b));
    actions.push_back(act);
  }
  for (int a = 0; a < dm; ++a) {
    FpMatrix act(p, n, n);
    for (int row = 0; row < dx; ++row)
      for (int b = 0; b < dy; ++b) act.set(row, dx + b, phip.at(row, a * dy + b));
    actions.push_back(act);
  }
  for (int j = 0; j < ds; ++j) {
    FpMatrix act(p, n, n);
    for (int a = 0; a < dy; ++a)
      for (int b = 0; b < dy; ++b) act.set(dx + a, dx + b, o->y()->action(j).at(a, b));
    actions.push_back(act);
  }
  return make_module(lambda, std::move(actions), o->name());
}

CommaObjPtr triangular_to_comma(const CommaContextPtr& ctx, const AlgebraPtr& lambda,
                                const ModulePtr& z) {
  const int p = lambda->p();
  AlgebraPtr r = ctx->t->target_algebra();
  AlgebraPtr s = ctx->t->source_algebra();
  const int dr = r->dim(), ds = s->dim();
  const int dm = ctx->t->bimodule()->dim();
  if (lambda->dim() != dr + dm + ds || z->algebra()->fingerprint() != lambda->fingerprint())
    throw std::invalid_argument("triangular_to_comma: module is not over the expected algebra");

  auto embed = [&](const std::vector<uint8_t>& v, int offset, int len) {
    std::vector<uint8_t> out(static_cast<size_t>(lambda->dim()), 0);
    for (int i = 0; i < len; ++i) out[static_cast<size_t>(offset + i)] = v[static_cast<size_t>(i)];
    return out;
  };

  FpMatrix er_act = z->action_of(embed(r->unit(), 0, dr));
  FpMatrix es_act = z->action_of(embed(s->unit(), dr + dm, ds));
  FpMatrix bx = column_space(er_act).basis().transpose();  // z-coords of an X-basis
  FpMatrix by = column_space(es_act).basis().transpose();
  if (bx.cols() + by.cols() != z->dim())
    throw std::invalid_argument("triangular_to_comma: corner idempotents do not split the module");

  std::vector<FpMatrix> x_actions, y_actions;
  for (int i = 0; i < dr; ++i) {
    std::vector<uint8_t> unit(static_cast<size_t>(dr), 0);
    unit[static_cast<size_t>(i)] = 1;
    auto sol = solve_matrix(bx, z->action_of(embed(unit, 0, dr)).mul(bx));
    if (!sol) throw std::invalid_argument("triangular_to_comma: X-leg is not R-invariant");
    x_actions.push_back(*sol);
  }
  for (int j = 0; j < ds; ++j) {
    std::vector<uint8_t> unit(static_cast<size_t>(ds), 0);
    unit[static_cast<size_t>(j)] = 1;
    auto sol = solve_matrix(by, z->action_of(embed(unit, dr + dm, ds)).mul(by));
    if (!sol) throw std::invalid_argument("triangular_to_comma: Y-leg is not S-invariant");
    y_actions.push_back(*sol);
  }
  ModulePtr x = make_module(r, std::move(x_actions));
  ModulePtr y = make_module(s, std::move(y_actions));

  // Structure map on generators m_a (x) y_b, factored through the X-leg.
  const int dy = y->dim();
  FpMatrix g(p, z->dim(), dm * dy);
  for (int a = 0; a < dm; ++a) {
    std::vector<uint8_t> unit(static_cast<size_t>(dm), 0);
    unit[static_cast<size_t>(a)] = 1;
    FpMatrix cols = z->action_of(embed(unit, dr, dm)).mul(by);
    for (int row = 0; row < z->dim(); ++row)
      for (int b = 0; b < dy; ++b) g.set(row, a * dy + b, cols.at(row, b));
  }
  auto gx = solve_matrix(bx, g);
  if (!gx) throw std::invalid_argument("triangular_to_comma: M-action does not land in the X-leg");
  TensorApplication app = ctx->t->apply_object(y);
  FpMatrix phi = gx->mul(app.section);
  if (phi.mul(app.projection) != *gx)
    throw std::invalid_argument("triangular_to_comma: M-action is not balanced over S");
  return make_comma(ctx, x, y, phi, z->name());
}

}  // namespace frobcat
