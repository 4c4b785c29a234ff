#include "frobcat/homology.hpp"

#include <numeric>
#include <stdexcept>

namespace frobcat {

namespace {

struct Generator {
  int idem = -1;  // index into algebra idempotents, -1 = full algebra copy
  std::vector<uint8_t> vec;
};

FpMatrix right_mul_matrix(const Algebra& a, const std::vector<uint8_t>& coords) {
  FpMatrix m(a.p(), a.dim(), a.dim());
  for (int k = 0; k < a.dim(); ++k)
    if (coords[static_cast<size_t>(k)]) m = m.add(a.right_regular(k).scale(coords[static_cast<size_t>(k)]));
  return m;
}

bool all_zero(const std::vector<int>& v) {
  for (int x : v)
    if (x != 0) return false;
  return true;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

CoverPair<ModuleCat::Obj, ModuleCat::Mor> ModuleCat::free_cover_impl(const Obj& x, bool use_radical) const {
  const int pp = p();
  if (x->dim() == 0) {
    auto z = zero_module(algebra);
    return {z, zero_morphism(z, x)};
  }

  std::vector<Generator> gens;
  if (use_radical && algebra->radical()) {
    // Lift a basis of X / JX, split along idempotents when available.
    const Subspace& rad = *algebra->radical();
    Subspace jx(pp, x->dim());
    for (int r = 0; r < rad.dim(); ++r) jx = jx.sum(column_space(x->action_of(rad.basis().row(r))));
    QuotientMap qm = quotient_map(x->dim(), jx, pp);
    if (qm.quotient_dim > 0) {
      const auto& es = algebra->idempotents();
      if (!es.empty()) {
        for (size_t ei = 0; ei < es.size(); ++ei) {
          FpMatrix act = x->action_of(es[ei]);
          FpMatrix ebar = qm.projection.mul(act).mul(qm.section);
          Subspace im = column_space(ebar);
          for (int r = 0; r < im.dim(); ++r) {
            auto lift = act.mul_vec(qm.section.mul_vec(im.basis().row(r)));
            gens.push_back({static_cast<int>(ei), lift});
          }
        }
      } else {
        for (int k = 0; k < qm.quotient_dim; ++k) {
          std::vector<uint8_t> unit(static_cast<size_t>(qm.quotient_dim), 0);
          unit[static_cast<size_t>(k)] = 1;
          gens.push_back({-1, qm.section.mul_vec(unit)});
        }
      }
    }
  }
  if (gens.empty()) {
    for (int b = 0; b < x->dim(); ++b) {
      std::vector<uint8_t> v(static_cast<size_t>(x->dim()), 0);
      v[static_cast<size_t>(b)] = 1;
      gens.push_back({-1, v});
    }
  }

  std::vector<ModulePtr> parts;
  std::vector<FpMatrix> part_maps;  // part -> X, via a |-> a . vec
  ModulePtr reg = regular_module(algebra);
  for (const auto& g : gens) {
    if (g.idem < 0) {
      parts.push_back(reg);
      FpMatrix m(pp, x->dim(), algebra->dim());
      for (int j = 0; j < algebra->dim(); ++j) {
        auto col = x->action(j).mul_vec(g.vec);
        for (int i = 0; i < x->dim(); ++i) m.set(i, j, col[static_cast<size_t>(i)]);
      }
      part_maps.push_back(m);
    } else {
      auto sub = submodule(reg, column_space(right_mul_matrix(*algebra, algebra->idempotents()[static_cast<size_t>(g.idem)])));
      parts.push_back(sub.object);
      FpMatrix m(pp, x->dim(), sub.object->dim());
      for (int c = 0; c < sub.object->dim(); ++c) {
        auto col = x->action_of(sub.map.mat.col(c)).mul_vec(g.vec);
        for (int i = 0; i < x->dim(); ++i) m.set(i, c, col[static_cast<size_t>(i)]);
      }
      part_maps.push_back(m);
    }
  }

  auto total = direct_sum(parts);
  FpMatrix epi(pp, x->dim(), total.object->dim());
  int offset = 0;
  for (const auto& m : part_maps) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) epi.set(i, offset + j, m.at(i, j));
    offset += m.cols();
  }
  Morphism e{total.object, x, epi};
  if (!frobcat::is_epi(e)) throw std::logic_error("free_cover: generators do not generate");
  return {total.object, e};
}

bool is_projective_module(const ModuleCat& cat, const ModulePtr& x) {
  if (x->dim() == 0) return true;
  auto cov = cat.free_cover(x);
  return solve_precompose(cat, x, cov.object, cov.epi, cat.identity(x)).has_value();
}

bool is_injective_module(const ModuleCat& cat, const ModulePtr& x) {
  if (x->dim() == 0) return true;
  auto op = opposite_algebra(cat.algebra);
  return is_projective_module(ModuleCat(op), dual_module(x, op));
}

std::optional<int> pd_bound(const ModuleCat& cat, const ModulePtr& x, int n) {
  ModulePtr cur = x;
  for (int i = 0; i <= n; ++i) {
    if (is_projective_module(cat, cur)) return i;
    cur = cat.kernel(cat.free_cover(cur).epi).object;
  }
  return std::nullopt;
}

std::optional<int> id_bound(const ModuleCat& cat, const ModulePtr& x, int n) {
  auto op = opposite_algebra(cat.algebra);
  return pd_bound(ModuleCat(op), dual_module(x, op), n);
}

std::vector<ModulePtr> derived_tensor(const TensorFunctor& t, const ModulePtr& y, int n) {
  if (n < 0) return {};
  ModuleCat cat_s(t.source_algebra());
  ModuleCat cat_r(t.target_algebra());
  auto res = resolve(cat_s, y, n + 1);
  std::vector<TensorApplication> apps;
  apps.reserve(res.terms.size());
  for (const auto& f : res.terms) apps.push_back(t.apply_object(f));
  std::vector<Morphism> td;
  for (size_t i = 0; i < res.differentials.size(); ++i)
    td.push_back(t.apply_morphism(apps[i + 1], apps[i], res.differentials[i]));

  std::vector<ModulePtr> out;
  for (int i = 0; i <= n; ++i) {
    if (i == 0) {
      out.push_back(cat_r.cokernel(td[0]).object);
      continue;
    }
    auto k = cat_r.kernel(td[static_cast<size_t>(i - 1)]);
    auto g = solve_precompose(cat_r, apps[static_cast<size_t>(i + 1)].result, k.object, k.map,
                              td[static_cast<size_t>(i)]);
    if (!g) throw std::logic_error("derived_tensor: image escapes kernel (not a complex?)");
    out.push_back(cat_r.cokernel(*g).object);
  }
  return out;
}

CompleteResolution complete_resolution(const ModuleCat& cat, const ModulePtr& x, int depth) {
  CompleteResolution out;
  auto res = resolve(cat, x, depth);
  auto op = opposite_algebra(cat.algebra);
  ModuleCat opcat(op);
  auto dres = resolve(opcat, dual_module(x, op), depth);

  for (int k = depth; k >= 0; --k) out.terms.push_back(res.terms[static_cast<size_t>(k)]);
  for (int k = depth; k >= 1; --k) out.maps.push_back(res.differentials[static_cast<size_t>(k - 1)]);
  out.splice_position = depth;

  std::vector<ModulePtr> duals;
  for (int j = 0; j <= depth; ++j) duals.push_back(dual_module(dres.terms[static_cast<size_t>(j)], cat.algebra));

  // Splice F_0 -> I_0 through x: coinclusion (transposed dual augmentation) after augmentation.
  out.terms.push_back(duals[0]);
  out.maps.push_back({res.terms[0], duals[0], dres.augmentation.mat.transpose().mul(res.augmentation.mat)});
  for (int j = 0; j < depth; ++j) {
    out.terms.push_back(duals[static_cast<size_t>(j + 1)]);
    out.maps.push_back({duals[static_cast<size_t>(j)], duals[static_cast<size_t>(j + 1)],
                        dres.differentials[static_cast<size_t>(j)].mat.transpose()});
  }
  return out;
}

std::vector<int> complex_exactness_defects(const std::vector<ModulePtr>& terms,
                                           const std::vector<Morphism>& maps) {
  std::vector<int> out;
  for (size_t k = 1; k < maps.size(); ++k) {
    int ker = terms[k]->dim() - maps[k].mat.rank();
    int im = maps[k - 1].mat.rank();
    out.push_back(ker - im);
  }
  return out;
}

namespace {

bool complex_property(const std::vector<Morphism>& maps) {
  for (size_t k = 1; k < maps.size(); ++k)
    if (!maps[k].mat.mul(maps[k - 1].mat).is_zero()) return false;
  return true;
}

/// Inner exactness defects of Hom(terms, n) for a chain maps[k]: terms[k] -> terms[k+1].
std::vector<int> hom_complex_defects(const ModuleCat& cat, const std::vector<ModulePtr>& terms,
                                     const std::vector<Morphism>& maps, const ModulePtr& n) {
  std::vector<std::vector<Morphism>> bases;
  for (const auto& t : terms) bases.push_back(cat.hom(t, n));
  std::vector<int> ranks(maps.size());
  for (size_t k = 0; k < maps.size(); ++k) {
    FpMatrix d(cat.p(), static_cast<int>(bases[k].size()), static_cast<int>(bases[k + 1].size()));
    for (size_t j = 0; j < bases[k + 1].size(); ++j) {
      auto cc = hom_coords(cat, bases[k], cat.compose(bases[k + 1][j], maps[k]));
      if (!cc) throw std::logic_error("hom_complex_defects: composite escapes Hom basis");
      for (size_t r = 0; r < cc->size(); ++r) d.set(static_cast<int>(r), static_cast<int>(j), (*cc)[r]);
    }
    ranks[k] = d.rank();
  }
  std::vector<int> out;
  for (size_t k = 1; k < maps.size(); ++k) {
    int ker = static_cast<int>(bases[k].size()) - ranks[k - 1];
    out.push_back(ker - ranks[k]);
  }
  return out;
}

}  // namespace

CompatReport check_compatible(const TensorFunctor& t, const std::vector<ModulePtr>& sample_b,
                              const std::vector<ModulePtr>& sample_a, int depth) {
  CompatReport rep;
  ModuleCat cat_s(t.source_algebra());
  ModuleCat cat_r(t.target_algebra());
  const bool s_selfinj = is_injective_module(cat_s, regular_module(cat_s.algebra));
  const bool r_selfinj = is_injective_module(cat_r, regular_module(cat_r.algebra));

  // (C1): T applied to exact complexes of projectives on the source side.
  int c1_samples = 0;
  bool c1_ok = true;
  if (!s_selfinj) {
    rep.entries.push_back({"acyclic complexes over the source algebra", true,
                           "source algebra is not selfinjective, so no complete resolutions are "
                           "available as samples; split-exact complexes are preserved by any "
                           "additive functor"});
  } else {
    for (const auto& y : sample_b) {
      if (y->dim() == 0) continue;
      auto cr = complete_resolution(cat_s, y, depth);
      bool terms_proj = true;
      for (const auto& term : cr.terms) terms_proj = terms_proj && is_projective_module(cat_s, term);
      auto in_defects = complex_exactness_defects(cr.terms, cr.maps);
      if (!terms_proj || !complex_property(cr.maps) || !all_zero(in_defects)) {
        rep.entries.push_back({"complete resolution of " + cat_s.describe(y), false,
                               "sample complex is not an exact complex of projectives: defects " +
                                   join_ints(in_defects)});
        c1_ok = false;
        ++c1_samples;
        continue;
      }
      std::vector<TensorApplication> apps;
      for (const auto& term : cr.terms) apps.push_back(t.apply_object(term));
      std::vector<ModulePtr> tterms;
      for (const auto& a : apps) tterms.push_back(a.result);
      std::vector<Morphism> tmaps;
      for (size_t k = 0; k < cr.maps.size(); ++k)
        tmaps.push_back(t.apply_morphism(apps[k], apps[k + 1], cr.maps[k]));
      auto out_defects = complex_exactness_defects(tterms, tmaps);
      bool pass = complex_property(tmaps) && all_zero(out_defects);
      rep.entries.push_back({"tensor of the complete resolution of " + cat_s.describe(y), pass,
                             "exactness defects after applying the tensor functor: " + join_ints(out_defects)});
      c1_ok = c1_ok && pass;
      ++c1_samples;
    }
  }
  rep.c1 = (s_selfinj && c1_samples > 0) ? (c1_ok ? Tri::yes : Tri::no) : Tri::undetermined;

  // (C2): Hom(complete resolutions over the target algebra, T(projective)).
  int c2_samples = 0;
  bool c2_ok = true;
  ModulePtr tq = t.apply_object(regular_module(cat_s.algebra)).result;
  if (!r_selfinj) {
    rep.entries.push_back({"acyclic complexes over the target algebra", true,
                           "target algebra is not selfinjective, so no complete resolutions are "
                           "available as samples for the Hom condition"});
  } else {
    for (const auto& x : sample_a) {
      if (x->dim() == 0) continue;
      auto cr = complete_resolution(cat_r, x, depth);
      auto defects = hom_complex_defects(cat_r, cr.terms, cr.maps, tq);
      bool pass = all_zero(defects);
      rep.entries.push_back({"Hom(complete resolution of " + cat_r.describe(x) + ", T(rank-1 free))",
                             pass, "exactness defects of the Hom complex: " + join_ints(defects)});
      c2_ok = c2_ok && pass;
      ++c2_samples;
    }
  }
  rep.c2 = (r_selfinj && c2_samples > 0) ? (c2_ok ? Tri::yes : Tri::no) : Tri::undetermined;
  return rep;
}

}  // namespace frobcat
