#include "frobcat/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace frobcat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

const json& req(const json& o, const std::string& key, const std::string& path) {
  if (!o.is_object() || !o.contains(key)) fail(path, "missing field '" + key + "'");
  return o.at(key);
}

int req_int(const json& o, const std::string& key, const std::string& path) {
  const json& v = req(o, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string req_str(const json& o, const std::string& key, const std::string& path) {
  const json& v = req(o, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

int opt_int(const json& o, const std::string& key, int fallback, const std::string& path) {
  if (!o.is_object() || !o.contains(key)) return fallback;
  if (!o.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
  return o.at(key).get<int>();
}

std::string opt_str(const json& o, const std::string& key, const std::string& fallback,
                    const std::string& path) {
  if (!o.is_object() || !o.contains(key)) return fallback;
  if (!o.at(key).is_string()) fail(path + "." + key, "expected a string");
  return o.at(key).get<std::string>();
}

std::vector<int> int_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) fail(path, "entry " + std::to_string(i) + " is not an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

std::vector<std::vector<int>> int_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(int_vector(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Matrix with an enforced shape; rows may be omitted entirely for 0 x c.
FpMatrix matrix_from_json(int p, const json& v, int rows, int cols, const std::string& path) {
  auto data = int_matrix(v, path);
  if ((int)data.size() != rows)
    fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(data.size()));
  FpMatrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if ((int)data[i].size() != cols)
      fail(path + "[" + std::to_string(i) + "]",
           "expected " + std::to_string(cols) + " columns, got " + std::to_string(data[i].size()));
    for (int j = 0; j < cols; ++j) {
      int c = data[i][j] % p;
      if (c < 0) c += p;
      m.set(i, j, c);
    }
  }
  return m;
}

std::vector<FpMatrix> actions_from_json(int p, const json& v, int count, int dim,
                                        const std::string& path) {
  if (!v.is_array() || (int)v.size() != count)
    fail(path, "expected " + std::to_string(count) + " action matrices");
  std::vector<FpMatrix> out;
  for (int i = 0; i < count; ++i)
    out.push_back(matrix_from_json(p, v[i], dim, dim, path + "[" + std::to_string(i) + "]"));
  return out;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/* ------------------------------------------------------------------ *
 *  Reference resolution.
 * ------------------------------------------------------------------ */

const AlgebraPtr& get_algebra(const Scenario& sc, const std::string& id, const std::string& path) {
  auto it = sc.algebras.find(id);
  if (it == sc.algebras.end()) fail(path, "unknown algebra '" + id + "'");
  return it->second;
}

const ModulePtr& get_module(const Scenario& sc, const std::string& id, const std::string& path) {
  auto it = sc.modules.find(id);
  if (it == sc.modules.end()) fail(path, "unknown module '" + id + "'");
  return it->second;
}

const CommaObjPtr& get_comma(const Scenario& sc, const std::string& id, const std::string& path) {
  auto it = sc.comma_objects.find(id);
  if (it == sc.comma_objects.end()) fail(path, "unknown comma object '" + id + "'");
  return it->second;
}

const WindowSpec& get_window_spec(const Scenario& sc, const std::string& id,
                                  const std::string& path) {
  auto it = sc.windows.find(id);
  if (it == sc.windows.end()) fail(path, "unknown window '" + id + "'");
  return it->second;
}

const PairSpec& get_pair_spec(const Scenario& sc, const std::string& id, const std::string& path) {
  auto it = sc.pairs.find(id);
  if (it == sc.pairs.end()) fail(path, "unknown pair '" + id + "'");
  return it->second;
}

void need_ctx(const Scenario& sc, const std::string& path) {
  if (!sc.ctx) fail(path, "scenario declares no bimodule, comma-level data unavailable");
}

/* ------------------------------------------------------------------ *
 *  Parsing.
 * ------------------------------------------------------------------ */

void parse_algebras(Scenario& sc, const json& doc) {
  if (!doc.contains("algebras")) return;
  const json& as = doc.at("algebras");
  if (!as.is_object()) fail(sc.source, "'algebras' must be an object");
  for (auto it = as.begin(); it != as.end(); ++it) {
    const std::string path = "algebras." + it.key();
    const json& a = it.value();
    int dim = req_int(a, "dim", path);
    if (dim < 0) fail(path, "negative dimension");
    const json& tj = req(a, "table", path);
    if (!tj.is_array() || (int)tj.size() != dim) fail(path + ".table", "expected dim rows");
    std::vector<std::vector<std::vector<int>>> table;
    for (int i = 0; i < dim; ++i) {
      const json& row = tj[i];
      if (!row.is_array() || (int)row.size() != dim)
        fail(path + ".table", "row " + std::to_string(i) + " must have dim entries");
      std::vector<std::vector<int>> trow;
      for (int j = 0; j < dim; ++j) {
        auto coords = int_vector(row[j], path + ".table[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "]");
        if ((int)coords.size() != dim)
          fail(path + ".table", "product coordinates must have length dim");
        trow.push_back(std::move(coords));
      }
      table.push_back(std::move(trow));
    }
    auto unit = int_vector(req(a, "unit", path), path + ".unit");
    if ((int)unit.size() != dim) fail(path + ".unit", "expected length dim");
    auto alg = std::make_shared<Algebra>(sc.p, dim, std::move(table), std::move(unit), it.key());
    if (a.contains("radical")) {
      auto rows = int_matrix(a.at("radical"), path + ".radical");
      std::vector<std::vector<int>> checked;
      for (auto& r : rows) {
        if ((int)r.size() != dim) fail(path + ".radical", "row length must be dim");
        checked.push_back(r);
      }
      alg->set_radical(Subspace::from_rows(FpMatrix::from_rows(sc.p, checked, dim)));
    }
    if (a.contains("idempotents")) {
      auto rows = int_matrix(a.at("idempotents"), path + ".idempotents");
      std::vector<std::vector<uint8_t>> es;
      for (auto& r : rows) {
        if ((int)r.size() != dim) fail(path + ".idempotents", "row length must be dim");
        std::vector<uint8_t> e;
        for (int c : r) e.push_back((uint8_t)(((c % sc.p) + sc.p) % sc.p));
        es.push_back(std::move(e));
      }
      alg->set_idempotents(std::move(es));
    }
    sc.algebras.emplace(it.key(), std::move(alg));
  }
}

void parse_modules(Scenario& sc, const json& doc) {
  if (!doc.contains("modules")) return;
  const json& ms = doc.at("modules");
  if (!ms.is_object()) fail(sc.source, "'modules' must be an object");
  // Sums may reference other module ids, so resolve in passes.
  std::vector<std::string> pending;
  for (auto it = ms.begin(); it != ms.end(); ++it) pending.push_back(it.key());
  while (!pending.empty()) {
    bool progress = false;
    std::vector<std::string> next;
    for (const auto& id : pending) {
      const std::string path = "modules." + id;
      const json& m = ms.at(id);
      const AlgebraPtr& alg = get_algebra(sc, req_str(m, "algebra", path), path + ".algebra");
      if (m.contains("sum")) {
        const json& parts = m.at("sum");
        if (!parts.is_array()) fail(path + ".sum", "expected an array of module ids");
        std::vector<ModulePtr> resolved;
        bool ready = true;
        for (const auto& pj : parts) {
          if (!pj.is_string()) fail(path + ".sum", "expected module ids");
          auto pit = sc.modules.find(pj.get<std::string>());
          if (pit == sc.modules.end()) {
            if (!ms.contains(pj.get<std::string>()))
              fail(path + ".sum", "unknown module '" + pj.get<std::string>() + "'");
            ready = false;
            break;
          }
          if (pit->second->algebra() != alg) fail(path + ".sum", "summand over a different algebra");
          resolved.push_back(pit->second);
        }
        if (!ready) {
          next.push_back(id);
          continue;
        }
        auto s = direct_sum(resolved);
        sc.modules.emplace(id, make_module(alg, s.object->actions(), id));
      } else if (m.contains("zero") && m.at("zero").get<bool>()) {
        sc.modules.emplace(id, make_module(alg, zero_module(alg)->actions(), id));
      } else if (m.contains("regular") && m.at("regular").get<bool>()) {
        sc.modules.emplace(id, make_module(alg, regular_module(alg)->actions(), id));
      } else {
        int dim = req_int(m, "dim", path);
        if (dim < 0) fail(path, "negative dimension");
        auto acts = actions_from_json(sc.p, req(m, "actions", path), alg->dim(), dim,
                                      path + ".actions");
        sc.modules.emplace(id, make_module(alg, std::move(acts), id));
      }
      progress = true;
    }
    if (!progress && !next.empty())
      fail("modules." + next.front(), "circular 'sum' reference");
    pending = std::move(next);
  }
}

void parse_bimodule(Scenario& sc, const json& doc) {
  if (!doc.contains("bimodule")) return;
  const json& b = doc.at("bimodule");
  const std::string path = "bimodule";
  if (b.contains("regular_of")) {
    sc.bimodule = regular_bimodule(get_algebra(sc, req_str(b, "regular_of", path), path));
  } else if (b.contains("free_of")) {
    int rank = opt_int(b, "rank", 1, path);
    if (rank < 0) fail(path, "negative rank");
    sc.bimodule = free_bimodule(get_algebra(sc, req_str(b, "free_of", path), path), rank);
  } else {
    const AlgebraPtr& left = get_algebra(sc, req_str(b, "left_algebra", path), path);
    const AlgebraPtr& right = get_algebra(sc, req_str(b, "right_algebra", path), path);
    int dim = req_int(b, "dim", path);
    if (dim < 0) fail(path, "negative dimension");
    auto la = actions_from_json(sc.p, req(b, "left_actions", path), left->dim(), dim,
                                path + ".left_actions");
    auto ra = actions_from_json(sc.p, req(b, "right_actions", path), right->dim(), dim,
                                path + ".right_actions");
    sc.bimodule = std::make_shared<Bimodule>(left, right, dim, std::move(la), std::move(ra),
                                             opt_str(b, "name", "M", path));
  }
  sc.ctx = make_comma_context(sc.bimodule);
}

void parse_comma_objects(Scenario& sc, const json& doc) {
  if (!doc.contains("comma_objects")) return;
  need_ctx(sc, "comma_objects");
  const json& cs = doc.at("comma_objects");
  if (!cs.is_object()) fail(sc.source, "'comma_objects' must be an object");
  for (auto it = cs.begin(); it != cs.end(); ++it) {
    const std::string path = "comma_objects." + it.key();
    const json& c = it.value();
    CommaObjPtr o;
    if (c.contains("zero") && c.at("zero").get<bool>()) {
      o = make_comma(sc.ctx, zero_module(sc.ctx->cat_a.algebra),
                     zero_module(sc.ctx->cat_b.algebra), FpMatrix(sc.p, 0, 0), it.key());
    } else if (c.contains("z_a")) {
      const ModulePtr& x = get_module(sc, req_str(c, "z_a", path), path + ".z_a");
      if (x->algebra() != sc.ctx->cat_a.algebra) fail(path, "z_a argument must live over the target algebra");
      o = comma_z_a(sc.ctx, x);
    } else if (c.contains("t_b")) {
      const ModulePtr& y = get_module(sc, req_str(c, "t_b", path), path + ".t_b");
      if (y->algebra() != sc.ctx->cat_b.algebra) fail(path, "t_b argument must live over the source algebra");
      o = comma_t_b(sc.ctx, y);
    } else {
      const ModulePtr& x = get_module(sc, req_str(c, "x", path), path + ".x");
      const ModulePtr& y = get_module(sc, req_str(c, "y", path), path + ".y");
      if (x->algebra() != sc.ctx->cat_a.algebra) fail(path, "x must live over the target algebra");
      if (y->algebra() != sc.ctx->cat_b.algebra) fail(path, "y must live over the source algebra");
      int ty_dim = sc.ctx->t->apply_object(y).result->dim();
      FpMatrix phi = matrix_from_json(sc.p, req(c, "phi", path), x->dim(), ty_dim, path + ".phi");
      o = make_comma(sc.ctx, x, y, phi, it.key());
    }
    sc.comma_objects.emplace(it.key(), std::move(o));
  }
}

void parse_windows(Scenario& sc, const json& doc) {
  if (!doc.contains("windows")) return;
  const json& ws = doc.at("windows");
  if (!ws.is_object()) fail(sc.source, "'windows' must be an object");
  for (auto it = ws.begin(); it != ws.end(); ++it) {
    const std::string path = "windows." + it.key();
    const json& w = it.value();
    WindowSpec spec;
    if (w.contains("comma")) {
      need_ctx(sc, path);
      spec.is_comma = true;
      const json& list = w.at("comma");
      if (!list.is_array()) fail(path + ".comma", "expected an array of comma object ids");
      for (const auto& cj : list) {
        if (!cj.is_string()) fail(path + ".comma", "expected comma object ids");
        get_comma(sc, cj.get<std::string>(), path + ".comma");
        spec.comma_ids.push_back(cj.get<std::string>());
      }
    } else {
      spec.algebra = req_str(w, "algebra", path);
      const AlgebraPtr& alg = get_algebra(sc, spec.algebra, path + ".algebra");
      if (w.contains("enumerate")) {
        spec.enumerate_max_dim = req_int(w.at("enumerate"), "max_dim", path + ".enumerate");
        if (spec.enumerate_max_dim < 0) fail(path + ".enumerate", "negative max_dim");
      } else {
        const json& list = req(w, "modules", path);
        if (!list.is_array()) fail(path + ".modules", "expected an array of module ids");
        for (const auto& mj : list) {
          if (!mj.is_string()) fail(path + ".modules", "expected module ids");
          const ModulePtr& m = get_module(sc, mj.get<std::string>(), path + ".modules");
          if (m->algebra() != alg) fail(path + ".modules", "'" + mj.get<std::string>() +
                                                               "' lives over a different algebra");
          spec.module_ids.push_back(mj.get<std::string>());
        }
      }
    }
    sc.windows.emplace(it.key(), std::move(spec));
  }
}

void parse_pairs(Scenario& sc, const json& doc) {
  if (!doc.contains("pairs")) return;
  const json& ps = doc.at("pairs");
  if (!ps.is_object()) fail(sc.source, "'pairs' must be an object");
  for (auto it = ps.begin(); it != ps.end(); ++it) {
    const std::string path = "pairs." + it.key();
    const json& p = it.value();
    PairSpec spec;
    if (p.contains("lift")) {
      need_ctx(sc, path);
      const json& l = p.at("lift");
      spec.kind = "lift";
      spec.pair_a = req_str(l, "pair_a", path + ".lift");
      spec.pair_b = req_str(l, "pair_b", path + ".lift");
      spec.window_b = req_str(l, "window_b", path + ".lift");
    } else if (p.contains("builtin")) {
      spec.kind = req_str(p, "builtin", path);
      if (spec.kind != "mod_inj" && spec.kind != "gp")
        fail(path + ".builtin", "expected 'mod_inj' or 'gp'");
      spec.algebra = req_str(p, "algebra", path);
      spec.bound = opt_int(p, "bound", 1, path);
    } else if (p.contains("explicit")) {
      const json& e = p.at("explicit");
      spec.kind = "explicit";
      spec.algebra = req_str(p, "algebra", path);
      for (const auto& xj : req(e, "x", path + ".explicit")) {
        if (!xj.is_string()) fail(path + ".explicit.x", "expected module ids");
        spec.x_ids.push_back(xj.get<std::string>());
      }
      for (const auto& wj : req(e, "w", path + ".explicit")) {
        if (!wj.is_string()) fail(path + ".explicit.w", "expected module ids");
        spec.w_ids.push_back(wj.get<std::string>());
      }
      spec.strong_hint = e.contains("strong") && e.at("strong").get<bool>();
    } else if (p.contains("cotorsion")) {
      const json& c = p.at("cotorsion");
      spec.kind = "cotorsion";
      spec.algebra = req_str(p, "algebra", path);
      spec.x_class = req_str(c, "x_class", path + ".cotorsion");
      spec.y_class = req_str(c, "y_class", path + ".cotorsion");
      spec.preenvelope = req_str(c, "preenvelope", path + ".cotorsion");
      spec.window = req_str(c, "window", path + ".cotorsion");
    } else {
      fail(path, "expected one of 'builtin', 'explicit', 'cotorsion', 'lift'");
    }
    if (!spec.algebra.empty()) get_algebra(sc, spec.algebra, path + ".algebra");
    sc.pairs.emplace(it.key(), std::move(spec));
  }
  // Second pass: lift components must be module-level pairs defined here.
  for (const auto& [id, spec] : sc.pairs) {
    if (spec.kind != "lift") continue;
    const std::string path = "pairs." + id + ".lift";
    for (const std::string& ref : {spec.pair_a, spec.pair_b}) {
      const PairSpec& base = get_pair_spec(sc, ref, path);
      if (base.kind == "lift") fail(path, "lift components must be module-level pairs");
    }
    const WindowSpec& wb = get_window_spec(sc, spec.window_b, path);
    if (wb.is_comma) fail(path, "window_b must be a module window");
  }
}

std::array<std::string, 2> str_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
    fail(path, "expected a pair of ids");
  return {v[0].get<std::string>(), v[1].get<std::string>()};
}

void parse_checks(Scenario& sc, const json& doc) {
  if (!doc.contains("checks")) return;
  const json& cs = doc.at("checks");
  if (!cs.is_object()) fail(sc.source, "'checks' must be an object");

  if (cs.contains("ext")) {
    const json& e = cs.at("ext");
    const std::string path = "checks.ext";
    if (e.contains("pairs")) {
      for (const auto& pj : e.at("pairs")) {
        ExtCheck c;
        c.algebra = req_str(pj, "algebra", path + ".pairs");
        c.from = req_str(pj, "from", path + ".pairs");
        c.to = req_str(pj, "to", path + ".pairs");
        const AlgebraPtr& alg = get_algebra(sc, c.algebra, path);
        if (get_module(sc, c.from, path)->algebra() != alg ||
            get_module(sc, c.to, path)->algebra() != alg)
          fail(path + ".pairs", "modules must live over the named algebra");
        sc.checks.ext.push_back(std::move(c));
      }
    }
    if (e.contains("comma_patterns")) {
      need_ctx(sc, path);
      const json& cp = e.at("comma_patterns");
      ExtPatternCheck& c = sc.checks.ext_patterns;
      c.enabled = true;
      c.modules_a = req_str(cp, "modules_a", path + ".comma_patterns");
      c.modules_b = req_str(cp, "modules_b", path + ".comma_patterns");
      c.targets = req_str(cp, "targets", path + ".comma_patterns");
      c.max_degree = opt_int(cp, "max_degree", 3, path + ".comma_patterns");
      if (!get_window_spec(sc, c.targets, path).is_comma)
        fail(path + ".comma_patterns", "targets must be a comma window");
      if (get_window_spec(sc, c.modules_a, path).is_comma ||
          get_window_spec(sc, c.modules_b, path).is_comma)
        fail(path + ".comma_patterns", "modules_a / modules_b must be module windows");
    }
  }

  if (cs.contains("tor")) {
    need_ctx(sc, "checks.tor");
    for (const auto& tj : cs.at("tor")) {
      TorCheck c;
      c.y = req_str(tj, "y", "checks.tor");
      if (get_module(sc, c.y, "checks.tor")->algebra() != sc.ctx->cat_b.algebra)
        fail("checks.tor", "'" + c.y + "' must live over the source algebra");
      sc.checks.tor.push_back(std::move(c));
    }
  }

  if (cs.contains("frobenius-check")) {
    const std::string path = "checks.frobenius-check";
    for (const auto& fj : cs.at("frobenius-check")) {
      FrobCheck c;
      c.pair = req_str(fj, "pair", path);
      c.window = req_str(fj, "window", path);
      const PairSpec& spec = get_pair_spec(sc, c.pair, path);
      const WindowSpec& win = get_window_spec(sc, c.window, path);
      if ((spec.kind == "lift") != win.is_comma)
        fail(path, "window kind does not match pair '" + c.pair + "'");
      if (fj.contains("recovery")) {
        if (spec.kind != "lift") fail(path, "recovery applies to lifted pairs only");
        const json& r = fj.at("recovery");
        c.recovery_window_a = req_str(r, "window_a", path + ".recovery");
        c.recovery_window_b = req_str(r, "window_b", path + ".recovery");
        if (get_window_spec(sc, c.recovery_window_a, path).is_comma ||
            get_window_spec(sc, c.recovery_window_b, path).is_comma)
          fail(path + ".recovery", "recovery windows must be module windows");
      }
      sc.checks.frobenius.push_back(std::move(c));
    }
  }

  if (cs.contains("stable")) {
    const std::string path = "checks.stable";
    for (const auto& sj : cs.at("stable")) {
      StableCheck c;
      c.pair = req_str(sj, "pair", path);
      if (get_pair_spec(sc, c.pair, path).kind == "lift")
        fail(path, "stable checks run over module-level pairs");
      if (sj.contains("hom"))
        for (const auto& hj : sj.at("hom")) {
          auto pr = str_pair(hj, path + ".hom");
          get_module(sc, pr[0], path + ".hom");
          get_module(sc, pr[1], path + ".hom");
          c.hom.push_back(pr);
        }
      if (sj.contains("suspension_fixed_points"))
        for (const auto& xj : sj.at("suspension_fixed_points")) {
          if (!xj.is_string()) fail(path + ".suspension_fixed_points", "expected module ids");
          get_module(sc, xj.get<std::string>(), path);
          c.suspension_fixed_points.push_back(xj.get<std::string>());
        }
      if (sj.contains("triangles"))
        for (const auto& tj : sj.at("triangles")) {
          TriangleCheck t;
          t.sub = req_str(tj, "sub", path + ".triangles");
          t.mid = req_str(tj, "mid", path + ".triangles");
          t.mono = int_matrix(req(tj, "mono", path + ".triangles"), path + ".triangles.mono");
          t.connecting = opt_str(tj, "connecting", "", path + ".triangles");
          if (!t.connecting.empty() && t.connecting != "invertible" && t.connecting != "zero")
            fail(path + ".triangles.connecting", "expected 'invertible' or 'zero'");
          get_module(sc, t.sub, path + ".triangles");
          get_module(sc, t.mid, path + ".triangles");
          c.triangles.push_back(std::move(t));
        }
      if (sj.contains("w_agreement")) {
        const json& w = sj.at("w_agreement");
        c.w_agreement_window = req_str(w, "window", path + ".w_agreement");
        if (get_window_spec(sc, c.w_agreement_window, path).is_comma)
          fail(path + ".w_agreement", "window must be a module window");
        for (const auto& pj : req(w, "pairs", path + ".w_agreement")) {
          auto pr = str_pair(pj, path + ".w_agreement.pairs");
          get_module(sc, pr[0], path);
          get_module(sc, pr[1], path);
          c.w_agreement_pairs.push_back(pr);
        }
      }
      sc.checks.stable.push_back(std::move(c));
    }
  }

  if (cs.contains("recollement-verify")) {
    need_ctx(sc, "checks.recollement-verify");
    const json& r = cs.at("recollement-verify");
    const std::string path = "checks.recollement-verify";
    RecollementCheck& c = sc.checks.recollement;
    c.enabled = true;
    c.pair_a = req_str(r, "pair_a", path);
    c.pair_b = req_str(r, "pair_b", path);
    c.window_a = req_str(r, "window_a", path);
    c.window_b = req_str(r, "window_b", path);
    c.window_c = req_str(r, "window_c", path);
    for (const std::string& pid : {c.pair_a, c.pair_b})
      if (get_pair_spec(sc, pid, path).kind == "lift")
        fail(path, "pair_a / pair_b must be module-level pairs");
    if (get_window_spec(sc, c.window_a, path).is_comma ||
        get_window_spec(sc, c.window_b, path).is_comma)
      fail(path, "window_a / window_b must be module windows");
    if (!get_window_spec(sc, c.window_c, path).is_comma)
      fail(path, "window_c must be a comma window");
  }

  if (cs.contains("gp")) {
    const json& g = cs.at("gp");
    const std::string path = "checks.gp";
    GpCheck& c = sc.checks.gp;
    c.enabled = true;
    c.algebra = req_str(g, "algebra", path);
    get_algebra(sc, c.algebra, path);
    c.bound = opt_int(g, "bound", 1, path);
    c.window = req_str(g, "window", path);
    if (get_window_spec(sc, c.window, path).is_comma)
      fail(path, "window must be a module window");
    if (g.contains("cross_check")) {
      need_ctx(sc, path);
      const json& x = g.at("cross_check");
      c.cross = true;
      c.lambda_bound = opt_int(x, "lambda_bound", 3, path + ".cross_check");
      c.cross_window = req_str(x, "window", path + ".cross_check");
      if (!get_window_spec(sc, c.cross_window, path).is_comma)
        fail(path + ".cross_check", "window must be a comma window");
    }
  }

  if (cs.contains("convert")) {
    need_ctx(sc, "checks.convert");
    const json& v = cs.at("convert");
    ConvertCheck& c = sc.checks.convert;
    c.enabled = true;
    c.window = req_str(v, "window", "checks.convert");
    if (!get_window_spec(sc, c.window, "checks.convert").is_comma)
      fail("checks.convert", "window must be a comma window");
  }
}

/* ------------------------------------------------------------------ *
 *  Run-time resolution: windows and pairs depend on depth/budget.
 * ------------------------------------------------------------------ */

struct ResolvedWindow {
  bool is_comma = false;
  std::vector<ModulePtr> modules;
  std::vector<CommaObjPtr> comma;
  bool exhaustive = true;  // enumerated windows only
};

ResolvedWindow resolve_window(const Scenario& sc, const std::string& id,
                              const SearchBudget& budget) {
  const WindowSpec& spec = get_window_spec(sc, id, "windows");
  ResolvedWindow out;
  out.is_comma = spec.is_comma;
  if (spec.is_comma) {
    for (const auto& cid : spec.comma_ids) out.comma.push_back(get_comma(sc, cid, "windows." + id));
  } else if (spec.enumerate_max_dim >= 0) {
    ModuleCat cat(get_algebra(sc, spec.algebra, "windows." + id));
    auto e = enumerate_window(cat, spec.enumerate_max_dim, budget.with_salt("enumerate:" + id));
    out.modules = std::move(e.modules);
    out.exhaustive = e.exhaustive;
  } else {
    for (const auto& mid : spec.module_ids)
      out.modules.push_back(get_module(sc, mid, "windows." + id));
  }
  return out;
}

struct BuiltPair {
  std::optional<FrobeniusPair<ModuleCat>> mod;
  std::optional<FrobeniusPair<CommaCat>> comma;
  Report notes;  // build-time certification entries, already prefixed

  bool built() const { return mod.has_value() || comma.has_value(); }
};

ClassOracle<ModuleCat> named_class_oracle(const ModuleCat& cat, const std::string& name,
                                          const std::string& path) {
  ClassOracle<ModuleCat> o;
  o.label = name;
  if (name == "all") {
    o.membership = [](const ModulePtr&, int) { return Tri::yes; };
  } else if (name == "projectives") {
    o.membership = [cat](const ModulePtr& m, int) {
      return is_projective_obj(cat, m) ? Tri::yes : Tri::no;
    };
  } else if (name == "injectives") {
    auto inj = mod_inj_pair(cat);
    o.membership = [inj](const ModulePtr& m, int depth) { return inj.in_w(m, depth); };
  } else {
    fail(path, "unknown class '" + name + "' (expected all | projectives | injectives)");
  }
  return o;
}

BuiltPair build_pair(const Scenario& sc, const std::string& id, int depth,
                     const SearchBudget& budget) {
  const PairSpec& spec = get_pair_spec(sc, id, "pairs");
  const std::string prefix = "pairs." + id;
  BuiltPair out;

  auto fail_entry = [&](const std::string& check, const std::string& why) {
    ReportEntry e;
    e.check = prefix + "." + check;
    e.depth = depth;
    e.budget = budget.max_candidates;
    e.status = Tri::no;
    e.detail = why;
    out.notes.add(std::move(e));
  };

  if (spec.kind == "mod_inj") {
    out.mod = mod_inj_pair(ModuleCat(get_algebra(sc, spec.algebra, prefix)));
  } else if (spec.kind == "gp") {
    try {
      out.mod = gp_pair(ModuleCat(get_algebra(sc, spec.algebra, prefix)), spec.bound);
    } catch (const std::runtime_error& e) {
      fail_entry("gorenstein-verified", e.what());
    }
  } else if (spec.kind == "explicit") {
    std::vector<ModulePtr> xs, ws;
    for (const auto& mid : spec.x_ids) xs.push_back(get_module(sc, mid, prefix));
    for (const auto& mid : spec.w_ids) ws.push_back(get_module(sc, mid, prefix));
    out.mod = explicit_pair(ModuleCat(get_algebra(sc, spec.algebra, prefix)), std::move(xs),
                            std::move(ws), budget.with_salt("pair:" + id), spec.strong_hint);
  } else if (spec.kind == "cotorsion") {
    ModuleCat cat(get_algebra(sc, spec.algebra, prefix));
    CotorsionInput<ModuleCat> in;
    in.name = id;
    in.x_class = named_class_oracle(cat, spec.x_class, prefix);
    in.y_class = named_class_oracle(cat, spec.y_class, prefix);
    if (spec.preenvelope == "injective") {
      auto inj = mod_inj_pair(cat);
      in.preenvelope = inj.right_approx;
    } else if (spec.preenvelope == "split") {
      in.preenvelope = [cat](const ModulePtr& m) {
        return ShortExact<ModuleCat>{m, m, cat.zero(), identity_morphism(m),
                                     zero_morphism(m, cat.zero())};
      };
    } else {
      fail(prefix, "unknown preenvelope '" + spec.preenvelope + "' (expected injective | split)");
    }
    auto win = resolve_window(sc, spec.window, budget);
    auto res = cotorsion_to_frobenius(cat, in, win.modules, depth, budget.with_salt("pair:" + id));
    out.notes.merge(res.report, prefix);
    out.mod = std::move(res.pair);
    if (!out.built() && out.notes.passed()) fail_entry("built", "cotorsion pair not constructed");
  } else if (spec.kind == "lift") {
    auto ba = build_pair(sc, spec.pair_a, depth, budget);
    auto bb = build_pair(sc, spec.pair_b, depth, budget);
    out.notes.merge(ba.notes);
    out.notes.merge(bb.notes);
    if (!ba.mod || !bb.mod) {
      if (out.notes.passed()) fail_entry("built", "component pairs unavailable");
      return out;
    }
    auto wb = resolve_window(sc, spec.window_b, budget);
    auto lr = lift_pair(CommaCat(sc.ctx), *ba.mod, *bb.mod, wb.modules, depth);
    out.notes.merge(lr.hypotheses, prefix + ".hypotheses");
    out.comma = std::move(lr.pair);
    if (out.comma) {
      ReportEntry e;
      e.check = prefix + ".level";
      e.depth = depth;
      e.budget = budget.max_candidates;
      e.status = Tri::yes;
      e.detail = std::string(lr.strict_level ? "strict inclusions" : "finite-resolution level") +
                 "; strong: " + (out.comma->strong ? "yes" : "no");
      out.notes.add(std::move(e));
    } else if (out.notes.passed()) {
      fail_entry("built", "lift hypotheses rejected");
    }
  } else {
    fail(prefix, "unknown pair kind '" + spec.kind + "'");
  }
  return out;
}

/* ------------------------------------------------------------------ *
 *  Commands.
 * ------------------------------------------------------------------ */

ReportEntry base_entry(std::string check, std::string window, int depth,
                       const SearchBudget& budget) {
  ReportEntry e;
  e.check = std::move(check);
  e.window = std::move(window);
  e.depth = depth;
  e.budget = budget.max_candidates;
  return e;
}

std::string dims_to_string(const std::vector<int>& dims) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? ", " : "") << dims[i];
  os << "]";
  return os.str();
}

Report cmd_validate(const Scenario& sc, int depth, const SearchBudget& budget) {
  Report rep;
  rep.title = sc.name + ": validate";
  auto add = [&](const std::string& check, const std::vector<std::string>& errs,
                 const std::string& match) {
    ReportEntry e = base_entry(check, "", depth, budget);
    e.status = Tri::yes;
    for (const auto& msg : errs)
      if (match.empty() || msg.find(match) != std::string::npos) {
        e.status = Tri::no;
        e.counterexample = msg;
        break;
      }
    rep.add(std::move(e));
  };

  for (const auto& [id, alg] : sc.algebras) {
    auto errs = alg->validate();
    add("algebras." + id + ".associativity", errs, "associativity");
    add("algebras." + id + ".unit", errs, "unit");
    std::vector<std::string> rest;
    for (const auto& msg : errs)
      if (msg.find("associativity") == std::string::npos && msg.find("unit") == std::string::npos)
        rest.push_back(msg);
    if (!rest.empty()) add("algebras." + id + ".claims", rest, "");
  }
  for (const auto& [id, m] : sc.modules) add("modules." + id, m->validate(), "");
  if (sc.bimodule) add("bimodule", sc.bimodule->validate(), "");
  for (const auto& [id, o] : sc.comma_objects) add("comma." + id, o->validate(), "");
  for (const auto& [id, spec] : sc.windows) {
    auto win = resolve_window(sc, id, budget);
    ReportEntry e = base_entry("windows." + id, id, depth, budget);
    e.status = Tri::yes;
    size_t n = spec.is_comma ? win.comma.size() : win.modules.size();
    e.detail = std::to_string(n) + " objects";
    if (spec.enumerate_max_dim >= 0)
      e.detail += std::string("; exhaustive up to isomorphism: ") + (win.exhaustive ? "yes" : "no");
    rep.add(std::move(e));
  }
  return rep;
}

Report cmd_ext(const Scenario& sc, int depth, const SearchBudget& budget) {
  Report rep;
  rep.title = sc.name + ": ext";
  if (sc.checks.ext.empty() && !sc.checks.ext_patterns.enabled)
    fail("checks", "scenario configures no ext checks");

  for (const auto& c : sc.checks.ext) {
    ModuleCat cat(get_algebra(sc, c.algebra, "checks.ext"));
    auto dims = ext_dims(cat, get_module(sc, c.from, "checks.ext"),
                         get_module(sc, c.to, "checks.ext"), depth);
    ReportEntry e = base_entry("ext(" + c.from + "," + c.to + ")", c.algebra, depth, budget);
    e.status = Tri::yes;
    e.detail = "dimensions in degrees 0.." + std::to_string(depth) + ": " + dims_to_string(dims);
    rep.add(std::move(e));
  }

  const ExtPatternCheck& pat = sc.checks.ext_patterns;
  if (pat.enabled) {
    CommaCat ccat(sc.ctx);
    const int deg = pat.max_degree;
    auto wa = resolve_window(sc, pat.modules_a, budget);
    auto wb = resolve_window(sc, pat.modules_b, budget);
    auto wt = resolve_window(sc, pat.targets, budget);
    const std::string wdesc = pat.modules_a + "/" + pat.modules_b + " x " + pat.targets;

    for (const auto& x : wa.modules)
      for (const auto& b : wt.comma) {
        auto lhs = ext_dims(ccat, comma_z_a(sc.ctx, x), b, deg);
        auto rhs = ext_dims(sc.ctx->cat_a, x, b->x(), deg);
        ReportEntry e =
            base_entry("za-pattern(" + x->name() + "," + b->name() + ")", wdesc, deg, budget);
        e.status = lhs == rhs ? Tri::yes : Tri::no;
        e.detail = "comma " + dims_to_string(lhs) + ", module " + dims_to_string(rhs);
        if (e.status == Tri::no)
          e.counterexample = "Ext(Z_A " + x->name() + ", " + b->name() + ") differs from Ext(" +
                             x->name() + ", " + b->x()->name() + ")";
        rep.add(std::move(e));
      }

    for (const auto& y : wb.modules)
      for (const auto& b : wt.comma) {
        ReportEntry e =
            base_entry("tb-pattern(" + y->name() + "," + b->name() + ")", wdesc, deg, budget);
        auto lts = derived_tensor(*sc.ctx->t, y, deg);
        bool vanishing = true;
        for (size_t i = 1; i < lts.size(); ++i) vanishing = vanishing && lts[i]->dim() == 0;
        if (!vanishing) {
          e.status = Tri::undetermined;
          e.detail = "derived tensor of " + y->name() + " does not vanish, reduction not applicable";
        } else {
          auto lhs = ext_dims(ccat, comma_t_b(sc.ctx, y), b, deg);
          auto rhs = ext_dims(sc.ctx->cat_b, y, b->y(), deg);
          e.status = lhs == rhs ? Tri::yes : Tri::no;
          e.detail = "comma " + dims_to_string(lhs) + ", module " + dims_to_string(rhs);
          if (e.status == Tri::no)
            e.counterexample = "Ext(T_B " + y->name() + ", " + b->name() + ") differs from Ext(" +
                               y->name() + ", " + b->y()->name() + ")";
        }
        rep.add(std::move(e));
      }
  }
  return rep;
}

Report cmd_tor(const Scenario& sc, int depth, const SearchBudget& budget) {
  Report rep;
  rep.title = sc.name + ": tor";
  if (sc.checks.tor.empty()) fail("checks", "scenario configures no tor checks");
  need_ctx(sc, "checks.tor");
  for (const auto& c : sc.checks.tor) {
    const ModulePtr& y = get_module(sc, c.y, "checks.tor");
    auto lts = derived_tensor(*sc.ctx->t, y, depth);
    std::vector<int> dims;
    for (const auto& m : lts) dims.push_back(m->dim());
    ReportEntry e = base_entry("derived-tensor(" + c.y + ")", "", depth, budget);
    e.status = Tri::yes;
    e.detail = "dimensions in degrees 0.." + std::to_string(depth) + ": " + dims_to_string(dims);
    rep.add(std::move(e));
  }
  return rep;
}

Report cmd_frobenius(const Scenario& sc, int depth, const SearchBudget& budget) {
  Report rep;
  rep.title = sc.name + ": frobenius-check";
  if (sc.checks.frobenius.empty()) fail("checks", "scenario configures no frobenius-check items");
  for (const auto& c : sc.checks.frobenius) {
    auto bp = build_pair(sc, c.pair, depth, budget);
    rep.merge(bp.notes);
    auto win = resolve_window(sc, c.window, budget);
    if (!bp.built()) continue;  // notes already carry the failure
    if (bp.mod) {
      rep.merge(frobenius_window_check(*bp.mod, win.modules, depth, budget), c.pair);
    } else {
      rep.merge(frobenius_window_check(*bp.comma, win.comma, depth, budget), c.pair);
    }

    if (!c.recovery_window_a.empty() && bp.comma) {
      const PairSpec& spec = get_pair_spec(sc, c.pair, "checks.frobenius-check");
      auto ba = build_pair(sc, spec.pair_a, depth, budget);
      auto bb = build_pair(sc, spec.pair_b, depth, budget);
      auto wa = resolve_window(sc, c.recovery_window_a, budget);
      auto wb = resolve_window(sc, c.recovery_window_b, budget);
      auto compare = [&](const std::string& check, Tri base, Tri lifted,
                         const std::string& window) {
        ReportEntry e = base_entry(c.pair + ".recovery." + check, window, depth, budget);
        e.status = base == lifted ? Tri::yes : Tri::no;
        e.detail = std::string("base class: ") + tri_name(base) +
                   ", through the lifted class: " + tri_name(lifted);
        rep.add(std::move(e));
      };
      for (const auto& m : wa.modules) {
        auto za = comma_z_a(sc.ctx, m);
        compare("za-x(" + m->name() + ")", ba.mod->in_x(m, depth), bp.comma->in_x(za, depth),
                c.recovery_window_a);
        compare("za-w(" + m->name() + ")", ba.mod->in_w(m, depth), bp.comma->in_w(za, depth),
                c.recovery_window_a);
      }
      for (const auto& m : wb.modules) {
        auto tb = comma_t_b(sc.ctx, m);
        compare("tb-x(" + m->name() + ")", bb.mod->in_x(m, depth), bp.comma->in_x(tb, depth),
                c.recovery_window_b);
        compare("tb-w(" + m->name() + ")", bb.mod->in_w(m, depth), bp.comma->in_w(tb, depth),
                c.recovery_window_b);
      }
    }
  }
  return rep;
}

Report cmd_stable(const Scenario& sc, int depth, const SearchBudget& budget) {
  Report rep;
  rep.title = sc.name + ": stable";
  if (sc.checks.stable.empty()) fail("checks", "scenario configures no stable checks");
  for (const auto& c : sc.checks.stable) {
    auto bp = build_pair(sc, c.pair, depth, budget);
    rep.merge(bp.notes);
    if (!bp.mod) continue;
    const FrobeniusPair<ModuleCat>& pair = *bp.mod;
    const ModuleCat& cat = pair.cat;

    for (const auto& [xid, yid] : c.hom) {
      auto sh = stable_hom(pair, get_module(sc, xid, "checks.stable"),
                           get_module(sc, yid, "checks.stable"));
      ReportEntry e = base_entry(c.pair + ".hom(" + xid + "," + yid + ")", "", depth, budget);
      e.status = Tri::yes;
      e.detail = "hom_dim=" + std::to_string(sh.hom_dim()) +
                 " w_subspace_dim=" + std::to_string(sh.w_dim()) +
                 " stable_dim=" + std::to_string(sh.stable_dim());
      rep.add(std::move(e));
    }

    for (const auto& xid : c.suspension_fixed_points) {
      const ModulePtr& x = get_module(sc, xid, "checks.stable");
      auto sx = suspend(pair, x);
      auto iso = is_stable_iso(pair, sx.object(), x, budget.with_salt("sigma-fixed:" + xid));
      ReportEntry e = base_entry(c.pair + ".sigma-fixes(" + xid + ")", "", depth, budget);
      e.status = iso.verdict;
      e.detail = "suspension dimension " + std::to_string(sx.object()->dim()) +
                 "; stably isomorphic to " + xid + ": " + tri_name(iso.verdict);
      rep.add(std::move(e));
    }

    for (const auto& t : c.triangles) {
      const ModulePtr& sub = get_module(sc, t.sub, "checks.stable");
      const ModulePtr& mid = get_module(sc, t.mid, "checks.stable");
      Morphism f{sub, mid, matrix_from_json(cat.p(), json(t.mono), mid->dim(), sub->dim(),
                                            "checks.stable.triangles.mono")};
      if (!f.validate().empty() || !is_mono(f))
        fail("checks.stable.triangles", "'mono' is not a monomorphism " + t.sub + " -> " + t.mid);
      auto ck = cat.cokernel(f);
      ShortExact<ModuleCat> ses{sub, mid, ck.object, f, ck.map};
      ReportEntry e =
          base_entry(c.pair + ".triangle(" + t.sub + "->" + t.mid + ")", "", depth, budget);
      try {
        auto tri = complete_triangle(pair, ses);
        bool invertible = stable_inverse(pair, tri.h).has_value();
        auto sh = stable_hom(pair, tri.x3, tri.susp.object());
        bool zero = sh.stably_zero(cat, tri.h);
        e.detail = std::string("connecting map stably invertible: ") + (invertible ? "yes" : "no") +
                   ", stably zero: " + (zero ? "yes" : "no");
        if (t.connecting == "invertible")
          e.status = invertible ? Tri::yes : Tri::no;
        else if (t.connecting == "zero")
          e.status = zero ? Tri::yes : Tri::no;
        else
          e.status = Tri::yes;
      } catch (const std::exception& ex) {
        e.status = Tri::no;
        e.detail = "triangle completion failed";
        e.counterexample = ex.what();
      }
      rep.add(std::move(e));
    }

    if (!c.w_agreement_pairs.empty()) {
      auto win = resolve_window(sc, c.w_agreement_window, budget);
      for (const auto& [xid, yid] : c.w_agreement_pairs) {
        const ModulePtr& x = get_module(sc, xid, "checks.stable");
        const ModulePtr& y = get_module(sc, yid, "checks.stable");
        auto sh = stable_hom(pair, x, y);
        std::vector<std::vector<int>> rows;
        for (const auto& w : win.modules) {
          if (pair.in_w(w, depth) != Tri::yes) continue;
          for (const auto& f : cat.hom(x, w))
            for (const auto& g : cat.hom(w, y)) {
              auto coords = hom_coords(cat, sh.hom, cat.compose(g, f));
              if (coords) rows.emplace_back(coords->begin(), coords->end());
            }
        }
        Subspace through =
            Subspace::from_rows(FpMatrix::from_rows(cat.p(), rows, (int)sh.hom.size()));
        ReportEntry e = base_entry(c.pair + ".w-agreement(" + xid + "," + yid + ")",
                                   c.w_agreement_window, depth, budget);
        e.status = (through == sh.w_subspace) ? Tri::yes : Tri::no;
        e.detail = "approximation subspace dim " + std::to_string(sh.w_dim()) +
                   ", window factoring subspace dim " + std::to_string(through.dim());
        if (e.status == Tri::no)
          e.counterexample = "morphisms factoring through the window differ from the "
                             "approximation-induced subspace";
        rep.add(std::move(e));
      }
    }
  }
  return rep;
}

Report cmd_recollement(const Scenario& sc, int depth, const SearchBudget& budget) {
  const RecollementCheck& c = sc.checks.recollement;
  if (!c.enabled) fail("checks", "scenario configures no recollement-verify check");
  Report rep;
  rep.title = sc.name + ": recollement-verify";
  auto ba = build_pair(sc, c.pair_a, depth, budget);
  auto bb = build_pair(sc, c.pair_b, depth, budget);
  rep.merge(ba.notes);
  rep.merge(bb.notes);
  if (!ba.mod || !bb.mod) return rep;

  auto wa = resolve_window(sc, c.window_a, budget);
  auto wb = resolve_window(sc, c.window_b, budget);
  auto wc = resolve_window(sc, c.window_c, budget);

  Report why;
  auto rs = make_recollement_setting(CommaCat(sc.ctx), *ba.mod, *bb.mod, wb.modules, depth, &why);
  if (!rs) {
    rep.merge(why, "hypotheses");
    return rep;
  }
  rep.merge(verify_recollement(*rs, wa.modules, wb.modules, wc.comma, depth, budget));
  return rep;
}

Report cmd_gp(const Scenario& sc, int depth, const SearchBudget& budget) {
  const GpCheck& c = sc.checks.gp;
  if (!c.enabled) fail("checks", "scenario configures no gp check");
  Report rep;
  rep.title = sc.name + ": gp";
  ModuleCat cat(get_algebra(sc, c.algebra, "checks.gp"));

  std::optional<FrobeniusPair<ModuleCat>> gp;
  {
    ReportEntry e = base_entry("gorenstein-verified", c.algebra, depth, budget);
    try {
      gp = gp_pair(cat, c.bound);
      e.status = Tri::yes;
      e.detail = "regular module has injective dimension <= " + std::to_string(c.bound) +
                 " on both sides";
    } catch (const std::runtime_error& ex) {
      e.status = Tri::no;
      e.detail = ex.what();
    }
    rep.add(std::move(e));
  }
  if (!gp) return rep;

  auto win = resolve_window(sc, c.window, budget);
  for (const auto& m : win.modules) {
    Tri v = gp->in_x(m, depth);
    ReportEntry e = base_entry("membership(" + m->name() + ")", c.window, depth, budget);
    e.status = v == Tri::undetermined ? Tri::undetermined : Tri::yes;
    e.detail = std::string("Gorenstein projective: ") + tri_name(v);
    rep.add(std::move(e));
  }

  if (c.cross) {
    auto wc = resolve_window(sc, c.cross_window, budget);
    rep.merge(gp_triangular_cross_check(CommaCat(sc.ctx), c.bound, c.lambda_bound, wc.comma, depth));
  }
  return rep;
}

Report cmd_convert(const Scenario& sc, int depth, const SearchBudget& budget) {
  const ConvertCheck& c = sc.checks.convert;
  if (!c.enabled) fail("checks", "scenario configures no convert check");
  Report rep;
  rep.title = sc.name + ": convert";
  auto lambda = triangular_matrix_algebra(sc.ctx->t->bimodule());
  {
    ReportEntry e = base_entry("triangular-algebra", c.window, depth, budget);
    e.status = Tri::yes;
    e.detail = "dimension " + std::to_string(lambda->dim());
    rep.add(std::move(e));
  }
  auto win = resolve_window(sc, c.window, budget);
  for (const auto& o : win.comma) {
    ReportEntry e = base_entry("roundtrip(" + o->name() + ")", c.window, depth, budget);
    auto m = comma_to_triangular(lambda, o);
    auto back = triangular_to_comma(sc.ctx, lambda, m);
    bool ok = m->validate().empty() && same_comma(o, back);
    e.status = ok ? Tri::yes : Tri::no;
    e.detail = "module dimension " + std::to_string(m->dim()) + " over the triangular algebra";
    if (!ok) e.counterexample = "conversion does not return the original object";
    rep.add(std::move(e));
  }
  return rep;
}

}  // namespace

/* ------------------------------------------------------------------ *
 *  Public surface.
 * ------------------------------------------------------------------ */

Scenario parse_scenario(const std::string& json_text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ScenarioError(source_name + ": " + e.what());
  }
  if (!doc.is_object()) throw ScenarioError(source_name + ": top level must be an object");

  Scenario sc;
  sc.source = source_name;
  try {
    sc.name = opt_str(doc, "name", "scenario", "scenario");
    sc.p = opt_int(doc, "p", 2, "scenario");
    if (!is_prime(sc.p)) fail("scenario.p", "field modulus must be prime");
    sc.depth = opt_int(doc, "depth", 4, "scenario");
    if (sc.depth < 0) fail("scenario.depth", "negative depth");
    int budget = opt_int(doc, "budget", 4096, "scenario");
    if (budget <= 0) fail("scenario.budget", "budget must be positive");
    sc.budget = (uint64_t)budget;

    parse_algebras(sc, doc);
    parse_modules(sc, doc);
    parse_bimodule(sc, doc);
    parse_comma_objects(sc, doc);
    parse_windows(sc, doc);
    parse_pairs(sc, doc);
    parse_checks(sc, doc);
  } catch (const ScenarioError&) {
    throw;
  } catch (const json::exception& e) {
    throw ScenarioError(source_name + ": " + e.what());
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

EnumWindow enumerate_window(const ModuleCat& cat, int max_dim, const SearchBudget& budget) {
  const AlgebraPtr& alg = cat.algebra;
  const int p = alg->p();
  const int n = alg->dim();
  EnumWindow out;
  out.modules.push_back(make_module(alg, zero_module(alg)->actions(), "enum_d0_0"));

  // The unit constraint sum_i unit_i rho(b_i) = id pins down one action
  // matrix, so only the other n-1 are free coefficients.
  int pivot = 0;
  while (pivot < n && alg->unit()[pivot] == 0) ++pivot;
  if (pivot == n) {
    out.exhaustive = false;  // no unit: nothing sensible to enumerate
    return out;
  }
  int pivot_inv = 1;
  while ((pivot_inv * alg->unit()[pivot]) % p != 1) ++pivot_inv;

  for (int d = 1; d <= max_dim; ++d) {
    auto scan = coefficient_scan(p, (n - 1) * d * d, budget.with_salt("enum-dim-" + std::to_string(d)),
                                 (int)std::min<uint64_t>(budget.max_candidates, 4096));
    out.exhaustive = out.exhaustive && scan.exhaustive;
    int found = 0;
    for (const auto& v : scan.vectors) {
      std::vector<FpMatrix> actions(n, FpMatrix(p, d, d));
      size_t at = 0;
      for (int i = 0; i < n; ++i) {
        if (i == pivot) continue;
        for (int r = 0; r < d; ++r)
          for (int col = 0; col < d; ++col) actions[i].set(r, col, v[at++]);
      }
      FpMatrix piv = FpMatrix::identity(p, d);
      for (int i = 0; i < n; ++i) {
        if (i == pivot || alg->unit()[i] == 0) continue;
        piv = piv.sub(actions[i].scale(alg->unit()[i]));
      }
      actions[pivot] = piv.scale(pivot_inv);

      auto m = make_module(alg, std::move(actions),
                           "enum_d" + std::to_string(d) + "_" + std::to_string(found));
      if (!m->validate().empty()) continue;
      bool fresh = true;
      for (const auto& seen : out.modules) {
        if (seen->dim() != d) continue;
        auto iso = is_isomorphic(m, seen, budget.with_salt("enum-dedup"));
        if (iso.verdict == Tri::yes) {
          fresh = false;
          break;
        }
        if (iso.verdict == Tri::undetermined) out.exhaustive = false;
      }
      if (fresh) {
        out.modules.push_back(std::move(m));
        ++found;
      }
    }
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate",       "ext",
                                                 "tor",            "frobenius-check",
                                                 "stable",         "recollement-verify",
                                                 "gp",             "convert"};
  return names;
}

RunResult run_command(const Scenario& sc, const std::string& command, int depth,
                      const SearchBudget& budget_in) {
  int d = depth >= 0 ? depth : sc.depth;
  SearchBudget budget{budget_in.max_candidates > 0 ? budget_in.max_candidates : sc.budget,
                      budget_in.seed};

  // Scenario invariant: all structural validations pass before any check runs.
  Report vrep = cmd_validate(sc, d, budget);
  if (command == "validate") return {vrep, vrep.passed() ? 0 : 1};
  if (!vrep.passed()) {
    vrep.title = sc.name + ": " + command + " (structural validation failed)";
    return {vrep, 1};
  }

  Report rep;
  if (command == "ext")
    rep = cmd_ext(sc, d, budget);
  else if (command == "tor")
    rep = cmd_tor(sc, d, budget);
  else if (command == "frobenius-check")
    rep = cmd_frobenius(sc, d, budget);
  else if (command == "stable")
    rep = cmd_stable(sc, d, budget);
  else if (command == "recollement-verify")
    rep = cmd_recollement(sc, d, budget);
  else if (command == "gp")
    rep = cmd_gp(sc, d, budget);
  else if (command == "convert")
    rep = cmd_convert(sc, d, budget);
  else
    fail("command", "unknown command '" + command + "'");
  return {rep, rep.passed() ? 0 : 1};
}

}  // namespace frobcat
