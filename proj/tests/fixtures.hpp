#pragma once

// Shared hand-built fixtures: F_2[x]/(x^2) and the path algebra of 1 -> 2.
// Built straight from multiplication tables here so library constructions can
// be checked against them rather than against themselves.

#include <memory>
#include <vector>

#include "frobcat/algebra.hpp"
#include "frobcat/bimodule.hpp"

namespace fixtures {

using namespace frobcat;

// F_2[x]/(x^2): basis {1, x}, x^2 = 0.  Local, selfinjective.
inline AlgebraPtr dual_numbers() {
  std::vector<std::vector<std::vector<int>>> table = {
      {{1, 0}, {0, 1}},
      {{0, 1}, {0, 0}},
  };
  auto a = std::make_shared<Algebra>(2, 2, table, std::vector<int>{1, 0}, "F2[x]/(x^2)");
  a->set_radical(Subspace::from_rows(FpMatrix::from_rows(2, {{0, 1}})));
  a->set_idempotents({{1, 0}});
  return a;
}

// Simple module k over the dual numbers: x acts by zero.
inline ModulePtr dn_simple(const AlgebraPtr& a) {
  return make_module(a, {FpMatrix::identity(2, 1), FpMatrix(2, 1, 1)}, "k");
}

// Path algebra of the quiver 1 --alpha--> 2 over F_2.
// Basis {e1, e2, alpha}; alpha = e2 alpha e1, so e2*alpha = alpha = alpha*e1.
inline AlgebraPtr path_a2() {
  std::vector<std::vector<std::vector<int>>> t(3, std::vector<std::vector<int>>(3, std::vector<int>(3, 0)));
  t[0][0] = {1, 0, 0};  // e1 e1
  t[1][1] = {0, 1, 0};  // e2 e2
  t[1][2] = {0, 0, 1};  // e2 alpha
  t[2][0] = {0, 0, 1};  // alpha e1
  auto a = std::make_shared<Algebra>(2, 3, t, std::vector<int>{1, 1, 0}, "kA2");
  a->set_radical(Subspace::from_rows(FpMatrix::from_rows(2, {{0, 0, 1}})));
  a->set_idempotents({{1, 0, 0}, {0, 1, 0}});
  return a;
}

// Left kA2-modules are representations (V1, V2, alpha: V1 -> V2).
inline ModulePtr a2_module(const AlgebraPtr& a, int d1, int d2, const FpMatrix& alpha_map,
                           std::string name) {
  int n = d1 + d2;
  FpMatrix e1(2, n, n), e2(2, n, n), al(2, n, n);
  for (int i = 0; i < d1; ++i) e1.set(i, i, 1);
  for (int i = 0; i < d2; ++i) e2.set(d1 + i, d1 + i, 1);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d1; ++j) al.set(d1 + i, j, alpha_map.at(i, j));
  return make_module(a, {e1, e2, al}, std::move(name));
}

inline ModulePtr a2_s1(const AlgebraPtr& a) { return a2_module(a, 1, 0, FpMatrix(2, 0, 1), "S1"); }
inline ModulePtr a2_s2(const AlgebraPtr& a) { return a2_module(a, 0, 1, FpMatrix(2, 1, 0), "S2"); }
inline ModulePtr a2_p1(const AlgebraPtr& a) {
  return a2_module(a, 1, 1, FpMatrix::identity(2, 1), "P1");
}

}  // namespace fixtures
