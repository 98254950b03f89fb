// Shared fixture builders for the test suite.
#pragma once

#include <string>
#include <vector>

#include "templike/doldkan.hpp"
#include "templike/simplicial.hpp"
#include "templike/templicial.hpp"
#include "templike/tensorfrob.hpp"

namespace templike::fixtures {

// One object, hom = k[x]/(x^2): a non-free linear category with hom rank 2.
inline LinearCategory dual_numbers(const Ring& k,
                                   const std::string& obj = "*") {
  Quiver hom(k, {obj});
  hom.set_entry(0, 0, FreeModule(k, {"1", "x"}));
  Quiver hh = tensor_S(hom, hom);
  QuiverMap comp(hh, hom);
  LinearMap m(hh.entry(0, 0), hom.entry(0, 0));
  // basis order: (1,1), (1,x), (x,1), (x,x)
  m.at(0, 0) = Scalar::one(k);
  m.at(1, 1) = Scalar::one(k);
  m.at(1, 2) = Scalar::one(k);
  comp.set(0, 0, std::move(m));
  Quiver uq = unit_quiver(k, {obj});
  QuiverMap unit(uq, hom);
  LinearMap u(uq.entry(0, 0), hom.entry(0, 0));
  u.at(0, 0) = Scalar::one(k);
  unit.set(0, 0, std::move(u));
  return LinearCategory{hom, comp, unit};
}

// The poset category [n]: objects 0..n, a unique morphism i -> j for i <= j.
inline FinCategory poset_category(int n) {
  FinCategory C;
  for (int i = 0; i <= n; ++i) C.objects.push_back("p" + std::to_string(i));
  std::vector<std::vector<std::size_t>> idx(static_cast<std::size_t>(n) + 1,
                                            std::vector<std::size_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      idx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = C.morphisms.size();
      C.morphisms.push_back({"m" + std::to_string(i) + std::to_string(j),
                             static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    }
  C.identity.resize(C.objects.size());
  for (int i = 0; i <= n; ++i)
    C.identity[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  C.comp.assign(C.morphisms.size(), std::vector<std::size_t>(C.morphisms.size(), SIZE_MAX));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        C.comp[idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]]
              [idx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]] =
            idx[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  return C;
}

// A narrow simplicial module with a genuinely non-free monoid structure:
// one vertex, D = 3, A_1 spanned by the unit e and an idempotent t with
// t.t = t, A_2 = k.w with d_1(w) = t, A_3 = k.v with d_1(v) = d_2(v) = w
// and s_1(w) = v.  All products involving w and v are forced by unitality
// and naturality; in particular m(2,2)(w (x) w) = v.
inline NarrowSimplicialModule idempotent_narrow(const Ring& k) {
  const std::vector<std::string> base = {"*"};
  NarrowSimplicialModule A;
  A.ring = k;
  A.base = base;
  A.D = 3;
  Quiver A1(k, base), A2(k, base), A3(k, base);
  A1.set_entry(0, 0, FreeModule(k, {"e", "t"}));
  A2.set_entry(0, 0, FreeModule(k, {"w"}));
  A3.set_entry(0, 0, FreeModule(k, {"v"}));
  A.A = {Quiver(k, base), A1, A2, A3};
  auto single = [&](const Quiver& src, const Quiver& tgt,
                    const std::vector<std::pair<std::size_t, std::size_t>>&
                        ones) {
    QuiverMap f(src, tgt);
    LinearMap m(src.entry(0, 0), tgt.entry(0, 0));
    for (auto [r, c] : ones) m.at(r, c) = Scalar::one(k);
    f.set(0, 0, std::move(m));
    return f;
  };
  A.faces.emplace(std::make_pair(2, 1), single(A2, A1, {{1, 0}}));
  A.faces.emplace(std::make_pair(3, 1), single(A3, A2, {{0, 0}}));
  A.faces.emplace(std::make_pair(3, 2), single(A3, A2, {{0, 0}}));
  A.degens.emplace(std::make_pair(2, 1), single(A2, A3, {{0, 0}}));
  A.has_monoid = true;
  const Quiver uq = unit_quiver(k, base);
  A.u = single(uq, A1, {{0, 0}});
  // basis order of a tensor entry: left index varies slowest.
  A.m.emplace(std::make_pair(1, 1),
              single(tensor_S(A1, A1), A1,
                     {{0, 0}, {1, 1}, {1, 2}, {1, 3}}));
  A.m.emplace(std::make_pair(1, 2),
              single(tensor_S(A1, A2), A2, {{0, 0}, {0, 1}}));
  A.m.emplace(std::make_pair(2, 1),
              single(tensor_S(A2, A1), A2, {{0, 0}, {0, 1}}));
  A.m.emplace(std::make_pair(1, 3),
              single(tensor_S(A1, A3), A3, {{0, 0}, {0, 1}}));
  A.m.emplace(std::make_pair(3, 1),
              single(tensor_S(A3, A1), A3, {{0, 0}, {0, 1}}));
  A.m.emplace(std::make_pair(2, 2),
              single(tensor_S(A2, A2), A3, {{0, 0}}));
  return A;
}

// The one-object dg-algebra k<1, e | de = 0> + k<h | dh = e> truncated at
// degree 1; products of positive total degree with e vanish.
inline DGCategory dg_dual_plus_h(const Ring& k) {
  DGCategory C;
  C.ring = k;
  C.objects = {"*"};
  C.D = 1;
  ChainComplex H;
  H.ring = k;
  H.D = 1;
  H.C = {FreeModule(k, {"1", "e"}), FreeModule(k, {"h"})};
  H.dmap.resize(2);
  H.dmap[1] = LinearMap(H.C[1], H.C[0]);
  H.dmap[1].at(1, 0) = Scalar::one(k);
  C.hom = {{H}};
  LinearMap m00(tensor_module(H.C[0], H.C[0]), H.C[0]);
  // (1,1) -> 1, (1,e) -> e, (e,1) -> e, (e,e) -> 0.
  m00.at(0, 0) = Scalar::one(k);
  m00.at(1, 1) = Scalar::one(k);
  m00.at(1, 2) = Scalar::one(k);
  LinearMap m01(tensor_module(H.C[0], H.C[1]), H.C[1]);
  m01.at(0, 0) = Scalar::one(k);  // (1,h) -> h; (e,h) -> 0
  LinearMap m10(tensor_module(H.C[1], H.C[0]), H.C[1]);
  m10.at(0, 0) = Scalar::one(k);  // (h,1) -> h; (h,e) -> 0
  C.comp[{0, 0, 0}] = {{{0, 0}, m00}, {{0, 1}, m01}, {{1, 0}, m10}};
  Vec id = H.C[0].zero_vec();
  id[0] = Scalar::one(k);
  C.id = {id};
  return C;
}

// A two-object dg-category with a closed arrow and its nullhomotopy witness
// placed in degree 1 of an endomorphism complex.
inline DGCategory dg_two_object_homotopy(const Ring& Q) {
  DGCategory C;
  C.ring = Q;
  C.objects = {"a", "b"};
  C.D = 1;
  auto complex = [&](std::vector<std::string> c0, std::vector<std::string> c1,
                     std::vector<std::pair<std::size_t, std::size_t>> dd) {
    ChainComplex H;
    H.ring = Q;
    H.D = 1;
    H.C = {FreeModule(Q, c0), FreeModule(Q, c1)};
    H.dmap.resize(2);
    H.dmap[1] = LinearMap(H.C[1], H.C[0]);
    for (auto [r, c] : dd) H.dmap[1].at(r, c) = Scalar::one(Q);
    return H;
  };
  C.hom.resize(2, std::vector<ChainComplex>(2));
  C.hom[0][0] = complex({"ida"}, {}, {});
  C.hom[1][1] = complex({"idb", "e"}, {"h"}, {{1, 0}});
  C.hom[0][1] = complex({"f"}, {"g"}, {});
  C.hom[1][0] = complex({}, {}, {});
  auto unit_m = [&](std::size_t x, std::size_t y, std::size_t z) {
    // Composition determined by unitality where one side is spanned by
    // identities; all other products vanish.
    std::map<std::pair<int, int>, LinearMap> out;
    for (int s = 0; s <= 1; ++s)
      for (int t = 0; s + t <= 1; ++t) {
        LinearMap m(tensor_module(C.hom[x][y].at(s), C.hom[y][z].at(t)),
                    C.hom[x][z].at(s + t));
        out[{s, t}] = std::move(m);
      }
    return out;
  };
  C.comp[{0, 0, 0}] = unit_m(0, 0, 0);
  C.comp[{0, 0, 1}] = unit_m(0, 0, 1);
  C.comp[{0, 1, 1}] = unit_m(0, 1, 1);
  C.comp[{1, 1, 1}] = unit_m(1, 1, 1);
  C.comp[{1, 1, 0}] = unit_m(1, 1, 0);
  C.comp[{1, 0, 0}] = unit_m(1, 0, 0);
  C.comp[{1, 0, 1}] = unit_m(1, 0, 1);
  C.comp[{0, 1, 0}] = unit_m(0, 1, 0);
  // ida acts as unit.
  C.comp[{0, 0, 0}][{0, 0}].at(0, 0) = Scalar::one(Q);
  C.comp[{0, 0, 1}][{0, 0}].at(0, 0) = Scalar::one(Q);  // (ida, f) -> f
  C.comp[{0, 0, 1}][{0, 1}].at(0, 0) = Scalar::one(Q);  // (ida, g) -> g
  // idb and e on hom(b,b): e acts as zero, idb as unit.
  auto& m11 = C.comp[{1, 1, 1}];
  m11[{0, 0}].at(0, 0) = Scalar::one(Q);  // idb.idb
  m11[{0, 0}].at(1, 1) = Scalar::one(Q);  // idb.e
  m11[{0, 0}].at(1, 2) = Scalar::one(Q);  // e.idb
  m11[{0, 1}].at(0, 0) = Scalar::one(Q);  // (idb, h) -> h
  m11[{1, 0}].at(0, 0) = Scalar::one(Q);  // (h, idb) -> h
  // hom(a,b) composed with hom(b,b).
  auto& m01 = C.comp[{0, 1, 1}];
  m01[{0, 0}].at(0, 0) = Scalar::one(Q);  // (f, idb) -> f
  m01[{0, 1}].at(0, 0) = Scalar::one(Q);  // (f, h) -> g, say
  m01[{1, 0}].at(0, 0) = Scalar::one(Q);  // (g, idb) -> g
  C.id = {C.hom[0][0].C[0].basis_vec(0), C.hom[1][1].C[0].basis_vec(0)};
  return C;
}

// One object, hom = k in degrees 0..2 with zero differential and the
// polynomial-truncation product.
inline DGCategory dg_poly_truncated(const Ring& Q) {
  DGCategory C;
  C.ring = Q;
  C.objects = {"*"};
  C.D = 2;
  ChainComplex H;
  H.ring = Q;
  H.D = 2;
  H.C = {FreeModule(Q, {"1"}), FreeModule(Q, {"t"}), FreeModule(Q, {"t2"})};
  H.dmap.resize(3);
  H.dmap[1] = LinearMap(H.C[1], H.C[0]);
  H.dmap[2] = LinearMap(H.C[2], H.C[1]);
  C.hom = {{H}};
  std::map<std::pair<int, int>, LinearMap> m;
  for (int s = 0; s <= 2; ++s)
    for (int t = 0; s + t <= 2; ++t) {
      LinearMap f(tensor_module(H.C[s], H.C[t]), H.C[s + t]);
      f.at(0, 0) = Scalar::one(Q);
      m[{s, t}] = std::move(f);
    }
  C.comp[{0, 0, 0}] = std::move(m);
  C.id = {H.C[0].basis_vec(0)};
  return C;
}

}  // namespace templike::fixtures
