#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "templike/dgcat.hpp"
#include "templike/frobenius.hpp"

using namespace templike;

namespace {

// A free S-simplex with small random coefficients and the given vertices.
SSimplex random_ssimplex(const NarrowSimplicialModule& A, int n,
                         std::vector<std::size_t> verts, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  SSimplex s;
  s.n = n;
  s.vertices = verts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const FreeModule M =
          A.A[static_cast<std::size_t>(j - i)].entry(verts[static_cast<std::size_t>(i)],
                                                     verts[static_cast<std::size_t>(j)]);
      Vec v = M.zero_vec();
      for (std::size_t r = 0; r < v.size(); ++r)
        v[r] = Scalar(A.ring, coef(rng));
      s.set(i, j, std::move(v));
    }
  return s;
}

bool ssimplex_eq(const SSimplex& a, const SSimplex& b) {
  if (a.n != b.n || a.vertices != b.vertices) return false;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j <= a.n; ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

std::vector<Subset> all_subsets(int n) {
  std::vector<Subset> out;
  for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
    Subset I;
    for (int t = 0; t <= n; ++t)
      if (mask & (1u << t)) I.push_back(t);
    if (I.size() >= 2) out.push_back(std::move(I));
  }
  return out;
}

bool family_eq(const DGCategory& C, const DGFamily& a, const DGFamily& b) {
  if (a.n != b.n || a.vertices != b.vertices) return false;
  auto get = [&](const DGFamily& f, const Subset& I) {
    auto it = f.v.find(I);
    if (it != f.v.end()) return it->second;
    const std::size_t x = f.vertices[static_cast<std::size_t>(I.front())];
    const std::size_t y = f.vertices[static_cast<std::size_t>(I.back())];
    return C.hom[x][y].at(static_cast<int>(I.size()) - 2).zero_vec();
  };
  for (const Subset& I : all_subsets(a.n))
    if (get(a, I) != get(b, I)) return false;
  return true;
}

std::vector<std::size_t> random_vertices(std::size_t objects, int n,
                                         unsigned seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  std::uniform_int_distribution<std::size_t> pick(0, objects - 1);
  std::vector<std::size_t> out;
  for (int i = 0; i <= n; ++i) out.push_back(pick(rng));
  return out;
}

// The linear category with only identities on two objects.
LinearCategory discrete_two(const Ring& k) {
  LinearCategory A;
  A.hom = unit_quiver(k, {"a", "b"});
  A.comp = QuiverMap(tensor_S(A.hom, A.hom), A.hom);
  A.unit = QuiverMap(unit_quiver(k, {"a", "b"}), A.hom);
  for (std::size_t x = 0; x < 2; ++x) {
    LinearMap c(A.comp.source.entry(x, x), A.hom.entry(x, x));
    c.at(0, 0) = Scalar::one(k);
    A.comp.set(x, x, std::move(c));
    A.unit.set(x, x, LinearMap::identity(A.hom.entry(x, x)));
  }
  return A;
}

}  // namespace

TEST_CASE("H0 of a dg-category") {
  const Ring Q = Ring::Q();
  const DGCategory C = fixtures::dg_dual_plus_h(Q);
  const H0Result H = h_zero(C);
  CHECK(H.category.validate().ok);
  // e = dh dies; the class of the unit spans H0.
  CHECK(H.category.hom.entry_rank(0, 0) == 1);
  CHECK(H.q[0][0].proj.apply(C.id[0]) == H.category.hom.entry(0, 0).basis_vec(0));
  Vec e = C.hom[0][0].at(0).basis_vec(1);
  CHECK(is_zero_vec(H.q[0][0].proj.apply(e)));

  // H0 of an included linear category is the category itself.
  const LinearCategory A = fixtures::dual_numbers(Q);
  const DGCategory IA = include_degree_zero(A, 2);
  CHECK(check_dg(IA).ok);
  const H0Result HA = h_zero(IA);
  CHECK(HA.category.validate().ok);
  CHECK(linear_categories_isomorphic(HA.category, A));

  // Functoriality of H0 along the projection dg-functor C -> i(H0(C)):
  // in degree zero the functor is the quotient map itself, and the induced
  // map on H0 preserves identities and composition.
  const DGCategory IH = include_degree_zero(H.category, 1);
  const H0Result HH = h_zero(IH);
  const LinearMap F0 = H.q[0][0].proj;  // degree-0 component of the functor
  auto induced = [&](const Vec& cls) {
    return HH.q[0][0].proj.apply(F0.apply(H.q[0][0].sect.apply(cls)));
  };
  CHECK(induced(H.q[0][0].proj.apply(C.id[0])) ==
        HH.q[0][0].proj.apply(IH.id[0]));
  for (std::size_t a = 0; a < H.category.hom.entry_rank(0, 0); ++a)
    for (std::size_t b = 0; b < H.category.hom.entry_rank(0, 0); ++b) {
      const Vec fa = H.category.hom.entry(0, 0).basis_vec(a);
      const Vec fb = H.category.hom.entry(0, 0).basis_vec(b);
      const Vec lhs = induced(H.category.comp.at(0, 0).apply(
          tensor_element(H.category.hom, H.category.hom, 0, 0, 0, fa, fb)));
      const Vec rhs = HH.category.comp.at(0, 0).apply(tensor_element(
          HH.category.hom, HH.category.hom, 0, 0, 0, induced(fa), induced(fb)));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("the linear dg-nerve is a templicial Frobenius module") {
  const Ring Q = Ring::Q();
  const DGCategory C = fixtures::dg_dual_plus_h(Q);
  const LinearDGNerve N = linear_dg_nerve(C, 4);
  CHECK(check_templicial(N.T.F.host).ok);
  CHECK(check_naf(N.T.F).ok);
  CHECK(check_frobenius(N.T.F).ok);
}

TEST_CASE("the dg-nerve of a linear category is its nerve") {
  const Ring Q = Ring::Q();
  const LinearCategory A = free_linear_category(fixtures::poset_category(1), Q);
  REQUIRE(A.hom.vertices.size() == 2);
  const DGCategory IA = include_degree_zero(A, 0);
  const int D = 4;
  const LinearDGNerve N = linear_dg_nerve(IA, D);
  const TemplicialModule NA = linear_nerve(A, D);
  for (int n = 0; n <= D; ++n)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        CHECK(N.T.F.host.X[static_cast<std::size_t>(n)].entry_rank(x, y) ==
              NA.X[static_cast<std::size_t>(n)].entry_rank(x, y));
  const auto rec = strong_monoidal_recognize(N.T.F.host);
  REQUIRE(rec.has_value());
  CHECK(linear_categories_isomorphic(rec->category, A));
}

TEST_CASE("the homotopy category of the dg-nerve is H0") {
  const Ring Q = Ring::Q();
  for (const DGCategory& C :
       {fixtures::dg_dual_plus_h(Q), fixtures::dg_two_object_homotopy(Q)}) {
    const LinearDGNerve N = linear_dg_nerve(C, 3);
    const HomotopyCategoryResult h = linear_homotopy_category(N.T.F.host);
    const H0Result H = h_zero(C);
    CHECK(linear_categories_isomorphic(h.category, H.category));
  }
}

TEST_CASE("the dg-nerve of a discrete dg-category is the unit module") {
  const Ring Q = Ring::Q();
  const DGCategory C = include_degree_zero(discrete_two(Q), 0);
  const LinearDGNerve N = linear_dg_nerve(C, 4);
  CHECK(check_templicial(N.T.F.host).ok);
  for (int n = 0; n <= 4; ++n)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        CHECK(N.T.F.host.X[static_cast<std::size_t>(n)].entry_rank(x, y) ==
              (x == y ? 1u : 0u));
}

TEST_CASE("the S-construction is simplicial") {
  const Ring Q = Ring::Q();
  const DGCategory C2 = fixtures::dg_two_object_homotopy(Q);
  const EnrichedGamma E = dg_enrich_gamma(C2, 5);
  REQUIRE(check_narrow(E.A).ok);
  unsigned seed = 1;
  for (int n = 3; n <= 4; ++n)
    for (unsigned trial = 0; trial < 3; ++trial) {
      const SSimplex s = random_ssimplex(
          E.A, n, random_vertices(2, n, seed), seed);
      ++seed;
      // d_k d_l = d_{l-1} d_k for k < l.
      for (int l = 1; l <= n; ++l)
        for (int k = 0; k < l; ++k)
          CHECK(ssimplex_eq(s_face(E.A, s_face(E.A, s, l), k),
                            s_face(E.A, s_face(E.A, s, k), l - 1)));
      // s_k s_l = s_{l+1} s_k for k <= l (within the truncation).
      if (n + 2 <= E.A.D)
        for (int l = 0; l <= n; ++l)
          for (int k = 0; k <= l; ++k)
            CHECK(ssimplex_eq(s_degen(E.A, s_degen(E.A, s, l), k),
                              s_degen(E.A, s_degen(E.A, s, k), l + 1)));
      // mixed identities.
      for (int l = 0; l <= n; ++l)
        for (int k = 0; k <= n + 1; ++k) {
          const SSimplex ds = s_face(E.A, s_degen(E.A, s, l), k);
          if (k == l || k == l + 1)
            CHECK(ssimplex_eq(ds, s));
          else if (k < l)
            CHECK(ssimplex_eq(ds, s_degen(E.A, s_face(E.A, s, k), l - 1)));
          else
            CHECK(ssimplex_eq(ds, s_degen(E.A, s_face(E.A, s, k - 1), l)));
        }
    }
  // The degeneracy inserts the identity on the repeated short edge.
  const SSimplex s = random_ssimplex(E.A, 2, {0, 1, 1}, 7);
  for (int l = 0; l <= 2; ++l) {
    const SSimplex ds = s_degen(E.A, s, l);
    const std::size_t x = s.vertices[static_cast<std::size_t>(l)];
    CHECK(ds.at(l, l + 1) ==
          E.A.u.at(x, x).apply(Vec{Scalar::one(Q)}));
  }
}

TEST_CASE("the simplices of the free templicial module form the S-construction") {
  const Ring Q = Ring::Q();
  // On the free module over the kernel of a nerve...
  const LinearCategory A = fixtures::dual_numbers(Q);
  const KernelModule K = kernel_K(nerve_naf(linear_nerve(A, 4)));
  const TensorTemplicial TK = tensor_T(K.A);
  const SSimplex sk = random_ssimplex(K.A, 2, {0, 0, 0}, 11);
  const USimplex uk = s_to_utilde(TK, K.A, sk);
  CHECK(u_simplex_validate(TK.F.host, uk).ok);
  CHECK(ssimplex_eq(utilde_to_s(TK, K.A, uk), sk));

  // ...and on the enrichment of a dg-category, in both directions.
  const DGCategory C = fixtures::dg_two_object_homotopy(Q);
  const LinearDGNerve N = linear_dg_nerve(C, 4);
  unsigned seed = 21;
  for (int n = 2; n <= 4; ++n) {
    const SSimplex s = random_ssimplex(
        N.enriched.A, n, random_vertices(2, n, seed), seed);
    ++seed;
    const USimplex u = s_to_utilde(N.T, N.enriched.A, s);
    CHECK(u_simplex_validate(N.T.F.host, u).ok);
    CHECK(ssimplex_eq(utilde_to_s(N.T, N.enriched.A, u), s));
    // The induced u-simplex round trip fixes u as well.
    USimplex u2 = s_to_utilde(N.T, N.enriched.A, utilde_to_s(N.T, N.enriched.A, u));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) CHECK(u2.a(i, j) == u.a(i, j));
    // Faces and degeneracies commute with the correspondence.
    for (int l = 0; l <= n; ++l) {
      CHECK(ssimplex_eq(utilde_to_s(N.T, N.enriched.A, u_face(N.T.F.host, u, l)),
                        s_face(N.enriched.A, s, l)));
      if (n < 4)
        CHECK(ssimplex_eq(
            utilde_to_s(N.T, N.enriched.A, u_degen(N.T.F.host, u, l)),
            s_degen(N.enriched.A, s, l)));
    }
  }
  // Face spot check in the middle of a 3-simplex.
  const SSimplex s3 = random_ssimplex(N.enriched.A, 3, {0, 1, 1, 1}, 41);
  const USimplex u3 = s_to_utilde(N.T, N.enriched.A, s3);
  CHECK(ssimplex_eq(utilde_to_s(N.T, N.enriched.A, u_face(N.T.F.host, u3, 2)),
                    s_face(N.enriched.A, s3, 2)));
}

TEST_CASE("epsilon parities") {
  for (int n = 0; n <= 6; ++n)
    for (const Subset& I : all_subsets(n)) {
      const int m = static_cast<int>(I.size()) - 1;
      CHECK(epsilon_exponent(I.front(), I) == 0);
      CHECK(epsilon_exponent(I.back(), I) == m % 2);
    }
}

TEST_CASE("degree-zero dg-categories reduce to category composition") {
  const Ring Q = Ring::Q();
  const LinearCategory A = free_linear_category(fixtures::poset_category(2), Q);
  const DGCategory C = include_degree_zero(A, 1);
  DGFamily fam;
  fam.n = 2;
  fam.vertices = {0, 1, 2};
  fam.set({0, 1}, C.hom[0][1].at(0).basis_vec(0));
  fam.set({1, 2}, C.hom[1][2].at(0).basis_vec(0));
  fam.set({0, 2}, C.hom[0][2].at(0).basis_vec(0));
  // The poset has a unique arrow in each hom, so the composite is the
  // generator and the family satisfies the nerve condition.
  CHECK(classical_dg_nerve_check(C, fam).ok);
  // In degree zero the bridge is the identity on the spine, and the S-side
  // membership forces the long-edge components of b to vanish.
  const DGFamily b = dg_nerve_bridge(C, fam, true);
  CHECK(b.at({0, 1}) == fam.at({0, 1}));
  CHECK(b.at({1, 2}) == fam.at({1, 2}));
  CHECK(is_zero_vec(b.at({0, 2})));
  CHECK(s_side_check(C, b).ok);
  CHECK(family_eq(C, dg_nerve_bridge(C, b, false), fam));
  // A family with the wrong long edge is rejected with a witness.
  DGFamily bad = fam;
  bad.set({0, 2}, scale_vec(Scalar(Q, 2), fam.at({0, 2})));
  const CheckReport r = classical_dg_nerve_check(C, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("{0,1,2}") != std::string::npos);
}

TEST_CASE("the bridge between dg-nerve and S-construction families") {
  const Ring Q = Ring::Q();
  const std::vector<DGCategory> dgfixtures = {
      fixtures::dg_dual_plus_h(Q), fixtures::dg_two_object_homotopy(Q),
      fixtures::dg_poly_truncated(Q)};
  unsigned seed = 100;
  for (const DGCategory& C : dgfixtures) {
    const EnrichedGamma E = dg_enrich_gamma(C, 5);
    const std::size_t no = C.objects.size();
    for (int n = 2; n <= 4; ++n)
      for (unsigned trial = 0; trial < 3; ++trial) {
        const SSimplex s = random_ssimplex(
            E.A, n, random_vertices(no, n, seed), seed);
        ++seed;
        const DGFamily b = ssimplex_to_family(E, C, s);
        // Gamma membership is the S-side condition.
        CHECK(s_side_check(C, b).ok);
        // The bridge lands in the dg-nerve and is an involution.
        const DGFamily a = dg_nerve_bridge(C, b, false);
        CHECK(classical_dg_nerve_check(C, a).ok);
        CHECK(family_eq(C, dg_nerve_bridge(C, a, true), b));
        // On single edges the two families agree.
        for (int i = 0; i < n; ++i)
          CHECK(a.at({i, i + 1}) == b.at({i, i + 1}));
        // Faces and degeneracies commute with the bridge through the
        // S-construction.
        for (int l = 0; l <= n; ++l) {
          const DGFamily bf = ssimplex_to_family(E, C, s_face(E.A, s, l));
          CHECK(family_eq(C, dg_family_face(C, a, l),
                          dg_nerve_bridge(C, bf, false)));
          if (n < 4) {
            const DGFamily bs = ssimplex_to_family(E, C, s_degen(E.A, s, l));
            CHECK(family_eq(C, dg_family_degen(C, a, l),
                            dg_nerve_bridge(C, bs, false)));
          }
        }
        // The family is recovered from its S-simplex.
        CHECK(ssimplex_eq(family_to_ssimplex(E, C, b), s));
      }
    // A mutated dg-nerve family is invalid, with a named witness.
    const SSimplex s = random_ssimplex(E.A, 3, {0, 0, 0, 0}, seed);
    ++seed;
    DGFamily a =
        dg_nerve_bridge(C, ssimplex_to_family(E, C, s), false);
    // Shift the long edge: the facet term of the condition at {0,1,3}
    // changes while everything else stays fixed.
    Vec edge = a.at({0, 3});
    if (!edge.empty()) {
      edge[0] = edge[0] + Scalar::one(Q);
      a.set({0, 3}, edge);
      const CheckReport r = classical_dg_nerve_check(C, a);
      CHECK_FALSE(r.ok);
      CHECK(r.witness.find("{") != std::string::npos);
    }
  }
}

TEST_CASE("normalizing the dg-nerve kernel recovers the hom complexes") {
  const Ring Q = Ring::Q();
  const std::vector<DGCategory> dgfixtures = {
      fixtures::dg_dual_plus_h(Q), fixtures::dg_two_object_homotopy(Q),
      fixtures::dg_poly_truncated(Q)};
  for (const DGCategory& C : dgfixtures) {
    const int D = C.D + 3;
    const LinearDGNerve N = linear_dg_nerve(C, D);
    const KernelModule K = kernel_K(N.T.F);
    const std::size_t no = C.objects.size();
    for (std::size_t x = 0; x < no; ++x)
      for (std::size_t y = 0; y < no; ++y) {
        const NormalizedResult M = normalized_augmented(hom_aug(K.A, x, y));
        // Over a field, a complex is determined up to isomorphism by the
        // ranks of its terms and differentials; compare against the hom,
        // which sits in chain degrees shifted by one.
        for (int n = 0; n <= C.D; ++n) {
          CHECK(M.N.at(n).rank() == C.hom[x][y].at(n).rank());
          if (n >= 1)
            CHECK(rank(M.N.d(n)) == rank(C.hom[x][y].d(n)));
        }
        for (int n = C.D + 1; n <= M.N.D; ++n)
          CHECK(M.N.at(n).rank() == 0);
      }
  }
}
