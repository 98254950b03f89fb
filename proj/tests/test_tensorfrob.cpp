#include "doctest.h"
#include "fixtures.hpp"
#include "templike/frobenius.hpp"
#include "templike/tensorfrob.hpp"

using namespace templike;

namespace {

// Total rank of a quiver across all vertex pairs.
std::size_t total_rank(const Quiver& q) {
  std::size_t r = 0;
  for (std::size_t a = 0; a < q.vertices.size(); ++a)
    for (std::size_t b = 0; b < q.vertices.size(); ++b)
      r += q.entry(a, b).rank();
  return r;
}

// A small deterministic graded quiver over a two-vertex base.
GradedQuiver small_graded(const Ring& k, int D) {
  GradedQuiver V;
  V.ring = k;
  V.base = {"a", "b"};
  V.D = D;
  V.V.assign(static_cast<std::size_t>(D) + 1, Quiver(k, V.base));
  V.V[1].set_entry(0, 0, FreeModule(k, {"p"}));
  V.V[1].set_entry(0, 1, FreeModule(k, {"q", "r"}));
  V.V[1].set_entry(1, 1, FreeModule(k, {"s"}));
  if (D >= 2) V.V[2].set_entry(0, 1, FreeModule(k, {"h"}));
  if (D >= 3) V.V[3].set_entry(0, 0, FreeModule(k, {"c"}));
  return V;
}

// A graded quiver on three vertices, used for base-change tests.
GradedQuiver three_vertex_graded(const Ring& k) {
  GradedQuiver V;
  V.ring = k;
  V.base = {"a", "b", "c"};
  V.D = 2;
  V.V.assign(3, Quiver(k, V.base));
  V.V[1].set_entry(0, 1, FreeModule(k, {"f"}));
  V.V[1].set_entry(1, 2, FreeModule(k, {"g"}));
  V.V[1].set_entry(0, 2, FreeModule(k, {"h"}));
  V.V[2].set_entry(0, 2, FreeModule(k, {"H"}));
  return V;
}

// The inclusion of the degree-n generators into the free graded monoid,
// i.e. the summand of the singleton partition {0, n}.
QuiverMap generator_injection(const GradedTensorAlgebra& T, int n) {
  const PartitionSum& S = T.sum[static_cast<std::size_t>(n)];
  return S.iota[S.index_of(Partition(n, {0, n}, 0))];
}

}  // namespace

TEST_CASE("graded shadow of a nerve") {
  const Ring Q = Ring::Q();
  const NaFStructure N = nerve_naf(linear_nerve(fixtures::dual_numbers(Q), 3));
  const GradedBimonoid B = graded_of(N);
  CHECK(check_graded_mu_z(B).ok);
  CHECK(graded_frobenius_equation_check(B));

  SUBCASE("the middle term carries a minus sign") {
    for (int n = 0; n <= B.D; ++n) {
      auto [lhs, rhs] = graded_frobenius_equation_sides(B, n, +1);
      CHECK(lhs != rhs);
    }
  }

  SUBCASE("zero-index conventions agree with the unitors") {
    for (int n = 0; n <= B.D; ++n) {
      CHECK(compose(graded_z(B, 0, n), graded_mu(B, 0, n)) ==
            QuiverMap::identity(B.X[static_cast<std::size_t>(n)]));
      CHECK(compose(graded_z(B, n, 0), graded_mu(B, n, 0)) ==
            QuiverMap::identity(B.X[static_cast<std::size_t>(n)]));
    }
  }
}

TEST_CASE("the free graded monoid and its kernel") {
  const Ring Q = Ring::Q();
  const GradedQuiver V = small_graded(Q, 3);
  const GradedTensorAlgebra T = tensor_T_graded(V);
  CHECK(check_graded_mu_z(T.B).ok);
  CHECK(graded_frobenius_equation_check(T.B));

  SUBCASE("the kernel recovers the generators") {
    const KernelGraded K = kernel_graded(colax_of(T.B));
    for (int n = 1; n <= V.D; ++n) {
      CHECK(total_rank(K.K.at(n)) == total_rank(V.at(n)));
      // The generator summand lands in the kernel and exhausts it.
      const QuiverMap j =
          factor_through(K.incl[static_cast<std::size_t>(n)],
                         generator_injection(T, n));
      CHECK(j.is_isomorphism());
    }
  }

  SUBCASE("degree one is always the whole level") {
    const KernelGraded K = kernel_graded(colax_of(T.B));
    CHECK(K.incl[1].is_isomorphism());
  }
}

TEST_CASE("the retraction onto the kernel") {
  const Ring Q = Ring::Q();
  const GradedBimonoid B =
      tensor_T_graded(small_graded(Q, 3)).B;
  const KernelGraded K = kernel_graded(colax_of(B));

  SUBCASE("degree one is the identity") {
    CHECK(xi_endomorphism(B, 1) == QuiverMap::identity(B.X[1]));
  }

  SUBCASE("degree two is id minus the split part") {
    const QuiverMap expected =
        sub(QuiverMap::identity(B.X[2]),
            compose(B.mult(1, 1), B.comult(1, 1)));
    CHECK(xi_endomorphism(B, 2) == expected);
  }

  SUBCASE("it lands in the kernel and restricts to the identity there") {
    for (int n = 1; n <= B.D; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      const QuiverMap xi = xi_endomorphism(B, n);
      const QuiverMap r = xi_retraction(B, K, n);
      CHECK(compose(K.incl[un], r) == xi);
      CHECK(factor_through(K.incl[un], compose(xi, K.incl[un])) ==
            QuiverMap::identity(K.K.at(n)));
    }
  }
}

TEST_CASE("graded comparison isomorphisms") {
  const Ring Q = Ring::Q();

  SUBCASE("on a free graded monoid") {
    const GradedBimonoid B = tensor_T_graded(small_graded(Q, 3)).B;
    const GradedRoundTrip rt = epsilon_phi_roundtrip(B);
    for (int n = 1; n <= B.D; ++n)
      CHECK(total_rank(rt.TK.B.X[static_cast<std::size_t>(n)]) ==
            total_rank(B.X[static_cast<std::size_t>(n)]));
  }

  SUBCASE("on the shadow of a nerve") {
    const NaFStructure N =
        nerve_naf(linear_nerve(fixtures::dual_numbers(Q), 3));
    const GradedRoundTrip rt = epsilon_phi_roundtrip(graded_of(N));
    // A nerve is free on its degree-one level: higher kernels vanish.
    CHECK(total_rank(rt.K.K.at(1)) == 2);
    CHECK(total_rank(rt.K.K.at(2)) == 0);
    CHECK(total_rank(rt.K.K.at(3)) == 0);
  }

  SUBCASE("over the integers") {
    const NaFStructure N =
        nerve_naf(linear_nerve(fixtures::dual_numbers(Ring::Z()), 3));
    CHECK_NOTHROW(epsilon_phi_roundtrip(graded_of(N)));
  }
}

TEST_CASE("factorization through a non-split sublattice is refused") {
  const Ring Z = Ring::Z();
  Quiver q(Z, {"*"});
  q.set_entry(0, 0, FreeModule(Z, {"x"}));
  QuiverMap incl(q, q);
  LinearMap two(q.entry(0, 0), q.entry(0, 0));
  two.at(0, 0) = Scalar(Z, 2);
  incl.set(0, 0, std::move(two));
  CHECK_THROWS_AS(factor_through(incl, QuiverMap::identity(q)),
                  contract_error);
}

TEST_CASE("narrow simplicial modules") {
  const Ring Q = Ring::Q();
  const NarrowSimplicialModule A = fixtures::idempotent_narrow(Q);
  CHECK(check_narrow(A).ok);

  SUBCASE("the action is functorial") {
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        for (const FIntMorphism& f : all_fint_morphisms(m, n)) {
          if (!f.is_narrow()) continue;
          for (int l = 1; l <= 3; ++l)
            for (const FIntMorphism& g : all_fint_morphisms(l, m)) {
              if (!g.is_narrow()) continue;
              CHECK(narrow_act(A, compose(f, g)) ==
                    compose(narrow_act(A, g), narrow_act(A, f)));
            }
        }
  }

  SUBCASE("broken naturality is detected") {
    NarrowSimplicialModule bad = A;
    QuiverMap& m22 = bad.m.at({2, 2});
    LinearMap c = m22.at(0, 0);
    c.at(0, 0) = Scalar(Q, 2);
    m22.set(0, 0, std::move(c));
    const CheckReport r = check_narrow(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.witness.find("m(2,2)") != std::string::npos);
  }

  SUBCASE("augmented reindexing round trip") {
    const AugSimplicialModule aug = aug_of_narrow_module(A);
    CHECK(check_augmented(aug).ok);
    CHECK(aug.level(-1) == A.A[1]);
    CHECK(aug.level(1) == A.A[3]);
    const NarrowSimplicialModule back = narrow_of_aug_module(aug);
    CHECK(back.A == A.A);
    CHECK(back.faces == A.faces);
    CHECK(back.degens == A.degens);
  }
}

TEST_CASE("the free templicial module on a narrow monoid") {
  const Ring Q = Ring::Q();
  const NarrowSimplicialModule A = fixtures::idempotent_narrow(Q);
  const TensorTemplicial T = tensor_T(A);
  CHECK(check_templicial(T.F.host).ok);
  CHECK(check_naf(T.F).ok);
  CHECK(check_frobenius(T.F).ok);

  SUBCASE("levels are partition sums") {
    // Level 2: {0,2} and {0,1,2} give A_2 (+) A_1 (x) A_1 of rank 1 + 4.
    CHECK(total_rank(T.F.host.X[2]) == 5);
    // Level 3: A_3 (+) A_1 A_2 (+) A_2 A_1 (+) A_1 A_1 A_1.
    CHECK(total_rank(T.F.host.X[3]) == 1 + 2 + 2 + 8);
  }

  SUBCASE("the simplicial kernel recovers the generators") {
    const KernelModule K = kernel_K(T.F);
    CHECK(check_narrow(K.A).ok);
    for (int n = 1; n <= A.D; ++n) {
      CHECK(total_rank(K.A.A[static_cast<std::size_t>(n)]) ==
            total_rank(A.A[static_cast<std::size_t>(n)]));
      const PartitionSum& S = T.sum[static_cast<std::size_t>(n)];
      const QuiverMap j = factor_through(
          K.incl[static_cast<std::size_t>(n)],
          S.iota[S.index_of(Partition(n, {0, n}, 0))]);
      CHECK(j.is_isomorphism());
    }
  }
}

TEST_CASE("templicial comparison and naturality") {
  const Ring Q = Ring::Q();

  SUBCASE("on a linear nerve") {
    const NaFStructure N =
        nerve_naf(linear_nerve(fixtures::dual_numbers(Q), 3));
    const TemplicialRoundTrip rt = epsilon_phi_templicial(N);
    // Naturality against arbitrary composite operators, not just generators.
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m)
        for (const FIntMorphism& f : all_fint_morphisms(m, n)) {
          if (f(0) != 0 || f(m) != n) continue;  // endpoint-preserving only
          CHECK(compose(templicial_act(N.host, f),
                        rt.eps[static_cast<std::size_t>(n)]) ==
                compose(rt.eps[static_cast<std::size_t>(m)],
                        templicial_act(rt.TK.F.host, f)));
        }
  }

  SUBCASE("on a free templicial module") {
    const NarrowSimplicialModule A = fixtures::idempotent_narrow(Q);
    CHECK_NOTHROW(epsilon_phi_templicial(tensor_T(A).F));
  }
}

TEST_CASE("kernels commute with base change") {
  const Ring Q = Ring::Q();
  const GradedQuiver V = three_vertex_graded(Q);
  const GradedColax B = colax_of(tensor_T_graded(V).B);
  // Collapse b and c to a single vertex, then everything to a point.
  const VertexMap f({"a", "b", "c"}, {"x", "y"}, {0, 1, 1});
  const VertexMap g({"x", "y"}, {"*"}, {0, 0});
  const BaseChange bc_f = kernel_base_change(f, B);
  const GradedColax Bf = pushforward_graded(f, B);
  const BaseChange bc_g = kernel_base_change(g, Bf);
  const BaseChange bc_gf = kernel_base_change(compose(g, f), B);

  SUBCASE("coherence triangle") {
    const KernelGraded KB = kernel_graded(B);
    const GradedColax Bgf = pushforward_graded(compose(g, f), B);
    const GradedColax Bgf2 = pushforward_graded(g, Bf);
    for (int n = 1; n <= B.D; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      // Identify the kernels of the two models of the composite pushforward.
      const QuiverMap c = pushforward_compose_iso(g, f, B.X[un]);
      const QuiverMap kappa = factor_through(
          bc_g.pushed_kernel.incl[un],
          compose(c, kernel_graded(Bgf).incl[un]));
      CHECK(kappa.is_isomorphism());
      const QuiverMap lhs = compose(kappa, bc_gf.psi[un]);
      const QuiverMap rhs =
          compose(bc_g.psi[un],
                  compose(pushforward(g, bc_f.psi[un]),
                          pushforward_compose_iso(g, f, KB.K.at(n))));
      CHECK(lhs == rhs);
    }
  }
}
