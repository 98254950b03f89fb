#include <random>

#include "doctest.h"
#include "templike/quiver.hpp"

using namespace templike;

namespace {

Quiver random_quiver(std::mt19937& rng, const Ring& ring,
                     std::vector<std::string> verts, int max_rank,
                     const std::string& tag) {
  Quiver q(ring, std::move(verts));
  std::uniform_int_distribution<int> rk(0, max_rank);
  for (std::size_t a = 0; a < q.vertices.size(); ++a)
    for (std::size_t b = 0; b < q.vertices.size(); ++b) {
      const int r = rk(rng);
      std::vector<std::string> labels;
      for (int i = 0; i < r; ++i)
        labels.push_back(tag + std::to_string(a) + std::to_string(b) + "_" +
                         std::to_string(i));
      q.set_entry(a, b, FreeModule(ring, std::move(labels)));
    }
  return q;
}

QuiverMap random_map(std::mt19937& rng, const Quiver& src, const Quiver& tgt) {
  QuiverMap f(src, tgt);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (std::size_t a = 0; a < src.vertices.size(); ++a)
    for (std::size_t b = 0; b < src.vertices.size(); ++b) {
      LinearMap comp(src.entry(a, b), tgt.entry(a, b));
      for (auto& row : comp.mat)
        for (auto& x : row) x = Scalar(src.ring, coef(rng));
      f.set(a, b, std::move(comp));
    }
  return f;
}

}  // namespace

TEST_CASE("tensor over the vertex set") {
  const Ring k = Ring::Q();
  SUBCASE("single-path example") {
    Quiver q(k, {"a", "b"}), p(k, {"a", "b"});
    q.set_entry(0, 1, FreeModule(k, {"x"}));
    p.set_entry(1, 1, FreeModule(k, {"y"}));
    Quiver t = tensor_S(q, p);
    CHECK(t.entry_rank(0, 1) == 1);
    CHECK(t.entry(0, 1).basis[0] == "(b|x|y)");
    CHECK(t.entry_rank(0, 0) == 0);
    CHECK(t.entry_rank(1, 0) == 0);
    CHECK(t.entry_rank(1, 1) == 0);
  }
  SUBCASE("unit laws via unitors") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
      Quiver q = random_quiver(rng, k, {"a", "b", "c"}, 2, "q");
      CHECK(compose(left_unitor(q), left_unitor_inv(q)) ==
            QuiverMap::identity(q));
      CHECK(compose(left_unitor_inv(q), left_unitor(q)) ==
            QuiverMap::identity(tensor_S(unit_quiver(k, q.vertices), q)));
      CHECK(compose(right_unitor(q), right_unitor_inv(q)) ==
            QuiverMap::identity(q));
    }
  }
  SUBCASE("associator is an isomorphism and a natural relabeling") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      Quiver q = random_quiver(rng, k, {"a", "b"}, 2, "q");
      Quiver p = random_quiver(rng, k, {"a", "b"}, 2, "p");
      Quiver r = random_quiver(rng, k, {"a", "b"}, 2, "r");
      QuiverMap a = associator(q, p, r);
      a.validate();
      CHECK(a.is_isomorphism());
      // naturality in the third slot
      QuiverMap phi = random_map(rng, r, r);
      QuiverMap lhs = compose(associator(q, p, r),
                              tensor_S(QuiverMap::identity(tensor_S(q, p)),
                                       phi));
      QuiverMap rhs =
          compose(tensor_S(QuiverMap::identity(q),
                           tensor_S(QuiverMap::identity(p), phi)),
                  associator(q, p, r));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("pentagon identity") {
    std::mt19937 rng(99);
    Quiver q = random_quiver(rng, k, {"a", "b"}, 2, "q");
    Quiver p = random_quiver(rng, k, {"a", "b"}, 2, "p");
    Quiver r = random_quiver(rng, k, {"a", "b"}, 2, "r");
    Quiver s = random_quiver(rng, k, {"a", "b"}, 2, "s");
    QuiverMap top = compose(associator(q, p, tensor_S(r, s)),
                            associator(tensor_S(q, p), r, s));
    QuiverMap bottom = compose(
        tensor_S(QuiverMap::identity(q), associator(p, r, s)),
        compose(associator(q, tensor_S(p, r), s),
                tensor_S(associator(q, p, r), QuiverMap::identity(s))));
    CHECK(top == bottom);
  }
}

TEST_CASE("base change") {
  const Ring k = Ring::Q();
  SUBCASE("identity map gives identity functors") {
    std::mt19937 rng(5);
    Quiver q = random_quiver(rng, k, {"a", "b"}, 2, "q");
    VertexMap id = VertexMap::identity(q.vertices);
    CHECK(pullback(id, q) == q);
    Quiver pq = pushforward(id, q);
    CHECK(pq.entry_rank(0, 1) == q.entry_rank(0, 1));
    CHECK(adjunction_unit(id, q).is_isomorphism());
  }
  SUBCASE("collapse to a point") {
    Quiver q(k, {"a", "b"});
    q.set_entry(0, 1, FreeModule(k, {"x"}));
    VertexMap f({"a", "b"}, {"*"}, {0, 0});
    Quiver fq = pushforward(f, q);
    CHECK(fq.entry_rank(0, 0) == 1);
    CHECK(fq.entry(0, 0).basis[0] == "(a|b|x)");
  }
  SUBCASE("triangle identities") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::string> S{"a", "b", "c"}, T{"x", "y"};
      std::uniform_int_distribution<std::size_t> pick(0, T.size() - 1);
      VertexMap f(S, T, {pick(rng), pick(rng), pick(rng)});
      Quiver q = random_quiver(rng, k, S, 2, "q");
      Quiver p = random_quiver(rng, k, T, 2, "p");
      // (counit f_!Q) o (f_! unit) = id on f_! Q
      QuiverMap t1 = compose(adjunction_counit(f, pushforward(f, q)),
                             pushforward(f, adjunction_unit(f, q)));
      CHECK(t1 == QuiverMap::identity(pushforward(f, q)));
      // (f^* counit) o (unit at f^*P) = id on f^* P
      QuiverMap t2 = compose(pullback(f, adjunction_counit(f, p)),
                             adjunction_unit(f, pullback(f, p)));
      CHECK(t2 == QuiverMap::identity(pullback(f, p)));
    }
  }
  SUBCASE("pseudofunctoriality of pushforward") {
    std::mt19937 rng(77);
    std::vector<std::string> S{"a", "b", "c"}, T{"x", "y"}, U{"*"};
    VertexMap f(S, T, {0, 1, 0});
    VertexMap g(T, U, {0, 0});
    Quiver q = random_quiver(rng, k, S, 2, "q");
    QuiverMap iso = pushforward_compose_iso(g, f, q);
    iso.validate();
    CHECK(iso.is_isomorphism());
    // naturality: iso o (gf)_!(phi) = g_! f_!(phi) o iso
    QuiverMap phi = random_map(rng, q, q);
    VertexMap gf = compose(g, f);
    CHECK(compose(iso, pushforward(gf, phi)) ==
          compose(pushforward(g, pushforward(f, phi)), iso));
  }
  SUBCASE("lax structure of pullback is associative and unital") {
    std::mt19937 rng(13);
    std::vector<std::string> S{"a", "b", "c"}, T{"x", "y"};
    VertexMap f(S, T, {0, 1, 1});
    Quiver q = random_quiver(rng, k, T, 2, "q");
    Quiver p = random_quiver(rng, k, T, 2, "p");
    Quiver r = random_quiver(rng, k, T, 2, "r");
    // associativity: lax(q (x) p, r) o (lax(q,p) (x) id) o associator
    //              = f^*(associator) o lax(q, p (x) r) o (id (x) lax(p,r))
    Quiver fq = pullback(f, q), fp = pullback(f, p), fr = pullback(f, r);
    QuiverMap lhs = compose(
        pullback_lax(f, tensor_S(q, p), r),
        tensor_S(pullback_lax(f, q, p), QuiverMap::identity(fr)));
    QuiverMap rhs = compose(
        compose(pullback(f, inverse_map(associator(q, p, r))),
                pullback_lax(f, q, tensor_S(p, r))),
        compose(tensor_S(QuiverMap::identity(fq), pullback_lax(f, p, r)),
                associator(fq, fp, fr)));
    CHECK(lhs == rhs);
    // unitality on the left
    QuiverMap unit_left = compose(
        pullback(f, left_unitor(q)),
        compose(pullback_lax(f, unit_quiver(k, T), q),
                tensor_S(pullback_lax_unit(f, k), QuiverMap::identity(fq))));
    CHECK(unit_left == left_unitor(fq));
  }
}

TEST_CASE("total module assembly") {
  const Ring k = Ring::Q();
  CHECK(assemble_total(unit_quiver(k, {"a", "b"})).rank() == 2);
  Quiver q(k, {"a", "b"});
  q.set_entry(0, 1, FreeModule(k, {"u", "v"}));
  q.set_entry(1, 0, FreeModule(k, {"w"}));
  FreeModule total = assemble_total(q);
  CHECK(total.rank() == 3);
  CHECK(total.basis[0] == "(a|b|u)");
  CHECK(total.basis[2] == "(b|a|w)");
}

TEST_CASE("direct sums") {
  const Ring k = Ring::Q();
  std::mt19937 rng(4);
  Quiver q = random_quiver(rng, k, {"a", "b"}, 2, "q");
  Quiver p = random_quiver(rng, k, {"a", "b"}, 2, "p");
  std::vector<std::pair<std::string, Quiver>> parts{{"0", q}, {"1", p}};
  Quiver t = direct_sum(parts);
  CHECK(t.total_rank() == q.total_rank() + p.total_rank());
  for (std::size_t i = 0; i < 2; ++i) {
    QuiverMap in = direct_sum_injection(parts, i);
    QuiverMap pr = direct_sum_projection(parts, i);
    CHECK(compose(pr, in) == QuiverMap::identity(parts[i].second));
  }
  // the two projections jointly detect equality
  QuiverMap sum = add(compose(direct_sum_injection(parts, 0),
                              direct_sum_projection(parts, 0)),
                      compose(direct_sum_injection(parts, 1),
                              direct_sum_projection(parts, 1)));
  CHECK(sum == QuiverMap::identity(t));
}
