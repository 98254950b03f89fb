#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "templike/simplicial.hpp"

using namespace templike;

namespace {

std::vector<std::size_t> nondegenerate_counts(const FinSimplicialSet& X) {
  std::vector<std::size_t> counts;
  for (int d = 0; d <= X.D; ++d) {
    std::size_t c = 0;
    for (std::size_t s = 0; s < X.size(d); ++s)
      if (!X.is_degenerate(d, s)) ++c;
    counts.push_back(c);
  }
  return counts;
}

}  // namespace

TEST_CASE("standard simplices validate and have the right cells") {
  auto d2 = standard_simplex(2, 4);
  d2.validate();
  auto counts = nondegenerate_counts(d2);
  CHECK(counts == std::vector<std::size_t>{3, 3, 1, 0, 0});
  CHECK(d2.id(2, d2.index_of(2, "[0,1,2]")) == "[0,1,2]");
  // degenerate simplices are named by vertex lists with repeats
  std::size_t s = d2.degen_at(1, 0, d2.index_of(1, "[0,1]"));
  CHECK(d2.id(2, s) == "[0,0,1]");
}

TEST_CASE("wedges") {
  auto w3 = wedge(3, 4);
  w3.validate();
  // W^3 = d0 u d3 of Delta^3; the edge [0,3] lies in neither face.
  CHECK(nondegenerate_counts(w3) == std::vector<std::size_t>{4, 5, 2, 0, 0});
  CHECK_THROWS(w3.index_of(1, "[0,3]"));
  // W^2 = Lambda^2_1: identical simplex id sets
  auto w2 = wedge(2, 3);
  auto h21 = horn(2, 1, 3);
  for (int d = 0; d <= 3; ++d) {
    std::set<std::string> a(w2.ids[static_cast<std::size_t>(d)].begin(),
                            w2.ids[static_cast<std::size_t>(d)].end());
    std::set<std::string> b(h21.ids[static_cast<std::size_t>(d)].begin(),
                            h21.ids[static_cast<std::size_t>(d)].end());
    CHECK(a == b);
  }
}

TEST_CASE("horns and boundaries validate") {
  horn(3, 1, 4).validate();
  horn(3, 2, 4).validate();
  auto b2 = boundary(2, 3);
  b2.validate();
  CHECK(nondegenerate_counts(b2) == std::vector<std::size_t>{3, 3, 0, 0});
}

TEST_CASE("inclusions of subcomplexes are simplicial maps") {
  auto d3 = standard_simplex(3, 4);
  for (auto* sub : {new FinSimplicialSet(horn(3, 1, 4)), new FinSimplicialSet(wedge(3, 4)),
                    new FinSimplicialSet(boundary(3, 4))}) {
    auto inc = inclusion_by_ids(*sub, d3);
    inc.validate();
    delete sub;
  }
}

TEST_CASE("act and vertex computations") {
  auto d3 = standard_simplex(3, 4);
  std::size_t top = d3.index_of(3, "[0,1,2,3]");
  CHECK(d3.id(0, d3.vertex(3, top, 0)) == "[0]");
  CHECK(d3.id(0, d3.vertex(3, top, 3)) == "[3]");
  // act by the monotone map (0,2,2): [2] -> [3]
  std::size_t img = d3.act(3, top, {0, 2, 2});
  CHECK(d3.id(2, img) == "[0,2,2]");
}

TEST_CASE("nerve of a poset category") {
  auto C = fixtures::poset_category(2);
  C.validate();
  auto N = nerve_cat(C, 4);
  N.validate();
  CHECK(N.size(0) == 3);
  CHECK(N.size(1) == 6);
  SUBCASE("the nerve is a quasi-category") {
    CHECK(is_quasi_category_up_to(N, 3).ok);
  }
  SUBCASE("homotopy category recovers the poset") {
    auto h = homotopy_category(N);
    h.validate();
    CHECK(h.objects.size() == C.objects.size());
    CHECK(h.morphisms.size() == C.morphisms.size());
    // composition tables agree under the canonical bijection of morphisms
    // (both index morphisms by source/target pairs, unique per pair here)
    for (std::size_t f = 0; f < h.morphisms.size(); ++f)
      for (std::size_t g = 0; g < h.morphisms.size(); ++g) {
        if (h.morphisms[g].src != h.morphisms[f].tgt) continue;
        auto gf = h.compose_mor(g, f);
        CHECK(h.morphisms[gf].src == h.morphisms[f].src);
        CHECK(h.morphisms[gf].tgt == h.morphisms[g].tgt);
      }
  }
}

TEST_CASE("one-object one-morphism nerve is a point up to degeneracy") {
  auto C = fixtures::poset_category(0);
  auto N = nerve_cat(C, 4);
  N.validate();
  for (int d = 1; d <= 4; ++d) {
    CHECK(N.size(d) == 1);
    CHECK(N.is_degenerate(d, 0));
  }
  CHECK(is_quasi_category_up_to(N, 3).ok);
}

TEST_CASE("standard simplices are quasi-categories") {
  auto d0 = standard_simplex(0, 3);
  CHECK(is_quasi_category_up_to(d0, 2).ok);
  auto d3 = standard_simplex(3, 4);
  CHECK(is_quasi_category_up_to(d3, 3).ok);
}

TEST_CASE("a bare horn fails the quasi-category check") {
  auto h = horn(2, 1, 3);
  auto rep = is_quasi_category_up_to(h, 2);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness.find("Lambda^2_1") != std::string::npos);
}

TEST_CASE("wedge lifting in standard simplices") {
  CHECK(lifts_all_wedges(standard_simplex(3, 4), 3).ok);
  CHECK(lifts_all_wedges(nerve_cat(fixtures::poset_category(2), 5), 4).ok);
}

TEST_CASE("simplicial-set <-> templicial-set identification") {
  auto d1 = standard_simplex(1, 3);
  auto P = as_templicial_set(d1);
  // Y~_1(0,1) = {[0,1]}, Y~_1(0,0) = {[0,0]}
  std::size_t e01 = d1.index_of(1, "[0,1]");
  std::size_t e00 = d1.index_of(1, "[0,0]");
  CHECK(P.endpoints[1][e01] == std::pair<std::size_t, std::size_t>(
                                   d1.index_of(0, "[0]"), d1.index_of(0, "[1]")));
  CHECK(P.endpoints[1][e00] == std::pair<std::size_t, std::size_t>(
                                   d1.index_of(0, "[0]"), d1.index_of(0, "[0]")));
  // Y~_0(a,b) is {a} iff a = b
  for (std::size_t v = 0; v < d1.size(0); ++v)
    CHECK(P.endpoints[0][v] == std::pair<std::size_t, std::size_t>(v, v));
  // flatten is the identity round trip
  auto d3 = standard_simplex(3, 4);
  CHECK(flatten(as_templicial_set(d3)).ids == d3.ids);
}
