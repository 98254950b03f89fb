#include <doctest.h>

#include <random>

#include "templike/linalg.hpp"

using namespace templike;

namespace {

FreeModule mod(Ring r, int rank, const std::string& prefix = "e") {
  std::vector<std::string> labels;
  for (int i = 0; i < rank; ++i) labels.push_back(prefix + std::to_string(i));
  return FreeModule(r, labels);
}

LinearMap from_ints(Ring r, const FreeModule& dom, const FreeModule& cod,
                    const std::vector<std::vector<long>>& rows) {
  LinearMap f(dom, cod);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) f.at(i, j) = Scalar(r, rows[i][j]);
  return f;
}

LinearMap random_map(std::mt19937& rng, Ring r, const FreeModule& dom,
                     const FreeModule& cod) {
  std::uniform_int_distribution<long> dist(-3, 3);
  LinearMap f(dom, cod);
  for (std::size_t i = 0; i < cod.rank(); ++i)
    for (std::size_t j = 0; j < dom.rank(); ++j) f.at(i, j) = Scalar(r, dist(rng));
  return f;
}

}  // namespace

TEST_CASE("scalar normal forms and parsing") {
  Ring Q = Ring::Q();
  CHECK(Scalar(Q, mpq_class(6, 8)).str() == "3/4");
  CHECK(Scalar(Q, mpq_class(3, -6)).str() == "-1/2");  // positive denominator
  CHECK(Scalar::parse(Q, "3/4") == Scalar(Q, mpq_class(3, 4)));
  Ring F7 = Ring::Fp(7);
  CHECK(Scalar(F7, -2).str() == "5 mod 7");
  CHECK(Scalar::parse(F7, "5 mod 7") == Scalar(F7, 12));
  CHECK((Scalar(F7, 3) * Scalar(F7, 5)).str() == "1 mod 7");
  CHECK(Scalar(F7, 3).inverse() == Scalar(F7, 5));
  Ring Z = Ring::Z();
  CHECK_THROWS_AS(Scalar(Z, mpq_class(1, 2)), contract_error);
  CHECK_THROWS_AS((void)(Scalar(Q, 1) + Scalar(Z, 1)), contract_error);
}

TEST_CASE("solve_affine on the documented examples") {
  Ring Q = Ring::Q();
  auto M2 = mod(Q, 2);
  SUBCASE("identity") {
    auto sol = solve_affine(LinearMap::identity(M2), {Scalar(Q, 3), Scalar(Q, 5)});
    REQUIRE(sol);
    CHECK(*sol == Vec{Scalar(Q, 3), Scalar(Q, 5)});
  }
  SUBCASE("inconsistent zero map") {
    auto M1 = mod(Q, 1);
    CHECK_FALSE(solve_affine(LinearMap::zero(M1, M1), {Scalar(Q, 1)}));
  }
  SUBCASE("pivot rule picks (2,0)") {
    auto A = from_ints(Q, M2, mod(Q, 1), {{1, 1}});
    auto sol = solve_affine(A, {Scalar(Q, 2)});
    REQUIRE(sol);
    CHECK(*sol == Vec{Scalar(Q, 2), Scalar(Q, 0)});
  }
  SUBCASE("dimension mismatch is a contract violation") {
    CHECK_THROWS_AS((void)solve_affine(LinearMap::identity(M2), {Scalar(Q, 1)}),
                    contract_error);
  }
}

TEST_CASE("solve_affine over Z uses integral semantics") {
  Ring Z = Ring::Z();
  auto A = from_ints(Z, mod(Z, 1), mod(Z, 1), {{2}});
  CHECK_FALSE(solve_affine(A, {Scalar(Z, 3)}));  // 2x = 3 has no integer solution
  auto sol = solve_affine(A, {Scalar(Z, 6)});
  REQUIRE(sol);
  CHECK(*sol == Vec{Scalar(Z, 3)});
}

TEST_CASE("kernel_basis on the documented examples") {
  Ring Q = Ring::Q();
  auto M2 = mod(Q, 2);
  CHECK(kernel_basis(LinearMap::identity(M2)).empty());
  CHECK(kernel_basis(LinearMap::zero(M2, M2)).size() == 2);
  auto A = from_ints(Q, M2, mod(Q, 1), {{1, 1}});
  auto basis = kernel_basis(A);
  REQUIRE(basis.size() == 1);
  CHECK(is_zero_vec(A.apply(basis[0])));
  CHECK_FALSE(is_zero_vec(basis[0]));
}

TEST_CASE("kernel over Z via Smith normal form") {
  Ring Z = Ring::Z();
  // x + y + z = 0 and 2y + 2z = 0 over Z: kernel is the rank-1 lattice (0,1,-1)
  auto A = from_ints(Z, mod(Z, 3), mod(Z, 2), {{1, 1, 1}, {0, 2, 2}});
  auto basis = kernel_basis(A);
  REQUIRE(basis.size() == 1);
  CHECK(is_zero_vec(A.apply(basis[0])));
  // primitivity: the generator is not a multiple of a smaller lattice vector
  bool primitive = false;
  for (const auto& e : basis[0])
    if (e.value() == 1 || e.value() == -1) primitive = true;
  CHECK(primitive);
}

TEST_CASE("tensor_map on the documented examples") {
  Ring Q = Ring::Q();
  auto M1 = mod(Q, 1);
  CHECK(tensor_map(LinearMap::identity(M1), LinearMap::identity(M1)) ==
        LinearMap::identity(tensor_module(M1, M1)));
  auto f = from_ints(Q, M1, M1, {{2}});
  auto g = from_ints(Q, M1, M1, {{3}});
  CHECK(tensor_map(f, g).at(0, 0) == Scalar(Q, 6));

  auto M2 = mod(Q, 2);
  auto swap = from_ints(Q, M2, M2, {{0, 1}, {1, 0}});
  auto t = tensor_map(LinearMap::identity(M2), swap);
  // brute force comparison on all 4 basis vectors
  auto dom = tensor_module(M2, M2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Vec v = t.apply(dom.basis_vec(i * 2 + j));
      Vec expect = tensor_vec(M2.basis_vec(i), swap.apply(M2.basis_vec(j)));
      CHECK(v == expect);
    }
}

TEST_CASE("rank-nullity and span membership on random matrices") {
  std::mt19937 rng(12345);
  for (Ring r : {Ring::Q(), Ring::Fp(5)}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto dom = mod(r, 1 + static_cast<int>(rng() % 4));
      auto cod = mod(r, 1 + static_cast<int>(rng() % 4), "f");
      auto A = random_map(rng, r, dom, cod);
      CHECK(rank(A) + kernel_basis(A).size() == dom.rank());

      Vec b(cod.rank(), Scalar::zero(r));
      for (auto& e : b) e = Scalar(r, static_cast<long>(rng() % 5) - 2);
      auto sol = solve_affine(A, b);
      std::vector<Vec> cols;
      for (std::size_t c = 0; c < dom.rank(); ++c) cols.push_back(A.apply(dom.basis_vec(c)));
      if (sol) {
        CHECK(A.apply(*sol) == b);
      } else {
        CHECK_FALSE(in_span(cols, b, r));
      }
    }
  }
}

TEST_CASE("tensor_map is functorial on random composable triples") {
  std::mt19937 rng(777);
  Ring Q = Ring::Q();
  for (int trial = 0; trial < 10; ++trial) {
    auto A = mod(Q, 1 + static_cast<int>(rng() % 3), "a");
    auto B = mod(Q, 1 + static_cast<int>(rng() % 3), "b");
    auto C = mod(Q, 1 + static_cast<int>(rng() % 3), "c");
    auto A2 = mod(Q, 1 + static_cast<int>(rng() % 3), "x");
    auto B2 = mod(Q, 1 + static_cast<int>(rng() % 3), "y");
    auto C2 = mod(Q, 1 + static_cast<int>(rng() % 3), "z");
    auto f = random_map(rng, Q, B, C), fp = random_map(rng, Q, A, B);
    auto g = random_map(rng, Q, B2, C2), gp = random_map(rng, Q, A2, B2);
    CHECK(compose(tensor_map(f, g), tensor_map(fp, gp)) ==
          tensor_map(compose(f, fp), compose(g, gp)));
  }
}

TEST_CASE("inverse round trips and detects non-invertibility") {
  Ring Q = Ring::Q();
  auto M2 = mod(Q, 2);
  auto A = from_ints(Q, M2, M2, {{1, 2}, {3, 5}});
  auto inv = inverse(A);
  REQUIRE(inv);
  CHECK(compose(A, *inv) == LinearMap::identity(M2));
  CHECK_FALSE(inverse(from_ints(Q, M2, M2, {{1, 2}, {2, 4}})));
  Ring Z = Ring::Z();
  auto M2z = mod(Z, 2);
  CHECK_FALSE(inverse(from_ints(Z, M2z, M2z, {{2, 0}, {0, 1}})));  // det 2, not a unit
  CHECK(inverse(from_ints(Z, M2z, M2z, {{1, 1}, {0, 1}})).has_value());
}
