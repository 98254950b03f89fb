// Finitely generated free modules with named bases, linear maps between
// them, and the exact solvers everything else relies on: affine solve,
// kernel bases (row reduction over fields, Smith normal form over Z) and
// Kronecker products.
//
// All values are immutable once built and all operations are pure.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "templike/scalar.hpp"

namespace templike {

using Vec = std::vector<Scalar>;

struct FreeModule {
  Ring ring{};
  std::vector<std::string> basis;  // pairwise distinct labels; rank 0 = zero module

  FreeModule() = default;
  FreeModule(Ring r, std::vector<std::string> labels);

  std::size_t rank() const { return basis.size(); }
  // Index of a label; throws if absent.
  std::size_t index_of(const std::string& label) const;
  bool operator==(const FreeModule&) const = default;

  Vec zero_vec() const { return Vec(rank(), Scalar::zero(ring)); }
  Vec basis_vec(std::size_t i) const;
};

// Canonical label of a tensor-product basis vector (left factor first).
std::string pair_label(const std::string& a, const std::string& b);

// Tensor product module, basis in row-major (left-factor-major) order.
FreeModule tensor_module(const FreeModule& a, const FreeModule& b);

struct LinearMap {
  FreeModule domain, codomain;
  // mat[r][c]: coefficient of codomain basis vector r in the image of
  // domain basis vector c.
  std::vector<Vec> mat;

  LinearMap() = default;
  LinearMap(FreeModule dom, FreeModule cod);  // zero map

  static LinearMap identity(const FreeModule& m);
  static LinearMap zero(const FreeModule& dom, const FreeModule& cod);

  Scalar& at(std::size_t r, std::size_t c) { return mat[r][c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return mat[r][c]; }

  Vec apply(const Vec& x) const;
  bool is_zero() const;
  bool operator==(const LinearMap& o) const;
};

// f after g; requires basis-for-basis equality of the intermediate module.
LinearMap compose(const LinearMap& f, const LinearMap& g);
LinearMap add(const LinearMap& f, const LinearMap& g);
LinearMap sub(const LinearMap& f, const LinearMap& g);
LinearMap negate(const LinearMap& f);
LinearMap scale(const Scalar& c, const LinearMap& f);

// Kronecker product f (x) g on tensor_module-labelled modules.
LinearMap tensor_map(const LinearMap& f, const LinearMap& g);

Vec add_vec(const Vec& a, const Vec& b);
Vec sub_vec(const Vec& a, const Vec& b);
Vec scale_vec(const Scalar& c, const Vec& v);
bool is_zero_vec(const Vec& v);
Vec tensor_vec(const Vec& a, const Vec& b);

// Deterministic solve of A x = b: first solution under column-echelon
// pivoting with lexicographically earliest pivots (free variables zero);
// over Z an integral solution via Smith normal form.  none if inconsistent.
std::optional<Vec> solve_affine(const LinearMap& A, const Vec& b);

// Ordered basis of ker A; empty iff A is injective.  Over fields by row
// reduction (deterministic echelon order), over Z a lattice basis from the
// Smith normal form.
std::vector<Vec> kernel_basis(const LinearMap& A);

std::size_t rank(const LinearMap& A);

// True if v lies in the span (field) / lattice (Z) generated by gens.
bool in_span(const std::vector<Vec>& gens, const Vec& v, const Ring& ring);

// Expresses v in terms of the given (not necessarily independent)
// generators, if possible.
std::optional<Vec> coordinates_in(const std::vector<Vec>& gens, const Vec& v,
                                  const Ring& ring);

// Inverse of a square invertible map; none if not invertible over the ring.
std::optional<LinearMap> inverse(const LinearMap& A);

}  // namespace templike
