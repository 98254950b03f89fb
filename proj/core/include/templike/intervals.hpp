// The simplex categories and the partition calculus.
//
// * FIntMorphism: morphisms of the category of finite intervals (monotone,
//   endpoint-preserving maps [m] -> [n]), with the monoidal product +,
//   delta/sigma generators, unique normal forms and the narrow subcategory
//   (maps hitting each endpoint exactly once).
// * AugMorphism: morphisms of the augmented simplex category (all monotone
//   maps, dimensions >= -1), with the join product.
// * Partition: subsets of {start,...,start+n} containing both endpoints,
//   together with truncations, concatenation, splittings, complements and
//   the p-index — the bookkeeping behind every signed formula downstream.
#pragma once

#include <string>
#include <vector>

#include "templike/scalar.hpp"  // for contract_error

namespace templike {

inline constexpr int kMaxIntervalDim = 12;

struct FIntMorphism {
  int m = 0, n = 0;            // f : [m] -> [n]
  std::vector<int> values;     // length m+1, monotone, values[0]=0, values[m]=n

  FIntMorphism() : values{0} {}
  FIntMorphism(int m_, int n_, std::vector<int> vals);

  int operator()(int i) const { return values.at(static_cast<std::size_t>(i)); }

  static FIntMorphism identity(int n);
  // Inner coface delta_j : [m-1] -> [m], 0 < j < m.
  static FIntMorphism delta(int j, int m);
  // Codegeneracy sigma_i : [m+1] -> [m], 0 <= i <= m.
  static FIntMorphism sigma(int i, int m);

  // Hits 0 and n exactly once each (membership in the narrow subcategory).
  bool is_narrow() const;
  bool operator==(const FIntMorphism&) const = default;
  std::string str() const;  // e.g. "[0,0,1,3]"
};

// g after f (apply f first).
FIntMorphism compose(const FIntMorphism& g, const FIntMorphism& f);

// Unique normal form f = delta_{i_1} ... delta_{i_s} sigma_{j_1} ... sigma_{j_t}
// with m > i_1 > ... > i_s > 0 and 0 <= j_1 < ... < j_t < domain dim.
struct FIntNormalForm {
  std::vector<int> deltas;  // i_1 > ... > i_s (applied last)
  std::vector<int> sigmas;  // j_1 < ... < j_t (applied first)
};
FIntNormalForm normal_form(const FIntMorphism& f);
FIntMorphism from_normal_form(int m, int n, const FIntNormalForm& nf);

// All morphisms [m] -> [n] of the finite-interval category.
std::vector<FIntMorphism> all_fint_morphisms(int m, int n);

// The monoidal product [m] + [n] = [m+n] on morphisms.
FIntMorphism plus(const FIntMorphism& f, const FIntMorphism& g);

// The transport of the join along [0] * - * [0]; both inputs must be narrow.
FIntMorphism diamond(const FIntMorphism& f, const FIntMorphism& g);

struct AugMorphism {
  int m = -1, n = -1;       // f : [m] -> [n], m, n >= -1
  std::vector<int> values;  // length m+1 (empty for m = -1), monotone

  AugMorphism() = default;
  AugMorphism(int m_, int n_, std::vector<int> vals);

  int operator()(int i) const { return values.at(static_cast<std::size_t>(i)); }
  static AugMorphism identity(int n);
  bool operator==(const AugMorphism&) const = default;
};

AugMorphism compose(const AugMorphism& g, const AugMorphism& f);

// The join [m] * [n] = [m+n+1] on morphisms.
AugMorphism join(const AugMorphism& f, const AugMorphism& g);

// The isomorphism [0] * - * [0] between the augmented and narrow categories.
FIntMorphism narrow_of_aug(const AugMorphism& f);
AugMorphism aug_of_narrow(const FIntMorphism& f);

struct Partition {
  int n = 0;                 // ambient dimension
  int start = 0;             // offset: members live in {start,...,start+n}
  std::vector<int> members;  // sorted, contains start and start+n

  Partition() : members{0} {}
  Partition(int n_, std::vector<int> members_, int start_ = 0);

  int length() const { return static_cast<int>(members.size()) - 1; }  // l(I)
  bool contains(int s) const;
  bool operator==(const Partition&) const = default;
  bool subset_of(const Partition& other) const;
  Partition union_with(const Partition& other) const;

  // I^{<=s} = (I n {start,...,s-1}) u {s}: a partition of s - start.
  Partition truncate_le(int s) const;
  // I^{>=s} = {s} u (I n {s+1,...,start+n}): a partition of start + n - s
  // starting at s.
  Partition truncate_ge(int s) const;

  // The corresponding injection [l(I)] -> [n] (start subtracted).
  FIntMorphism as_injection() const;
  std::string str() const;  // e.g. "{0,2,3}"
};

// All partitions of n (start 0), in interior-bitmask order: the subsets of
// {1,...,n-1} enumerated by increasing binary value with point i as bit i-1.
std::vector<Partition> enumerate_partitions(int n);

// Concatenation I + J; requires J to start where I ends.
Partition plus(const Partition& I, const Partition& J);

// The splitting (I_1,...,I_m) of I over f : [m] -> [n],
// I_k = (I^{<= f(k)+start})^{>= f(k-1)+start}.
std::vector<Partition> splitting(const Partition& I, const FIntMorphism& f);

// The complement I^c: for l(I) = m > 0 the injection with image
// {0} u ({1,...,n-1} \ I) u {n}; for m = 0 (so n = 0) sigma_0 : [1] -> [0].
// Always l(I^c) = n - l(I) + 1.
FIntMorphism complement(const Partition& I);

// p_I(s) = min{ p in [l(I)] | s <= i_p }.
int p_index(const Partition& I, int s);

// The unique narrow f_I with I^c of f_I = f of J^c, where J = f^{-1}(I).
FIntMorphism morphism_restriction(const FIntMorphism& f, const Partition& I);

// f^{-1}(I) as a partition of the domain dimension of f.
Partition preimage_partition(const FIntMorphism& f, const Partition& I);

}  // namespace templike
