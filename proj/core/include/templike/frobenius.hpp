// Nonassociative Frobenius (naF) structures on templicial modules and on
// simplicial sets, and what they buy:
//
// * NaFStructure: multiplications Z^{p,q} : X_p (x)_S X_q -> X_{p+q}
//   exchanging with the comultiplication (strong unitality: the counit is
//   invertible and eta = counit^{-1}; zero-index Z and mu are induced from
//   the unitors, never stored).
// * check_naf / check_frobenius: exhaustive verification of the exchange
//   laws (and associativity for the Frobenius case) up to the truncation.
// * SetNaF + naf_on_quasicategory: the constructive naF structure on an
//   ordinary quasi-category via inner-horn fillers, with the glued-Delta^3
//   counterexample showing naF does not imply quasi-category.
// * transfer_naf_free: linearization of a set-level structure onto the free
//   templicial module.
// * mu_composite / z_composite: the composite maps mu_f and Z^f for
//   interval morphisms f, right-nested by convention.
// * fill_wedge / fill_inner_horn: the signed wedge-filler formula and the
//   degeneracy-correction algorithm turning wedge lifts into horn fillers.
#pragma once

#include "templike/intervals.hpp"
#include "templike/templicial.hpp"

namespace templike {

struct NaFStructure {
  TemplicialModule host;
  // Z[(p,q)] : X_p (x)_S X_q -> X_{p+q} for p, q >= 1, p + q <= D.
  std::map<std::pair<int, int>, QuiverMap> Z;
  bool associative = false;  // marks F-monoidal (associative) structures

  const QuiverMap& z(int p, int q) const;
};

// Comultiplication with zero indices allowed: stored for k, l >= 1,
// otherwise induced from the counit and the unitors.
QuiverMap naf_mu(const TemplicialModule& X, int k, int l);
// Multiplication with zero indices allowed: stored for p, q >= 1, otherwise
// induced (strong unitality).
QuiverMap naf_z(const NaFStructure& Z, int p, int q);

// Verifies shapes, naturality of Z in both indices with respect to inner
// faces and degeneracies, and the mu-Z exchange laws (including
// mu_{k,l} Z^{k,l} = id) for every instance up to the truncation.  The
// witness names the first failing instance.
CheckReport check_naf(const NaFStructure& Z);
// check_naf plus associativity of Z.
CheckReport check_frobenius(const NaFStructure& Z);

// The strong-monoidal structure Z = mu^{-1} carried by any templicial
// module with invertible comultiplications (nerves in particular).
NaFStructure nerve_naf(const TemplicialModule& X);

// A naF structure on a simplicial set (identified with a templicial set):
// Z values are stored for nondegenerate composable pairs only.
struct SetNaF {
  FinSimplicialSet host;
  // Z[(p,q)][(x,y)] for nondegenerate x in X_p, y in X_q with
  // last vertex of x = first vertex of y; p, q >= 1, p + q <= D.
  std::map<std::pair<int, int>,
           std::map<std::pair<std::size_t, std::size_t>, std::size_t>>
      Z;
};

// Z^{p,q}(x, y) for arbitrary inputs: zero indices project, degenerate
// inputs follow Z(s_i x', y) = s_i Z(x', y) and Z(x, s_i y') =
// s_{i+p} Z(x, y').
std::size_t z_set_eval(const SetNaF& Z, int p, int q, std::size_t x,
                       std::size_t y);

// Verifies the face constraints d_i Z^{p,q}(x,y) = Z(d_i x, y) (i < p) and
// Z(x, d_{i-p} y) (i > p) for every stored instance, plus endpoints.
CheckReport check_naf_set(const SetNaF& Z);

// The constructive naF structure on a quasi-category: Z(x,y) fills the
// Lambda^{p+q}_p horn assembled from lower Z values, chosen as the
// lexicographically least filler.  Throws if a required horn has no filler.
SetNaF naf_on_quasicategory(const FinSimplicialSet& Y);

// The standard 3-simplex with two extra nondegenerate 3-simplices x and y
// glued along Lambda^3_3 and Lambda^3_0; not a quasi-category, but carries
// the hand-built naF structure below.
FinSimplicialSet glued_delta3(int D = 3);
SetNaF glued_delta3_naf(int D = 3);

// The standard 3-simplex with an extra 2-simplex glued along the boundary
// of its face [0,1,3]; lifts all wedges but fills no Lambda^3_1 horn.
FinSimplicialSet delta3_extra_face(int D = 3);

// Linearizes a set-level naF structure basis-wise onto the free templicial
// module of its host.
NaFStructure transfer_naf_free(const SetNaF& Zs, const Ring& ring);

// mu_f : X_n -> X_{f(1)} (x) (X_{f(2)-f(1)} (x) ...) for f : [m] -> [n],
// right-nested; for m = 0 the counit, for m = 1 the identity.
QuiverMap mu_composite(const TemplicialModule& X, const FIntMorphism& f);
// Z^f : X_f -> X_n, right-nested; counit^{-1} for m = 0, identity for m = 1.
QuiverMap z_composite(const NaFStructure& Z, const FIntMorphism& f);

// The flat right-nested tensor X_{p_1} (x) (X_{p_2} (x) ...) over the parts
// of a partition (length >= 1).
Quiver nested_quiver(const TemplicialModule& X, const Partition& I);

// Canonical regrouping isomorphism from the flat right-nested tensor over
// the concatenated parts of all groups to the right-nested tensor of the
// per-group flat tensors.  Groups must be consecutive (each starting where
// the previous ends) and of length >= 1.
QuiverMap group_nested(const TemplicialModule& X,
                       const std::vector<Partition>& groups);

// Completes a wedge: the input carries alpha_{i,j} for all i < j except
// (0,n) and must satisfy every compatibility not involving (0,n); the
// missing component is the signed sum over partitions of length >= 2.
// Throws contract_error naming the first incompatibility.
USimplex fill_wedge(const NaFStructure& Z, const USimplex& wedge);

// An inner horn Lambda^n_k -> underlying simplicial set of X: the pairwise
// components alpha_{i,j} (all (i,j) != (0,n)) plus the top elements of the
// inner facets other than k (genuinely extra data; every other component of
// a facet is forced by the alpha via inner face maps).
struct LinearHorn {
  int n = 0, k = 0;                         // 0 < k < n
  std::vector<std::size_t> vertices;        // size n + 1
  std::map<std::pair<int, int>, Vec> alpha; // all i < j with (i,j) != (0,n)
  std::map<int, Vec> tops;                  // t_l in X_{n-1}(v_0,v_n), 0<l<n, l != k
};

// The l-th facet (l != k) as an underlying simplex: spanning pairs are
// inner faces of the alpha, the top spanning pair is t_l.
USimplex horn_facet(const TemplicialModule& X, const LinearHorn& h, int l);

// Validates every facet as an underlying simplex and the matching of
// shared faces between inner facet tops.
CheckReport validate_linear_horn(const TemplicialModule& X,
                                 const LinearHorn& h);

// Restriction of a full underlying simplex to the inner horn at k.
LinearHorn horn_of_simplex(const TemplicialModule& X, const USimplex& s,
                           int k);

// Fills the horn: a wedge lift gives x^0, ascending corrections
// x^j = x^{j-1} + s_j(t_j - d_j(x^{j-1})) for 0 < j < k, then x^n = x^{k-1}
// and descending corrections x^j = x^{j+1} + s_{j-1}(t_j - d_j(x^{j+1}))
// for k < j < n.  The output is audited: it validates as an underlying
// simplex and its inner faces away from k reproduce the tops exactly.
USimplex fill_inner_horn(const NaFStructure& Z, const LinearHorn& h);

// For a templicial map between carriers of (associative) structures:
// verifies alpha_n o f_!(Z^{k,l}) = Z^{k,l} o (alpha_k (x) alpha_l) o colax
// for all k, l >= 1 with k + l <= D.
CheckReport check_f_templicial_map(const NaFStructure& ZX,
                                   const NaFStructure& ZY,
                                   const TemplicialMap& m);

}  // namespace templike
