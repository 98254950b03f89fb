#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "templike/doldkan.hpp"
#include "templike/tensorfrob.hpp"

namespace templike {

// ---------------------------------------------------------------------------
// Degree zero: H_0 and the inclusion of linear categories into dg-categories.
// ---------------------------------------------------------------------------

struct H0Result {
  LinearCategory category;
  // q[x][y]: C_0(x,y) -> H_0(x,y) with a chosen section.
  std::vector<std::vector<Quotient>> q;
};

// The linear category with hom modules C_0(x,y) / im(d_1) and the induced
// composition and identities.
H0Result h_zero(const DGCategory& C);

// A linear category as a dg-category concentrated in degree zero, padded
// with zero modules up to the truncation D.
DGCategory include_degree_zero(const LinearCategory& A, int D);

// ---------------------------------------------------------------------------
// The linear dg-nerve: the tensor templicial module of the levelwise
// Gamma~-enrichment of a dg-category.
// ---------------------------------------------------------------------------

struct LinearDGNerve {
  EnrichedGamma enriched;  // the narrow monoid Gamma~(C)^#
  TensorTemplicial T;      // its free templicial module; host = N^dg(C)
};

LinearDGNerve linear_dg_nerve(const DGCategory& C, int D);

// ---------------------------------------------------------------------------
// The S-construction on a narrow simplicial monoid: an n-simplex is a free
// family b_{i,j} in A_{j-i}(x_i, x_j) for 0 <= i < j <= n.
// ---------------------------------------------------------------------------

struct SSimplex {
  int n = 0;
  std::vector<std::size_t> vertices;  // indices into A.base, size n+1
  std::map<std::pair<int, int>, Vec> b;

  const Vec& at(int i, int j) const;
  void set(int i, int j, Vec v);
};

// The outer faces and all degeneracies of S(A).  d_l drops vertex l; the
// middle components compose through the monoid.  s_l repeats vertex l and
// inserts the unit on the new short edge.
SSimplex s_face(const NarrowSimplicialModule& A, const SSimplex& s, int l);
SSimplex s_degen(const NarrowSimplicialModule& A, const SSimplex& s, int l);

// ---------------------------------------------------------------------------
// The isomorphism U~(T(A)) = S(A): a simplex of the free templicial module
// is determined by the single-part components of its edges.
// ---------------------------------------------------------------------------

SSimplex utilde_to_s(const TensorTemplicial& T, const NarrowSimplicialModule& A,
                     const USimplex& u);
USimplex s_to_utilde(const TensorTemplicial& T, const NarrowSimplicialModule& A,
                     const SSimplex& s);

// ---------------------------------------------------------------------------
// Simplices of the dg-nerve and the bridge to the S-construction.
// A family assigns to every subset I of {0,...,n} with at least two
// elements a value in C_{l(I)-1}(x_min(I), x_max(I)); singletons carry the
// identities implicitly.
// ---------------------------------------------------------------------------

using Subset = std::vector<int>;  // sorted, size >= 2

struct DGFamily {
  int n = 0;
  std::vector<std::size_t> vertices;  // objects x_0..x_n, size n+1
  std::map<Subset, Vec> v;

  const Vec& at(const Subset& I) const;
  void set(Subset I, Vec x);
};

// The parity of the coefficient of a_{I >= s} b_{I <= s} in the linear
// relation tying the two kinds of families together; s ranges over the
// complement of the interior of I together with the endpoints.
int epsilon_exponent(int s, const Subset& I);

// Solve the relations for the other family, by increasing span and then
// lexicographically.  With to_s true the input is a dg-nerve family (a_I)
// and the output the S-side family (b_I); with to_s false the inverse.
DGFamily dg_nerve_bridge(const DGCategory& C, const DGFamily& fam, bool to_s);

// The defining condition of the dg-nerve: the differential of a_I is the
// signed sum of the facets of I and the signed compositions across its
// interior points.  On failure the witness names the offending subset.
CheckReport classical_dg_nerve_check(const DGCategory& C, const DGFamily& a);

// Membership of the S-side family: the differential of b_I is the signed
// sum of the facets of I (no composition terms).
CheckReport s_side_check(const DGCategory& C, const DGFamily& b);

// Faces and degeneracies of the dg-nerve: reindex along the coface, insert
// the identity on a repeated short edge, kill non-injective subsets.
DGFamily dg_family_face(const DGCategory& C, const DGFamily& a, int l);
DGFamily dg_family_degen(const DGCategory& C, const DGFamily& a, int l);

// The S-side family of an S-simplex over the Gamma~-enrichment, component
// by component, and its inverse.
DGFamily ssimplex_to_family(const EnrichedGamma& E, const DGCategory& C,
                            const SSimplex& s);
SSimplex family_to_ssimplex(const EnrichedGamma& E, const DGCategory& C,
                            const DGFamily& b);

}  // namespace templike
