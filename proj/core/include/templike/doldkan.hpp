// The augmented Dold-Kan correspondence.
//
// * ChainComplex and check_chain: non-negatively graded complexes of free
//   modules with the differential law as a finite matrix equality.
// * normalized_augmented: the normalization N~ of an augmented simplicial
//   module, N~_n = A_{n-1} / sum s_i(A_{n-2}), with the alternating-sum
//   differential induced on the quotient.
// * gamma_augmented: the inverse Gamma~, whose level n is the solution space
//   of the simplex conditions d(a_I) = sum_j (-1)^j a_{I \ {i_j}} inside
//   (+)_{I <= [n]} C_{|I|}, with the reindexing action b_J = a_{f(J)}.
// * join_tensor / monoidal_iso_N: the Day-convolution join of augmented
//   simplicial modules and the strong monoidal structure of N~.
// * DGCategory and dg_enrich_gamma: truncated dg-categories, and the
//   enrichment Gamma~(C)^# as a narrow simplicial module with the
//   subset-splitting composition.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "templike/linalg.hpp"
#include "templike/tensorfrob.hpp"

namespace templike {

// ---------------------------------------------------------------------------
// Plain free-module helpers (no quiver bookkeeping).

// (+)_k parts[k] with "tag|label" labels, plus injections/projections.
FreeModule fm_direct_sum(
    const std::vector<std::pair<std::string, FreeModule>>& parts);
LinearMap fm_injection(
    const std::vector<std::pair<std::string, FreeModule>>& parts,
    std::size_t k);
LinearMap fm_projection(
    const std::vector<std::pair<std::string, FreeModule>>& parts,
    std::size_t k);

// ---------------------------------------------------------------------------
// Chain complexes.

struct ChainComplex {
  Ring ring = Ring::Q();
  int D = 0;                    // degrees 0..D
  std::vector<FreeModule> C;    // C[0..D]
  std::vector<LinearMap> dmap;  // dmap[n] : C[n] -> C[n-1] for 1 <= n <= D

  const FreeModule& at(int n) const;  // zero module outside 0..D
  const LinearMap& d(int n) const;
};

CheckReport check_chain(const ChainComplex& C);

// Componentwise equality of modules and differentials.
bool chain_equal(const ChainComplex& A, const ChainComplex& B);

// ---------------------------------------------------------------------------
// Plain augmented simplicial modules (single-hom data, no base).

struct PlainAugModule {
  Ring ring = Ring::Q();
  int top = -1;                 // levels -1..top
  std::vector<FreeModule> A;    // A[i] = level i-1, size top+2

  // faces (n,i): level n -> n-1, degens (n,i): level n -> n+1, 0 <= i <= n.
  std::map<std::pair<int, int>, LinearMap> faces, degens;

  const FreeModule& level(int n) const;
  const LinearMap& d(int n, int i) const;
  const LinearMap& s(int n, int i) const;
};

CheckReport check_plain_aug(const PlainAugModule& A);

// The free plain module on Delta^n_+ : level m basis = all monotone maps
// [m] -> [n] (labels "i0.i1...im", the empty map at level -1 is "()").
PlainAugModule free_on_delta_plus(const Ring& k, int n, int top);

// ---------------------------------------------------------------------------
// Quotients (for the normalization).

struct Quotient {
  FreeModule Q;
  LinearMap proj;  // V -> Q
  LinearMap sect;  // Q -> V, proj o sect = id
};

// V / span(gens).  Over a field by row reduction; over Z only when the
// generators are (multiples of) standard basis vectors, otherwise refused.
Quotient quotient_by(const FreeModule& V, const std::vector<Vec>& gens);

struct NormalizedResult {
  ChainComplex N;
  std::vector<Quotient> q;  // q[n] : quotient presenting N.C[n], 0 <= n <= D
};

// N~_n(A) = A_{n-1} / sum_{i<=n-2} s_i(A_{n-2}) with the alternating-sum
// differential; degrees 0..top+1.
NormalizedResult normalized_augmented(const PlainAugModule& A);

// ---------------------------------------------------------------------------
// Gamma~.

struct GammaModule {
  PlainAugModule A;
  // ambient[n+1] : level n -> (+)_{I <= [n]} C_{|I|}  (masks in increasing
  // order, labels "I<mask>|label"); the level is the kernel of the simplex
  // conditions inside this ambient module.
  std::vector<LinearMap> ambient;
  // block offset of subset mask inside the ambient module of level n.
  std::vector<std::vector<std::size_t>> offset;
};

// Gamma~(C) with levels -1..top (top >= -1; levels beyond C.D-1 use the zero
// modules above the truncation).
GammaModule gamma_augmented_full(const ChainComplex& C, int top);
PlainAugModule gamma_augmented(const ChainComplex& C, int top);

// The component a_I of a level-n element (I given as a bitmask of [n]).
Vec gamma_component(const GammaModule& G, const ChainComplex& C, int n,
                    unsigned mask, const Vec& a);

// Coordinates in level n of a family given per subset mask; throws if the
// family does not satisfy the simplex conditions.
Vec gamma_assemble(const GammaModule& G, const ChainComplex& C, int n,
                   const std::vector<Vec>& per_mask);

// The adjunction unit A -> Gamma~(N~(A)) in level n: a |-> (pi(A(i_I)(a)))_I
// where i_I is the subset inclusion.  Returns one map per level; all are
// isomorphisms on degreewise-free inputs.
std::vector<LinearMap> dold_kan_unit(const PlainAugModule& A,
                                     const NormalizedResult& N,
                                     const GammaModule& G);

// The counit N~(Gamma~(C)) -> C: the class of (a_I)_I in degree n maps to
// the component at the full subset [n-1].
std::vector<LinearMap> dold_kan_counit(const ChainComplex& C,
                                       const GammaModule& G,
                                       const NormalizedResult& N);

// ---------------------------------------------------------------------------
// The join tensor and the strong monoidal structure of N~.

// (A (x) B)_n = (+)_{k+l+1=n} A_k (x) B_l with the join face/degeneracy
// distribution; truncated at min(A.top, B.top) so that every structure map
// is computable from the truncated inputs.
PlainAugModule join_tensor(const PlainAugModule& A, const PlainAugModule& B);

// The join unit: k concentrated in level -1.
PlainAugModule join_unit(const Ring& k, int top);

// iso[n] : N~_n(A (x) B) -> (+)_{p+q=n} N~_p(A) (x) N~_q(B), tags "p,q".
std::vector<LinearMap> monoidal_iso_N(const PlainAugModule& A,
                                      const PlainAugModule& B);

// ---------------------------------------------------------------------------
// Truncated dg-categories.

struct DGCategory {
  Ring ring = Ring::Q();
  std::vector<std::string> objects;
  int D = 0;                                  // hom degrees 0..D
  std::vector<std::vector<ChainComplex>> hom; // hom[x][y]
  // (x,y,z) -> (s,t) -> hom(x,y)_s (x) hom(y,z)_t -> hom(x,z)_{s+t}, s+t<=D.
  std::map<std::array<std::size_t, 3>, std::map<std::pair<int, int>, LinearMap>>
      comp;
  std::vector<Vec> id;  // id[x] in hom[x][x].C[0]

  const LinearMap& m(std::size_t x, std::size_t y, std::size_t z, int s,
                     int t) const;
};

// Associativity, unit laws and the graded Leibniz rule
// d(m(f (x) g)) = m(f (x) dg) + (-1)^{|g|} m(df (x) g).
CheckReport check_dg(const DGCategory& C);

// m(f (x) g) on elements.
Vec dg_compose(const DGCategory& C, std::size_t x, std::size_t y,
               std::size_t z, int s, int t, const Vec& f, const Vec& g);

// ---------------------------------------------------------------------------
// The enrichment Gamma~(C)^# as a narrow simplicial module.

struct EnrichedGamma {
  NarrowSimplicialModule A;                   // base = objects, levels 1..D
  std::vector<std::vector<GammaModule>> gam;  // per (x,y); narrow n = aug n-2
};

// Requires C.D >= D - 1 or pads with zeros above the truncation.
EnrichedGamma dg_enrich_gamma(const DGCategory& C, int D);

// The hom of a narrow module at a vertex pair, reindexed as a plain
// augmented simplicial module (aug level n = narrow level n+2).
PlainAugModule hom_aug(const NarrowSimplicialModule& A, std::size_t x,
                       std::size_t y);

}  // namespace templike
