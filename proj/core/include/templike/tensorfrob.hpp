// The tensor-algebra / Frobenius equivalence.
//
// Graded level: positively graded quivers V, the free graded monoid T(V)
// with separating comultiplication and concatenating multiplication, the
// kernel K(X) = ker(mu_{>=1}) of a graded bimonoid, the retraction
// xi = sum_I (-1)^{l(I)+1} Z^I mu_I, and the mutually inverse morphisms
// eps_X : TK(X) -> X and phi : X -> TK(X).
//
// Simplicial level: narrow simplicial modules (functors on the subcategory
// of the simplex category hitting each endpoint exactly once) with a monoid
// structure for the join-induced tensor, the kernel functor K with its
// induced monoid m_{p,q} = d_p Z^{p,q}|_K and unit u = s_0 eps^{-1}, and the
// tensor construction TA(f)_I = A(f_{I_1}) m_{I_1} (x) ... (x) A(f_{I_p}) m_{I_p}
// producing a Frobenius templicial module.
//
// Base change: the canonical isomorphisms psi_{f,X} : f_! K(X) -> K(f_! X).
#pragma once

#include "templike/frobenius.hpp"
#include "templike/intervals.hpp"

namespace templike {

// ---------------------------------------------------------------------------
// Nested tensors over lists of quivers (right-nested, empty list = unit).

Quiver nested_tensor(const std::vector<Quiver>& qs, const Quiver& unit);
QuiverMap nested_tensor_map(const std::vector<QuiverMap>& fs,
                            const Quiver& unit);
// nested(qs) -> nested(qs[0..k)) (x) nested(qs[k..)) for 0 < k < qs.size().
QuiverMap nested_split_at(const std::vector<Quiver>& qs, std::size_t k);
// nested(qs) -> right-nested tensor of the block tensors; block sizes may be
// zero (contributing a unit factor) and must sum to qs.size().
QuiverMap nested_regroup(const std::vector<Quiver>& qs,
                         const std::vector<std::size_t>& blocks,
                         const Quiver& unit);

// ---------------------------------------------------------------------------
// Graded level.

// A graded quiver in degrees 1..D over a shared base and ring.
struct GradedQuiver {
  Ring ring{};
  std::vector<std::string> base;
  int D = 0;
  std::vector<Quiver> V;  // V[n] for 1 <= n <= D; V[0] is unused

  const Quiver& at(int n) const;
};
CheckReport check_graded(const GradedQuiver& V);

// An N-graded comonoid and monoid with mutually inverse unit/counit in
// degree 0 (eps an isomorphism); zero-index comultiplications and
// multiplications are induced, never stored.
struct GradedBimonoid {
  Ring ring{};
  std::vector<std::string> base;
  int D = 0;
  std::vector<Quiver> X;  // X[n] for 0 <= n <= D
  QuiverMap eps;          // X_0 -> I_S, isomorphism
  std::map<std::pair<int, int>, QuiverMap> mu;  // (k,l), k,l >= 1: X_{k+l} -> X_k (x) X_l
  std::map<std::pair<int, int>, QuiverMap> Z;   // (p,q), p,q >= 1: X_p (x) X_q -> X_{p+q}

  const QuiverMap& comult(int k, int l) const;
  const QuiverMap& mult(int p, int q) const;
};

// Forgets the simplicial actions of an F-templicial module.
GradedBimonoid graded_of(const NaFStructure& X);

// mu / Z with zero indices induced by eps and the unitors.
QuiverMap graded_mu(const GradedBimonoid& B, int k, int l);
QuiverMap graded_z(const GradedBimonoid& B, int p, int q);

// Right-nested tensor over the parts of a partition-shaped injection.
Quiver graded_nested(const GradedBimonoid& B, const FIntMorphism& f);
// Composite comultiplication mu_f : X_n -> X_{parts of f} and composite
// multiplication Z^f (right-nested); f must be a strictly increasing
// endpoint-preserving injection.
QuiverMap graded_mu_composite(const GradedBimonoid& B, const FIntMorphism& f);
QuiverMap graded_z_composite(const GradedBimonoid& B, const FIntMorphism& f);

// Associativity of Z plus the mu-Z exchange laws (the componentwise form of
// the graded Frobenius equation).
CheckReport check_graded_mu_z(const GradedBimonoid& B);

// Both sides of the graded Frobenius equation at degree n, assembled on the
// direct sum (X (x) X)_n:
//   mu Z  =  (Z (x) id)(id (x) mu) + middle_sign * id + (id (x) Z)(mu (x) id)
// The equation itself uses middle_sign = -1.
std::pair<QuiverMap, QuiverMap> graded_frobenius_equation_sides(
    const GradedBimonoid& B, int n, int middle_sign = -1);
// True iff the equation holds in every degree <= D.
bool graded_frobenius_equation_check(const GradedBimonoid& B);

// ---------------------------------------------------------------------------
// Partition-indexed direct sums and the free graded monoid.

// total = (+)_{I in P_n} nested tensor over the parts of I, in
// enumerate_partitions order, tagged by I.str().
struct PartitionSum {
  std::vector<Partition> parts;
  std::vector<Quiver> summands;
  Quiver total;
  std::vector<QuiverMap> iota, proj;

  // Index of a partition (start-0 members).
  std::size_t index_of(const Partition& I) const;
};
PartitionSum partition_sum(const std::vector<Quiver>& levels,
                           const Quiver& unit, int n);

struct GradedTensorAlgebra {
  GradedBimonoid B;
  std::vector<PartitionSum> sum;  // sum[n] for 0 <= n <= D
};
// The free graded monoid T(V) with separating mu and concatenating Z.
GradedTensorAlgebra tensor_T_graded(const GradedQuiver& V);

// ---------------------------------------------------------------------------
// Kernel and the adjunction isomorphisms, graded level.

// Just the degreewise data needed to form kernels (a colax structure).
struct GradedColax {
  Ring ring{};
  std::vector<std::string> base;
  int D = 0;
  std::vector<Quiver> X;  // 0..D
  std::map<std::pair<int, int>, QuiverMap> mu;  // k,l >= 1
};
GradedColax colax_of(const GradedBimonoid& B);
// f_! applied degreewise, comultiplications composed with the colax
// structure of f_!.
GradedColax pushforward_graded(const VertexMap& f, const GradedColax& B);

// K_n = joint kernel of all mu_{k,n-k} with k, n-k >= 1, with inclusions.
// Over Z the kernels are the saturated lattices from Smith normal form.
struct KernelGraded {
  GradedQuiver K;
  std::vector<QuiverMap> incl;  // incl[n] : K_n -> X_n, 1 <= n <= D
};
KernelGraded kernel_graded(const GradedColax& B);
inline KernelGraded kernel_graded(const GradedBimonoid& B) {
  return kernel_graded(colax_of(B));
}

// Solves incl o h = g componentwise; throws contract_error if g does not
// factor (the refusal path for non-split inputs over Z).
QuiverMap factor_through(const QuiverMap& incl, const QuiverMap& g);

// xi_n = sum_{I in P_n} (-1)^{l(I)+1} Z^I mu_I : X_n -> X_n (n >= 1).
QuiverMap xi_endomorphism(const GradedBimonoid& B, int n);
// The induced retraction X_n -> K_n (xi factored through the inclusion).
QuiverMap xi_retraction(const GradedBimonoid& B, const KernelGraded& K, int n);

// eps_X : TK(X) -> X (Z^I on the kernel inclusions) and its inverse
// phi : X -> TK(X) (components xi^{(x)p} o mu^{(p)}).  Verifies both round
// trips and that eps is a morphism of comonoids and monoids; throws
// contract_error on any failure.
struct GradedRoundTrip {
  KernelGraded K;
  GradedTensorAlgebra TK;
  std::vector<QuiverMap> eps;  // eps[n] : TK_n -> X_n
  std::vector<QuiverMap> phi;  // phi[n] : X_n -> TK_n
};
GradedRoundTrip epsilon_phi_roundtrip(const GradedBimonoid& B);

// ---------------------------------------------------------------------------
// Narrow simplicial modules.

// A functor on the narrow simplex category (inner cofaces delta_j, 0 < j < n,
// and inner codegeneracies sigma_i, 0 < i < n, as generators), optionally
// with a monoid structure for the join-induced tensor.
struct NarrowSimplicialModule {
  Ring ring{};
  std::vector<std::string> base;
  int D = 0;
  std::vector<Quiver> A;  // A[n] for 1 <= n <= D

  std::map<std::pair<int, int>, QuiverMap> faces;   // (n,j): A_n -> A_{n-1}, 0<j<n
  std::map<std::pair<int, int>, QuiverMap> degens;  // (n,i): A_n -> A_{n+1}, 0<i<n

  bool has_monoid = false;
  std::map<std::pair<int, int>, QuiverMap> m;  // (p,q): A_p (x) A_q -> A_{p+q-1}
  QuiverMap u;                                 // I_S -> A_1

  const QuiverMap& d(int n, int j) const;
  const QuiverMap& s(int n, int i) const;
  const QuiverMap& mult(int p, int q) const;
};

// Simplicial identities among the inner generators; when a monoid is
// present, its naturality in both indices, associativity and unitality.
CheckReport check_narrow(const NarrowSimplicialModule& A);

// A(f) for narrow f, by the unique coface/codegeneracy factorization.
QuiverMap narrow_act(const NarrowSimplicialModule& A, const FIntMorphism& f);

// m_I : A_I -> A_{l(I^c)}  (u for l(I) = 0, the identity for l(I) = 1,
// right-nested m_{p_1,...,p_k} otherwise).  I must start at 0.
QuiverMap m_composite(const NarrowSimplicialModule& A, const Partition& I);

// ---------------------------------------------------------------------------
// Augmented simplicial modules (levels -1 .. D-2), isomorphic to narrow
// simplicial modules by reindexing n |-> n+2.

struct AugSimplicialModule {
  Ring ring{};
  std::vector<std::string> base;
  int D = 0;              // stores levels -1 .. D-2
  std::vector<Quiver> A;  // A[n+1] = level n

  std::map<std::pair<int, int>, QuiverMap> faces;   // (n,i): level n -> n-1, 0<=i<=n
  std::map<std::pair<int, int>, QuiverMap> degens;  // (n,i): level n -> n+1, 0<=i<=n

  const Quiver& level(int n) const;
  const QuiverMap& d(int n, int i) const;
  const QuiverMap& s(int n, int i) const;
};
CheckReport check_augmented(const AugSimplicialModule& B);

AugSimplicialModule aug_of_narrow_module(const NarrowSimplicialModule& A);
NarrowSimplicialModule narrow_of_aug_module(const AugSimplicialModule& B);

// ---------------------------------------------------------------------------
// The simplicial kernel and tensor constructions.

// Narrow actions induced by the inner faces/degeneracies of the host, plus
// the monoid m_{p,q} = d_p Z^{p,q}|_K (stored for p+q <= D) and
// u = s_0 eps^{-1}.  Requires an associative Frobenius structure.
struct KernelModule {
  NarrowSimplicialModule A;
  std::vector<QuiverMap> incl;  // incl[n] : A_n -> X_n
};
KernelModule kernel_K(const NaFStructure& X);

// The action of an arbitrary interval morphism on a templicial module,
// assembled from the stored faces and degeneracies.
QuiverMap templicial_act(const TemplicialModule& X, const FIntMorphism& f);

// TA(f)_I : A_I -> A_{f^{-1}(I)} per the construction (splitting of I over
// f restricted to f^{-1}(I), factors A(f_{I_i}) m_{I_i}).
QuiverMap tensor_action_component(const NarrowSimplicialModule& A,
                                  const FIntMorphism& f, const Partition& I);

// The Frobenius templicial module TA: levels are the partition sums, faces
// and degeneracies are TA(delta_j) / TA(sigma_i), mu separates summands at
// compatible partitions and Z concatenates.
struct TensorTemplicial {
  NaFStructure F;  // host and multiplication; associative
  std::vector<PartitionSum> sum;
};
TensorTemplicial tensor_T(const NarrowSimplicialModule& A);

// The full action TA(f), summed over partitions.
QuiverMap tensor_act(const TensorTemplicial& T, const FIntMorphism& f);

// eps_X : TK(X) -> X and phi inverse at the templicial level; additionally
// verifies naturality of eps against every stored face and degeneracy.
struct TemplicialRoundTrip {
  KernelModule K;
  TensorTemplicial TK;
  std::vector<QuiverMap> eps;  // eps[n] : TK_n -> X_n
  std::vector<QuiverMap> phi;
};
TemplicialRoundTrip epsilon_phi_templicial(const NaFStructure& X);

// ---------------------------------------------------------------------------
// Base change: psi_{f,X} : f_!(K_n) -> K(f_! X)_n.

struct BaseChange {
  KernelGraded pushed_kernel;   // kernel of the pushed colax structure
  std::vector<QuiverMap> psi;   // psi[n] : f_!(K_n) -> K(f_!X)_n, isomorphisms
};
BaseChange kernel_base_change(const VertexMap& f, const GradedColax& B);

}  // namespace templike
