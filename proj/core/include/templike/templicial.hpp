// Truncated templicial modules: quiver-valued simplicial-like objects with
// comultiplications mu_{k,l} : X_{k+l} -> X_k (x)_S X_l and an invertible
// counit, together with the axiom checker, the free functor on simplicial
// sets, the linear nerve of a linear category with its recognition and
// extension lemmas, underlying simplices, and the linear homotopy category.
//
// Comultiplications with a zero index are never stored; strong unitality
// determines them from the counit.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "templike/quiver.hpp"
#include "templike/simplicial.hpp"

namespace templike {

struct CheckReport {
  bool ok = true;
  std::string witness;  // first violated identity, empty when ok

  static CheckReport pass() { return {}; }
  static CheckReport fail(std::string w) { return {false, std::move(w)}; }
};

struct TemplicialModule {
  Ring ring{};
  std::vector<std::string> base;  // vertex set S
  int D = 0;                      // truncation dimension
  std::vector<Quiver> X;          // X[n] for 0 <= n <= D

  std::map<std::pair<int, int>, QuiverMap> faces;   // (n,j): X_n -> X_{n-1}, 0<j<n
  std::map<std::pair<int, int>, QuiverMap> degens;  // (n,i): X_n -> X_{n+1}, 0<=i<=n<D
  std::map<std::pair<int, int>, QuiverMap> comult;  // (k,l): X_{k+l} -> X_k (x) X_l
  QuiverMap counit;                                 // X_0 -> I_S, iso

  const QuiverMap& d(int n, int j) const;
  const QuiverMap& s(int n, int i) const;
  const QuiverMap& mu(int k, int l) const;

  // epsilon^{-1}(1) in X_0(a,a) and its degenerate edge s_0(-) in X_1(a,a).
  Vec unit_at(std::size_t a) const;
  Vec degenerate_edge(std::size_t a) const;
};

// Verifies every templicial axiom at truncation D: shapes, simplicial
// identities among stored inner faces and degeneracies, colax naturality of
// mu for inner faces and all degeneracies, coassociativity, the counit
// isomorphism and the two strong-unitality boundary identities.
CheckReport check_templicial(const TemplicialModule& X);

// Free templicial module on a levelwise-finite simplicial set: bases are the
// simplices with fixed endpoints and mu_{k,l} sends a simplex y of dimension
// k+l to (front k-face of y) (x) (back l-face of y).
TemplicialModule free_templicial(const FinSimplicialSet& Y, const Ring& ring);

struct LinearCategory {
  Quiver hom;      // objects = hom.vertices
  QuiverMap comp;  // hom (x)_S hom -> hom
  QuiverMap unit;  // I_S -> hom

  CheckReport validate() const;
};

bool linear_categories_isomorphic(const LinearCategory& c,
                                  const LinearCategory& d);

// Free linear category on a finite category: hom modules are free on the
// morphism sets, composition and units are linearized.
LinearCategory free_linear_category(const FinCategory& C, const Ring& ring);

// Right-nested tensor power q (x) (q (x) (... )) with power 0 the unit.
Quiver nested_power(const Quiver& q, int n);
// Canonical isomorphism q^{(x)(k+l)} -> q^{(x)k} (x)_S q^{(x)l}.
QuiverMap nested_split(const Quiver& q, int k, int l);

// Linear nerve: N_k(C)_n = hom^{(x)n}, inner faces compose, degeneracies
// insert units, mu_{k,l} the canonical splitting isomorphisms.
TemplicialModule linear_nerve(const LinearCategory& C, int D);

// The composite comultiplication X_n -> X_1^{(x)n} (right-nested).
QuiverMap mu_power(const TemplicialModule& X, int n);

// If every mu_{1,...,1} (and the counit) is invertible, rebuilds the linear
// category (X_1, d_1 o mu_{1,1}^{-1}, s_0 o eps^{-1}) and the isomorphism
// X_n -> N_k(C)_n given by mu_power; otherwise nullopt.
struct NerveRecognition {
  LinearCategory category;
  std::vector<QuiverMap> iso;  // iso[n] : X_n -> linear_nerve(category)_n
};
std::optional<NerveRecognition> strong_monoidal_recognize(
    const TemplicialModule& X);

// An n-simplex of the underlying simplicial set of X: vertices plus a
// compatible family alpha_{i,j} in X_{j-i}(v_i, v_j); alpha_{0,n} is the
// element itself.
struct USimplex {
  int n = 0;
  std::vector<std::size_t> vertices;  // indices into base, size n+1
  std::map<std::pair<int, int>, Vec> alpha;

  const Vec& a(int i, int j) const;
  void set(int i, int j, Vec v);
};

// Checks mu_{k-i,j-k}(alpha_{i,j}) = alpha_{i,k} (x) alpha_{k,j} for all
// i < k < j; failures name the witness triple.
CheckReport u_simplex_validate(const TemplicialModule& X, const USimplex& s);

// Faces and degeneracies of underlying simplices: outer faces drop a vertex,
// the inner face d_l applies d_{l-i} to every alpha_{i,j} spanning l, and
// s_l doubles a vertex, inserting the degenerate edge at the new pair.
USimplex u_face(const TemplicialModule& X, const USimplex& s, int l);
USimplex u_degen(const TemplicialModule& X, const USimplex& s, int l);

struct TemplicialMap {
  TemplicialModule source, target;
  VertexMap f;                  // on vertex sets
  std::vector<QuiverMap> alpha; // alpha[n] : f_!(X_n) -> Y_n

  CheckReport validate() const;
};

// Unique templicial extension of H : X_1 -> f^*(hom C) satisfying the unit
// and composition squares; throws if the squares fail.
TemplicialMap nerve_extend(const TemplicialModule& X, const LinearCategory& C,
                           const VertexMap& f, const QuiverMap& H);

// f ~ g for f, g in X_1(a,b): exists w in X_2(a,b) with
// mu_{1,1}(w) = (degenerate edge at a) (x) f and d_1(w) = g.
bool homotopy_relation(const TemplicialModule& X, std::size_t a, std::size_t b,
                       const Vec& f, const Vec& g);

// The linear homotopy category h_k(X) over a field: hom(a,b) =
// X_1(a,b)/N_{a,b}, composition by solving mu_{1,1}(w) = f (x) g and taking
// the class of d_1(w).  Also returns the projection X_1 -> hom.
struct HomotopyCategoryResult {
  LinearCategory category;
  QuiverMap projection;  // X_1 -> hom
};
HomotopyCategoryResult linear_homotopy_category(const TemplicialModule& X);

// True iff all mu_{1,...,1} and the counit are isomorphisms up to D.
bool unique_horn_filling_check(const TemplicialModule& X);

// Coproduct: disjoint base union with entrywise blocks.
TemplicialModule templicial_coproduct(const TemplicialModule& A,
                                      const TemplicialModule& B);

}  // namespace templike
