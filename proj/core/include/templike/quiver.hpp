// Quivers enriched in free modules over a finite vertex set S, with the
// monoidal structure (tensor_S, unit_quiver), base change along vertex maps
// (pushforward f_!, pullback f^*, their adjunction), finite direct sums and
// the total-module assembly.
//
// Entries are stored sparsely; an absent entry is the zero module and an
// absent map component is the zero map.  All basis labels produced here are
// canonical so that equality of quiver maps is decidable label-wise:
//   tensor_S:     "(c|q|p)"   (intermediate vertex, left label, right label)
//   pushforward:  "(a|b|q)"   (source pair, original label)
//   direct_sum:   "(tag|q)"
//   assemble:     "(a|b|q)"
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "templike/linalg.hpp"

namespace templike {

// A map of finite vertex sets src -> tgt, by index.
struct VertexMap {
  std::vector<std::string> src, tgt;
  std::vector<std::size_t> images;  // images[i] < tgt.size()

  VertexMap() = default;
  VertexMap(std::vector<std::string> s, std::vector<std::string> t,
            std::vector<std::size_t> im);
  static VertexMap identity(std::vector<std::string> s);

  std::size_t operator()(std::size_t i) const { return images.at(i); }
};

VertexMap compose(const VertexMap& g, const VertexMap& f);

struct Quiver {
  Ring ring{};
  std::vector<std::string> vertices;  // pairwise distinct labels
  std::map<std::pair<std::size_t, std::size_t>, FreeModule> entries;

  Quiver() = default;
  Quiver(Ring r, std::vector<std::string> verts);

  std::size_t vindex(const std::string& v) const;
  // Entry (a,b); an absent entry reads as the rank-0 module.
  FreeModule entry(std::size_t a, std::size_t b) const;
  std::size_t entry_rank(std::size_t a, std::size_t b) const;
  void set_entry(std::size_t a, std::size_t b, FreeModule m);

  std::size_t total_rank() const;
};

// Equality up to dropping rank-0 entries.
bool operator==(const Quiver& q, const Quiver& p);
inline bool operator!=(const Quiver& q, const Quiver& p) { return !(q == p); }

struct QuiverMap {
  Quiver source, target;  // over the same vertex set
  std::map<std::pair<std::size_t, std::size_t>, LinearMap> components;

  QuiverMap() = default;
  QuiverMap(Quiver src, Quiver tgt);  // zero map

  static QuiverMap identity(const Quiver& q);
  static QuiverMap zero(const Quiver& src, const Quiver& tgt);

  // Component at (a,b); the zero map between the entries if absent.
  LinearMap at(std::size_t a, std::size_t b) const;
  void set(std::size_t a, std::size_t b, LinearMap f);

  // Checks component domains/codomains against the entries.
  void validate() const;
  bool is_isomorphism() const;
};

bool operator==(const QuiverMap& f, const QuiverMap& g);
inline bool operator!=(const QuiverMap& f, const QuiverMap& g) {
  return !(f == g);
}

QuiverMap compose(const QuiverMap& f, const QuiverMap& g);  // f after g
QuiverMap add(const QuiverMap& f, const QuiverMap& g);
QuiverMap sub(const QuiverMap& f, const QuiverMap& g);
QuiverMap negate(const QuiverMap& f);
// Inverse of an isomorphism; throws if not invertible.
QuiverMap inverse_map(const QuiverMap& f);

// (Q tensor_S P)(a,b) = (+)_{c in S} Q(a,c) (x) P(c,b), blocks in vertex
// order, each block row-major in the factor bases.
Quiver tensor_S(const Quiver& q, const Quiver& p);
QuiverMap tensor_S(const QuiverMap& f, const QuiverMap& g);

// I_S: rank 1 on the diagonal (basis label "1"), zero elsewhere.
Quiver unit_quiver(const Ring& ring, std::vector<std::string> vertices);

// Canonical coherence isomorphisms for (tensor_S, I_S).
QuiverMap left_unitor(const Quiver& q);       // I_S (x)_S Q -> Q
QuiverMap left_unitor_inv(const Quiver& q);   // Q -> I_S (x)_S Q
QuiverMap right_unitor(const Quiver& q);      // Q (x)_S I_S -> Q
QuiverMap right_unitor_inv(const Quiver& q);  // Q -> Q (x)_S I_S
// ((Q (x) P) (x) R) -> (Q (x) (P (x) R))
QuiverMap associator(const Quiver& q, const Quiver& p, const Quiver& r);

// f_!(Q)(x,y) = (+)_{a in f^-1(x), b in f^-1(y)} Q(a,b), blocks in
// lexicographic (a,b) order, labels "(a|b|q)".
Quiver pushforward(const VertexMap& f, const Quiver& q);
QuiverMap pushforward(const VertexMap& f, const QuiverMap& phi);

// f^*(Q)(a,b) = Q(f(a),f(b)).
Quiver pullback(const VertexMap& f, const Quiver& q);
QuiverMap pullback(const VertexMap& f, const QuiverMap& phi);

// Unit Q -> f^* f_! Q and counit f_! f^* P -> P of f_! -| f^*.
QuiverMap adjunction_unit(const VertexMap& f, const Quiver& q);
QuiverMap adjunction_counit(const VertexMap& f, const Quiver& p);

// The canonical isomorphism (g o f)_! Q -> g_!(f_! Q).
QuiverMap pushforward_compose_iso(const VertexMap& g, const VertexMap& f,
                                  const Quiver& q);

// Lax structure of f^*: f^*(Q) (x)_S f^*(P) -> f^*(Q (x)_T P), and its unit
// constraint I_S -> f^*(I_T).
QuiverMap pullback_lax(const VertexMap& f, const Quiver& q, const Quiver& p);
QuiverMap pullback_lax_unit(const VertexMap& f, const Ring& ring);

// Colax structure of f_!: f_!(Q (x)_S P) -> f_!(Q) (x)_T f_!(P), and its
// counit constraint f_!(I_S) -> I_T.
QuiverMap pushforward_colax(const VertexMap& f, const Quiver& q,
                            const Quiver& p);
QuiverMap pushforward_colax_unit(const VertexMap& f, const Ring& ring);

// Entrywise direct sum of same-based quivers, blocks in the given order,
// labels "(tag|q)".  Tags must be pairwise distinct.
Quiver direct_sum(const std::vector<std::pair<std::string, Quiver>>& parts);
QuiverMap direct_sum_injection(
    const std::vector<std::pair<std::string, Quiver>>& parts, std::size_t k);
QuiverMap direct_sum_projection(
    const std::vector<std::pair<std::string, Quiver>>& parts, std::size_t k);

// The element x (x) y of (Q (x)_S P)(a,b) for x in Q(a,c) and y in P(c,b).
Vec tensor_element(const Quiver& q, const Quiver& p, std::size_t a,
                   std::size_t c, std::size_t b, const Vec& x, const Vec& y);

// (+)_{a,b} Q(a,b) as a single module with "(a|b|q)" labels, entries in
// lexicographic (a,b) order.
FreeModule assemble_total(const Quiver& q);

std::string triple_label(const std::string& a, const std::string& b,
                         const std::string& c);

}  // namespace templike
