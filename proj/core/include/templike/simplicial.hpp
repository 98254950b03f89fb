// Levelwise-finite simplicial sets up to a truncation dimension.
//
// Simplices are opaque string identifiers; faces and degeneracies are total
// index maps per level.  Standard simplices, horns, wedges and boundaries
// name their simplices by vertex lists "[i0,...,im]".  Extension searches
// (inner horns, wedges) are exhaustive with lexicographic tie-breaking —
// they are the finite-instance oracle for everything downstream.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "templike/scalar.hpp"

namespace templike {

struct FinSimplicialSet {
  int D = 0;  // maximum stored dimension
  std::vector<std::vector<std::string>> ids;               // ids[d]
  std::vector<std::vector<std::vector<std::size_t>>> face;  // face[d][i][s], 1 <= d
  std::vector<std::vector<std::vector<std::size_t>>> degen;  // degen[d][i][s], d < D

  std::size_t size(int d) const;
  const std::string& id(int d, std::size_t s) const;
  std::size_t index_of(int d, const std::string& name) const;
  std::size_t face_at(int d, int i, std::size_t s) const;
  std::size_t degen_at(int d, int i, std::size_t s) const;
  bool is_degenerate(int d, std::size_t s) const;

  // Eilenberg-Zilber normal form: the unique nondegenerate core and the
  // sigma word (indices j_1 < ... < j_t, innermost applied first).
  struct EZForm {
    int level = 0;
    std::size_t index = 0;
    std::vector<int> sigmas;
  };
  EZForm ez_normal_form(int d, std::size_t s) const;

  // Contravariant action of an arbitrary monotone map g : [d'] -> [d]
  // (full simplex category, endpoints unrestricted): returns x . g.
  std::size_t act(int d, std::size_t s, const std::vector<int>& g) const;

  // Index (in level 0) of the i-th vertex of a simplex.
  std::size_t vertex(int d, std::size_t s, int i) const;

  // Throws contract_error on the first violated simplicial identity.
  void validate() const;

  // Builds a simplicial set from nondegenerate cells whose faces are again
  // cells; degeneracies are generated formally (ids get "~si" suffixes).
  struct Cell {
    std::string name;
    std::vector<std::string> faces;  // ids of the d+1 facets, empty for d = 0
  };
  static FinSimplicialSet from_cells(int D, const std::vector<std::vector<Cell>>& cells);
};

FinSimplicialSet standard_simplex(int n, int D = 6);
FinSimplicialSet horn(int n, int k, int D = 6);
FinSimplicialSet boundary(int n, int D = 6);
// The n-th wedge W^n: simplices f of Delta^n with f(m) <= n-1 or f(0) >= 1.
FinSimplicialSet wedge(int n, int D = 6);

struct SimplicialMap {
  const FinSimplicialSet* source = nullptr;
  const FinSimplicialSet* target = nullptr;
  std::vector<std::vector<std::size_t>> level;  // level[d][s] -> target index

  void validate() const;  // commutes with all faces and degeneracies
};

// The inclusion of a vertex-list-named subcomplex (horn/wedge/boundary)
// into the standard simplex with the same naming scheme.
SimplicialMap inclusion_by_ids(const FinSimplicialSet& sub, const FinSimplicialSet& whole);

struct FinCategory {
  std::vector<std::string> objects;
  struct Mor {
    std::string name;
    std::size_t src = 0, tgt = 0;
  };
  std::vector<Mor> morphisms;
  std::vector<std::vector<std::size_t>> comp;  // comp[g][f] = g after f
  std::vector<std::size_t> identity;           // identity[object]

  std::size_t compose_mor(std::size_t g, std::size_t f) const;
  void validate() const;  // associativity and unit laws, exhaustively
};

FinSimplicialSet nerve_cat(const FinCategory& C, int D = 6);

struct QCReport {
  bool ok = true;
  std::string witness;  // description of the first failing horn
};

// Searches an extension for every inner horn map with 2 <= n <= Dmax.
QCReport is_quasi_category_up_to(const FinSimplicialSet& X, int Dmax);

// A map Lambda^n_k -> X given by the images x_i (i != k) of the facets;
// position k is ignored.  Returns the lexicographically least filler id.
std::optional<std::size_t> fill_horn_set(const FinSimplicialSet& X, int n, int k,
                                         const std::vector<std::size_t>& facets);

// Checks that every wedge map W^n -> X (n <= nmax) extends to Delta^n.
QCReport lifts_all_wedges(const FinSimplicialSet& X, int nmax);

// Homotopy category of a quasi-category (refuses otherwise, witness horn in
// the exception message).
FinCategory homotopy_category(const FinSimplicialSet& X);

// The simplicial-set <-> templicial-set identification: each simplex gets
// its (first vertex, last vertex) endpoint pair.
struct PartitionedSimplicialSet {
  FinSimplicialSet base;
  // endpoints[d][s] = (first vertex, last vertex) as level-0 indices
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> endpoints;
};

PartitionedSimplicialSet as_templicial_set(const FinSimplicialSet& Y);
FinSimplicialSet flatten(const PartitionedSimplicialSet& P);

}  // namespace templike
