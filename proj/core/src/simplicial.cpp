#include "templike/simplicial.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace templike {

namespace {

// Values of the composite surjection sigma_{j_1} o ... o sigma_{j_t}
// : [d] ->> [d-t] (j_1 < ... < j_t, innermost sigma_{j_t} applied first).
std::vector<int> surjection_values(int d, const std::vector<int>& sigmas) {
  std::vector<int> v(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) v[static_cast<std::size_t>(i)] = i;
  for (auto it = sigmas.rbegin(); it != sigmas.rend(); ++it)
    for (auto& x : v)
      if (x > *it) --x;
  return v;
}

std::vector<int> sigmas_of_surjection(const std::vector<int>& values) {
  std::vector<int> s;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] == values[i + 1]) s.push_back(static_cast<int>(i));
  return s;
}

// Normal form of an arbitrary monotone map in the full simplex category:
// misses (descending) give the delta word, repeats (ascending) the sigmas.
struct DeltaSigmaWord {
  std::vector<int> deltas;  // descending, applied first under the right action
  std::vector<int> sigmas;  // ascending
};

DeltaSigmaWord full_normal_form(const std::vector<int>& values, int target_dim) {
  DeltaSigmaWord w;
  for (int v = target_dim; v >= 0; --v)
    if (std::find(values.begin(), values.end(), v) == values.end())
      w.deltas.push_back(v);
  w.sigmas = sigmas_of_surjection(values);
  return w;
}

}  // namespace

std::size_t FinSimplicialSet::size(int d) const {
  return ids.at(static_cast<std::size_t>(d)).size();
}

const std::string& FinSimplicialSet::id(int d, std::size_t s) const {
  return ids.at(static_cast<std::size_t>(d)).at(s);
}

std::size_t FinSimplicialSet::index_of(int d, const std::string& name) const {
  const auto& lvl = ids.at(static_cast<std::size_t>(d));
  auto it = std::find(lvl.begin(), lvl.end(), name);
  if (it == lvl.end())
    throw contract_error("unknown simplex " + name + " in dimension " + std::to_string(d));
  return static_cast<std::size_t>(it - lvl.begin());
}

std::size_t FinSimplicialSet::face_at(int d, int i, std::size_t s) const {
  return face.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(i)).at(s);
}

std::size_t FinSimplicialSet::degen_at(int d, int i, std::size_t s) const {
  return degen.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(i)).at(s);
}

bool FinSimplicialSet::is_degenerate(int d, std::size_t s) const {
  if (d == 0) return false;
  for (int i = 0; i < d; ++i)
    for (std::size_t x = 0; x < size(d - 1); ++x)
      if (degen_at(d - 1, i, x) == s) return true;
  return false;
}

FinSimplicialSet::EZForm FinSimplicialSet::ez_normal_form(int d, std::size_t s) const {
  for (int i = 0; d > 0 && i < d; ++i)
    for (std::size_t x = 0; x < size(d - 1); ++x)
      if (degen_at(d - 1, i, x) == s) {
        EZForm sub = ez_normal_form(d - 1, x);
        // s = s_i(x) = x . sigma_i: compose the surjections.
        std::vector<int> u = surjection_values(d - 1, sub.sigmas);
        std::vector<int> v;
        for (int t = 0; t <= d; ++t) v.push_back(u[static_cast<std::size_t>(t <= i ? t : t - 1)]);
        return EZForm{sub.level, sub.index, sigmas_of_surjection(v)};
      }
  return EZForm{d, s, {}};
}

std::size_t FinSimplicialSet::act(int d, std::size_t s, const std::vector<int>& g) const {
  DeltaSigmaWord w = full_normal_form(g, d);
  int cur = d;
  std::size_t x = s;
  for (int i : w.deltas) {
    x = face_at(cur, i, x);
    --cur;
  }
  for (int j : w.sigmas) {
    x = degen_at(cur, j, x);
    ++cur;
  }
  return x;
}

std::size_t FinSimplicialSet::vertex(int d, std::size_t s, int i) const {
  return act(d, s, {i});
}

void FinSimplicialSet::validate() const {
  auto fail = [](const std::string& msg) { throw contract_error("simplicial identity: " + msg); };
  for (int d = 0; d <= D; ++d) {
    for (std::size_t s = 0; s < size(d); ++s) {
      // d_i d_j = d_{j-1} d_i for i < j
      if (d >= 2)
        for (int j = 1; j <= d; ++j)
          for (int i = 0; i < j; ++i)
            if (face_at(d - 1, i, face_at(d, j, s)) !=
                face_at(d - 1, j - 1, face_at(d, i, s)))
              fail("d_i d_j at " + id(d, s));
      if (d < D) {
        // s_i s_j = s_{j+1} s_i for i <= j (needs two levels of headroom)
        if (d + 2 <= D)
          for (int j = 0; j <= d; ++j)
            for (int i = 0; i <= j; ++i)
              if (degen_at(d + 1, j + 1, degen_at(d, i, s)) !=
                  degen_at(d + 1, i, degen_at(d, j, s)))
                fail("s_i s_j at " + id(d, s));
        // d_i s_j relations
        for (int j = 0; j <= d; ++j)
          for (int i = 0; i <= d + 1; ++i) {
            std::size_t lhs = face_at(d + 1, i, degen_at(d, j, s));
            std::size_t rhs;
            if (i == j || i == j + 1)
              rhs = s;
            else if (i < j)
              rhs = degen_at(d - 1, j - 1, face_at(d, i, s));
            else
              rhs = degen_at(d - 1, j, face_at(d, i - 1, s));
            if (lhs != rhs) fail("d_i s_j at " + id(d, s));
          }
      }
    }
  }
  // Eilenberg-Zilber: the normal form must be reproducible and unique per id.
  for (int d = 0; d <= D; ++d)
    for (std::size_t s = 0; s < size(d); ++s) {
      EZForm f = ez_normal_form(d, s);
      // re-apply the sigma word under the right action: s_{j_1} first
      int cur = f.level;
      std::size_t x = f.index;
      for (int j : f.sigmas) {
        x = degen_at(cur, j, x);
        ++cur;
      }
      if (x != s) fail("EZ round trip at " + id(d, s));
    }
}

FinSimplicialSet FinSimplicialSet::from_cells(int D,
                                              const std::vector<std::vector<Cell>>& cells) {
  FinSimplicialSet X;
  X.D = D;
  if (static_cast<int>(cells.size()) > D + 1)
    throw contract_error("from_cells: cells above the truncation dimension");

  // index of a cell by name per dimension
  std::vector<std::map<std::string, std::size_t>> cell_index(cells.size());
  for (std::size_t m = 0; m < cells.size(); ++m)
    for (std::size_t c = 0; c < cells[m].size(); ++c)
      cell_index[m][cells[m][c].name] = c;

  // simplices per level: (cell dim, cell idx, surjection values [d]->>[m])
  struct Simp {
    int m;
    std::size_t c;
    std::vector<int> u;
  };
  std::vector<std::vector<Simp>> lvl(static_cast<std::size_t>(D) + 1);

  // enumerate monotone surjections [d] ->> [m]
  auto surjections = [](int d, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(static_cast<std::size_t>(d) + 1, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos > d) {
        if (v[static_cast<std::size_t>(d)] == m) out.push_back(v);
        return;
      }
      int prev = pos == 0 ? 0 : v[static_cast<std::size_t>(pos - 1)];
      for (int x = prev; x <= std::min(prev + 1, m); ++x) {
        if (pos == 0 && x != 0) continue;
        v[static_cast<std::size_t>(pos)] = x;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    return out;
  };

  for (int d = 0; d <= D; ++d) {
    for (int m = d; m >= 0; --m) {
      if (m >= static_cast<int>(cells.size())) continue;
      for (std::size_t c = 0; c < cells[static_cast<std::size_t>(m)].size(); ++c)
        for (auto& u : surjections(d, m))
          lvl[static_cast<std::size_t>(d)].push_back(Simp{m, c, u});
    }
  }

  auto name_of = [&](const Simp& s) {
    const Cell& cell = cells[static_cast<std::size_t>(s.m)][s.c];
    if (static_cast<int>(s.u.size()) == s.m + 1) return cell.name;
    std::string n = cell.name + "~s";
    for (int j : sigmas_of_surjection(s.u)) n += std::to_string(j) + ".";
    return n;
  };

  auto find_simp = [&](int d, const Simp& s) -> std::size_t {
    const auto& L = lvl[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < L.size(); ++i)
      if (L[i].m == s.m && L[i].c == s.c && L[i].u == s.u) return i;
    throw contract_error("from_cells: lost simplex");
  };

  X.ids.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d)
    for (auto& s : lvl[static_cast<std::size_t>(d)])
      X.ids[static_cast<std::size_t>(d)].push_back(name_of(s));

  X.face.resize(static_cast<std::size_t>(D) + 1);
  X.degen.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 1; d <= D; ++d) {
    X.face[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(d) + 1, {});
    for (int i = 0; i <= d; ++i) {
      auto& tab = X.face[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
      for (auto& s : lvl[static_cast<std::size_t>(d)]) {
        // v = u o delta_i
        std::vector<int> v;
        for (int t = 0; t <= d; ++t)
          if (t != i) v.push_back(s.u[static_cast<std::size_t>(t)]);
        // v is surjective, or misses exactly one value j
        int missing = -1;
        for (int val = 0; val <= s.m; ++val)
          if (std::find(v.begin(), v.end(), val) == v.end()) {
            missing = val;
            break;
          }
        Simp res;
        if (missing < 0) {
          res = Simp{s.m, s.c, v};
        } else {
          const Cell& cell = cells[static_cast<std::size_t>(s.m)][s.c];
          if (cell.faces.size() != static_cast<std::size_t>(s.m) + 1)
            throw contract_error("from_cells: cell " + cell.name + " lacks faces");
          const std::string& fname = cell.faces[static_cast<std::size_t>(missing)];
          auto it = cell_index[static_cast<std::size_t>(s.m - 1)].find(fname);
          if (it == cell_index[static_cast<std::size_t>(s.m - 1)].end())
            throw contract_error("from_cells: unknown face cell " + fname);
          std::vector<int> w;
          for (int x : v) w.push_back(x < missing ? x : x - 1);
          res = Simp{s.m - 1, it->second, w};
        }
        tab.push_back(find_simp(d - 1, res));
      }
    }
  }
  for (int d = 0; d < D; ++d) {
    X.degen[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(d) + 1, {});
    for (int i = 0; i <= d; ++i) {
      auto& tab = X.degen[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
      for (auto& s : lvl[static_cast<std::size_t>(d)]) {
        std::vector<int> v;
        for (int t = 0; t <= d + 1; ++t)
          v.push_back(s.u[static_cast<std::size_t>(t <= i ? t : t - 1)]);
        tab.push_back(find_simp(d + 1, Simp{s.m, s.c, v}));
      }
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Standard simplices and their subcomplexes
// ---------------------------------------------------------------------------

namespace {

std::string vertex_list_id(const std::vector<int>& vs) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << "]";
  return os.str();
}

// Builds the subcomplex of Delta^n with the given predicate on strictly
// increasing vertex lists; all simplices are named by (possibly weakly
// increasing) vertex lists.
FinSimplicialSet delta_subcomplex(int n, int D,
                                  const std::function<bool(const std::vector<int>&)>& keep);

}  // namespace

namespace {

FinSimplicialSet delta_subcomplex(int n, int D,
                                  const std::function<bool(const std::vector<int>&)>& keep) {
  std::vector<std::vector<FinSimplicialSet::Cell>> cells(
      static_cast<std::size_t>(std::min(n, D)) + 1);
  // strictly increasing subsets of {0..n} of each size
  for (int d = 0; d <= std::min(n, D); ++d) {
    std::vector<int> pick(static_cast<std::size_t>(d) + 1);
    auto rec = [&](auto&& self, int pos, int lo) -> void {
      if (pos > d) {
        if (!keep(pick)) return;
        FinSimplicialSet::Cell cell;
        cell.name = vertex_list_id(pick);
        if (d > 0)
          for (int i = 0; i <= d; ++i) {
            std::vector<int> f;
            for (int t = 0; t <= d; ++t)
              if (t != i) f.push_back(pick[static_cast<std::size_t>(t)]);
            cell.faces.push_back(vertex_list_id(f));
          }
        cells[static_cast<std::size_t>(d)].push_back(std::move(cell));
        return;
      }
      for (int v = lo; v <= n; ++v) {
        pick[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1, v + 1);
      }
    };
    rec(rec, 0, 0);
  }
  FinSimplicialSet X = FinSimplicialSet::from_cells(D, cells);
  // Rename degenerate simplices to vertex lists with repeats.
  for (int d = 0; d <= D; ++d)
    for (std::size_t s = 0; s < X.size(d); ++s) {
      auto ez = X.ez_normal_form(d, s);
      if (ez.level == d) continue;
      std::vector<int> core;
      {
        // parse "[a,b,c]"
        const std::string& nm = X.ids[static_cast<std::size_t>(ez.level)][ez.index];
        std::stringstream ss(nm.substr(1, nm.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) core.push_back(std::stoi(tok));
      }
      std::vector<int> u = surjection_values(d, ez.sigmas);
      std::vector<int> vs;
      for (int x : u) vs.push_back(core[static_cast<std::size_t>(x)]);
      X.ids[static_cast<std::size_t>(d)][s] = vertex_list_id(vs);
    }
  return X;
}

}  // namespace

FinSimplicialSet standard_simplex(int n, int D) {
  return delta_subcomplex(n, D, [](const std::vector<int>&) { return true; });
}

FinSimplicialSet horn(int n, int k, int D) {
  if (k < 0 || k > n) throw contract_error("horn: k out of range");
  return delta_subcomplex(n, D, [n, k](const std::vector<int>& vs) {
    // keep f iff im(f) u {k} != [n]
    std::set<int> s(vs.begin(), vs.end());
    s.insert(k);
    return static_cast<int>(s.size()) != n + 1;
  });
}

FinSimplicialSet boundary(int n, int D) {
  return delta_subcomplex(n, D, [n](const std::vector<int>& vs) {
    return static_cast<int>(vs.size()) != n + 1;  // strictly increasing lists
  });
}

FinSimplicialSet wedge(int n, int D) {
  if (n < 2) throw contract_error("wedge: n >= 2 required");
  return delta_subcomplex(n, D, [n](const std::vector<int>& vs) {
    return vs.back() <= n - 1 || vs.front() >= 1;
  });
}

void SimplicialMap::validate() const {
  const auto& X = *source;
  const auto& Y = *target;
  int D = std::min(X.D, Y.D);
  for (int d = 1; d <= D; ++d)
    for (int i = 0; i <= d; ++i)
      for (std::size_t s = 0; s < X.size(d); ++s)
        if (Y.face_at(d, i, level[static_cast<std::size_t>(d)][s]) !=
            level[static_cast<std::size_t>(d - 1)][X.face_at(d, i, s)])
          throw contract_error("simplicial map does not commute with d_" + std::to_string(i));
  for (int d = 0; d < D; ++d)
    for (int i = 0; i <= d; ++i)
      for (std::size_t s = 0; s < X.size(d); ++s)
        if (Y.degen_at(d, i, level[static_cast<std::size_t>(d)][s]) !=
            level[static_cast<std::size_t>(d + 1)][X.degen_at(d, i, s)])
          throw contract_error("simplicial map does not commute with s_" + std::to_string(i));
}

SimplicialMap inclusion_by_ids(const FinSimplicialSet& sub, const FinSimplicialSet& whole) {
  SimplicialMap m;
  m.source = &sub;
  m.target = &whole;
  m.level.resize(static_cast<std::size_t>(sub.D) + 1);
  for (int d = 0; d <= sub.D; ++d)
    for (std::size_t s = 0; s < sub.size(d); ++s)
      m.level[static_cast<std::size_t>(d)].push_back(whole.index_of(d, sub.id(d, s)));
  return m;
}

std::size_t FinCategory::compose_mor(std::size_t g, std::size_t f) const {
  if (morphisms[f].tgt != morphisms[g].src)
    throw contract_error("FinCategory: morphisms not composable");
  return comp[g][f];
}

void FinCategory::validate() const {
  for (std::size_t o = 0; o < objects.size(); ++o) {
    std::size_t e = identity[o];
    if (morphisms[e].src != o || morphisms[e].tgt != o)
      throw contract_error("identity endpoints wrong at " + objects[o]);
  }
  for (std::size_t f = 0; f < morphisms.size(); ++f) {
    if (compose_mor(identity[morphisms[f].tgt], f) != f ||
        compose_mor(f, identity[morphisms[f].src]) != f)
      throw contract_error("unit law fails at " + morphisms[f].name);
    for (std::size_t g = 0; g < morphisms.size(); ++g) {
      if (morphisms[g].src != morphisms[f].tgt) continue;
      std::size_t gf = compose_mor(g, f);
      if (morphisms[gf].src != morphisms[f].src || morphisms[gf].tgt != morphisms[g].tgt)
        throw contract_error("composite endpoints wrong");
      for (std::size_t h = 0; h < morphisms.size(); ++h) {
        if (morphisms[h].src != morphisms[g].tgt) continue;
        if (compose_mor(h, gf) != compose_mor(compose_mor(h, g), f))
          throw contract_error("associativity fails");
      }
    }
  }
}

FinSimplicialSet nerve_cat(const FinCategory& C, int D) {
  FinSimplicialSet X;
  X.D = D;
  // chains[d][s] = (object of origin, morphisms f_1..f_d)
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> chains(
      static_cast<std::size_t>(D) + 1);
  X.ids.resize(static_cast<std::size_t>(D) + 1);
  for (std::size_t o = 0; o < C.objects.size(); ++o) {
    chains[0].push_back({o, {}});
    X.ids[0].push_back(C.objects[o]);
  }
  for (int d = 1; d <= D; ++d) {
    for (auto& [o, ch] : chains[static_cast<std::size_t>(d - 1)]) {
      for (std::size_t f = 0; f < C.morphisms.size(); ++f) {
        std::size_t tail = ch.empty() ? o : C.morphisms[ch.back()].tgt;
        if (C.morphisms[f].src != tail) continue;
        auto ext = ch;
        ext.push_back(f);
        std::string nm;
        for (std::size_t i = 0; i < ext.size(); ++i)
          nm += (i ? "|" : "") + C.morphisms[ext[i]].name;
        chains[static_cast<std::size_t>(d)].push_back({o, ext});
        X.ids[static_cast<std::size_t>(d)].push_back(nm);
      }
    }
  }
  auto find_chain = [&](int d, std::size_t origin, const std::vector<std::size_t>& ch) {
    const auto& L = chains[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < L.size(); ++i)
      if (L[i].first == origin && L[i].second == ch) return i;
    throw contract_error("nerve: lost chain");
  };
  X.face.resize(static_cast<std::size_t>(D) + 1);
  X.degen.resize(static_cast<std::size_t>(D) + 1);
  for (int d = 1; d <= D; ++d) {
    X.face[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(d) + 1, {});
    for (int i = 0; i <= d; ++i) {
      auto& tab = X.face[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
      for (auto& [o, ch] : chains[static_cast<std::size_t>(d)]) {
        std::vector<std::size_t> res;
        std::size_t origin = o;
        if (i == 0) {
          origin = d >= 1 ? C.morphisms[ch[0]].tgt : o;
          res.assign(ch.begin() + 1, ch.end());
        } else if (i == d) {
          res.assign(ch.begin(), ch.end() - 1);
        } else {
          res = ch;
          std::size_t gf = C.compose_mor(ch[static_cast<std::size_t>(i)],
                                         ch[static_cast<std::size_t>(i - 1)]);
          res[static_cast<std::size_t>(i - 1)] = gf;
          res.erase(res.begin() + i);
        }
        tab.push_back(find_chain(d - 1, origin, res));
      }
    }
  }
  for (int d = 0; d < D; ++d) {
    X.degen[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(d) + 1, {});
    for (int i = 0; i <= d; ++i) {
      auto& tab = X.degen[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
      for (auto& [o, ch] : chains[static_cast<std::size_t>(d)]) {
        std::vector<std::size_t> res = ch;
        std::size_t at_obj = o;
        for (int t = 0; t < i; ++t) at_obj = C.morphisms[ch[static_cast<std::size_t>(t)]].tgt;
        res.insert(res.begin() + i, C.identity[at_obj]);
        tab.push_back(find_chain(d + 1, o, res));
      }
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Horn and wedge extension searches
// ---------------------------------------------------------------------------

std::optional<std::size_t> fill_horn_set(const FinSimplicialSet& X, int n, int k,
                                         const std::vector<std::size_t>& facets) {
  std::optional<std::size_t> best;
  for (std::size_t s = 0; s < X.size(n); ++s) {
    bool ok = true;
    for (int i = 0; i <= n && ok; ++i) {
      if (i == k) continue;
      if (X.face_at(n, i, s) != facets[static_cast<std::size_t>(i)]) ok = false;
    }
    if (ok && (!best || X.id(n, s) < X.id(n, *best))) best = s;
  }
  return best;
}

namespace {

// Enumerates all compatible facet tuples (x_i)_{i != k, i != skip2} for maps
// out of a horn (skip2 = -1) and calls `visit`; abort early if it returns
// false.
bool enumerate_compatible_tuples(const FinSimplicialSet& X, int n,
                                 const std::vector<int>& skip,
                                 const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> tuple(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> positions;
  for (int i = 0; i <= n; ++i)
    if (std::find(skip.begin(), skip.end(), i) == skip.end()) positions.push_back(i);
  auto rec = [&](auto&& self, std::size_t pi) -> bool {
    if (pi == positions.size()) return visit(tuple);
    int j = positions[pi];
    for (std::size_t x = 0; x < X.size(n - 1); ++x) {
      bool ok = true;
      for (std::size_t qi = 0; qi < pi && ok; ++qi) {
        int i = positions[qi];  // i < j
        if (X.face_at(n - 1, i, x) !=
            X.face_at(n - 1, j - 1, tuple[static_cast<std::size_t>(i)]))
          ok = false;
      }
      if (!ok) continue;
      tuple[static_cast<std::size_t>(j)] = x;
      if (!self(self, pi + 1)) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

}  // namespace

QCReport is_quasi_category_up_to(const FinSimplicialSet& X, int Dmax) {
  if (Dmax + 1 > X.D) throw contract_error("is_quasi_category_up_to: Dmax too large");
  for (int n = 2; n <= Dmax; ++n)
    for (int k = 1; k < n; ++k) {
      QCReport rep;
      bool complete = enumerate_compatible_tuples(
          X, n, {k}, [&](const std::vector<std::size_t>& tuple) {
            if (fill_horn_set(X, n, k, tuple)) return true;
            std::ostringstream os;
            os << "Lambda^" << n << "_" << k << " horn (";
            for (int i = 0; i <= n; ++i) {
              if (i == k) continue;
              os << "d" << i << "=" << X.id(n - 1, tuple[static_cast<std::size_t>(i)]) << " ";
            }
            os << ") has no filler";
            rep = QCReport{false, os.str()};
            return false;
          });
      if (!complete) return rep;
    }
  return QCReport{};
}

QCReport lifts_all_wedges(const FinSimplicialSet& X, int nmax) {
  for (int n = 2; n <= nmax; ++n) {
    QCReport rep;
    std::vector<int> skip;
    for (int i = 1; i < n; ++i) skip.push_back(i);
    bool complete = enumerate_compatible_tuples(
        X, n, skip, [&](const std::vector<std::size_t>& tuple) {
          for (std::size_t s = 0; s < X.size(n); ++s)
            if (X.face_at(n, 0, s) == tuple[0] &&
                X.face_at(n, n, s) == tuple[static_cast<std::size_t>(n)])
              return true;
          rep = QCReport{false, "W^" + std::to_string(n) + " wedge (d0=" +
                                    X.id(n - 1, tuple[0]) + ", d" + std::to_string(n) +
                                    "=" + X.id(n - 1, tuple[static_cast<std::size_t>(n)]) +
                                    ") has no lift"};
          return false;
        });
    if (!complete) return rep;
  }
  return QCReport{};
}

FinCategory homotopy_category(const FinSimplicialSet& X) {
  QCReport qc = is_quasi_category_up_to(X, std::min(3, X.D - 1));
  if (!qc.ok)
    throw contract_error("homotopy_category requires a quasi-category: " + qc.witness);

  FinCategory C;
  C.objects = X.ids[0];

  // Left homotopy: f ~ g iff there is w with d0(w)=f, d1(w)=g, d2(w)=s0(a).
  std::size_t ne = X.size(1);
  std::vector<std::size_t> cls(ne);
  for (std::size_t i = 0; i < ne; ++i) cls[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return cls[x] == x ? x : cls[x] = find(cls[x]);
  };
  auto unite = [&](std::size_t a, std::size_t b) { cls[find(a)] = find(b); };
  for (std::size_t w = 0; w < X.size(2); ++w) {
    std::size_t f = X.face_at(2, 0, w), g = X.face_at(2, 1, w), e = X.face_at(2, 2, w);
    std::size_t a = X.vertex(1, f, 0);
    if (e == X.degen_at(0, 0, a)) unite(f, g);
  }
  // representatives: lexicographically least id per class
  std::map<std::size_t, std::size_t> rep;
  for (std::size_t i = 0; i < ne; ++i) {
    std::size_t r = find(i);
    auto it = rep.find(r);
    if (it == rep.end() || X.id(1, i) < X.id(1, it->second)) rep[r] = i;
  }
  std::vector<std::size_t> class_of(ne);  // edge -> morphism index
  std::map<std::size_t, std::size_t> mor_of_rep;
  for (auto& [r, e] : rep) {
    mor_of_rep[r] = C.morphisms.size();
    C.morphisms.push_back(
        {"[" + X.id(1, e) + "]", X.vertex(1, e, 0), X.vertex(1, e, 1)});
  }
  for (std::size_t i = 0; i < ne; ++i) class_of[i] = mor_of_rep[find(i)];

  C.identity.resize(C.objects.size());
  for (std::size_t o = 0; o < C.objects.size(); ++o)
    C.identity[o] = class_of[X.degen_at(0, 0, o)];

  std::size_t nm = C.morphisms.size();
  C.comp.assign(nm, std::vector<std::size_t>(nm, SIZE_MAX));
  for (auto& [rf, ef] : rep)
    for (auto& [rg, eg] : rep) {
      if (C.morphisms[class_of[ef]].tgt != C.morphisms[class_of[eg]].src) continue;
      // fill the Lambda^2_1 horn (d2 = f, d0 = g)
      std::optional<std::size_t> w;
      for (std::size_t s = 0; s < X.size(2); ++s)
        if (X.face_at(2, 2, s) == ef && X.face_at(2, 0, s) == eg &&
            (!w || X.id(2, s) < X.id(2, *w)))
          w = s;
      if (!w)
        throw contract_error("homotopy_category: unfillable composition horn");
      C.comp[class_of[eg]][class_of[ef]] = class_of[X.face_at(2, 1, *w)];
    }
  return C;
}

PartitionedSimplicialSet as_templicial_set(const FinSimplicialSet& Y) {
  PartitionedSimplicialSet P;
  P.base = Y;
  P.endpoints.resize(static_cast<std::size_t>(Y.D) + 1);
  for (int d = 0; d <= Y.D; ++d)
    for (std::size_t s = 0; s < Y.size(d); ++s)
      P.endpoints[static_cast<std::size_t>(d)].push_back(
          {Y.vertex(d, s, 0), Y.vertex(d, s, d)});
  return P;
}

FinSimplicialSet flatten(const PartitionedSimplicialSet& P) { return P.base; }

}  // namespace templike
