#include "templike/frobenius.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace templike {

namespace {

std::string pq_str(int p, int q) {
  std::ostringstream os;
  os << "(" << p << "," << q << ")";
  return os.str();
}

Vec apply_at(const QuiverMap& f, std::size_t a, std::size_t b, const Vec& x) {
  return f.at(a, b).apply(x);
}

}  // namespace

const QuiverMap& NaFStructure::z(int p, int q) const {
  auto it = Z.find({p, q});
  if (it == Z.end())
    throw contract_error("naF structure has no Z" + pq_str(p, q));
  return it->second;
}

QuiverMap naf_mu(const TemplicialModule& X, int k, int l) {
  if (k > 0 && l > 0) return X.mu(k, l);
  if (k == 0) {
    // (counit^{-1} (x) id) o lambda^{-1} : X_l -> X_0 (x) X_l
    return compose(
        tensor_S(inverse_map(X.counit), QuiverMap::identity(X.X[l])),
        left_unitor_inv(X.X[l]));
  }
  // (id (x) counit^{-1}) o rho^{-1} : X_k -> X_k (x) X_0
  return compose(tensor_S(QuiverMap::identity(X.X[k]), inverse_map(X.counit)),
                 right_unitor_inv(X.X[k]));
}

QuiverMap naf_z(const NaFStructure& Z, int p, int q) {
  const TemplicialModule& X = Z.host;
  if (p > 0 && q > 0) return Z.z(p, q);
  if (p == 0)
    return compose(left_unitor(X.X[q]),
                   tensor_S(X.counit, QuiverMap::identity(X.X[q])));
  return compose(right_unitor(X.X[p]),
                 tensor_S(QuiverMap::identity(X.X[p]), X.counit));
}

CheckReport check_naf(const NaFStructure& Z) {
  const TemplicialModule& X = Z.host;
  const int D = X.D;

  // Shapes.
  for (int p = 1; p < D; ++p)
    for (int q = 1; p + q <= D; ++q) {
      auto it = Z.Z.find({p, q});
      if (it == Z.Z.end())
        return CheckReport::fail("missing Z" + pq_str(p, q));
      const QuiverMap& z = it->second;
      if (z.source != tensor_S(X.X[p], X.X[q]) || z.target != X.X[p + q])
        return CheckReport::fail("Z" + pq_str(p, q) + " has wrong shape");
      z.validate();
    }

  // Naturality in both indices for inner faces.
  for (int p = 1; p < D; ++p)
    for (int q = 1; p + q <= D; ++q) {
      const int n = p + q;
      for (int j = 1; j < n; ++j) {
        if (j == p) continue;
        const QuiverMap lhs = compose(X.d(n, j), Z.z(p, q));
        const QuiverMap rhs =
            j < p ? compose(naf_z(Z, p - 1, q),
                            tensor_S(X.d(p, j), QuiverMap::identity(X.X[q])))
                  : compose(naf_z(Z, p, q - 1),
                            tensor_S(QuiverMap::identity(X.X[p]),
                                     X.d(q, j - p)));
        if (lhs != rhs)
          return CheckReport::fail("face naturality fails for Z" +
                                   pq_str(p, q) + " at d_" +
                                   std::to_string(j));
      }
    }

  // Naturality for degeneracies (both decompositions at the seam i = p).
  for (int p = 1; p < D; ++p)
    for (int q = 1; p + q < D; ++q) {
      const int n = p + q;
      for (int i = 0; i <= n; ++i) {
        const QuiverMap lhs = compose(X.s(n, i), Z.z(p, q));
        if (i <= p) {
          const QuiverMap rhs =
              compose(naf_z(Z, p + 1, q),
                      tensor_S(X.s(p, i), QuiverMap::identity(X.X[q])));
          if (lhs != rhs)
            return CheckReport::fail("degeneracy naturality fails for Z" +
                                     pq_str(p, q) + " at s_" +
                                     std::to_string(i) + " (left)");
        }
        if (i >= p) {
          const QuiverMap rhs =
              compose(naf_z(Z, p, q + 1),
                      tensor_S(QuiverMap::identity(X.X[p]), X.s(q, i - p)));
          if (lhs != rhs)
            return CheckReport::fail("degeneracy naturality fails for Z" +
                                     pq_str(p, q) + " at s_" +
                                     std::to_string(i) + " (right)");
        }
      }
    }

  // The mu-Z exchange laws, all instances with zero indices included.
  for (int n = 0; n <= D; ++n)
    for (int k = 0; k <= n; ++k)
      for (int p = 0; p <= n; ++p) {
        const int l = n - k, q = n - p;
        const QuiverMap lhs = compose(naf_mu(X, k, l), naf_z(Z, p, q));
        const std::string tag = "mu-Z exchange fails at (p,q,k,l)=(" +
                                std::to_string(p) + "," + std::to_string(q) +
                                "," + std::to_string(k) + "," +
                                std::to_string(l) + ")";
        if (p == k && lhs != QuiverMap::identity(tensor_S(X.X[k], X.X[l])))
          return CheckReport::fail(tag + ": mu Z != id");
        if (p <= k) {
          const QuiverMap rhs = compose(
              tensor_S(naf_z(Z, p, k - p), QuiverMap::identity(X.X[l])),
              compose(inverse_map(associator(X.X[p], X.X[k - p], X.X[l])),
                      tensor_S(QuiverMap::identity(X.X[p]),
                               naf_mu(X, k - p, l))));
          if (lhs != rhs) return CheckReport::fail(tag);
        }
        if (p >= k) {
          const QuiverMap rhs = compose(
              tensor_S(QuiverMap::identity(X.X[k]), naf_z(Z, p - k, q)),
              compose(associator(X.X[k], X.X[p - k], X.X[q]),
                      tensor_S(naf_mu(X, k, p - k),
                               QuiverMap::identity(X.X[q]))));
          if (lhs != rhs) return CheckReport::fail(tag);
        }
      }

  return CheckReport::pass();
}

CheckReport check_frobenius(const NaFStructure& Z) {
  CheckReport base = check_naf(Z);
  if (!base.ok) return base;
  const TemplicialModule& X = Z.host;
  for (int p = 1; p <= X.D; ++p)
    for (int q = 1; p + q <= X.D; ++q)
      for (int r = 1; p + q + r <= X.D; ++r) {
        // Both sides on (X_p (x) X_q) (x) X_r.
        const QuiverMap lhs = compose(
            naf_z(Z, p + q, r),
            tensor_S(Z.z(p, q), QuiverMap::identity(X.X[r])));
        const QuiverMap rhs = compose(
            compose(naf_z(Z, p, q + r),
                    tensor_S(QuiverMap::identity(X.X[p]), Z.z(q, r))),
            associator(X.X[p], X.X[q], X.X[r]));
        if (lhs != rhs)
          return CheckReport::fail("associativity fails at (p,q,r)=(" +
                                   std::to_string(p) + "," +
                                   std::to_string(q) + "," +
                                   std::to_string(r) + ")");
      }
  return CheckReport::pass();
}

NaFStructure nerve_naf(const TemplicialModule& X) {
  NaFStructure out;
  out.host = X;
  out.associative = true;
  for (int p = 1; p < X.D; ++p)
    for (int q = 1; p + q <= X.D; ++q)
      out.Z.emplace(std::make_pair(p, q), inverse_map(X.mu(p, q)));
  return out;
}

namespace {

// x = s_i(x') for the largest possible witness, if x is degenerate.
std::optional<std::pair<int, std::size_t>> find_degeneracy(
    const FinSimplicialSet& Y, int d, std::size_t s) {
  if (d == 0) return std::nullopt;
  for (int i = 0; i < d; ++i)
    for (std::size_t t = 0; t < Y.size(d - 1); ++t)
      if (Y.degen_at(d - 1, i, t) == s) return std::make_pair(i, t);
  return std::nullopt;
}

}  // namespace

std::size_t z_set_eval(const SetNaF& Z, int p, int q, std::size_t x,
                       std::size_t y) {
  const FinSimplicialSet& Y = Z.host;
  if (p == 0) return y;
  if (q == 0) return x;
  if (auto dx = find_degeneracy(Y, p, x))
    return Y.degen_at(p + q - 1, dx->first,
                      z_set_eval(Z, p - 1, q, dx->second, y));
  if (auto dy = find_degeneracy(Y, q, y))
    return Y.degen_at(p + q - 1, dy->first + p,
                      z_set_eval(Z, p, q - 1, x, dy->second));
  auto pit = Z.Z.find({p, q});
  if (pit == Z.Z.end())
    throw contract_error("set naF structure has no Z" + pq_str(p, q));
  auto it = pit->second.find({x, y});
  if (it == pit->second.end())
    throw contract_error("Z" + pq_str(p, q) + " undefined on (" + Y.id(p, x) +
                         ", " + Y.id(q, y) + ")");
  return it->second;
}

CheckReport check_naf_set(const SetNaF& Z) {
  const FinSimplicialSet& Y = Z.host;
  for (int p = 1; p < Y.D; ++p)
    for (int q = 1; p + q <= Y.D; ++q) {
      const int n = p + q;
      for (std::size_t x = 0; x < Y.size(p); ++x) {
        if (Y.is_degenerate(p, x)) continue;
        for (std::size_t y = 0; y < Y.size(q); ++y) {
          if (Y.is_degenerate(q, y)) continue;
          if (Y.vertex(p, x, p) != Y.vertex(q, y, 0)) continue;
          const std::string tag = "Z" + pq_str(p, q) + "(" + Y.id(p, x) +
                                  ", " + Y.id(q, y) + ")";
          std::size_t z;
          try {
            z = z_set_eval(Z, p, q, x, y);
          } catch (const contract_error& e) {
            return CheckReport::fail(e.what());
          }
          if (Y.vertex(n, z, 0) != Y.vertex(p, x, 0) ||
              Y.vertex(n, z, n) != Y.vertex(q, y, q))
            return CheckReport::fail(tag + ": endpoint mismatch");
          for (int i = 0; i <= n; ++i) {
            if (i == p) continue;
            const std::size_t expect =
                i < p ? z_set_eval(Z, p - 1, q, Y.face_at(p, i, x), y)
                      : z_set_eval(Z, p, q - 1, x, Y.face_at(q, i - p, y));
            if (Y.face_at(n, i, z) != expect)
              return CheckReport::fail(tag + ": face constraint fails at d_" +
                                       std::to_string(i));
          }
        }
      }
    }
  return CheckReport::pass();
}

SetNaF naf_on_quasicategory(const FinSimplicialSet& Y) {
  SetNaF out;
  out.host = Y;
  for (int n = 2; n <= Y.D; ++n)
    for (int p = 1; p < n; ++p) {
      const int q = n - p;
      auto& table = out.Z[{p, q}];
      for (std::size_t x = 0; x < Y.size(p); ++x) {
        if (Y.is_degenerate(p, x)) continue;
        for (std::size_t y = 0; y < Y.size(q); ++y) {
          if (Y.is_degenerate(q, y)) continue;
          if (Y.vertex(p, x, p) != Y.vertex(q, y, 0)) continue;
          std::vector<std::size_t> facets(static_cast<std::size_t>(n) + 1, 0);
          for (int i = 0; i <= n; ++i) {
            if (i == p) continue;
            facets[static_cast<std::size_t>(i)] =
                i < p ? z_set_eval(out, p - 1, q, Y.face_at(p, i, x), y)
                      : z_set_eval(out, p, q - 1, x, Y.face_at(q, i - p, y));
          }
          auto fill = fill_horn_set(Y, n, p, facets);
          if (!fill)
            throw contract_error("naf_on_quasicategory: no filler for Z" +
                                 pq_str(p, q) + "(" + Y.id(p, x) + ", " +
                                 Y.id(q, y) + ")");
          table.emplace(std::make_pair(x, y), *fill);
        }
      }
    }
  return out;
}

namespace {

std::string vname(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// All nondegenerate cells of the standard 3-simplex.
std::vector<std::vector<FinSimplicialSet::Cell>> delta3_cells() {
  std::vector<std::vector<FinSimplicialSet::Cell>> cells(4);
  for (int d = 0; d <= 3; ++d) {
    // Strictly increasing (d+1)-subsets of {0,1,2,3}.
    std::vector<int> idx(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      FinSimplicialSet::Cell c;
      c.name = vname(idx);
      if (d > 0)
        for (int i = 0; i <= d; ++i) {
          std::vector<int> f = idx;
          f.erase(f.begin() + i);
          c.faces.push_back(vname(f));
        }
      cells[static_cast<std::size_t>(d)].push_back(std::move(c));
      int j = d;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == 3 - (d - j)) --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (int i = j + 1; i <= d; ++i)
        idx[static_cast<std::size_t>(i)] =
            idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return cells;
}

std::vector<int> parse_vertices(const std::string& name) {
  std::vector<int> out;
  std::string cur;
  for (char ch : name) {
    if (ch >= '0' && ch <= '9') {
      cur += ch;
    } else if (!cur.empty()) {
      out.push_back(std::stoi(cur));
      cur.clear();
    }
  }
  return out;
}

}  // namespace

FinSimplicialSet glued_delta3(int D) {
  auto cells = delta3_cells();
  // d_3 of the first extra 3-simplex: same boundary as [0,1,2], a new cell.
  cells[2].push_back({"x3", {"[1,2]", "[0,2]", "[0,1]"}});
  // d_0 of the second extra 3-simplex: same boundary as [1,2,3].
  cells[2].push_back({"y0", {"[2,3]", "[1,3]", "[1,2]"}});
  cells[3].push_back({"x", {"[1,2,3]", "[0,2,3]", "[0,1,3]", "x3"}});
  cells[3].push_back({"y", {"y0", "[0,2,3]", "[0,1,3]", "[0,1,2]"}});
  return FinSimplicialSet::from_cells(D, cells);
}

SetNaF glued_delta3_naf(int D) {
  SetNaF out;
  out.host = glued_delta3(D);
  const FinSimplicialSet& Y = out.host;
  for (int p = 1; p < Y.D; ++p)
    for (int q = 1; p + q <= Y.D; ++q) {
      auto& table = out.Z[{p, q}];
      for (std::size_t x = 0; x < Y.size(p); ++x) {
        if (Y.is_degenerate(p, x)) continue;
        for (std::size_t y = 0; y < Y.size(q); ++y) {
          if (Y.is_degenerate(q, y)) continue;
          if (Y.vertex(p, x, p) != Y.vertex(q, y, 0)) continue;
          const std::string& xn = Y.id(p, x);
          const std::string& yn = Y.id(q, y);
          std::string zn;
          if (xn == "x3" && yn == "[2,3]") {
            zn = "x";
          } else if (xn == "[0,1]" && yn == "y0") {
            zn = "y";
          } else {
            // Concatenation of vertex lists inside the standard 3-simplex.
            std::vector<int> v = parse_vertices(xn);
            std::vector<int> w = parse_vertices(yn);
            v.insert(v.end(), w.begin() + 1, w.end());
            zn = vname(v);
          }
          table.emplace(std::make_pair(x, y), Y.index_of(p + q, zn));
        }
      }
    }
  return out;
}

FinSimplicialSet delta3_extra_face(int D) {
  auto cells = delta3_cells();
  cells[2].push_back({"w", {"[1,3]", "[0,3]", "[0,1]"}});
  return FinSimplicialSet::from_cells(D, cells);
}

NaFStructure transfer_naf_free(const SetNaF& Zs, const Ring& ring) {
  NaFStructure out;
  out.host = free_templicial(Zs.host, ring);
  const TemplicialModule& X = out.host;
  const FinSimplicialSet& Y = Zs.host;
  const std::size_t nv = X.base.size();
  const Scalar one = Scalar::one(ring);
  for (int p = 1; p < X.D; ++p)
    for (int q = 1; p + q <= X.D; ++q) {
      const Quiver dom = tensor_S(X.X[p], X.X[q]);
      QuiverMap zpq(dom, X.X[p + q]);
      for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = 0; b < nv; ++b) {
          const FreeModule de = dom.entry(a, b);
          if (de.rank() == 0) continue;
          LinearMap comp(de, X.X[p + q].entry(a, b));
          std::size_t col = 0;
          for (std::size_t c = 0; c < nv; ++c) {
            const FreeModule xl = X.X[p].entry(a, c);
            const FreeModule yl = X.X[q].entry(c, b);
            for (std::size_t i = 0; i < xl.rank(); ++i) {
              const std::size_t xi = Y.index_of(p, xl.basis[i]);
              for (std::size_t j = 0; j < yl.rank(); ++j, ++col) {
                const std::size_t yj = Y.index_of(q, yl.basis[j]);
                const std::size_t z = z_set_eval(Zs, p, q, xi, yj);
                comp.at(comp.codomain.index_of(Y.id(p + q, z)), col) = one;
              }
            }
          }
          zpq.set(a, b, std::move(comp));
        }
      out.Z.emplace(std::make_pair(p, q), std::move(zpq));
    }
  return out;
}

QuiverMap mu_composite(const TemplicialModule& X, const FIntMorphism& f) {
  if (f.m == 0) return X.counit;
  if (f.m == 1) return QuiverMap::identity(X.X[f.n]);
  const int p1 = f(1);
  std::vector<int> rest(f.values.begin() + 1, f.values.end());
  for (int& v : rest) v -= p1;
  const FIntMorphism g(f.m - 1, f.n - p1, std::move(rest));
  return compose(
      tensor_S(QuiverMap::identity(X.X[p1]), mu_composite(X, g)),
      naf_mu(X, p1, f.n - p1));
}

QuiverMap z_composite(const NaFStructure& Z, const FIntMorphism& f) {
  const TemplicialModule& X = Z.host;
  if (f.m == 0) return inverse_map(X.counit);
  if (f.m == 1) return QuiverMap::identity(X.X[f.n]);
  const int p1 = f(1);
  std::vector<int> rest(f.values.begin() + 1, f.values.end());
  for (int& v : rest) v -= p1;
  const FIntMorphism g(f.m - 1, f.n - p1, std::move(rest));
  return compose(
      naf_z(Z, p1, f.n - p1),
      tensor_S(QuiverMap::identity(X.X[p1]), z_composite(Z, g)));
}

Quiver nested_quiver(const TemplicialModule& X, const Partition& I) {
  if (I.length() == 0) return unit_quiver(X.ring, X.base);
  const int p1 = I.members[1] - I.members[0];
  if (I.length() == 1) return X.X[p1];
  return tensor_S(X.X[p1], nested_quiver(X, I.truncate_ge(I.members[1])));
}

QuiverMap group_nested(const TemplicialModule& X,
                       const std::vector<Partition>& groups) {
  if (groups.empty()) throw contract_error("group_nested: no groups");
  if (groups.size() == 1)
    return QuiverMap::identity(nested_quiver(X, groups[0]));
  const Partition& g1 = groups[0];
  if (g1.length() < 1) throw contract_error("group_nested: empty group");
  const int p1 = g1.members[1] - g1.members[0];
  if (g1.length() == 1)
    return tensor_S(QuiverMap::identity(X.X[p1]),
                    group_nested(X, {groups.begin() + 1, groups.end()}));
  // Peel the first part off the first group, regroup the remainder, then
  // reassociate X_{p1} back into its group.
  std::vector<Partition> rest;
  rest.push_back(g1.truncate_ge(g1.members[1]));
  rest.insert(rest.end(), groups.begin() + 1, groups.end());
  const QuiverMap inner = group_nested(X, rest);
  const Quiver g1tail = nested_quiver(X, rest[0]);
  Quiver others = nested_quiver(X, groups.back());
  for (std::size_t m = groups.size() - 1; m >= 2; --m)
    others = tensor_S(nested_quiver(X, groups[m - 1]), others);
  return compose(inverse_map(associator(X.X[p1], g1tail, others)),
                 tensor_S(QuiverMap::identity(X.X[p1]), inner));
}

namespace {

// alpha_J = alpha_{0,j_1} (x) (alpha_{j_1,j_2} (x) ...) as an element of the
// flat right-nested tensor at (v_first, v_last).
Vec nested_family_element(const TemplicialModule& X,
                          const std::vector<std::size_t>& verts,
                          const std::map<std::pair<int, int>, Vec>& alpha,
                          const Partition& J) {
  const int i0 = J.members[0], i1 = J.members[1];
  const Vec& left = alpha.at({i0, i1});
  if (J.length() == 1) return left;
  const Partition rest = J.truncate_ge(i1);
  const Vec right = nested_family_element(X, verts, alpha, rest);
  const std::size_t last = static_cast<std::size_t>(J.members.back());
  return tensor_element(X.X[i1 - i0], nested_quiver(X, rest),
                        verts[static_cast<std::size_t>(i0)],
                        verts[static_cast<std::size_t>(i1)], verts[last],
                        left, right);
}

}  // namespace

USimplex fill_wedge(const NaFStructure& Z, const USimplex& wedge) {
  const TemplicialModule& X = Z.host;
  const int n = wedge.n;
  if (n < 2 || n > X.D)
    throw contract_error("fill_wedge: dimension out of range");
  const std::size_t a = wedge.vertices[0];
  const std::size_t b = wedge.vertices[static_cast<std::size_t>(n)];

  // Every compatibility not involving (0,n).
  for (int i = 0; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) {
      if (i == 0 && j == n) continue;
      const std::size_t vi = wedge.vertices[static_cast<std::size_t>(i)];
      const std::size_t vj = wedge.vertices[static_cast<std::size_t>(j)];
      for (int m = i + 1; m < j; ++m) {
        const std::size_t vm = wedge.vertices[static_cast<std::size_t>(m)];
        const Vec lhs =
            apply_at(X.mu(m - i, j - m), vi, vj, wedge.a(i, j));
        const Vec rhs = tensor_element(X.X[m - i], X.X[j - m], vi, vm, vj,
                                       wedge.a(i, m), wedge.a(m, j));
        if (lhs != rhs)
          throw contract_error("fill_wedge: incompatible input at (" +
                               std::to_string(i) + "," + std::to_string(m) +
                               "," + std::to_string(j) + ")");
      }
    }

  Vec x = X.X[n].entry(a, b).zero_vec();
  for (const Partition& J : enumerate_partitions(n)) {
    if (J.length() < 2) continue;
    const Vec aj = nested_family_element(X, wedge.vertices, wedge.alpha, J);
    const Vec val = apply_at(z_composite(Z, J.as_injection()), a, b, aj);
    x = (J.length() % 2 == 0) ? add_vec(x, val) : sub_vec(x, val);
  }

  USimplex out = wedge;
  out.set(0, n, std::move(x));
  const CheckReport post = u_simplex_validate(X, out);
  if (!post.ok)
    throw contract_error("fill_wedge postcondition: " + post.witness);
  return out;
}

USimplex horn_facet(const TemplicialModule& X, const LinearHorn& h, int l) {
  const int n = h.n;
  USimplex out;
  out.n = n - 1;
  for (int i = 0; i <= n; ++i)
    if (i != l) out.vertices.push_back(h.vertices[static_cast<std::size_t>(i)]);
  for (int i2 = 0; i2 < n; ++i2)
    for (int j2 = i2 + 1; j2 <= n - 1; ++j2) {
      const int i = i2 < l ? i2 : i2 + 1;
      const int j = j2 < l ? j2 : j2 + 1;
      if (i < l && l < j) {
        if (i == 0 && j == n) {
          out.set(i2, j2, h.tops.at(l));
        } else {
          const std::size_t vi = h.vertices[static_cast<std::size_t>(i)];
          const std::size_t vj = h.vertices[static_cast<std::size_t>(j)];
          out.set(i2, j2,
                  apply_at(X.d(j - i, l - i), vi, vj, h.alpha.at({i, j})));
        }
      } else {
        out.set(i2, j2, h.alpha.at({i, j}));
      }
    }
  return out;
}

CheckReport validate_linear_horn(const TemplicialModule& X,
                                 const LinearHorn& h) {
  const int n = h.n;
  if (n < 2 || n > X.D || h.k <= 0 || h.k >= n)
    return CheckReport::fail("horn indices out of range");
  if (h.vertices.size() != static_cast<std::size_t>(n) + 1)
    return CheckReport::fail("horn vertex list has wrong length");
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (i == 0 && j == n) continue;
      auto it = h.alpha.find({i, j});
      if (it == h.alpha.end())
        return CheckReport::fail("missing alpha(" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
      const std::size_t want =
          X.X[j - i].entry_rank(h.vertices[static_cast<std::size_t>(i)],
                                h.vertices[static_cast<std::size_t>(j)]);
      if (it->second.size() != want)
        return CheckReport::fail("alpha(" + std::to_string(i) + "," +
                                 std::to_string(j) + ") has wrong dimension");
    }
  const std::size_t topdim = X.X[n - 1].entry_rank(
      h.vertices[0], h.vertices[static_cast<std::size_t>(n)]);
  for (int l = 1; l < n; ++l) {
    if (l == h.k) continue;
    auto it = h.tops.find(l);
    if (it == h.tops.end())
      return CheckReport::fail("missing facet top t_" + std::to_string(l));
    if (it->second.size() != topdim)
      return CheckReport::fail("facet top t_" + std::to_string(l) +
                               " has wrong dimension");
  }
  for (int l = 0; l <= n; ++l) {
    if (l == h.k) continue;
    const CheckReport r = u_simplex_validate(X, horn_facet(X, h, l));
    if (!r.ok)
      return CheckReport::fail("facet " + std::to_string(l) + ": " +
                               r.witness);
  }
  // Shared faces of inner facet tops.
  const std::size_t a = h.vertices[0];
  const std::size_t b = h.vertices[static_cast<std::size_t>(n)];
  for (int l = 1; l < n; ++l)
    for (int l2 = l + 1; l2 < n; ++l2) {
      if (l == h.k || l2 == h.k) continue;
      const Vec lhs = apply_at(X.d(n - 1, l2 - 1), a, b, h.tops.at(l));
      const Vec rhs = apply_at(X.d(n - 1, l), a, b, h.tops.at(l2));
      if (lhs != rhs)
        return CheckReport::fail("facet tops t_" + std::to_string(l) +
                                 " and t_" + std::to_string(l2) +
                                 " disagree on their shared face");
    }
  return CheckReport::pass();
}

LinearHorn horn_of_simplex(const TemplicialModule& X, const USimplex& s,
                           int k) {
  LinearHorn h;
  h.n = s.n;
  h.k = k;
  h.vertices = s.vertices;
  for (const auto& [key, v] : s.alpha)
    if (!(key.first == 0 && key.second == s.n)) h.alpha.emplace(key, v);
  const std::size_t a = s.vertices[0];
  const std::size_t b = s.vertices[static_cast<std::size_t>(s.n)];
  for (int l = 1; l < s.n; ++l)
    if (l != k) h.tops.emplace(l, apply_at(X.d(s.n, l), a, b, s.a(0, s.n)));
  return h;
}

USimplex fill_inner_horn(const NaFStructure& Z, const LinearHorn& h) {
  const TemplicialModule& X = Z.host;
  const int n = h.n, k = h.k;
  const CheckReport pre = validate_linear_horn(X, h);
  if (!pre.ok) throw contract_error("fill_inner_horn: " + pre.witness);

  USimplex partial;
  partial.n = n;
  partial.vertices = h.vertices;
  partial.alpha = h.alpha;
  Vec x = fill_wedge(Z, partial).a(0, n);

  const std::size_t a = h.vertices[0];
  const std::size_t b = h.vertices[static_cast<std::size_t>(n)];
  for (int j = 1; j < k; ++j)
    x = add_vec(x, apply_at(X.s(n - 1, j), a, b,
                            sub_vec(h.tops.at(j),
                                    apply_at(X.d(n, j), a, b, x))));
  for (int j = n - 1; j > k; --j)
    x = add_vec(x, apply_at(X.s(n - 1, j - 1), a, b,
                            sub_vec(h.tops.at(j),
                                    apply_at(X.d(n, j), a, b, x))));

  USimplex out = partial;
  out.set(0, n, std::move(x));
  const CheckReport post = u_simplex_validate(X, out);
  if (!post.ok)
    throw contract_error("fill_inner_horn postcondition: " + post.witness);
  for (int p = 1; p < n; ++p) {
    if (p == k) continue;
    if (apply_at(X.d(n, p), a, b, out.a(0, n)) != h.tops.at(p))
      throw contract_error(
          "fill_inner_horn postcondition: face d_" + std::to_string(p) +
          " does not match the input facet");
  }
  return out;
}

CheckReport check_f_templicial_map(const NaFStructure& ZX,
                                   const NaFStructure& ZY,
                                   const TemplicialMap& m) {
  const TemplicialModule& X = m.source;
  const int D = std::min(ZX.host.D, ZY.host.D);
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l) {
      const QuiverMap lhs =
          compose(m.alpha[static_cast<std::size_t>(k + l)],
                  pushforward(m.f, ZX.z(k, l)));
      const QuiverMap rhs = compose(
          ZY.z(k, l),
          compose(tensor_S(m.alpha[static_cast<std::size_t>(k)],
                           m.alpha[static_cast<std::size_t>(l)]),
                  pushforward_colax(m.f, X.X[k], X.X[l])));
      if (lhs != rhs)
        return CheckReport::fail("F-templicial square fails at (k,l)=(" +
                                 std::to_string(k) + "," +
                                 std::to_string(l) + ")");
    }
  return CheckReport::pass();
}

}  // namespace templike
