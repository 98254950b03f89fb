#include "templike/templicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace templike {

namespace {

std::string idx2(const char* name, int a, int b) {
  std::ostringstream os;
  os << name << "_{" << a << "," << b << "}";
  return os.str();
}

// Embeds x (x) y at the c-block of (qk tensor_S ql)(a,b).
Vec embed_tensor(const Quiver& qk, const Quiver& ql, std::size_t a,
                 std::size_t c, std::size_t b, const Vec& x, const Vec& y) {
  const FreeModule target = tensor_S(qk, ql).entry(a, b);
  Vec out = target.zero_vec();
  const FreeModule mk = qk.entry(a, c), ml = ql.entry(c, b);
  for (std::size_t i = 0; i < mk.rank(); ++i)
    for (std::size_t j = 0; j < ml.rank(); ++j) {
      if (x[i].is_zero() || y[j].is_zero()) continue;
      const std::size_t pos = target.index_of(
          triple_label(qk.vertices[c], mk.basis[i], ml.basis[j]));
      out[pos] = out[pos] + x[i] * y[j];
    }
  return out;
}

// Vertical stack of two linear maps with a shared domain.
LinearMap stack(const LinearMap& top, const LinearMap& bottom) {
  if (!(top.domain == bottom.domain))
    throw contract_error("stack: domain mismatch");
  std::vector<std::string> labels;
  for (const auto& l : top.codomain.basis) labels.push_back("(t|" + l + ")");
  for (const auto& l : bottom.codomain.basis) labels.push_back("(b|" + l + ")");
  LinearMap out(top.domain, FreeModule(top.domain.ring, std::move(labels)));
  for (std::size_t c = 0; c < top.domain.rank(); ++c) {
    for (std::size_t r = 0; r < top.codomain.rank(); ++r)
      out.at(r, c) = top.at(r, c);
    for (std::size_t r = 0; r < bottom.codomain.rank(); ++r)
      out.at(top.codomain.rank() + r, c) = bottom.at(r, c);
  }
  return out;
}

Vec concat_vec(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

const QuiverMap& TemplicialModule::d(int n, int j) const {
  auto it = faces.find({n, j});
  if (it == faces.end())
    throw contract_error("TemplicialModule: missing face " + idx2("d", n, j));
  return it->second;
}

const QuiverMap& TemplicialModule::s(int n, int i) const {
  auto it = degens.find({n, i});
  if (it == degens.end())
    throw contract_error("TemplicialModule: missing degeneracy " +
                         idx2("s", n, i));
  return it->second;
}

const QuiverMap& TemplicialModule::mu(int k, int l) const {
  auto it = comult.find({k, l});
  if (it == comult.end())
    throw contract_error("TemplicialModule: missing " + idx2("mu", k, l));
  return it->second;
}

Vec TemplicialModule::unit_at(std::size_t a) const {
  const LinearMap eps = counit.at(a, a);
  auto inv = inverse(eps);
  if (!inv) throw contract_error("TemplicialModule: counit not invertible");
  return inv->apply(counit.target.entry(a, a).basis_vec(0));
}

Vec TemplicialModule::degenerate_edge(std::size_t a) const {
  return s(0, 0).at(a, a).apply(unit_at(a));
}

CheckReport check_templicial(const TemplicialModule& X) {
  const int D = X.D;
  if (static_cast<int>(X.X.size()) != D + 1)
    return CheckReport::fail("wrong number of levels");
  for (int n = 0; n <= D; ++n)
    if (X.X[n].vertices != X.base || X.X[n].ring != X.ring)
      return CheckReport::fail("level " + std::to_string(n) +
                               ": base or ring mismatch");
  // structural presence and shapes
  try {
    for (int n = 2; n <= D; ++n)
      for (int j = 1; j < n; ++j) {
        const QuiverMap& f = X.d(n, j);
        if (f.source != X.X[n] || f.target != X.X[n - 1])
          return CheckReport::fail(idx2("d", n, j) + ": wrong shape");
        f.validate();
      }
    for (int n = 0; n < D; ++n)
      for (int i = 0; i <= n; ++i) {
        const QuiverMap& f = X.s(n, i);
        if (f.source != X.X[n] || f.target != X.X[n + 1])
          return CheckReport::fail(idx2("s", n, i) + ": wrong shape");
        f.validate();
      }
    for (int k = 1; k < D; ++k)
      for (int l = 1; k + l <= D; ++l) {
        const QuiverMap& f = X.mu(k, l);
        if (f.source != X.X[k + l] ||
            f.target != tensor_S(X.X[k], X.X[l]))
          return CheckReport::fail(idx2("mu", k, l) + ": wrong shape");
        f.validate();
      }
  } catch (const contract_error& e) {
    return CheckReport::fail(e.what());
  }
  Quiver unit = unit_quiver(X.ring, X.base);
  if (X.counit.source != X.X[0] || X.counit.target != unit)
    return CheckReport::fail("counit: wrong shape");
  if (!X.counit.is_isomorphism())
    return CheckReport::fail("counit is not an isomorphism");

  // simplicial identities (stored inner faces, all degeneracies)
  for (int n = 2; n <= D; ++n)
    for (int j = 2; j < n; ++j)
      for (int i = 1; i < j && i < n - 1; ++i)
        if (!(compose(X.d(n - 1, i), X.d(n, j)) ==
              compose(X.d(n - 1, j - 1), X.d(n, i))))
          return CheckReport::fail("d_i d_j identity fails at n=" +
                                   std::to_string(n) + ", (i,j)=(" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
  for (int n = 0; n + 2 <= D; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(compose(X.s(n + 1, i), X.s(n, j)) ==
              compose(X.s(n + 1, j + 1), X.s(n, i))))
          return CheckReport::fail("s_i s_j identity fails at n=" +
                                   std::to_string(n) + ", (i,j)=(" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
  for (int n = 1; n <= D - 1; ++n) {
    // faces of s_j : X_n -> X_{n+1}
    for (int j = 0; j <= n; ++j) {
      for (int i = 1; i <= n; ++i) {
        const QuiverMap lhs = compose(X.d(n + 1, i), X.s(n, j));
        if (i == j || i == j + 1) {
          if (!(lhs == QuiverMap::identity(X.X[n])))
            return CheckReport::fail("d_i s_j != id at n=" +
                                     std::to_string(n) + ", (i,j)=(" +
                                     std::to_string(i) + "," +
                                     std::to_string(j) + ")");
        } else if (i < j) {
          if (i < n &&
              !(lhs == compose(X.s(n - 1, j - 1), X.d(n, i))))
            return CheckReport::fail("d_i s_j (i<j) fails at n=" +
                                     std::to_string(n));
        } else {  // i > j + 1
          if (i - 1 < n &&
              !(lhs == compose(X.s(n - 1, j), X.d(n, i - 1))))
            return CheckReport::fail("d_i s_j (i>j+1) fails at n=" +
                                     std::to_string(n));
        }
      }
    }
  }

  // colax naturality of mu with inner faces and all degeneracies
  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l) {
      const int n = k + l;
      for (int j = 1; j < k; ++j)
        if (!(compose(tensor_S(X.d(k, j), QuiverMap::identity(X.X[l])),
                      X.mu(k, l)) ==
              compose(X.mu(k - 1, l), X.d(n, j))))
          return CheckReport::fail("naturality (d_j (x) id) mu fails at " +
                                   idx2("mu", k, l) +
                                   ", j=" + std::to_string(j));
      for (int j = k + 1; j < n; ++j)
        if (!(compose(tensor_S(QuiverMap::identity(X.X[k]), X.d(l, j - k)),
                      X.mu(k, l)) ==
              compose(X.mu(k, l - 1), X.d(n, j))))
          return CheckReport::fail("naturality (id (x) d) mu fails at " +
                                   idx2("mu", k, l) +
                                   ", j=" + std::to_string(j));
      if (n < D) {
        for (int i = 0; i <= k; ++i)
          if (!(compose(tensor_S(X.s(k, i), QuiverMap::identity(X.X[l])),
                        X.mu(k, l)) ==
                compose(X.mu(k + 1, l), X.s(n, i))))
            return CheckReport::fail("naturality (s_i (x) id) mu fails at " +
                                     idx2("mu", k, l) +
                                     ", i=" + std::to_string(i));
        for (int i = k; i <= n; ++i)
          if (!(compose(tensor_S(QuiverMap::identity(X.X[k]), X.s(l, i - k)),
                        X.mu(k, l)) ==
                compose(X.mu(k, l + 1), X.s(n, i))))
            return CheckReport::fail("naturality (id (x) s_i) mu fails at " +
                                     idx2("mu", k, l) +
                                     ", i=" + std::to_string(i));
      }
    }

  // coassociativity
  for (int k = 1; k <= D; ++k)
    for (int l = 1; l <= D; ++l)
      for (int m = 1; k + l + m <= D; ++m) {
        const QuiverMap lhs =
            compose(associator(X.X[k], X.X[l], X.X[m]),
                    compose(tensor_S(X.mu(k, l), QuiverMap::identity(X.X[m])),
                            X.mu(k + l, m)));
        const QuiverMap rhs =
            compose(tensor_S(QuiverMap::identity(X.X[k]), X.mu(l, m)),
                    X.mu(k, l + m));
        if (!(lhs == rhs))
          return CheckReport::fail("coassociativity fails at (k,l,m)=(" +
                                   std::to_string(k) + "," +
                                   std::to_string(l) + "," +
                                   std::to_string(m) + ")");
      }

  // strong-unitality boundary identities
  if (D >= 1) {
    const QuiverMap u_edge = compose(X.s(0, 0), inverse_map(X.counit));
    for (int n = 1; n < D; ++n) {
      if (!(compose(X.mu(1, n), X.s(n, 0)) ==
            compose(tensor_S(u_edge, QuiverMap::identity(X.X[n])),
                    left_unitor_inv(X.X[n]))))
        return CheckReport::fail("mu_{1,n} s_0 boundary identity fails at n=" +
                                 std::to_string(n));
      if (!(compose(X.mu(n, 1), X.s(n, n)) ==
            compose(tensor_S(QuiverMap::identity(X.X[n]), u_edge),
                    right_unitor_inv(X.X[n]))))
        return CheckReport::fail("mu_{n,1} s_n boundary identity fails at n=" +
                                 std::to_string(n));
    }
  }
  return CheckReport::pass();
}

TemplicialModule free_templicial(const FinSimplicialSet& Y, const Ring& ring) {
  const PartitionedSimplicialSet P = as_templicial_set(Y);
  TemplicialModule X;
  X.ring = ring;
  X.D = Y.D;
  X.base = Y.ids[0];

  // endpoints lookup and per-level (entry, position) of every simplex
  const std::size_t nv = X.base.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> place(
      static_cast<std::size_t>(Y.D) + 1);
  for (int n = 0; n <= Y.D; ++n) {
    Quiver q(ring, X.base);
    std::vector<std::vector<std::string>> labels(nv * nv);
    auto& pl = place[static_cast<std::size_t>(n)];
    pl.resize(Y.size(n));
    for (std::size_t t = 0; t < Y.size(n); ++t) {
      const auto [a, b] = P.endpoints[static_cast<std::size_t>(n)][t];
      pl[t] = {a * nv + b, labels[a * nv + b].size()};
      labels[a * nv + b].push_back(Y.id(n, t));
    }
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nv; ++b)
        q.set_entry(a, b, FreeModule(ring, labels[a * nv + b]));
    X.X.push_back(std::move(q));
  }
  auto entry_of = [&](int n, std::size_t t) {
    const std::size_t key = place[static_cast<std::size_t>(n)][t].first;
    return std::make_pair(key / nv, key % nv);
  };
  auto pos_of = [&](int n, std::size_t t) {
    return place[static_cast<std::size_t>(n)][t].second;
  };

  const Scalar one = Scalar::one(ring);
  // simplex-to-simplex maps (faces, degeneracies) preserve endpoints
  auto basis_map = [&](int n, int m, auto&& image) {
    QuiverMap h(X.X[n], X.X[m]);
    std::map<std::pair<std::size_t, std::size_t>, LinearMap> comps;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nv; ++b)
        if (X.X[n].entry_rank(a, b) > 0)
          comps.emplace(std::make_pair(a, b),
                        LinearMap(X.X[n].entry(a, b), X.X[m].entry(a, b)));
    for (std::size_t t = 0; t < Y.size(n); ++t) {
      const std::size_t img = image(t);
      const auto [a, b] = entry_of(n, t);
      comps.at({a, b}).at(pos_of(m, img), pos_of(n, t)) = one;
    }
    for (auto& [k, c] : comps) h.set(k.first, k.second, std::move(c));
    return h;
  };

  for (int n = 2; n <= Y.D; ++n)
    for (int j = 1; j < n; ++j)
      X.faces.emplace(std::make_pair(n, j),
                      basis_map(n, n - 1, [&](std::size_t t) {
                        return Y.face_at(n, j, t);
                      }));
  for (int n = 0; n < Y.D; ++n)
    for (int i = 0; i <= n; ++i)
      X.degens.emplace(std::make_pair(n, i),
                       basis_map(n, n + 1, [&](std::size_t t) {
                         return Y.degen_at(n, i, t);
                       }));

  for (int k = 1; k < Y.D; ++k)
    for (int l = 1; k + l <= Y.D; ++l) {
      const int n = k + l;
      Quiver tgt = tensor_S(X.X[k], X.X[l]);
      QuiverMap h(X.X[n], tgt);
      std::map<std::pair<std::size_t, std::size_t>, LinearMap> comps;
      for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = 0; b < nv; ++b)
          if (X.X[n].entry_rank(a, b) > 0)
            comps.emplace(std::make_pair(a, b),
                          LinearMap(X.X[n].entry(a, b), tgt.entry(a, b)));
      std::vector<int> front(static_cast<std::size_t>(k) + 1);
      std::vector<int> back(static_cast<std::size_t>(l) + 1);
      for (int i = 0; i <= k; ++i) front[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i <= l; ++i) back[static_cast<std::size_t>(i)] = k + i;
      for (std::size_t t = 0; t < Y.size(n); ++t) {
        const auto [a, b] = entry_of(n, t);
        const std::size_t ft = Y.act(n, t, front);
        const std::size_t bt = Y.act(n, t, back);
        const std::size_t m = Y.vertex(n, t, k);
        const std::size_t row = tgt.entry(a, b).index_of(
            triple_label(X.base[m], Y.id(k, ft), Y.id(l, bt)));
        comps.at({a, b}).at(row, pos_of(n, t)) = one;
      }
      for (auto& [key, c] : comps) h.set(key.first, key.second, std::move(c));
      X.comult.emplace(std::make_pair(k, l), std::move(h));
    }

  Quiver unit = unit_quiver(ring, X.base);
  QuiverMap eps(X.X[0], unit);
  for (std::size_t a = 0; a < nv; ++a) {
    LinearMap c(X.X[0].entry(a, a), unit.entry(a, a));
    c.at(0, 0) = one;
    eps.set(a, a, std::move(c));
  }
  X.counit = std::move(eps);
  return X;
}

CheckReport LinearCategory::validate() const {
  const Quiver& h = hom;
  if (comp.source != tensor_S(h, h) || comp.target != h)
    return CheckReport::fail("composition has the wrong shape");
  if (unit.source != unit_quiver(h.ring, h.vertices) || unit.target != h)
    return CheckReport::fail("unit has the wrong shape");
  const QuiverMap lhs = compose(comp, tensor_S(comp, QuiverMap::identity(h)));
  const QuiverMap rhs =
      compose(comp, compose(tensor_S(QuiverMap::identity(h), comp),
                            associator(h, h, h)));
  if (!(lhs == rhs)) return CheckReport::fail("composition not associative");
  if (!(compose(comp, compose(tensor_S(unit, QuiverMap::identity(h)),
                              left_unitor_inv(h))) ==
        QuiverMap::identity(h)))
    return CheckReport::fail("left unitality fails");
  if (!(compose(comp, compose(tensor_S(QuiverMap::identity(h), unit),
                              right_unitor_inv(h))) ==
        QuiverMap::identity(h)))
    return CheckReport::fail("right unitality fails");
  return CheckReport::pass();
}

bool linear_categories_isomorphic(const LinearCategory& c,
                                  const LinearCategory& d) {
  if (c.hom.ring != d.hom.ring ||
      c.hom.vertices.size() != d.hom.vertices.size())
    return false;
  const std::size_t n = c.hom.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (c.hom.entry_rank(a, b) != d.hom.entry_rank(a, b)) return false;
  // canonical comparison: the rank-preserving identity relabeling must be a
  // linear functor over a common vertex naming
  Quiver chom = c.hom;
  Quiver dhom = d.hom;
  dhom.vertices = chom.vertices;
  QuiverMap psi(chom, dhom);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t r = chom.entry_rank(a, b);
      if (r == 0) continue;
      LinearMap comp(chom.entry(a, b), dhom.entry(a, b));
      for (std::size_t i = 0; i < r; ++i)
        comp.at(i, i) = Scalar::one(chom.ring);
      psi.set(a, b, std::move(comp));
    }
  // transport d's structure maps along the vertex renaming
  Quiver dtensor = tensor_S(dhom, dhom);
  QuiverMap dcomp2(dtensor, dhom);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      LinearMap orig = d.comp.at(a, b);
      if (orig.domain.rank() == 0 && orig.codomain.rank() == 0) continue;
      LinearMap m(dtensor.entry(a, b), dhom.entry(a, b));
      m.mat = orig.mat;
      dcomp2.set(a, b, std::move(m));
    }
  Quiver cunitq = unit_quiver(chom.ring, chom.vertices);
  QuiverMap dunit2(cunitq, dhom);
  for (std::size_t a = 0; a < n; ++a) {
    LinearMap orig = d.unit.at(a, a);
    if (orig.codomain.rank() == 0) continue;
    LinearMap m(cunitq.entry(a, a), dhom.entry(a, a));
    m.mat = orig.mat;
    dunit2.set(a, a, std::move(m));
  }
  const bool comp_ok =
      compose(psi, c.comp) == compose(dcomp2, tensor_S(psi, psi));
  const bool unit_ok = compose(psi, c.unit) == dunit2;
  return comp_ok && unit_ok;
}

LinearCategory free_linear_category(const FinCategory& C, const Ring& ring) {
  C.validate();
  const std::size_t n = C.objects.size();
  Quiver hom(ring, C.objects);
  // per-pair ordered lists of morphism indices
  std::vector<std::vector<std::vector<std::size_t>>> mors(
      n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t m = 0; m < C.morphisms.size(); ++m)
    mors[C.morphisms[m].src][C.morphisms[m].tgt].push_back(m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::string> labels;
      for (std::size_t m : mors[a][b]) labels.push_back(C.morphisms[m].name);
      hom.set_entry(a, b, FreeModule(ring, std::move(labels)));
    }
  Quiver homhom = tensor_S(hom, hom);
  QuiverMap comp(homhom, hom);
  const Scalar one = Scalar::one(ring);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (homhom.entry_rank(a, b) == 0) continue;
      LinearMap m(homhom.entry(a, b), hom.entry(a, b));
      std::size_t col = 0;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t fi : mors[a][c])
          for (std::size_t gi : mors[c][b]) {
            // diagrammatic order: the chain f then g composes to g o f
            const std::size_t gf = C.compose_mor(gi, fi);
            m.at(hom.entry(a, b).index_of(C.morphisms[gf].name), col) = one;
            ++col;
          }
      comp.set(a, b, std::move(m));
    }
  Quiver unitq = unit_quiver(ring, C.objects);
  QuiverMap unit(unitq, hom);
  for (std::size_t a = 0; a < n; ++a) {
    LinearMap u(unitq.entry(a, a), hom.entry(a, a));
    u.at(hom.entry(a, a).index_of(C.morphisms[C.identity[a]].name), 0) = one;
    unit.set(a, a, std::move(u));
  }
  return LinearCategory{std::move(hom), std::move(comp), std::move(unit)};
}

Quiver nested_power(const Quiver& q, int n) {
  if (n < 0) throw contract_error("nested_power: negative power");
  if (n == 0) return unit_quiver(q.ring, q.vertices);
  if (n == 1) return q;
  return tensor_S(q, nested_power(q, n - 1));
}

QuiverMap nested_split(const Quiver& q, int k, int l) {
  if (k < 0 || l < 0) throw contract_error("nested_split: negative index");
  Quiver pk = nested_power(q, k), pl = nested_power(q, l);
  if (k == 0)
    return left_unitor_inv(pl);
  if (k == 1)  // q (x) P_l is P_{1+l} on the nose
    return QuiverMap::identity(nested_power(q, 1 + l));
  QuiverMap rec = nested_split(q, k - 1, l);
  QuiverMap step = tensor_S(QuiverMap::identity(q), rec);
  QuiverMap assoc = associator(q, nested_power(q, k - 1), pl);
  return compose(inverse_map(assoc), step);
}

TemplicialModule linear_nerve(const LinearCategory& C, int D) {
  CheckReport ok = C.validate();
  if (!ok.ok) throw contract_error("linear_nerve: " + ok.witness);
  const Quiver& h = C.hom;
  TemplicialModule X;
  X.ring = h.ring;
  X.base = h.vertices;
  X.D = D;
  for (int n = 0; n <= D; ++n) X.X.push_back(nested_power(h, n));
  X.counit = QuiverMap::identity(X.X[0]);

  // degeneracies: insert the unit at vertex i
  std::map<std::pair<int, int>, QuiverMap> degens;
  for (int n = 0; n < D; ++n)
    for (int i = 0; i <= n; ++i) {
      QuiverMap m = [&] {
        if (n == 0)  // X_0 = I_S, X_1 = hom
          return C.unit;
        if (i == 0)
          return compose(tensor_S(C.unit, QuiverMap::identity(X.X[n])),
                         left_unitor_inv(X.X[n]));
        if (n == 1)  // s_1 : hom -> hom (x) I_S -> hom (x) hom
          return compose(tensor_S(QuiverMap::identity(h), C.unit),
                         right_unitor_inv(h));
        // X_n = h (x) X_{n-1}: recurse on the tail
        return tensor_S(QuiverMap::identity(h), degens.at({n - 1, i - 1}));
      }();
      degens.emplace(std::make_pair(n, i), std::move(m));
    }
  X.degens = std::move(degens);

  // inner faces: compose at slot j
  std::map<std::pair<int, int>, QuiverMap> faces;
  for (int n = 2; n <= D; ++n)
    for (int j = 1; j < n; ++j) {
      QuiverMap m = [&] {
        if (n == 2)  // X_2 = h (x) h exactly
          return C.comp;
        if (j == 1) {
          // X_n = h (x) (h (x) X_{n-2}) -> (h (x) h) (x) X_{n-2} -> X_{n-1}
          Quiver rest = nested_power(h, n - 2);
          QuiverMap rebracket = inverse_map(associator(h, h, rest));
          return compose(tensor_S(C.comp, QuiverMap::identity(rest)),
                         rebracket);
        }
        return tensor_S(QuiverMap::identity(h), faces.at({n - 1, j - 1}));
      }();
      faces.emplace(std::make_pair(n, j), std::move(m));
    }
  X.faces = std::move(faces);

  for (int k = 1; k < D; ++k)
    for (int l = 1; k + l <= D; ++l)
      X.comult.emplace(std::make_pair(k, l), nested_split(h, k, l));
  return X;
}

QuiverMap mu_power(const TemplicialModule& X, int n) {
  if (n < 1) throw contract_error("mu_power: n must be >= 1");
  if (n == 1) return QuiverMap::identity(X.X[1]);
  return compose(tensor_S(QuiverMap::identity(X.X[1]), mu_power(X, n - 1)),
                 X.mu(1, n - 1));
}

std::optional<NerveRecognition> strong_monoidal_recognize(
    const TemplicialModule& X) {
  if (!X.counit.is_isomorphism()) return std::nullopt;
  for (int k = 1; k < X.D; ++k)
    if (!X.mu(1, k).is_isomorphism()) return std::nullopt;
  NerveRecognition out;
  out.category.hom = X.X[1];
  if (X.D >= 2)
    out.category.comp = compose(X.d(2, 1), inverse_map(X.mu(1, 1)));
  else
    throw contract_error("strong_monoidal_recognize: needs D >= 2");
  out.category.unit = compose(X.s(0, 0), inverse_map(X.counit));
  out.iso.push_back(X.counit);
  for (int n = 1; n <= X.D; ++n) out.iso.push_back(mu_power(X, n));
  return out;
}

const Vec& USimplex::a(int i, int j) const {
  auto it = alpha.find({i, j});
  if (it == alpha.end())
    throw contract_error("USimplex: missing alpha_{" + std::to_string(i) +
                         "," + std::to_string(j) + "}");
  return it->second;
}

void USimplex::set(int i, int j, Vec v) { alpha[{i, j}] = std::move(v); }

CheckReport u_simplex_validate(const TemplicialModule& X, const USimplex& s) {
  if (static_cast<int>(s.vertices.size()) != s.n + 1)
    return CheckReport::fail("wrong vertex count");
  if (s.n > X.D) return CheckReport::fail("dimension exceeds truncation");
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j <= s.n; ++j) {
      const Vec& v = s.a(i, j);
      if (v.size() != X.X[j - i].entry_rank(s.vertices[static_cast<std::size_t>(
                          i)], s.vertices[static_cast<std::size_t>(j)]))
        return CheckReport::fail("alpha_{" + std::to_string(i) + "," +
                                 std::to_string(j) + "}: wrong entry");
    }
  for (int i = 0; i < s.n; ++i)
    for (int k = i + 1; k < s.n; ++k)
      for (int j = k + 1; j <= s.n; ++j) {
        const std::size_t va = s.vertices[static_cast<std::size_t>(i)];
        const std::size_t vm = s.vertices[static_cast<std::size_t>(k)];
        const std::size_t vb = s.vertices[static_cast<std::size_t>(j)];
        const Vec lhs = X.mu(k - i, j - k).at(va, vb).apply(s.a(i, j));
        const Vec rhs = embed_tensor(X.X[k - i], X.X[j - k], va, vm, vb,
                                     s.a(i, k), s.a(k, j));
        if (lhs != rhs)
          return CheckReport::fail("compatibility fails at (i,k,j)=(" +
                                   std::to_string(i) + "," +
                                   std::to_string(k) + "," +
                                   std::to_string(j) + ")");
      }
  return CheckReport::pass();
}

USimplex u_face(const TemplicialModule& X, const USimplex& s, int l) {
  if (l < 0 || l > s.n || s.n < 1)
    throw contract_error("u_face: index out of range");
  USimplex out;
  out.n = s.n - 1;
  for (int p = 0; p <= out.n; ++p)
    out.vertices.push_back(
        s.vertices[static_cast<std::size_t>(p < l ? p : p + 1)]);
  for (int p = 0; p < out.n; ++p)
    for (int q = p + 1; q <= out.n; ++q) {
      const int ps = p < l ? p : p + 1;
      const int qs = q < l ? q : q + 1;
      if (ps < l && l < qs) {
        // spanning pair: apply the inner face d_{l-ps} of X_{qs-ps}
        const std::size_t va = s.vertices[static_cast<std::size_t>(ps)];
        const std::size_t vb = s.vertices[static_cast<std::size_t>(qs)];
        out.set(p, q,
                X.d(qs - ps, l - ps).at(va, vb).apply(s.a(ps, qs)));
      } else {
        out.set(p, q, s.a(ps, qs));
      }
    }
  return out;
}

USimplex u_degen(const TemplicialModule& X, const USimplex& s, int l) {
  if (l < 0 || l > s.n) throw contract_error("u_degen: index out of range");
  USimplex out;
  out.n = s.n + 1;
  for (int p = 0; p <= out.n; ++p)
    out.vertices.push_back(
        s.vertices[static_cast<std::size_t>(p <= l ? p : p - 1)]);
  for (int p = 0; p < out.n; ++p)
    for (int q = p + 1; q <= out.n; ++q) {
      const int ps = p <= l ? p : p - 1;
      const int qs = q <= l ? q : q - 1;
      if (ps == qs) {  // the doubled vertex: degenerate edge
        out.set(p, q, X.degenerate_edge(s.vertices[static_cast<std::size_t>(
                          ps)]));
      } else if (p <= l && q >= l + 1) {
        const std::size_t va = s.vertices[static_cast<std::size_t>(ps)];
        const std::size_t vb = s.vertices[static_cast<std::size_t>(qs)];
        out.set(p, q,
                X.s(qs - ps, l - ps).at(va, vb).apply(s.a(ps, qs)));
      } else {
        out.set(p, q, s.a(ps, qs));
      }
    }
  return out;
}

CheckReport TemplicialMap::validate() const {
  const TemplicialModule& Xm = source;
  const TemplicialModule& Y = target;
  if (Xm.D != Y.D) return CheckReport::fail("truncation mismatch");
  if (static_cast<int>(alpha.size()) != Xm.D + 1)
    return CheckReport::fail("wrong number of components");
  for (int n = 0; n <= Xm.D; ++n) {
    if (alpha[static_cast<std::size_t>(n)].source !=
            pushforward(f, Xm.X[static_cast<std::size_t>(n)]) ||
        alpha[static_cast<std::size_t>(n)].target !=
            Y.X[static_cast<std::size_t>(n)])
      return CheckReport::fail("component " + std::to_string(n) +
                               ": wrong shape");
  }
  auto al = [&](int n) { return alpha[static_cast<std::size_t>(n)]; };
  for (int n = 2; n <= Xm.D; ++n)
    for (int j = 1; j < n; ++j)
      if (!(compose(al(n - 1), pushforward(f, Xm.d(n, j))) ==
            compose(Y.d(n, j), al(n))))
        return CheckReport::fail("face naturality fails at " + idx2("d", n, j));
  for (int n = 0; n < Xm.D; ++n)
    for (int i = 0; i <= n; ++i)
      if (!(compose(al(n + 1), pushforward(f, Xm.s(n, i))) ==
            compose(Y.s(n, i), al(n))))
        return CheckReport::fail("degeneracy naturality fails at " +
                                 idx2("s", n, i));
  for (int k = 1; k < Xm.D; ++k)
    for (int l = 1; k + l <= Xm.D; ++l) {
      const QuiverMap lhs = compose(
          tensor_S(al(k), al(l)),
          compose(pushforward_colax(f, Xm.X[static_cast<std::size_t>(k)],
                                    Xm.X[static_cast<std::size_t>(l)]),
                  pushforward(f, Xm.mu(k, l))));
      if (!(lhs == compose(Y.mu(k, l), al(k + l))))
        return CheckReport::fail("comultiplication naturality fails at " +
                                 idx2("mu", k, l));
    }
  const QuiverMap lhs0 =
      compose(pushforward_colax_unit(f, Xm.ring), pushforward(f, Xm.counit));
  if (!(lhs0 == compose(Y.counit, al(0))))
    return CheckReport::fail("counit naturality fails");
  return CheckReport::pass();
}

TemplicialMap nerve_extend(const TemplicialModule& X, const LinearCategory& C,
                           const VertexMap& f, const QuiverMap& H) {
  const Quiver& h = C.hom;
  if (H.source != X.X[1] || H.target != pullback(f, h))
    throw contract_error("nerve_extend: H has the wrong shape");
  // unit square
  const QuiverMap lhs_u =
      compose(H, compose(X.s(0, 0), inverse_map(X.counit)));
  const QuiverMap rhs_u =
      compose(pullback(f, C.unit), pullback_lax_unit(f, X.ring));
  if (!(lhs_u == rhs_u))
    throw contract_error("nerve_extend: the unit square fails");
  // composition square
  const QuiverMap lhs_c = compose(H, X.d(2, 1));
  const QuiverMap rhs_c =
      compose(compose(pullback(f, C.comp), pullback_lax(f, h, h)),
              compose(tensor_S(H, H), X.mu(1, 1)));
  if (!(lhs_c == rhs_c))
    throw contract_error("nerve_extend: the composition square fails");

  TemplicialModule N = linear_nerve(C, X.D);
  TemplicialMap out;
  out.source = X;
  out.target = N;
  out.f = f;
  // alpha_0: f_! X_0 -> f_! I_S -> I_T (adjoint transpose of the counit leg)
  {
    QuiverMap H0 = compose(pullback_lax_unit(f, X.ring), X.counit);
    out.alpha.push_back(compose(adjunction_counit(f, N.X[0]),
                                pushforward(f, H0)));
  }
  for (int n = 1; n <= X.D; ++n) {
    // Hn : X_n -> f^*(N_n) via mu^(n), H factorwise and the lax structure
    QuiverMap hn = H;
    for (int m = 2; m <= n; ++m) {
      // build H^(m): X_1^{(x)m}-side fold: hn currently X-side for m-1 factors
      hn = compose(pullback_lax(f, h, nested_power(h, m - 1)),
                   tensor_S(H, hn));
    }
    QuiverMap Hn = compose(hn, mu_power(X, n));
    out.alpha.push_back(compose(
        adjunction_counit(f, N.X[static_cast<std::size_t>(n)]),
        pushforward(f, Hn)));
  }
  return out;
}

namespace {

// The linear map X_1(a,b) -> (X_1 (x) X_1)(a,b) sending g to u_a (x) g.
LinearMap left_unit_insert(const TemplicialModule& X, std::size_t a,
                           std::size_t b) {
  const Quiver& x1 = X.X[1];
  const FreeModule dom = x1.entry(a, b);
  const FreeModule cod = tensor_S(x1, x1).entry(a, b);
  const Vec ua = X.degenerate_edge(a);
  LinearMap out(dom, cod);
  for (std::size_t j = 0; j < dom.rank(); ++j) {
    const Vec img = embed_tensor(x1, x1, a, a, b, ua, dom.basis_vec(j));
    for (std::size_t r = 0; r < cod.rank(); ++r) out.at(r, j) = img[r];
  }
  return out;
}

}  // namespace

bool homotopy_relation(const TemplicialModule& X, std::size_t a, std::size_t b,
                       const Vec& f, const Vec& g) {
  if (!X.ring.is_field())
    throw contract_error("homotopy_relation: requires field coefficients");
  if (X.D < 2) throw contract_error("homotopy_relation: requires D >= 2");
  const LinearMap mu11 = X.mu(1, 1).at(a, b);
  const LinearMap d1 = X.d(2, 1).at(a, b);
  const LinearMap A = stack(mu11, d1);
  const Vec ua = X.degenerate_edge(a);
  const Vec target = concat_vec(
      embed_tensor(X.X[1], X.X[1], a, a, b, ua, f), g);
  return solve_affine(A, target).has_value();
}

HomotopyCategoryResult linear_homotopy_category(const TemplicialModule& X) {
  if (!X.ring.is_field())
    throw contract_error("linear_homotopy_category: requires a field");
  if (X.D < 2)
    throw contract_error("linear_homotopy_category: requires D >= 2");
  const Quiver& x1 = X.X[1];
  const std::size_t nv = X.base.size();

  // per-entry reduced null-space rows and pivot columns of N_{a,b}
  struct Entry {
    std::vector<Vec> rows;          // reduced echelon basis of N_{a,b}
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;  // representatives of the quotient
  };
  std::vector<std::vector<Entry>> ent(nv, std::vector<Entry>(nv));

  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      const std::size_t r1 = x1.entry_rank(a, b);
      if (r1 == 0) continue;
      // kernel of (w,f) |-> (mu11(w) - u_a (x) f, d1(w)), projected to f
      const LinearMap mu11 = X.mu(1, 1).at(a, b);
      const LinearMap d1 = X.d(2, 1).at(a, b);
      const LinearMap E = left_unit_insert(X, a, b);
      const std::size_t r2 = X.X[2].entry_rank(a, b);
      std::vector<std::string> dom_labels;
      for (const auto& l : X.X[2].entry(a, b).basis)
        dom_labels.push_back("(w|" + l + ")");
      for (const auto& l : x1.entry(a, b).basis)
        dom_labels.push_back("(f|" + l + ")");
      FreeModule dom(X.ring, std::move(dom_labels));
      std::vector<std::string> cod_labels;
      for (const auto& l : mu11.codomain.basis)
        cod_labels.push_back("(m|" + l + ")");
      for (const auto& l : d1.codomain.basis)
        cod_labels.push_back("(d|" + l + ")");
      FreeModule cod(X.ring, std::move(cod_labels));
      LinearMap A(dom, cod);
      for (std::size_t c = 0; c < r2; ++c) {
        for (std::size_t r = 0; r < mu11.codomain.rank(); ++r)
          A.at(r, c) = mu11.at(r, c);
        for (std::size_t r = 0; r < d1.codomain.rank(); ++r)
          A.at(mu11.codomain.rank() + r, c) = d1.at(r, c);
      }
      for (std::size_t c = 0; c < r1; ++c)
        for (std::size_t r = 0; r < E.codomain.rank(); ++r)
          A.at(r, r2 + c) = -E.at(r, c);
      std::vector<Vec> null_f;
      for (const Vec& v : kernel_basis(A))
        null_f.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(r2),
                            v.end());
      // reduce to echelon form over the field
      Entry& e = ent[a][b];
      for (Vec v : null_f) {
        for (std::size_t i = 0; i < e.rows.size(); ++i)
          if (!v[e.pivots[i]].is_zero())
            v = sub_vec(v, scale_vec(v[e.pivots[i]] *
                                         e.rows[i][e.pivots[i]].inverse(),
                                     e.rows[i]));
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) continue;
        v = scale_vec(v[p].inverse(), v);
        for (auto& row : e.rows)
          if (!row[p].is_zero()) row = sub_vec(row, scale_vec(row[p], v));
        e.rows.push_back(v);
        e.pivots.push_back(p);
      }
      // sort rows by pivot for determinism
      std::vector<std::size_t> order(e.rows.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return e.pivots[i] < e.pivots[j];
      });
      std::vector<Vec> rows;
      std::vector<std::size_t> pivots;
      for (std::size_t i : order) {
        rows.push_back(e.rows[i]);
        pivots.push_back(e.pivots[i]);
      }
      e.rows = std::move(rows);
      e.pivots = std::move(pivots);
      for (std::size_t cidx = 0; cidx < r1; ++cidx)
        if (std::find(e.pivots.begin(), e.pivots.end(), cidx) ==
            e.pivots.end())
          e.free_cols.push_back(cidx);
    }

  auto reduce = [&](std::size_t a, std::size_t b, Vec v) {
    const Entry& e = ent[a][b];
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if (!v[e.pivots[i]].is_zero())
        v = sub_vec(v, scale_vec(v[e.pivots[i]], e.rows[i]));
    return v;  // supported on free columns
  };

  // quotient quiver
  Quiver hom(X.ring, X.base);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      std::vector<std::string> labels;
      for (std::size_t c : ent[a][b].free_cols)
        labels.push_back("[" + x1.entry(a, b).basis[c] + "]");
      hom.set_entry(a, b, FreeModule(X.ring, std::move(labels)));
    }

  // projection X_1 -> hom
  QuiverMap proj(x1, hom);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      const std::size_t r1 = x1.entry_rank(a, b);
      if (r1 == 0) continue;
      const Entry& e = ent[a][b];
      LinearMap p(x1.entry(a, b), hom.entry(a, b));
      for (std::size_t c = 0; c < r1; ++c) {
        const Vec red = reduce(a, b, x1.entry(a, b).basis_vec(c));
        for (std::size_t i = 0; i < e.free_cols.size(); ++i)
          p.at(i, c) = red[e.free_cols[i]];
      }
      proj.set(a, b, std::move(p));
    }

  // composition: solve mu_{1,1}(w) = f (x) g, take the class of d_1(w)
  Quiver homhom = tensor_S(hom, hom);
  QuiverMap comp(homhom, hom);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      if (homhom.entry_rank(a, b) == 0) continue;
      LinearMap m(homhom.entry(a, b), hom.entry(a, b));
      std::size_t col = 0;
      for (std::size_t c = 0; c < nv; ++c) {
        const Entry& eac = ent[a][c];
        const Entry& ecb = ent[c][b];
        if (hom.entry_rank(a, c) * hom.entry_rank(c, b) == 0) continue;
        for (std::size_t i : eac.free_cols)
          for (std::size_t j : ecb.free_cols) {
            const Vec f = x1.entry(a, c).basis_vec(i);
            const Vec g = x1.entry(c, b).basis_vec(j);
            const Vec fg = embed_tensor(x1, x1, a, c, b, f, g);
            auto w = solve_affine(X.mu(1, 1).at(a, b), fg);
            if (!w)
              throw contract_error(
                  "linear_homotopy_category: composition solve failed — "
                  "input is not a linear quasi-category");
            const Vec cls =
                reduce(a, b, X.d(2, 1).at(a, b).apply(*w));
            for (std::size_t r = 0; r < ent[a][b].free_cols.size(); ++r)
              m.at(r, col) = cls[ent[a][b].free_cols[r]];
            ++col;
          }
      }
      comp.set(a, b, std::move(m));
    }

  // units: classes of the degenerate edges
  Quiver unitq = unit_quiver(X.ring, X.base);
  QuiverMap unit(unitq, hom);
  for (std::size_t a = 0; a < nv; ++a) {
    if (hom.entry_rank(a, a) == 0) continue;
    LinearMap u(unitq.entry(a, a), hom.entry(a, a));
    const Vec cls = reduce(a, a, X.degenerate_edge(a));
    for (std::size_t r = 0; r < ent[a][a].free_cols.size(); ++r)
      u.at(r, 0) = cls[ent[a][a].free_cols[r]];
    unit.set(a, a, std::move(u));
  }

  HomotopyCategoryResult out;
  out.category = LinearCategory{std::move(hom), std::move(comp),
                                std::move(unit)};
  out.projection = std::move(proj);
  return out;
}

bool unique_horn_filling_check(const TemplicialModule& X) {
  if (!X.counit.is_isomorphism()) return false;
  for (int n = 2; n <= X.D; ++n)
    if (!mu_power(X, n).is_isomorphism()) return false;
  return true;
}

TemplicialModule templicial_coproduct(const TemplicialModule& A,
                                      const TemplicialModule& B) {
  if (A.ring != B.ring || A.D != B.D)
    throw contract_error("templicial_coproduct: ring or truncation mismatch");
  std::vector<std::string> base = A.base;
  for (const auto& v : B.base) base.push_back(v);
  {
    std::set<std::string> seen(base.begin(), base.end());
    if (seen.size() != base.size())
      throw contract_error("templicial_coproduct: base labels collide");
  }
  const std::size_t off = A.base.size();
  auto widen_quiver = [&](const Quiver& qa, const Quiver& qb) {
    Quiver q(A.ring, base);
    for (const auto& [k, m] : qa.entries) q.set_entry(k.first, k.second, m);
    for (const auto& [k, m] : qb.entries)
      q.set_entry(k.first + off, k.second + off, m);
    return q;
  };
  auto widen_map = [&](const QuiverMap& fa, const QuiverMap& fb) {
    QuiverMap h(widen_quiver(fa.source, fb.source),
                widen_quiver(fa.target, fb.target));
    for (const auto& [k, m] : fa.components) h.set(k.first, k.second, m);
    for (const auto& [k, m] : fb.components)
      h.set(k.first + off, k.second + off, m);
    return h;
  };
  TemplicialModule X;
  X.ring = A.ring;
  X.D = A.D;
  X.base = base;
  for (int n = 0; n <= A.D; ++n)
    X.X.push_back(widen_quiver(A.X[static_cast<std::size_t>(n)],
                               B.X[static_cast<std::size_t>(n)]));
  for (const auto& [k, m] : A.faces)
    X.faces.emplace(k, widen_map(m, B.faces.at(k)));
  for (const auto& [k, m] : A.degens)
    X.degens.emplace(k, widen_map(m, B.degens.at(k)));
  // widened mu lands in the widened tensor, which equals the tensor of the
  // widened levels because cross entries vanish
  for (const auto& [k, m] : A.comult) {
    QuiverMap wide = widen_map(m, B.comult.at(k));
    Quiver tgt = tensor_S(X.X[static_cast<std::size_t>(k.first)],
                          X.X[static_cast<std::size_t>(k.second)]);
    QuiverMap fixed(X.X[static_cast<std::size_t>(k.first + k.second)], tgt);
    for (const auto& [key, compm] : wide.components) {
      LinearMap c(fixed.source.entry(key.first, key.second),
                  tgt.entry(key.first, key.second));
      // reindex rows by label
      for (std::size_t r = 0; r < compm.codomain.rank(); ++r) {
        const std::size_t r2 =
            tgt.entry(key.first, key.second).index_of(compm.codomain.basis[r]);
        for (std::size_t cidx = 0; cidx < compm.domain.rank(); ++cidx)
          c.at(r2, cidx) = compm.at(r, cidx);
      }
      fixed.set(key.first, key.second, std::move(c));
    }
    X.comult.emplace(k, std::move(fixed));
  }
  X.counit = widen_map(A.counit, B.counit);
  {
    // retarget the widened counit onto the unit quiver of the union base
    Quiver unit = unit_quiver(A.ring, base);
    QuiverMap eps(X.X[0], unit);
    for (const auto& [key, m] : X.counit.components) {
      LinearMap c(X.X[0].entry(key.first, key.second),
                  unit.entry(key.first, key.second));
      c.mat = m.mat;
      eps.set(key.first, key.second, std::move(c));
    }
    X.counit = std::move(eps);
  }
  return X;
}

}  // namespace templike
