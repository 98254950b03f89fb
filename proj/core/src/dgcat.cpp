#include "templike/dgcat.hpp"

#include <algorithm>
#include <stdexcept>

namespace templike {

namespace {

std::pair<int, int> ends(const Subset& I) { return {I.front(), I.back()}; }

std::string subset_str(const Subset& I) {
  std::string out = "{";
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(I[k]);
  }
  return out + "}";
}

// Number of members of I strictly below s.
int p_of(int s, const Subset& I) {
  return static_cast<int>(std::count_if(I.begin(), I.end(),
                                        [&](int t) { return t < s; }));
}

Subset subset_le(const Subset& I, int s) {
  Subset out;
  for (int t : I)
    if (t < s) out.push_back(t);
  out.push_back(s);
  return out;
}

Subset subset_ge(const Subset& I, int s) {
  Subset out{s};
  for (int t : I)
    if (t > s) out.push_back(t);
  return out;
}

const FreeModule& mod_of(const DGCategory& C, const DGFamily& f,
                         const Subset& I) {
  auto [i, j] = ends(I);
  return C.hom[f.vertices[static_cast<std::size_t>(i)]]
              [f.vertices[static_cast<std::size_t>(j)]]
      .at(static_cast<int>(I.size()) - 2);
}

Vec value_of(const DGCategory& C, const DGFamily& f, const Subset& I) {
  auto it = f.v.find(I);
  if (it != f.v.end()) return it->second;
  return mod_of(C, f, I).zero_vec();
}

// The juxtaposed composite x_i -> x_s -> x_j of the components at the two
// legs lo = I^{<=s} and hi = I^{>=s}, carrying the Koszul sign relative to
// the dg-composition: hi . lo = (-1)^{|hi||lo|} m(lo (x) hi).
Vec juxtaposed(const DGCategory& C, const DGFamily& f, const Subset& lo,
               const Subset& hi, const Vec& lo_val, const Vec& hi_val) {
  const int i = lo.front(), s = lo.back(), j = hi.back();
  const int deg_lo = static_cast<int>(lo.size()) - 2;
  const int deg_hi = static_cast<int>(hi.size()) - 2;
  const FreeModule& target =
      C.hom[f.vertices[static_cast<std::size_t>(i)]]
           [f.vertices[static_cast<std::size_t>(j)]]
          .at(deg_lo + deg_hi);
  if (deg_lo + deg_hi > C.D || lo_val.empty() || hi_val.empty() ||
      target.rank() == 0)
    return target.zero_vec();
  Vec out = dg_compose(C, f.vertices[static_cast<std::size_t>(i)],
                       f.vertices[static_cast<std::size_t>(s)],
                       f.vertices[static_cast<std::size_t>(j)], deg_lo, deg_hi,
                       lo_val, hi_val);
  if ((deg_lo * deg_hi) % 2 != 0) out = scale_vec(-Scalar::one(C.ring), out);
  return out;
}

void add_into(Vec& acc, const Vec& v, bool minus) {
  if (minus)
    acc = sub_vec(acc, v);
  else
    acc = add_vec(acc, v);
}

// All subsets of {0,...,n} with at least two elements, by increasing span
// and then by interior bitmask.
std::vector<Subset> spans_first(int n) {
  std::vector<Subset> out;
  for (int d = 1; d <= n; ++d)
    for (int i = 0; i + d <= n; ++i) {
      const int j = i + d;
      const unsigned inner = d >= 1 ? (1u << (d - 1)) : 1u;
      for (unsigned mask = 0; mask < inner; ++mask) {
        Subset I{i};
        for (int t = 0; t < d - 1; ++t)
          if (mask & (1u << t)) I.push_back(i + 1 + t);
        I.push_back(j);
        out.push_back(std::move(I));
      }
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Degree zero.

H0Result h_zero(const DGCategory& C) {
  const std::size_t no = C.objects.size();
  H0Result out;
  out.q.assign(no, std::vector<Quotient>(no));
  Quiver hom(C.ring, C.objects);
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y) {
      const ChainComplex& H = C.hom[x][y];
      std::vector<Vec> gens;
      if (C.D >= 1) {
        const LinearMap& d1 = H.d(1);
        for (std::size_t c = 0; c < d1.domain.rank(); ++c)
          gens.push_back(d1.apply(d1.domain.basis_vec(c)));
      }
      out.q[x][y] = quotient_by(H.at(0), gens);
      hom.set_entry(x, y, out.q[x][y].Q);
    }
  out.category.hom = hom;

  const Quiver hh = tensor_S(hom, hom);
  QuiverMap comp(hh, hom);
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t z = 0; z < no; ++z) {
      if (hh.entry_rank(x, z) == 0 || hom.entry_rank(x, z) == 0) continue;
      LinearMap f(hh.entry(x, z), hom.entry(x, z));
      std::size_t col = 0;
      for (std::size_t y = 0; y < no; ++y) {
        const Quotient& qa = out.q[x][y];
        const Quotient& qb = out.q[y][z];
        for (std::size_t a = 0; a < qa.Q.rank(); ++a)
          for (std::size_t b = 0; b < qb.Q.rank(); ++b, ++col) {
            const Vec img = out.q[x][z].proj.apply(dg_compose(
                C, x, y, z, 0, 0, qa.sect.apply(qa.Q.basis_vec(a)),
                qb.sect.apply(qb.Q.basis_vec(b))));
            for (std::size_t r = 0; r < img.size(); ++r) f.at(r, col) = img[r];
          }
      }
      comp.set(x, z, std::move(f));
    }
  out.category.comp = comp;

  QuiverMap unit(unit_quiver(C.ring, C.objects), hom);
  for (std::size_t x = 0; x < no; ++x) {
    if (hom.entry_rank(x, x) == 0) continue;
    LinearMap f(unit.source.entry(x, x), hom.entry(x, x));
    const Vec img = out.q[x][x].proj.apply(C.id[x]);
    for (std::size_t r = 0; r < img.size(); ++r) f.at(r, 0) = img[r];
    unit.set(x, x, std::move(f));
  }
  out.category.unit = unit;
  return out;
}

DGCategory include_degree_zero(const LinearCategory& A, int D) {
  if (D < 0) throw contract_error("include_degree_zero: D must be >= 0");
  DGCategory C;
  C.ring = A.hom.ring;
  C.objects = A.hom.vertices;
  C.D = D;
  const std::size_t no = C.objects.size();
  C.hom.assign(no, std::vector<ChainComplex>(no));
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y) {
      ChainComplex& H = C.hom[x][y];
      H.ring = C.ring;
      H.D = D;
      H.C.assign(static_cast<std::size_t>(D) + 1, FreeModule{C.ring, {}});
      H.C[0] = A.hom.entry(x, y);
      H.dmap.assign(static_cast<std::size_t>(D) + 1, LinearMap());
      for (int k = 1; k <= D; ++k)
        H.dmap[static_cast<std::size_t>(k)] = LinearMap::zero(
            H.C[static_cast<std::size_t>(k)], H.C[static_cast<std::size_t>(k - 1)]);
    }
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      for (std::size_t z = 0; z < no; ++z) {
        auto& triple = C.comp[{x, y, z}];
        for (int s = 0; s <= D; ++s)
          for (int t = 0; s + t <= D; ++t)
            triple[{s, t}] =
                LinearMap::zero(tensor_module(C.hom[x][y].at(s),
                                              C.hom[y][z].at(t)),
                                C.hom[x][z].at(s + t));
        if (C.hom[x][y].at(0).rank() == 0 || C.hom[y][z].at(0).rank() == 0 ||
            C.hom[x][z].at(0).rank() == 0)
          continue;
        LinearMap m00(tensor_module(C.hom[x][y].at(0), C.hom[y][z].at(0)),
                      C.hom[x][z].at(0));
        const LinearMap block = A.comp.at(x, z);
        for (std::size_t a = 0; a < C.hom[x][y].at(0).rank(); ++a)
          for (std::size_t b = 0; b < C.hom[y][z].at(0).rank(); ++b) {
            const Vec img = block.apply(tensor_element(
                A.hom, A.hom, x, y, z, C.hom[x][y].at(0).basis_vec(a),
                C.hom[y][z].at(0).basis_vec(b)));
            const std::size_t col = a * C.hom[y][z].at(0).rank() + b;
            for (std::size_t r = 0; r < img.size(); ++r)
              m00.at(r, col) = img[r];
          }
        triple[{0, 0}] = std::move(m00);
      }
  C.id.resize(no);
  for (std::size_t x = 0; x < no; ++x)
    C.id[x] = A.unit.at(x, x).apply(Vec{Scalar::one(C.ring)});
  return C;
}

// ---------------------------------------------------------------------------
// The linear dg-nerve.

LinearDGNerve linear_dg_nerve(const DGCategory& C, int D) {
  LinearDGNerve out;
  out.enriched = dg_enrich_gamma(C, D);
  out.T = tensor_T(out.enriched.A);
  return out;
}

// ---------------------------------------------------------------------------
// The S-construction.

const Vec& SSimplex::at(int i, int j) const {
  auto it = b.find({i, j});
  if (it == b.end()) throw contract_error("SSimplex: missing component");
  return it->second;
}

void SSimplex::set(int i, int j, Vec v) { b[{i, j}] = std::move(v); }

SSimplex s_face(const NarrowSimplicialModule& A, const SSimplex& s, int l) {
  if (s.n < 1 || l < 0 || l > s.n)
    throw contract_error("s_face: index out of range");
  SSimplex out;
  out.n = s.n - 1;
  out.vertices = s.vertices;
  out.vertices.erase(out.vertices.begin() + l);
  for (int i = 0; i < out.n; ++i)
    for (int j = i + 1; j <= out.n; ++j) {
      if (l <= i) {
        out.set(i, j, s.at(i + 1, j + 1));
      } else if (j < l) {
        out.set(i, j, s.at(i, j));
      } else {
        // i < l <= j: drop the vertex and compose through it.
        const std::size_t xi = s.vertices[static_cast<std::size_t>(i)];
        const std::size_t xl = s.vertices[static_cast<std::size_t>(l)];
        const std::size_t xj = s.vertices[static_cast<std::size_t>(j + 1)];
        Vec v = A.d(j + 1 - i, l - i).at(xi, xj).apply(s.at(i, j + 1));
        const Vec prod = A.mult(l - i, j - l + 1)
                             .at(xi, xj)
                             .apply(tensor_element(
                                 A.A[static_cast<std::size_t>(l - i)],
                                 A.A[static_cast<std::size_t>(j - l + 1)], xi,
                                 xl, xj, s.at(i, l), s.at(l, j + 1)));
        out.set(i, j, add_vec(v, prod));
      }
    }
  return out;
}

SSimplex s_degen(const NarrowSimplicialModule& A, const SSimplex& s, int l) {
  if (l < 0 || l > s.n) throw contract_error("s_degen: index out of range");
  if (s.n + 1 > A.D)
    throw contract_error("s_degen: target level exceeds the truncation");
  SSimplex out;
  out.n = s.n + 1;
  out.vertices = s.vertices;
  out.vertices.insert(out.vertices.begin() + l,
                      s.vertices[static_cast<std::size_t>(l)]);
  for (int i = 0; i < out.n; ++i)
    for (int j = i + 1; j <= out.n; ++j) {
      const std::size_t xi = out.vertices[static_cast<std::size_t>(i)];
      const std::size_t xj = out.vertices[static_cast<std::size_t>(j)];
      if (l < i) {
        out.set(i, j, s.at(i - 1, j - 1));
      } else if (j <= l) {
        out.set(i, j, s.at(i, j));
      } else if (i < l && l < j - 1) {
        out.set(i, j, A.s(j - 1 - i, l - i).at(xi, xj).apply(s.at(i, j - 1)));
      } else if (l == i && l == j - 1) {
        out.set(i, j, A.u.at(xi, xi).apply(Vec{Scalar::one(A.ring)}));
      } else {
        // l == i < j - 1 or i < l == j - 1: the component degenerates to 0.
        out.set(i, j,
                A.A[static_cast<std::size_t>(j - i)].entry(xi, xj).zero_vec());
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// U~(T(A)) = S(A).

SSimplex utilde_to_s(const TensorTemplicial& T, const NarrowSimplicialModule& A,
                     const USimplex& u) {
  SSimplex out;
  out.n = u.n;
  out.vertices = u.vertices;
  for (int i = 0; i < u.n; ++i)
    for (int j = i + 1; j <= u.n; ++j) {
      const int m = j - i;
      const std::size_t xi = u.vertices[static_cast<std::size_t>(i)];
      const std::size_t xj = u.vertices[static_cast<std::size_t>(j)];
      const PartitionSum& S = T.sum[static_cast<std::size_t>(m)];
      const std::size_t idx = S.index_of(Partition(m, {0, m}));
      if (A.A[static_cast<std::size_t>(m)].entry_rank(xi, xj) == 0) {
        out.set(i, j,
                A.A[static_cast<std::size_t>(m)].entry(xi, xj).zero_vec());
        continue;
      }
      out.set(i, j, S.proj[idx].at(xi, xj).apply(u.a(i, j)));
    }
  return out;
}

namespace {

// The nested element b_{i,t_1} (x) (b_{t_1,t_2} (x) (...)) of the summand
// at a partition, right-nested like nested_tensor.
Vec nested_element(const NarrowSimplicialModule& A, const SSimplex& s, int i,
                   const std::vector<int>& cuts, std::size_t r) {
  const int a = cuts[r], b = cuts[r + 1];
  const std::size_t xa = s.vertices[static_cast<std::size_t>(i + a)];
  const std::size_t xb = s.vertices[static_cast<std::size_t>(i + b)];
  if (r + 2 == cuts.size()) return s.at(i + a, i + b);
  const Vec rest = nested_element(A, s, i, cuts, r + 1);
  std::vector<Quiver> tail;
  for (std::size_t k = r + 1; k + 1 < cuts.size(); ++k)
    tail.push_back(A.A[static_cast<std::size_t>(cuts[k + 1] - cuts[k])]);
  const Quiver rest_q =
      nested_tensor(tail, unit_quiver(A.ring, A.base));
  const std::size_t xend =
      s.vertices[static_cast<std::size_t>(i + cuts.back())];
  return tensor_element(A.A[static_cast<std::size_t>(b - a)], rest_q, xa, xb,
                        xend, s.at(i + a, i + b), rest);
}

}  // namespace

USimplex s_to_utilde(const TensorTemplicial& T, const NarrowSimplicialModule& A,
                     const SSimplex& s) {
  USimplex out;
  out.n = s.n;
  out.vertices = s.vertices;
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j <= s.n; ++j) {
      const int m = j - i;
      const std::size_t xi = s.vertices[static_cast<std::size_t>(i)];
      const std::size_t xj = s.vertices[static_cast<std::size_t>(j)];
      const PartitionSum& S = T.sum[static_cast<std::size_t>(m)];
      Vec acc = S.total.entry(xi, xj).zero_vec();
      for (std::size_t idx = 0; idx < S.parts.size(); ++idx) {
        const Vec val = nested_element(A, s, i, S.parts[idx].members, 0);
        if (is_zero_vec(val)) continue;
        acc = add_vec(acc, S.iota[idx].at(xi, xj).apply(val));
      }
      out.set(i, j, std::move(acc));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Families and the bridge.

const Vec& DGFamily::at(const Subset& I) const {
  auto it = v.find(I);
  if (it == v.end()) throw contract_error("DGFamily: missing component");
  return it->second;
}

void DGFamily::set(Subset I, Vec x) { v[std::move(I)] = std::move(x); }

int epsilon_exponent(int s, const Subset& I) {
  if (s == I.front()) return 0;
  const int m = static_cast<int>(I.size()) - 1;
  const int p = p_of(s, I);
  return ((m * p + m + p) % 2 + 2) % 2;
}

DGFamily dg_nerve_bridge(const DGCategory& C, const DGFamily& fam, bool to_s) {
  DGFamily out;
  out.n = fam.n;
  out.vertices = fam.vertices;
  for (const Subset& I : spans_first(fam.n)) {
    const auto [i, j] = ends(I);
    const int m = static_cast<int>(I.size()) - 1;
    const FreeModule& target = mod_of(C, fam, I);
    Vec acc(target.rank(), Scalar::zero(C.ring));
    for (int s = i + 1; s < j; ++s) {
      if (std::binary_search(I.begin(), I.end(), s)) continue;
      const Subset lo = subset_le(I, s), hi = subset_ge(I, s);
      const Vec lo_val = value_of(C, to_s ? out : fam, lo);
      const Vec hi_val = value_of(C, to_s ? fam : out, hi);
      add_into(acc, juxtaposed(C, fam, lo, hi, lo_val, hi_val),
               epsilon_exponent(s, I) == 1);
    }
    Vec res;
    if (to_s) {
      // 0 = a_I + (-1)^m b_I + (middle terms).
      res = add_vec(value_of(C, fam, I), acc);
      if (m % 2 == 0) res = scale_vec(-Scalar::one(C.ring), res);
    } else {
      // 0 = a_I + (-1)^m b_I + (middle terms), solved for a_I.
      Vec bI = value_of(C, fam, I);
      if (m % 2 == 1) bI = scale_vec(-Scalar::one(C.ring), bI);
      res = scale_vec(-Scalar::one(C.ring), add_vec(bI, acc));
    }
    out.set(I, std::move(res));
  }
  return out;
}

CheckReport classical_dg_nerve_check(const DGCategory& C, const DGFamily& a) {
  for (const Subset& I : spans_first(a.n)) {
    const int m = static_cast<int>(I.size()) - 1;
    if (m < 2) continue;
    const auto [i, j] = ends(I);
    const ChainComplex& H =
        C.hom[a.vertices[static_cast<std::size_t>(i)]]
             [a.vertices[static_cast<std::size_t>(j)]];
    Vec lhs = H.at(m - 2).zero_vec();
    if (m - 1 <= C.D && H.at(m - 1).rank() > 0)
      lhs = H.d(m - 1).apply(value_of(C, a, I));
    Vec rhs = H.at(m - 2).zero_vec();
    for (std::size_t k = 1; k + 1 < I.size(); ++k) {
      const int t = I[k];
      const int p = static_cast<int>(k);
      Subset facet = I;
      facet.erase(facet.begin() + static_cast<long>(k));
      add_into(rhs, value_of(C, a, facet), p % 2 == 1);
      const Subset lo = subset_le(I, t), hi = subset_ge(I, t);
      const Vec prod =
          juxtaposed(C, a, lo, hi, value_of(C, a, lo), value_of(C, a, hi));
      add_into(rhs, prod, (m * (p + 1)) % 2 == 1);
    }
    if (lhs != rhs)
      return CheckReport::fail("dg-nerve condition fails at " + subset_str(I));
  }
  return CheckReport::pass();
}

CheckReport s_side_check(const DGCategory& C, const DGFamily& b) {
  for (const Subset& I : spans_first(b.n)) {
    const int m = static_cast<int>(I.size()) - 1;
    if (m < 2) continue;
    const auto [i, j] = ends(I);
    const ChainComplex& H =
        C.hom[b.vertices[static_cast<std::size_t>(i)]]
             [b.vertices[static_cast<std::size_t>(j)]];
    Vec lhs = H.at(m - 2).zero_vec();
    if (m - 1 <= C.D && H.at(m - 1).rank() > 0)
      lhs = H.d(m - 1).apply(value_of(C, b, I));
    Vec rhs = H.at(m - 2).zero_vec();
    for (std::size_t k = 1; k + 1 < I.size(); ++k) {
      Subset facet = I;
      facet.erase(facet.begin() + static_cast<long>(k));
      add_into(rhs, value_of(C, b, facet), (static_cast<int>(k) + 1) % 2 == 1);
    }
    if (lhs != rhs)
      return CheckReport::fail("S-side condition fails at " + subset_str(I));
  }
  return CheckReport::pass();
}

DGFamily dg_family_face(const DGCategory& C, const DGFamily& a, int l) {
  if (a.n < 1 || l < 0 || l > a.n)
    throw contract_error("dg_family_face: index out of range");
  DGFamily out;
  out.n = a.n - 1;
  out.vertices = a.vertices;
  out.vertices.erase(out.vertices.begin() + l);
  for (const Subset& I : spans_first(out.n)) {
    Subset J;
    for (int t : I) J.push_back(t < l ? t : t + 1);
    out.set(I, value_of(C, a, J));
  }
  return out;
}

DGFamily dg_family_degen(const DGCategory& C, const DGFamily& a, int l) {
  if (l < 0 || l > a.n)
    throw contract_error("dg_family_degen: index out of range");
  DGFamily out;
  out.n = a.n + 1;
  out.vertices = a.vertices;
  out.vertices.insert(out.vertices.begin() + l,
                      a.vertices[static_cast<std::size_t>(l)]);
  for (const Subset& I : spans_first(out.n)) {
    const bool hits_l = std::binary_search(I.begin(), I.end(), l);
    const bool hits_l1 = std::binary_search(I.begin(), I.end(), l + 1);
    if (hits_l && hits_l1) {
      if (I.size() == 2) {
        // The repeated short edge carries the identity.
        out.set(I, C.id[out.vertices[static_cast<std::size_t>(l)]]);
      } else {
        out.set(I, mod_of(C, out, I).zero_vec());
      }
      continue;
    }
    Subset J;
    for (int t : I) J.push_back(t <= l ? t : t - 1);
    out.set(I, value_of(C, a, J));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families vs S-simplices over the Gamma~-enrichment.

DGFamily ssimplex_to_family(const EnrichedGamma& E, const DGCategory& C,
                            const SSimplex& s) {
  DGFamily out;
  out.n = s.n;
  out.vertices = s.vertices;
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j <= s.n; ++j) {
      const std::size_t xi = s.vertices[static_cast<std::size_t>(i)];
      const std::size_t xj = s.vertices[static_cast<std::size_t>(j)];
      const GammaModule& G = E.gam[xi][xj];
      const ChainComplex& H = C.hom[xi][xj];
      const int lev = j - i - 2;
      const unsigned masks = j - i >= 2 ? (1u << (j - i - 1)) : 1u;
      for (unsigned mask = 0; mask < masks; ++mask) {
        Subset I{i};
        for (int t = 0; t < j - i - 1; ++t)
          if (mask & (1u << t)) I.push_back(i + 1 + t);
        I.push_back(j);
        out.set(std::move(I), gamma_component(G, H, lev, mask, s.at(i, j)));
      }
    }
  return out;
}

SSimplex family_to_ssimplex(const EnrichedGamma& E, const DGCategory& C,
                            const DGFamily& b) {
  SSimplex out;
  out.n = b.n;
  out.vertices = b.vertices;
  for (int i = 0; i < b.n; ++i)
    for (int j = i + 1; j <= b.n; ++j) {
      const std::size_t xi = b.vertices[static_cast<std::size_t>(i)];
      const std::size_t xj = b.vertices[static_cast<std::size_t>(j)];
      const GammaModule& G = E.gam[xi][xj];
      const ChainComplex& H = C.hom[xi][xj];
      const int lev = j - i - 2;
      const unsigned masks = j - i >= 2 ? (1u << (j - i - 1)) : 1u;
      std::vector<Vec> per_mask(masks);
      for (unsigned mask = 0; mask < masks; ++mask) {
        Subset I{i};
        for (int t = 0; t < j - i - 1; ++t)
          if (mask & (1u << t)) I.push_back(i + 1 + t);
        I.push_back(j);
        per_mask[mask] = value_of(C, b, I);
      }
      out.set(i, j, gamma_assemble(G, H, lev, per_mask));
    }
  return out;
}

}  // namespace templike
