#include "templike/doldkan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>

namespace templike {

namespace {

int popcount(unsigned m) {
  int c = 0;
  for (; m; m >>= 1) c += static_cast<int>(m & 1u);
  return c;
}

std::vector<int> mask_members(unsigned m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Plain free-module helpers.

FreeModule fm_direct_sum(
    const std::vector<std::pair<std::string, FreeModule>>& parts) {
  if (parts.empty()) throw contract_error("fm_direct_sum: no parts");
  std::vector<std::string> labels;
  for (const auto& [tag, m] : parts)
    for (const auto& l : m.basis) labels.push_back(tag + "|" + l);
  return FreeModule(parts[0].second.ring, std::move(labels));
}

namespace {

std::size_t fm_offset(
    const std::vector<std::pair<std::string, FreeModule>>& parts,
    std::size_t k) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < k; ++i) off += parts[i].second.rank();
  return off;
}

}  // namespace

LinearMap fm_injection(
    const std::vector<std::pair<std::string, FreeModule>>& parts,
    std::size_t k) {
  const FreeModule total = fm_direct_sum(parts);
  LinearMap f(parts[k].second, total);
  const std::size_t off = fm_offset(parts, k);
  for (std::size_t i = 0; i < parts[k].second.rank(); ++i)
    f.at(off + i, i) = Scalar::one(total.ring);
  return f;
}

LinearMap fm_projection(
    const std::vector<std::pair<std::string, FreeModule>>& parts,
    std::size_t k) {
  const FreeModule total = fm_direct_sum(parts);
  LinearMap f(total, parts[k].second);
  const std::size_t off = fm_offset(parts, k);
  for (std::size_t i = 0; i < parts[k].second.rank(); ++i)
    f.at(i, off + i) = Scalar::one(total.ring);
  return f;
}

// ---------------------------------------------------------------------------
// Chain complexes.

namespace {

const FreeModule& zero_module(const Ring& r) {
  static thread_local std::deque<std::pair<Ring, FreeModule>> cache;
  for (const auto& [ring, m] : cache)
    if (ring == r) return m;
  cache.emplace_back(r, FreeModule(r, {}));
  return cache.back().second;
}

}  // namespace

const FreeModule& ChainComplex::at(int n) const {
  if (n < 0 || n > D) return zero_module(ring);
  return C[static_cast<std::size_t>(n)];
}

const LinearMap& ChainComplex::d(int n) const {
  if (n < 1 || n > D)
    throw contract_error("ChainComplex: differential out of range");
  return dmap[static_cast<std::size_t>(n)];
}

CheckReport check_chain(const ChainComplex& C) {
  if (static_cast<int>(C.C.size()) != C.D + 1 ||
      static_cast<int>(C.dmap.size()) != C.D + 1)
    return CheckReport::fail("chain complex has wrong number of degrees");
  for (int n = 1; n <= C.D; ++n) {
    if (C.d(n).domain != C.at(n) || C.d(n).codomain != C.at(n - 1))
      return CheckReport::fail("differential " + std::to_string(n) +
                               " has wrong shape");
    if (n >= 2 && !compose(C.d(n - 1), C.d(n)).is_zero())
      return CheckReport::fail("d o d != 0 at degree " + std::to_string(n));
  }
  return CheckReport::pass();
}

bool chain_equal(const ChainComplex& A, const ChainComplex& B) {
  if (A.D != B.D || A.ring != B.ring) return false;
  for (int n = 0; n <= A.D; ++n)
    if (A.at(n) != B.at(n)) return false;
  for (int n = 1; n <= A.D; ++n)
    if (!(A.d(n) == B.d(n))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Plain augmented simplicial modules.

const FreeModule& PlainAugModule::level(int n) const {
  if (n < -1 || n > top)
    throw contract_error("PlainAugModule: level out of range");
  return A[static_cast<std::size_t>(n + 1)];
}

const LinearMap& PlainAugModule::d(int n, int i) const {
  auto it = faces.find({n, i});
  if (it == faces.end())
    throw contract_error("plain aug module has no face (" +
                         std::to_string(n) + "," + std::to_string(i) + ")");
  return it->second;
}

const LinearMap& PlainAugModule::s(int n, int i) const {
  auto it = degens.find({n, i});
  if (it == degens.end())
    throw contract_error("plain aug module has no degeneracy (" +
                         std::to_string(n) + "," + std::to_string(i) + ")");
  return it->second;
}

CheckReport check_plain_aug(const PlainAugModule& A) {
  if (static_cast<int>(A.A.size()) != A.top + 2)
    return CheckReport::fail("wrong number of levels");
  auto fail_at = [](const std::string& what, int n) {
    return CheckReport::fail(what + " at level " + std::to_string(n));
  };
  // Shapes.
  for (int n = 0; n <= A.top; ++n)
    for (int i = 0; i <= n; ++i) {
      if (A.d(n, i).domain != A.level(n) ||
          A.d(n, i).codomain != A.level(n - 1))
        return fail_at("face has wrong shape", n);
      if (n < A.top &&
          (A.s(n, i).domain != A.level(n) ||
           A.s(n, i).codomain != A.level(n + 1)))
        return fail_at("degeneracy has wrong shape", n);
    }
  // Simplicial identities.
  for (int n = 1; n <= A.top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(compose(A.d(n - 1, i), A.d(n, j)) ==
              compose(A.d(n - 1, j - 1), A.d(n, i))))
          return fail_at("d_i d_j fails", n);
  for (int n = 0; n + 1 < A.top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(compose(A.s(n + 1, i), A.s(n, j)) ==
              compose(A.s(n + 1, j + 1), A.s(n, i))))
          return fail_at("s_i s_j fails", n);
  for (int n = 0; n < A.top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const LinearMap lhs = compose(A.d(n + 1, i), A.s(n, j));
        if (i == j || i == j + 1) {
          if (!(lhs == LinearMap::identity(A.level(n))))
            return fail_at("d_i s_j != id", n);
        } else if (i < j) {
          if (!(lhs == compose(A.s(n - 1, j - 1), A.d(n, i))))
            return fail_at("d_i s_j (i<j) fails", n);
        } else {
          if (!(lhs == compose(A.s(n - 1, j), A.d(n, i - 1))))
            return fail_at("d_i s_j (i>j+1) fails", n);
        }
      }
  return CheckReport::pass();
}

PlainAugModule free_on_delta_plus(const Ring& k, int n, int top) {
  PlainAugModule out;
  out.ring = k;
  out.top = top;
  // Level m basis: all monotone maps [m] -> [n]; level -1: the empty map.
  std::vector<std::vector<std::vector<int>>> simplices(
      static_cast<std::size_t>(top) + 2);
  simplices[0] = {{}};
  for (int m = 0; m <= top; ++m) {
    std::vector<std::vector<int>> cur;
    std::vector<int> stack;
    // Enumerate monotone sequences of length m+1 with entries in 0..n.
    std::function<void(int)> rec = [&](int next_min) {
      if (static_cast<int>(stack.size()) == m + 1) {
        cur.push_back(stack);
        return;
      }
      for (int v = next_min; v <= n; ++v) {
        stack.push_back(v);
        rec(v);
        stack.pop_back();
      }
    };
    rec(0);
    simplices[static_cast<std::size_t>(m) + 1] = std::move(cur);
  }
  auto label = [](const std::vector<int>& s) {
    if (s.empty()) return std::string("()");
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) os << ".";
      os << s[i];
    }
    return os.str();
  };
  auto index_of = [&](int m, const std::vector<int>& s) {
    const auto& lv = simplices[static_cast<std::size_t>(m) + 1];
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (lv[i] == s) return i;
    throw contract_error("free_on_delta_plus: unknown simplex");
  };
  for (int m = -1; m <= top; ++m) {
    std::vector<std::string> labels;
    for (const auto& s : simplices[static_cast<std::size_t>(m) + 1])
      labels.push_back(label(s));
    out.A.push_back(FreeModule(k, std::move(labels)));
  }
  for (int m = 0; m <= top; ++m)
    for (int i = 0; i <= m; ++i) {
      LinearMap dmap(out.level(m), out.level(m - 1));
      const auto& lv = simplices[static_cast<std::size_t>(m) + 1];
      for (std::size_t c = 0; c < lv.size(); ++c) {
        std::vector<int> t = lv[c];
        t.erase(t.begin() + i);
        dmap.at(index_of(m - 1, t), c) = Scalar::one(k);
      }
      out.faces.emplace(std::make_pair(m, i), std::move(dmap));
      if (m < top) {
        LinearMap smap(out.level(m), out.level(m + 1));
        for (std::size_t c = 0; c < lv.size(); ++c) {
          std::vector<int> t = lv[c];
          t.insert(t.begin() + i, t[static_cast<std::size_t>(i)]);
          smap.at(index_of(m + 1, t), c) = Scalar::one(k);
        }
        out.degens.emplace(std::make_pair(m, i), std::move(smap));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients.

Quotient quotient_by(const FreeModule& V, const std::vector<Vec>& gens) {
  const Ring& k = V.ring;
  const std::size_t n = V.rank();
  std::vector<Vec> rows;          // reduced generators, echelon by pivot
  std::vector<std::size_t> pivots;
  if (k == Ring::Z()) {
    // Only basis-vector generators are supported over Z.
    for (const Vec& g : gens) {
      std::size_t nz = 0, idx = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!(g[i] == Scalar::zero(k))) {
          ++nz;
          idx = i;
        }
      if (nz == 0) continue;
      if (nz > 1 || !(g[idx] == Scalar::one(k) || g[idx] == -Scalar::one(k)))
        throw contract_error(
            "quotient_by: quotient not computable over the integers");
      if (std::find(pivots.begin(), pivots.end(), idx) == pivots.end()) {
        pivots.push_back(idx);
        rows.push_back(V.basis_vec(idx));
      }
    }
  } else {
    for (const Vec& g : gens) {
      Vec v = g;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (!(v[pivots[r]] == Scalar::zero(k)))
          v = sub_vec(v, scale_vec(v[pivots[r]], rows[r]));
      std::size_t p = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!(v[i] == Scalar::zero(k))) {
          p = i;
          break;
        }
      if (p == n) continue;
      v = scale_vec(v[p].inverse(), v);
      // Back-substitute to keep the rows fully reduced.
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (!(rows[r][p] == Scalar::zero(k)))
          rows[r] = sub_vec(rows[r], scale_vec(rows[r][p], v));
      rows.push_back(v);
      pivots.push_back(p);
    }
  }
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end())
      free_idx.push_back(i);
  std::vector<std::string> labels;
  for (std::size_t i : free_idx) labels.push_back(V.basis[i]);
  Quotient out;
  out.Q = FreeModule(k, std::move(labels));
  out.proj = LinearMap(V, out.Q);
  for (std::size_t c = 0; c < n; ++c) {
    Vec v = V.basis_vec(c);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!(v[pivots[r]] == Scalar::zero(k)))
        v = sub_vec(v, scale_vec(v[pivots[r]], rows[r]));
    for (std::size_t q = 0; q < free_idx.size(); ++q)
      out.proj.at(q, c) = v[free_idx[q]];
  }
  out.sect = LinearMap(out.Q, V);
  for (std::size_t q = 0; q < free_idx.size(); ++q)
    out.sect.at(free_idx[q], q) = Scalar::one(k);
  return out;
}

NormalizedResult normalized_augmented(const PlainAugModule& A) {
  NormalizedResult out;
  out.N.ring = A.ring;
  out.N.D = A.top + 1;
  for (int n = 0; n <= A.top + 1; ++n) {
    std::vector<Vec> gens;
    if (n >= 2)
      for (int i = 0; i <= n - 2; ++i) {
        const LinearMap& s = A.s(n - 2, i);
        for (std::size_t c = 0; c < s.domain.rank(); ++c) {
          Vec col(s.codomain.rank(), Scalar::zero(A.ring));
          for (std::size_t r = 0; r < col.size(); ++r) col[r] = s.at(r, c);
          gens.push_back(std::move(col));
        }
      }
    out.q.push_back(quotient_by(A.level(n - 1), gens));
    out.N.C.push_back(out.q.back().Q);
  }
  out.N.dmap.resize(1);
  for (int n = 1; n <= A.top + 1; ++n) {
    LinearMap total =
        LinearMap::zero(A.level(n - 1), A.level(n - 2));
    Scalar sign = Scalar::one(A.ring);
    for (int i = 0; i <= n - 1; ++i) {
      total = add(total, scale(sign, A.d(n - 1, i)));
      sign = -sign;
    }
    out.N.dmap.push_back(compose(
        out.q[static_cast<std::size_t>(n - 1)].proj,
        compose(total, out.q[static_cast<std::size_t>(n)].sect)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gamma~.

namespace {

std::string mask_tag(unsigned mask) {
  std::ostringstream os;
  os << "I" << mask;
  return os.str();
}

}  // namespace

GammaModule gamma_augmented_full(const ChainComplex& C, int top) {
  GammaModule G;
  G.A.ring = C.ring;
  G.A.top = top;
  G.ambient.resize(static_cast<std::size_t>(top) + 2);
  G.offset.resize(static_cast<std::size_t>(top) + 2);

  // Per level: solve the simplex conditions inside (+)_{I <= [n]} C_{|I|}.
  std::vector<std::vector<Vec>> bases(static_cast<std::size_t>(top) + 2);
  for (int n = -1; n <= top; ++n) {
    const std::size_t un = static_cast<std::size_t>(n + 1);
    const unsigned nmask = n < 0 ? 1u : (1u << (n + 1));
    std::vector<std::pair<std::string, FreeModule>> parts;
    G.offset[un].assign(nmask, 0);
    for (unsigned m = 0; m < nmask; ++m) {
      G.offset[un][m] = fm_offset(parts, parts.size());
      parts.push_back({mask_tag(m), C.at(popcount(m))});
    }
    const FreeModule amb = fm_direct_sum(parts);
    // Conditions: one block per nonempty subset I.
    std::vector<std::pair<std::string, FreeModule>> cparts;
    for (unsigned m = 1; m < nmask; ++m)
      cparts.push_back({mask_tag(m), C.at(popcount(m) - 1)});
    LinearMap cond = cparts.empty()
                         ? LinearMap(amb, FreeModule(C.ring, {}))
                         : LinearMap(amb, fm_direct_sum(cparts));
    if (!cparts.empty()) {
      std::size_t roff = 0;
      for (unsigned m = 1; m < nmask; ++m) {
        const int p = popcount(m);
        // d(a_I) block.
        if (p >= 1 && p <= C.D) {
          const LinearMap& dd = C.d(p);
          for (std::size_t r = 0; r < dd.codomain.rank(); ++r)
            for (std::size_t c = 0; c < dd.domain.rank(); ++c)
              cond.at(roff + r, G.offset[un][m] + c) = dd.at(r, c);
        }
        // - sum_j (-1)^j a_{I minus j-th member}.
        const std::vector<int> mem = mask_members(m);
        Scalar sign = Scalar::one(C.ring);
        for (std::size_t j = 0; j < mem.size(); ++j) {
          const unsigned m2 = m & ~(1u << mem[j]);
          const std::size_t rk = C.at(p - 1).rank();
          for (std::size_t r = 0; r < rk; ++r)
            cond.at(roff + r, G.offset[un][m2] + r) -= sign;
          sign = -sign;
        }
        roff += C.at(p - 1).rank();
      }
    }
    bases[un] = kernel_basis(cond);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < bases[un].size(); ++i)
      labels.push_back("g" + std::to_string(i));
    G.A.A.push_back(FreeModule(C.ring, std::move(labels)));
    LinearMap incl(G.A.A.back(), amb);
    for (std::size_t c = 0; c < bases[un].size(); ++c)
      for (std::size_t r = 0; r < amb.rank(); ++r)
        incl.at(r, c) = bases[un][c][r];
    G.ambient[un] = std::move(incl);
  }

  // Action of an augmented morphism f: [m] -> [n] (values f(0..m)).
  auto act = [&](int nn, int mm, const std::vector<int>& values) {
    const std::size_t un = static_cast<std::size_t>(nn + 1);
    const std::size_t um = static_cast<std::size_t>(mm + 1);
    LinearMap out(G.A.level(nn), G.A.level(mm));
    const unsigned mmask = mm < 0 ? 1u : (1u << (mm + 1));
    for (std::size_t c = 0; c < G.A.level(nn).rank(); ++c) {
      const Vec& a = bases[un][c];
      Vec b(G.ambient[um].codomain.rank(), Scalar::zero(C.ring));
      for (unsigned J = 0; J < mmask; ++J) {
        // f(J) and injectivity of f on J.
        unsigned fJ = 0;
        bool inj = true;
        int prev = -1;
        for (int i = 0; i <= mm; ++i)
          if (J & (1u << i)) {
            if (values[static_cast<std::size_t>(i)] == prev) {
              inj = false;
              break;
            }
            prev = values[static_cast<std::size_t>(i)];
            fJ |= 1u << prev;
          }
        if (!inj) continue;
        const std::size_t rk = C.at(popcount(J)).rank();
        for (std::size_t r = 0; r < rk; ++r)
          b[G.offset[um][J] + r] = a[G.offset[un][fJ] + r];
      }
      std::optional<Vec> coords = solve_affine(G.ambient[um], b);
      if (!coords)
        throw contract_error("gamma_augmented: action leaves the level");
      for (std::size_t r = 0; r < coords->size(); ++r)
        out.at(r, c) = (*coords)[r];
    }
    return out;
  };

  for (int n = 0; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      // delta_i : [n-1] -> [n].
      std::vector<int> dv;
      for (int t = 0; t <= n - 1; ++t) dv.push_back(t >= i ? t + 1 : t);
      G.A.faces.emplace(std::make_pair(n, i), act(n, n - 1, dv));
      if (n < top) {
        // sigma_i : [n+1] -> [n].
        std::vector<int> sv;
        for (int t = 0; t <= n + 1; ++t) sv.push_back(t > i ? t - 1 : t);
        G.A.degens.emplace(std::make_pair(n, i), act(n, n + 1, sv));
      }
    }
  return G;
}

PlainAugModule gamma_augmented(const ChainComplex& C, int top) {
  return gamma_augmented_full(C, top).A;
}

Vec gamma_component(const GammaModule& G, const ChainComplex& C, int n,
                    unsigned mask, const Vec& a) {
  const std::size_t un = static_cast<std::size_t>(n + 1);
  const Vec amb = G.ambient[un].apply(a);
  const std::size_t rk = C.at(popcount(mask)).rank();
  Vec out(rk, Scalar::zero(C.ring));
  for (std::size_t r = 0; r < rk; ++r)
    out[r] = amb[G.offset[un][mask] + r];
  return out;
}

Vec gamma_assemble(const GammaModule& G, const ChainComplex& C, int n,
                   const std::vector<Vec>& per_mask) {
  const std::size_t un = static_cast<std::size_t>(n + 1);
  Vec amb(G.ambient[un].codomain.rank(), Scalar::zero(C.ring));
  for (std::size_t m = 0; m < per_mask.size(); ++m)
    for (std::size_t r = 0; r < per_mask[m].size(); ++r)
      amb[G.offset[un][m] + r] = per_mask[m][r];
  std::optional<Vec> coords = solve_affine(G.ambient[un], amb);
  if (!coords)
    throw contract_error(
        "gamma_assemble: family violates the simplex conditions");
  return *coords;
}

std::vector<LinearMap> dold_kan_unit(const PlainAugModule& A,
                                     const NormalizedResult& N,
                                     const GammaModule& G) {
  std::vector<LinearMap> out;
  for (int n = -1; n <= A.top; ++n) {
    const std::size_t un = static_cast<std::size_t>(n + 1);
    const unsigned nmask = n < 0 ? 1u : (1u << (n + 1));
    LinearMap eta(A.level(n), G.A.level(n));
    for (std::size_t c = 0; c < A.level(n).rank(); ++c) {
      std::vector<Vec> per_mask;
      for (unsigned m = 0; m < nmask; ++m) {
        // A(i_I)(e_c) where i_I : [|I|-1] -> [n] includes the subset, then
        // project to the normalized quotient in degree |I|.
        const std::vector<int> mem = mask_members(m);
        Vec v = A.level(n).basis_vec(c);
        // Peel the values not in the image, from the top down.
        int cur = n;
        std::vector<bool> keep(static_cast<std::size_t>(n + 1) + 1, false);
        for (int t : mem) keep[static_cast<std::size_t>(t)] = true;
        for (int j = n; j >= 0; --j)
          if (!keep[static_cast<std::size_t>(j)]) {
            v = A.d(cur, j).apply(v);
            --cur;
          }
        per_mask.push_back(
            N.q[static_cast<std::size_t>(popcount(m))].proj.apply(v));
      }
      const Vec coords = gamma_assemble(G, N.N, n, per_mask);
      for (std::size_t r = 0; r < coords.size(); ++r) eta.at(r, c) = coords[r];
    }
    out.push_back(std::move(eta));
  }
  return out;
}

std::vector<LinearMap> dold_kan_counit(const ChainComplex& C,
                                       const GammaModule& G,
                                       const NormalizedResult& N) {
  std::vector<LinearMap> out;
  for (int n = 0; n <= C.D; ++n) {
    const unsigned full = n == 0 ? 0u : ((1u << n) - 1u);
    LinearMap eps(N.N.at(n), C.at(n));
    for (std::size_t c = 0; c < N.N.at(n).rank(); ++c) {
      const Vec rep =
          N.q[static_cast<std::size_t>(n)].sect.apply(N.N.at(n).basis_vec(c));
      const Vec comp = gamma_component(G, C, n - 1, full, rep);
      for (std::size_t r = 0; r < comp.size(); ++r) eps.at(r, c) = comp[r];
    }
    out.push_back(std::move(eps));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The join tensor.

namespace {

std::string join_tag(int k, int l) {
  return std::to_string(k) + "," + std::to_string(l);
}

std::vector<std::pair<std::string, FreeModule>> join_parts(
    const PlainAugModule& A, const PlainAugModule& B, int n) {
  std::vector<std::pair<std::string, FreeModule>> parts;
  for (int k = -1; k <= n; ++k) {
    const int l = n - k - 1;
    if (k > A.top || l < -1 || l > B.top) continue;
    parts.push_back({join_tag(k, l), tensor_module(A.level(k), B.level(l))});
  }
  return parts;
}

}  // namespace

PlainAugModule join_tensor(const PlainAugModule& A, const PlainAugModule& B) {
  if (A.ring != B.ring) throw contract_error("join_tensor: ring mismatch");
  PlainAugModule out;
  out.ring = A.ring;
  // Truncate where every structure map of the join is still computable from
  // the truncated inputs (a degeneracy out of level n needs s at level n of
  // one factor).
  out.top = std::min(A.top, B.top);
  std::vector<std::vector<std::pair<std::string, FreeModule>>> parts;
  for (int n = -1; n <= out.top; ++n) {
    parts.push_back(join_parts(A, B, n));
    out.A.push_back(fm_direct_sum(parts.back()));
  }
  auto pidx = [&](int n, int k) {
    const auto& pn = parts[static_cast<std::size_t>(n + 1)];
    const std::string tag = join_tag(k, n - k - 1);
    for (std::size_t i = 0; i < pn.size(); ++i)
      if (pn[i].first == tag) return i;
    throw contract_error("join_tensor: missing summand");
  };
  for (int n = 0; n <= out.top; ++n)
    for (int i = 0; i <= n; ++i) {
      const auto& pn = parts[static_cast<std::size_t>(n + 1)];
      LinearMap dmap = LinearMap::zero(out.level(n), out.level(n - 1));
      LinearMap smap = n < out.top
                           ? LinearMap::zero(out.level(n), out.level(n + 1))
                           : LinearMap();
      for (std::size_t pi = 0; pi < pn.size(); ++pi) {
        int k = std::stoi(pn[pi].first.substr(0, pn[pi].first.find(',')));
        const int l = n - k - 1;
        const LinearMap pr = fm_projection(pn, pi);
        // Face.
        const LinearMap dcomp =
            i <= k ? tensor_map(A.d(k, i), LinearMap::identity(B.level(l)))
                   : tensor_map(LinearMap::identity(A.level(k)),
                                B.d(l, i - k - 1));
        const int kk = i <= k ? k - 1 : k;
        dmap = add(dmap,
                   compose(fm_injection(parts[static_cast<std::size_t>(n)],
                                        pidx(n - 1, kk)),
                           compose(dcomp, pr)));
        // Degeneracy.
        if (n < out.top) {
          const LinearMap scomp =
              i <= k ? tensor_map(A.s(k, i), LinearMap::identity(B.level(l)))
                     : tensor_map(LinearMap::identity(A.level(k)),
                                  B.s(l, i - k - 1));
          const int k2 = i <= k ? k + 1 : k;
          smap = add(smap,
                     compose(fm_injection(parts[static_cast<std::size_t>(n + 2)],
                                          pidx(n + 1, k2)),
                             compose(scomp, pr)));
        }
      }
      out.faces.emplace(std::make_pair(n, i), std::move(dmap));
      if (n < out.top) out.degens.emplace(std::make_pair(n, i), std::move(smap));
    }
  return out;
}

PlainAugModule join_unit(const Ring& k, int top) {
  PlainAugModule out;
  out.ring = k;
  out.top = top;
  out.A.push_back(FreeModule(k, {"1"}));
  for (int n = 0; n <= top; ++n) out.A.push_back(FreeModule(k, {}));
  for (int n = 0; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      out.faces.emplace(std::make_pair(n, i),
                        LinearMap(out.level(n), out.level(n - 1)));
      if (n < top)
        out.degens.emplace(std::make_pair(n, i),
                           LinearMap(out.level(n), out.level(n + 1)));
    }
  return out;
}

std::vector<LinearMap> monoidal_iso_N(const PlainAugModule& A,
                                      const PlainAugModule& B) {
  const PlainAugModule AB = join_tensor(A, B);
  const NormalizedResult NAB = normalized_augmented(AB);
  const NormalizedResult NA = normalized_augmented(A);
  const NormalizedResult NB = normalized_augmented(B);
  std::vector<LinearMap> out;
  for (int n = 0; n <= AB.top + 1; ++n) {
    std::vector<std::pair<std::string, FreeModule>> tparts;
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      if (p > A.top + 1 || q > B.top + 1) continue;
      tparts.push_back({join_tag(p, q),
                        tensor_module(NA.N.at(p), NB.N.at(q))});
    }
    const auto jparts = join_parts(A, B, n - 1);
    LinearMap iso = LinearMap::zero(NAB.N.at(n), fm_direct_sum(tparts));
    for (std::size_t pi = 0; pi < jparts.size(); ++pi) {
      int k = std::stoi(jparts[pi].first.substr(0, jparts[pi].first.find(',')));
      const int l = n - 1 - k - 1;
      const int p = k + 1, q = l + 1;
      const std::string tag = join_tag(p, q);
      std::size_t ti = tparts.size();
      for (std::size_t i = 0; i < tparts.size(); ++i)
        if (tparts[i].first == tag) ti = i;
      if (ti == tparts.size())
        throw contract_error("monoidal_iso_N: missing target summand");
      iso = add(iso,
                compose(fm_injection(tparts, ti),
                        compose(tensor_map(NA.q[static_cast<std::size_t>(p)].proj,
                                           NB.q[static_cast<std::size_t>(q)].proj),
                                compose(fm_projection(jparts, pi),
                                        NAB.q[static_cast<std::size_t>(n)].sect))));
    }
    out.push_back(std::move(iso));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated dg-categories.

const LinearMap& DGCategory::m(std::size_t x, std::size_t y, std::size_t z,
                               int s, int t) const {
  auto it = comp.find({x, y, z});
  if (it == comp.end())
    throw contract_error("DGCategory: no composition for this triple");
  auto jt = it->second.find({s, t});
  if (jt == it->second.end())
    throw contract_error("DGCategory: no composition in degrees (" +
                         std::to_string(s) + "," + std::to_string(t) + ")");
  return jt->second;
}

CheckReport check_dg(const DGCategory& C) {
  const std::size_t no = C.objects.size();
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y) {
      const CheckReport r = check_chain(C.hom[x][y]);
      if (!r.ok) return CheckReport::fail("hom complex: " + r.witness);
    }
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      for (std::size_t z = 0; z < no; ++z)
        for (int s = 0; s <= C.D; ++s)
          for (int t = 0; s + t <= C.D; ++t) {
            const LinearMap& m = C.m(x, y, z, s, t);
            if (m.domain !=
                    tensor_module(C.hom[x][y].at(s), C.hom[y][z].at(t)) ||
                m.codomain != C.hom[x][z].at(s + t))
              return CheckReport::fail("composition has wrong shape");
            if (s + t >= 1) {
              // Leibniz: d m(f,g) = m(f, dg) + (-1)^t m(df, g).
              LinearMap rhs = LinearMap::zero(m.domain, C.hom[x][z].at(s + t - 1));
              if (t >= 1)
                rhs = add(rhs, compose(C.m(x, y, z, s, t - 1),
                                       tensor_map(LinearMap::identity(
                                                      C.hom[x][y].at(s)),
                                                  C.hom[y][z].d(t))));
              if (s >= 1) {
                const LinearMap term = compose(
                    C.m(x, y, z, s - 1, t),
                    tensor_map(C.hom[x][y].d(s),
                               LinearMap::identity(C.hom[y][z].at(t))));
                rhs = t % 2 == 0 ? add(rhs, term) : sub(rhs, term);
              }
              if (!(compose(C.hom[x][z].d(s + t), m) == rhs))
                return CheckReport::fail("Leibniz rule fails at (" +
                                         std::to_string(s) + "," +
                                         std::to_string(t) + ")");
            }
          }
  // Associativity: m(m(f,g),h) = m(f,m(g,h)).
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      for (std::size_t z = 0; z < no; ++z)
        for (std::size_t w = 0; w < no; ++w)
          for (int s = 0; s <= C.D; ++s)
            for (int t = 0; s + t <= C.D; ++t)
              for (int u = 0; s + t + u <= C.D; ++u) {
                const FreeModule& Fs = C.hom[x][y].at(s);
                const FreeModule& Ft = C.hom[y][z].at(t);
                const FreeModule& Fu = C.hom[z][w].at(u);
                if (Fs.rank() * Ft.rank() * Fu.rank() == 0) continue;
                // Elementwise over basis triples (exact, small ranks).
                for (std::size_t a = 0; a < Fs.rank(); ++a)
                  for (std::size_t b = 0; b < Ft.rank(); ++b)
                    for (std::size_t cc = 0; cc < Fu.rank(); ++cc) {
                      const Vec f = Fs.basis_vec(a), g = Ft.basis_vec(b),
                                h = Fu.basis_vec(cc);
                      const Vec lhs = dg_compose(
                          C, x, z, w, s + t, u,
                          dg_compose(C, x, y, z, s, t, f, g), h);
                      const Vec rhs = dg_compose(
                          C, x, y, w, s, t + u, f,
                          dg_compose(C, y, z, w, t, u, g, h));
                      if (!(lhs == rhs))
                        return CheckReport::fail("composition not associative");
                    }
              }
  // Units.
  if (C.id.size() != no) return CheckReport::fail("missing identities");
  for (std::size_t x = 0; x < no; ++x) {
    for (std::size_t y = 0; y < no; ++y)
      for (int t = 0; t <= C.D; ++t) {
        const FreeModule& F = C.hom[x][y].at(t);
        for (std::size_t b = 0; b < F.rank(); ++b) {
          const Vec g = F.basis_vec(b);
          if (!(dg_compose(C, x, x, y, 0, t, C.id[x], g) == g))
            return CheckReport::fail("left unit law fails");
          if (!(dg_compose(C, x, y, y, t, 0, g, C.id[y]) == g))
            return CheckReport::fail("right unit law fails");
        }
      }
  }
  return CheckReport::pass();
}

Vec dg_compose(const DGCategory& C, std::size_t x, std::size_t y,
               std::size_t z, int s, int t, const Vec& f, const Vec& g) {
  return C.m(x, y, z, s, t).apply(tensor_vec(f, g));
}

// ---------------------------------------------------------------------------
// The enrichment Gamma~(C)^#.

EnrichedGamma dg_enrich_gamma(const DGCategory& C, int D) {
  EnrichedGamma out;
  NarrowSimplicialModule& A = out.A;
  A.ring = C.ring;
  A.base = C.objects;
  A.D = D;
  const std::size_t no = C.objects.size();
  out.gam.resize(no, std::vector<GammaModule>(no));
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      out.gam[x][y] = gamma_augmented_full(C.hom[x][y], D - 2);

  // Narrow level n = aug level n-2 of each hom; entry (x,y) as a quiver.
  A.A.resize(1, Quiver(C.ring, A.base));
  for (int n = 1; n <= D; ++n) {
    Quiver q(C.ring, A.base);
    for (std::size_t x = 0; x < no; ++x)
      for (std::size_t y = 0; y < no; ++y)
        q.set_entry(x, y, out.gam[x][y].A.level(n - 2));
    A.A.push_back(std::move(q));
  }
  auto entrywise = [&](int n, int target, bool face, int i) {
    QuiverMap f(A.A[static_cast<std::size_t>(n)],
                A.A[static_cast<std::size_t>(target)]);
    for (std::size_t x = 0; x < no; ++x)
      for (std::size_t y = 0; y < no; ++y)
        f.set(x, y, face ? out.gam[x][y].A.d(n - 2, i)
                         : out.gam[x][y].A.s(n - 2, i));
    return f;
  };
  for (int n = 1; n <= D; ++n) {
    for (int j = 1; j < n; ++j)
      A.faces.emplace(std::make_pair(n, j), entrywise(n, n - 1, true, j - 1));
    if (n < D)
      for (int i = 1; i < n; ++i)
        A.degens.emplace(std::make_pair(n, i),
                         entrywise(n, n + 1, false, i - 1));
  }

  // The composition m~ and the unit.
  A.has_monoid = true;
  const Quiver unit = unit_quiver(C.ring, A.base);
  A.u = QuiverMap(unit, A.A[1]);
  for (std::size_t x = 0; x < no; ++x) {
    // Level -1 of Gamma~(hom(x,x)) is C_0(x,x); the identity includes there.
    const Vec coords =
        gamma_assemble(out.gam[x][x], C.hom[x][x], -1, {C.id[x]});
    LinearMap u(unit.entry(x, x), A.A[1].entry(x, x));
    for (std::size_t r = 0; r < coords.size(); ++r) u.at(r, 0) = coords[r];
    A.u.set(x, x, std::move(u));
  }
  for (int p = 1; p <= D; ++p)
    for (int q = 1; p + q - 1 <= D; ++q) {
      const Quiver src = tensor_S(A.A[static_cast<std::size_t>(p)],
                                  A.A[static_cast<std::size_t>(q)]);
      QuiverMap mpq(src, A.A[static_cast<std::size_t>(p + q - 1)]);
      const int ap = p - 2, aq = q - 2;  // aug levels
      for (std::size_t x = 0; x < no; ++x)
        for (std::size_t z = 0; z < no; ++z) {
          const FreeModule dom = src.entry(x, z);
          const FreeModule cod =
              A.A[static_cast<std::size_t>(p + q - 1)].entry(x, z);
          if (dom.rank() == 0) continue;
          LinearMap comp(dom, cod);
          std::size_t col = 0;
          for (std::size_t y = 0; y < no; ++y) {
            const FreeModule& L =
                A.A[static_cast<std::size_t>(p)].entry(x, y);
            const FreeModule& R =
                A.A[static_cast<std::size_t>(q)].entry(y, z);
            for (std::size_t a = 0; a < L.rank(); ++a)
              for (std::size_t b = 0; b < R.rank(); ++b, ++col) {
                // m~((a_I) (x) (b_I))_J = m(a_{J1} (x) b_{J2}).
                const unsigned nmask = 1u << (ap + aq + 2);
                std::vector<Vec> per_mask;
                for (unsigned J = 0; J < nmask; ++J) {
                  const unsigned J1 = J & ((ap >= 0) ? ((1u << (ap + 1)) - 1u)
                                                     : 0u);
                  const unsigned J2 = J >> (ap + 1);
                  const int s = popcount(J1), t = popcount(J2);
                  const Vec av = gamma_component(out.gam[x][y], C.hom[x][y],
                                                 ap, J1, L.basis_vec(a));
                  const Vec bv = gamma_component(out.gam[y][z], C.hom[y][z],
                                                 aq, J2, R.basis_vec(b));
                  // Beyond the dg-truncation the target module is zero.
                  per_mask.push_back(s + t > C.D
                                         ? C.hom[x][z].at(s + t).zero_vec()
                                         : dg_compose(C, x, y, z, s, t, av,
                                                      bv));
                }
                const Vec coords = gamma_assemble(
                    out.gam[x][z], C.hom[x][z], ap + aq + 1, per_mask);
                for (std::size_t r = 0; r < coords.size(); ++r)
                  comp.at(r, col) = coords[r];
              }
          }
          mpq.set(x, z, std::move(comp));
        }
      A.m.emplace(std::make_pair(p, q), std::move(mpq));
    }
  return out;
}

PlainAugModule hom_aug(const NarrowSimplicialModule& A, std::size_t x,
                       std::size_t y) {
  PlainAugModule out;
  out.ring = A.ring;
  out.top = A.D - 2;
  for (int n = 1; n <= A.D; ++n)
    out.A.push_back(A.A[static_cast<std::size_t>(n)].entry(x, y));
  for (const auto& [nj, f] : A.faces)
    out.faces.emplace(std::make_pair(nj.first - 2, nj.second - 1),
                      f.at(x, y));
  for (const auto& [ni, f] : A.degens)
    out.degens.emplace(std::make_pair(ni.first - 2, ni.second - 1),
                       f.at(x, y));
  return out;
}

}  // namespace templike
