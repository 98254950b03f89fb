#include "templike/tensorfrob.hpp"

#include <algorithm>
#include <sstream>

namespace templike {

namespace {

std::string pq_str(int p, int q) {
  std::ostringstream os;
  os << "(" << p << "," << q << ")";
  return os.str();
}

// Subtracts the start offset so the partition is based at 0.
Partition rebase(const Partition& I) {
  std::vector<int> ms;
  ms.reserve(I.members.size());
  for (int v : I.members) ms.push_back(v - I.start);
  return Partition(I.n, std::move(ms), 0);
}

// The gap sizes of a partition, in order.
std::vector<int> part_sizes(const Partition& I) {
  std::vector<int> out;
  for (std::size_t i = 1; i < I.members.size(); ++i)
    out.push_back(I.members[i] - I.members[i - 1]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nested tensors.

Quiver nested_tensor(const std::vector<Quiver>& qs, const Quiver& unit) {
  if (qs.empty()) return unit;
  Quiver out = qs.back();
  for (std::size_t i = qs.size() - 1; i-- > 0;) out = tensor_S(qs[i], out);
  return out;
}

QuiverMap nested_tensor_map(const std::vector<QuiverMap>& fs,
                            const Quiver& unit) {
  if (fs.empty()) return QuiverMap::identity(unit);
  QuiverMap out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = tensor_S(fs[i], out);
  return out;
}

QuiverMap nested_split_at(const std::vector<Quiver>& qs, std::size_t k) {
  if (k == 0 || k >= qs.size())
    throw contract_error("nested_split_at: split position out of range");
  if (k == 1) {
    // nested(qs) is literally qs[0] (x) nested(rest).
    Quiver whole = nested_tensor(qs, Quiver());
    return QuiverMap::identity(whole);
  }
  const std::vector<Quiver> tail(qs.begin() + 1, qs.end());
  const std::vector<Quiver> left(qs.begin() + 1, qs.begin() + static_cast<std::ptrdiff_t>(k));
  const std::vector<Quiver> right(qs.begin() + static_cast<std::ptrdiff_t>(k), qs.end());
  // qs[0] (x) nested(tail) -> qs[0] (x) (nested(left) (x) nested(right))
  const QuiverMap inner =
      tensor_S(QuiverMap::identity(qs[0]), nested_split_at(tail, k - 1));
  // -> (qs[0] (x) nested(left)) (x) nested(right), and the first factor is
  // nested(qs[0..k)) by right-nesting.
  const QuiverMap assoc_inv = inverse_map(associator(
      qs[0], nested_tensor(left, Quiver()), nested_tensor(right, Quiver())));
  return compose(assoc_inv, inner);
}

QuiverMap nested_regroup(const std::vector<Quiver>& qs,
                         const std::vector<std::size_t>& blocks,
                         const Quiver& unit) {
  std::size_t total = 0;
  for (std::size_t b : blocks) total += b;
  if (total != qs.size())
    throw contract_error("nested_regroup: block sizes do not sum up");
  if (blocks.empty()) return QuiverMap::identity(unit);
  if (blocks.size() == 1)
    return QuiverMap::identity(nested_tensor(qs, unit));
  const std::vector<std::size_t> rest_blocks(blocks.begin() + 1, blocks.end());
  if (blocks[0] == 0) {
    const QuiverMap rest = nested_regroup(qs, rest_blocks, unit);
    return compose(tensor_S(QuiverMap::identity(unit), rest),
                   left_unitor_inv(nested_tensor(qs, unit)));
  }
  if (blocks[0] == qs.size()) {
    // All remaining blocks are empty; handled by peeling them off the right
    // via the zero-block case on a reversed view is awkward, so do it here:
    // nested(qs) -> nested(qs) (x) unit (x) ... by right unitors.
    QuiverMap acc = QuiverMap::identity(nested_tensor(qs, unit));
    // Build from the innermost empty block outwards.
    Quiver target = unit;
    for (std::size_t i = rest_blocks.size(); i-- > 1;)
      target = tensor_S(unit, target);
    if (rest_blocks.empty()) return acc;
    // nested(qs) (x) nested-of-units; insert via right_unitor_inv chain.
    // nested([B1]) with trailing unit blocks: B1 (x) (unit (x) (... unit)).
    QuiverMap step = right_unitor_inv(nested_tensor(qs, unit));
    // step : nested(qs) -> nested(qs) (x) I; now expand I -> nested units.
    if (rest_blocks.size() > 1) {
      QuiverMap expand = QuiverMap::identity(unit);
      Quiver cur = unit;
      for (std::size_t i = 1; i < rest_blocks.size(); ++i) {
        expand = compose(tensor_S(QuiverMap::identity(unit), expand),
                         left_unitor_inv(cur));
        cur = tensor_S(unit, cur);
      }
      step = compose(tensor_S(QuiverMap::identity(nested_tensor(qs, unit)),
                              expand),
                     step);
    }
    return step;
  }
  const QuiverMap split = nested_split_at(qs, blocks[0]);
  const std::vector<Quiver> head(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(blocks[0]));
  const std::vector<Quiver> rest(qs.begin() + static_cast<std::ptrdiff_t>(blocks[0]), qs.end());
  return compose(tensor_S(QuiverMap::identity(nested_tensor(head, unit)),
                          nested_regroup(rest, rest_blocks, unit)),
                 split);
}

// ---------------------------------------------------------------------------
// Graded level.

const Quiver& GradedQuiver::at(int n) const {
  if (n < 1 || n > D) throw contract_error("GradedQuiver: degree out of range");
  return V[static_cast<std::size_t>(n)];
}

CheckReport check_graded(const GradedQuiver& V) {
  if (static_cast<int>(V.V.size()) != V.D + 1)
    return CheckReport::fail("graded quiver has wrong number of levels");
  for (int n = 1; n <= V.D; ++n) {
    if (V.at(n).ring != V.ring)
      return CheckReport::fail("degree " + std::to_string(n) + " has wrong ring");
    if (V.at(n).vertices != V.base)
      return CheckReport::fail("degree " + std::to_string(n) + " has wrong base");
  }
  return CheckReport::pass();
}

const QuiverMap& GradedBimonoid::comult(int k, int l) const {
  auto it = mu.find({k, l});
  if (it == mu.end())
    throw contract_error("graded bimonoid has no mu" + pq_str(k, l));
  return it->second;
}

const QuiverMap& GradedBimonoid::mult(int p, int q) const {
  auto it = Z.find({p, q});
  if (it == Z.end())
    throw contract_error("graded bimonoid has no Z" + pq_str(p, q));
  return it->second;
}

GradedBimonoid graded_of(const NaFStructure& X) {
  GradedBimonoid B;
  B.ring = X.host.ring;
  B.base = X.host.base;
  B.D = X.host.D;
  B.X = X.host.X;
  B.eps = X.host.counit;
  B.mu = X.host.comult;
  B.Z = X.Z;
  return B;
}

QuiverMap graded_mu(const GradedBimonoid& B, int k, int l) {
  if (k >= 1 && l >= 1) return B.comult(k, l);
  const Quiver& Xn = B.X[static_cast<std::size_t>(k + l)];
  if (k == 0)
    return compose(tensor_S(inverse_map(B.eps), QuiverMap::identity(Xn)),
                   left_unitor_inv(Xn));
  return compose(tensor_S(QuiverMap::identity(Xn), inverse_map(B.eps)),
                 right_unitor_inv(Xn));
}

QuiverMap graded_z(const GradedBimonoid& B, int p, int q) {
  if (p >= 1 && q >= 1) return B.mult(p, q);
  const Quiver& Xn = B.X[static_cast<std::size_t>(p + q)];
  if (p == 0)
    return compose(left_unitor(Xn),
                   tensor_S(B.eps, QuiverMap::identity(Xn)));
  return compose(right_unitor(Xn),
                 tensor_S(QuiverMap::identity(Xn), B.eps));
}

Quiver graded_nested(const GradedBimonoid& B, const FIntMorphism& f) {
  std::vector<Quiver> qs;
  for (int i = 1; i <= f.m; ++i)
    qs.push_back(B.X[static_cast<std::size_t>(f(i) - f(i - 1))]);
  return nested_tensor(qs, unit_quiver(B.ring, B.base));
}

QuiverMap graded_mu_composite(const GradedBimonoid& B, const FIntMorphism& f) {
  const int n = f.n;
  if (f.m == 0) return B.eps;
  if (f.m == 1) return QuiverMap::identity(B.X[static_cast<std::size_t>(n)]);
  const int p1 = f(1);
  std::vector<int> vals;
  for (int i = 1; i <= f.m; ++i) vals.push_back(f(i) - p1);
  const FIntMorphism rest(f.m - 1, n - p1, std::move(vals));
  return compose(
      tensor_S(QuiverMap::identity(B.X[static_cast<std::size_t>(p1)]),
               graded_mu_composite(B, rest)),
      B.comult(p1, n - p1));
}

QuiverMap graded_z_composite(const GradedBimonoid& B, const FIntMorphism& f) {
  const int n = f.n;
  if (f.m == 0) return inverse_map(B.eps);
  if (f.m == 1) return QuiverMap::identity(B.X[static_cast<std::size_t>(n)]);
  const int p1 = f(1);
  std::vector<int> vals;
  for (int i = 1; i <= f.m; ++i) vals.push_back(f(i) - p1);
  const FIntMorphism rest(f.m - 1, n - p1, std::move(vals));
  return compose(
      B.mult(p1, n - p1),
      tensor_S(QuiverMap::identity(B.X[static_cast<std::size_t>(p1)]),
               graded_z_composite(B, rest)));
}

CheckReport check_graded_mu_z(const GradedBimonoid& B) {
  const int D = B.D;
  auto Xq = [&](int i) -> const Quiver& {
    return B.X[static_cast<std::size_t>(i)];
  };
  // Exchange laws, zero indices included.
  for (int n = 0; n <= D; ++n)
    for (int k = 0; k <= n; ++k)
      for (int p = 0; p <= n; ++p) {
        const int l = n - k, q = n - p;
        const QuiverMap lhs = compose(graded_mu(B, k, l), graded_z(B, p, q));
        const std::string tag = "graded mu-Z exchange fails at (p,q,k,l)=(" +
                                std::to_string(p) + "," + std::to_string(q) +
                                "," + std::to_string(k) + "," +
                                std::to_string(l) + ")";
        if (p == k &&
            lhs != QuiverMap::identity(tensor_S(Xq(k), Xq(l))))
          return CheckReport::fail(tag + ": mu Z != id");
        if (p <= k) {
          const QuiverMap rhs = compose(
              tensor_S(graded_z(B, p, k - p), QuiverMap::identity(Xq(l))),
              compose(inverse_map(associator(Xq(p), Xq(k - p), Xq(l))),
                      tensor_S(QuiverMap::identity(Xq(p)),
                               graded_mu(B, k - p, l))));
          if (lhs != rhs) return CheckReport::fail(tag);
        }
        if (p >= k) {
          const QuiverMap rhs = compose(
              tensor_S(QuiverMap::identity(Xq(k)), graded_z(B, p - k, q)),
              compose(associator(Xq(k), Xq(p - k), Xq(q)),
                      tensor_S(graded_mu(B, k, p - k),
                               QuiverMap::identity(Xq(q)))));
          if (lhs != rhs) return CheckReport::fail(tag);
        }
      }
  // Associativity of Z.
  for (int p = 1; p <= D; ++p)
    for (int q = 1; p + q <= D; ++q)
      for (int r = 1; p + q + r <= D; ++r) {
        const QuiverMap lhs = compose(
            B.mult(p + q, r),
            tensor_S(B.mult(p, q), QuiverMap::identity(Xq(r))));
        const QuiverMap rhs = compose(
            compose(B.mult(p, q + r),
                    tensor_S(QuiverMap::identity(Xq(p)), B.mult(q, r))),
            associator(Xq(p), Xq(q), Xq(r)));
        if (lhs != rhs)
          return CheckReport::fail("graded associativity fails at (p,q,r)=(" +
                                   std::to_string(p) + "," +
                                   std::to_string(q) + "," +
                                   std::to_string(r) + ")");
      }
  return CheckReport::pass();
}

std::pair<QuiverMap, QuiverMap> graded_frobenius_equation_sides(
    const GradedBimonoid& B, int n, int middle_sign) {
  auto Xq = [&](int i) -> const Quiver& {
    return B.X[static_cast<std::size_t>(i)];
  };
  // Sum2 = (+)_{p+q=n} X_p (x) X_q ; Sum3 = (+)_{r+s+t=n} X_r (x) (X_s (x) X_t).
  std::vector<std::pair<std::string, Quiver>> parts2;
  for (int p = 0; p <= n; ++p)
    parts2.push_back({std::to_string(p) + "|" + std::to_string(n - p),
                      tensor_S(Xq(p), Xq(n - p))});
  std::vector<std::pair<std::string, Quiver>> parts3;
  std::vector<std::array<int, 3>> triples;
  for (int r = 0; r <= n; ++r)
    for (int s = 0; r + s <= n; ++s) {
      const int t = n - r - s;
      triples.push_back({r, s, t});
      parts3.push_back({std::to_string(r) + "|" + std::to_string(s) + "|" +
                            std::to_string(t),
                        tensor_S(Xq(r), tensor_S(Xq(s), Xq(t)))});
    }
  const Quiver sum2 = direct_sum(parts2);
  const Quiver sum3 = direct_sum(parts3);
  auto i2 = [&](int p) { return direct_sum_injection(parts2, static_cast<std::size_t>(p)); };
  auto p2 = [&](int p) { return direct_sum_projection(parts2, static_cast<std::size_t>(p)); };
  auto idx3 = [&](int r, int s) {
    for (std::size_t i = 0; i < triples.size(); ++i)
      if (triples[i][0] == r && triples[i][1] == s) return i;
    throw contract_error("triple index");
  };
  auto i3 = [&](int r, int s) { return direct_sum_injection(parts3, idx3(r, s)); };
  auto p3 = [&](int r, int s) { return direct_sum_projection(parts3, idx3(r, s)); };

  // (mu)_n : X_n -> Sum2 and (Z)_n : Sum2 -> X_n.
  QuiverMap mu_n = QuiverMap::zero(Xq(n), sum2);
  QuiverMap z_n = QuiverMap::zero(sum2, Xq(n));
  for (int p = 0; p <= n; ++p) {
    mu_n = add(mu_n, compose(i2(p), graded_mu(B, p, n - p)));
    z_n = add(z_n, compose(graded_z(B, p, n - p), p2(p)));
  }
  const QuiverMap lhs = compose(mu_n, z_n);

  // (id (x) mu) : Sum2 -> Sum3 and (mu (x) id) : Sum2 -> Sum3.
  QuiverMap id_mu = QuiverMap::zero(sum2, sum3);
  QuiverMap mu_id = QuiverMap::zero(sum2, sum3);
  for (int p = 0; p <= n; ++p) {
    const int q = n - p;
    for (int s = 0; s <= q; ++s)
      id_mu = add(id_mu,
                  compose(i3(p, s),
                          compose(tensor_S(QuiverMap::identity(Xq(p)),
                                           graded_mu(B, s, q - s)),
                                  p2(p))));
    for (int r = 0; r <= p; ++r)
      mu_id = add(
          mu_id,
          compose(i3(r, p - r),
                  compose(associator(Xq(r), Xq(p - r), Xq(q)),
                          compose(tensor_S(graded_mu(B, r, p - r),
                                           QuiverMap::identity(Xq(q))),
                                  p2(p)))));
  }
  // (Z (x) id) : Sum3 -> Sum2 and (id (x) Z) : Sum3 -> Sum2.
  QuiverMap z_id = QuiverMap::zero(sum3, sum2);
  QuiverMap id_z = QuiverMap::zero(sum3, sum2);
  for (const auto& tr : triples) {
    const int r = tr[0], s = tr[1], t = tr[2];
    z_id = add(z_id,
               compose(i2(r + s),
                       compose(tensor_S(graded_z(B, r, s),
                                        QuiverMap::identity(Xq(t))),
                               compose(inverse_map(associator(Xq(r), Xq(s),
                                                              Xq(t))),
                                       p3(r, s)))));
    id_z = add(id_z,
               compose(i2(r),
                       compose(tensor_S(QuiverMap::identity(Xq(r)),
                                        graded_z(B, s, t)),
                               p3(r, s))));
  }
  QuiverMap rhs = add(compose(z_id, id_mu), compose(id_z, mu_id));
  const QuiverMap middle = QuiverMap::identity(sum2);
  rhs = middle_sign >= 0 ? add(rhs, middle) : sub(rhs, middle);
  return {lhs, rhs};
}

bool graded_frobenius_equation_check(const GradedBimonoid& B) {
  for (int n = 0; n <= B.D; ++n) {
    auto [lhs, rhs] = graded_frobenius_equation_sides(B, n, -1);
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partition sums and the free graded monoid.

std::size_t PartitionSum::index_of(const Partition& I) const {
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i] == I) return i;
  throw contract_error("partition_sum: unknown partition " + I.str());
}

PartitionSum partition_sum(const std::vector<Quiver>& levels,
                           const Quiver& unit, int n) {
  PartitionSum out;
  out.parts = enumerate_partitions(n);
  std::vector<std::pair<std::string, Quiver>> tagged;
  for (const Partition& I : out.parts) {
    std::vector<Quiver> qs;
    for (int sz : part_sizes(I)) qs.push_back(levels.at(static_cast<std::size_t>(sz)));
    out.summands.push_back(nested_tensor(qs, unit));
    tagged.push_back({I.str(), out.summands.back()});
  }
  out.total = direct_sum(tagged);
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    out.iota.push_back(direct_sum_injection(tagged, i));
    out.proj.push_back(direct_sum_projection(tagged, i));
  }
  return out;
}

GradedTensorAlgebra tensor_T_graded(const GradedQuiver& V) {
  CheckReport g = check_graded(V);
  if (!g.ok) throw contract_error("tensor_T_graded: " + g.witness);
  const Quiver unit = unit_quiver(V.ring, V.base);
  GradedTensorAlgebra T;
  T.B.ring = V.ring;
  T.B.base = V.base;
  T.B.D = V.D;
  for (int n = 0; n <= V.D; ++n) {
    T.sum.push_back(partition_sum(V.V, unit, n));
    T.B.X.push_back(T.sum.back().total);
  }
  // The counit: the single degree-0 summand is the unit quiver.
  {
    QuiverMap eps(T.B.X[0], unit);
    for (std::size_t a = 0; a < V.base.size(); ++a) {
      const FreeModule dom = T.B.X[0].entry(a, a);
      if (dom.rank() == 0) continue;
      LinearMap comp(dom, unit.entry(a, a));
      comp.at(0, 0) = Scalar::one(V.ring);
      eps.set(a, a, std::move(comp));
    }
    T.B.eps = eps;
  }
  // mu separates summands at partitions containing the cut; Z concatenates.
  for (int k = 1; k < V.D; ++k)
    for (int l = 1; k + l <= V.D; ++l) {
      const int n = k + l;
      const PartitionSum& Sn = T.sum[static_cast<std::size_t>(n)];
      const PartitionSum& Sk = T.sum[static_cast<std::size_t>(k)];
      const PartitionSum& Sl = T.sum[static_cast<std::size_t>(l)];
      QuiverMap mu_kl =
          QuiverMap::zero(Sn.total, tensor_S(Sk.total, Sl.total));
      QuiverMap z_kl =
          QuiverMap::zero(tensor_S(Sk.total, Sl.total), Sn.total);
      for (std::size_t ii = 0; ii < Sn.parts.size(); ++ii) {
        const Partition& I = Sn.parts[ii];
        if (!I.contains(k)) continue;
        std::vector<Quiver> qs;
        for (int sz : part_sizes(I)) qs.push_back(V.at(sz));
        const Partition left = I.truncate_le(k);
        const Partition right = rebase(I.truncate_ge(k));
        const std::size_t cut = static_cast<std::size_t>(left.length());
        const QuiverMap split = nested_split_at(qs, cut);
        const QuiverMap to_pair =
            tensor_S(Sk.iota[Sk.index_of(left)], Sl.iota[Sl.index_of(right)]);
        mu_kl = add(mu_kl, compose(to_pair, compose(split, Sn.proj[ii])));
        const QuiverMap from_pair = tensor_S(Sk.proj[Sk.index_of(left)],
                                             Sl.proj[Sl.index_of(right)]);
        z_kl = add(z_kl, compose(Sn.iota[ii],
                                 compose(inverse_map(split), from_pair)));
      }
      T.B.mu.emplace(std::make_pair(k, l), std::move(mu_kl));
      T.B.Z.emplace(std::make_pair(k, l), std::move(z_kl));
    }
  return T;
}

// ---------------------------------------------------------------------------
// Kernels.

GradedColax colax_of(const GradedBimonoid& B) {
  GradedColax C;
  C.ring = B.ring;
  C.base = B.base;
  C.D = B.D;
  C.X = B.X;
  C.mu = B.mu;
  return C;
}

GradedColax pushforward_graded(const VertexMap& f, const GradedColax& B) {
  GradedColax C;
  C.ring = B.ring;
  C.base = f.tgt;
  C.D = B.D;
  for (const Quiver& q : B.X) C.X.push_back(pushforward(f, q));
  for (const auto& [kl, mu] : B.mu) {
    const Quiver& Xk = B.X[static_cast<std::size_t>(kl.first)];
    const Quiver& Xl = B.X[static_cast<std::size_t>(kl.second)];
    C.mu.emplace(kl, compose(pushforward_colax(f, Xk, Xl),
                             pushforward(f, mu)));
  }
  return C;
}

KernelGraded kernel_graded(const GradedColax& B) {
  KernelGraded out;
  out.K.ring = B.ring;
  out.K.base = B.base;
  out.K.D = B.D;
  out.K.V.resize(static_cast<std::size_t>(B.D) + 1,
                 Quiver(B.ring, B.base));
  out.incl.resize(static_cast<std::size_t>(B.D) + 1);
  const std::size_t nv = B.base.size();
  for (int n = 1; n <= B.D; ++n) {
    const Quiver& Xn = B.X[static_cast<std::size_t>(n)];
    Quiver Kn(B.ring, B.base);
    QuiverMap incl(Kn, Xn);  // rebuilt below once Kn is known
    std::map<std::pair<std::size_t, std::size_t>, LinearMap> comps;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nv; ++b) {
        const FreeModule dom = Xn.entry(a, b);
        if (dom.rank() == 0) continue;
        // Stack the components of all mu_{k,n-k} with k, n-k >= 1.
        std::vector<std::string> rows;
        std::vector<Vec> mats;  // row-major rows
        for (int k = 1; k < n; ++k) {
          const LinearMap comp = B.mu.at({k, n - k}).at(a, b);
          for (std::size_t r = 0; r < comp.codomain.rank(); ++r) {
            rows.push_back(std::to_string(k) + "|" + comp.codomain.basis[r]);
            mats.push_back(comp.mat[r]);
          }
        }
        std::vector<Vec> basis;
        if (rows.empty()) {
          // No constraint (n = 1): the kernel is everything.
          for (std::size_t i = 0; i < dom.rank(); ++i)
            basis.push_back(dom.basis_vec(i));
        } else {
          LinearMap stacked(dom, FreeModule(B.ring, rows));
          stacked.mat = mats;
          basis = kernel_basis(stacked);
        }
        if (basis.empty()) continue;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < basis.size(); ++i)
          labels.push_back("k" + std::to_string(i));
        const FreeModule Kab(B.ring, labels);
        Kn.set_entry(a, b, Kab);
        LinearMap inc(Kab, dom);
        for (std::size_t r = 0; r < dom.rank(); ++r)
          for (std::size_t c = 0; c < basis.size(); ++c)
            inc.at(r, c) = basis[c][r];
        comps[{a, b}] = std::move(inc);
      }
    QuiverMap in(Kn, Xn);
    for (auto& [ab, lm] : comps) in.set(ab.first, ab.second, std::move(lm));
    out.K.V[static_cast<std::size_t>(n)] = Kn;
    out.incl[static_cast<std::size_t>(n)] = std::move(in);
  }
  return out;
}

QuiverMap factor_through(const QuiverMap& incl, const QuiverMap& g) {
  if (g.target != incl.target)
    throw contract_error("factor_through: codomain mismatch");
  QuiverMap h(g.source, incl.source);
  const std::size_t nv = g.source.vertices.size();
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      const LinearMap gc = g.at(a, b);
      if (gc.is_zero()) continue;
      const LinearMap ic = incl.at(a, b);
      LinearMap hc(gc.domain, ic.domain);
      for (std::size_t c = 0; c < gc.domain.rank(); ++c) {
        Vec col(gc.codomain.rank(), Scalar::zero(g.source.ring));
        for (std::size_t r = 0; r < col.size(); ++r) col[r] = gc.at(r, c);
        std::optional<Vec> sol = solve_affine(ic, col);
        if (!sol)
          throw contract_error(
              "factor_through: map does not factor through the inclusion");
        for (std::size_t r = 0; r < hc.codomain.rank(); ++r)
          hc.at(r, c) = (*sol)[r];
      }
      h.set(a, b, std::move(hc));
    }
  return h;
}

QuiverMap xi_endomorphism(const GradedBimonoid& B, int n) {
  if (n < 1) throw contract_error("xi_endomorphism: degree must be >= 1");
  const Quiver& Xn = B.X[static_cast<std::size_t>(n)];
  QuiverMap acc = QuiverMap::zero(Xn, Xn);
  for (const Partition& I : enumerate_partitions(n)) {
    const FIntMorphism f = I.as_injection();
    const QuiverMap term =
        compose(graded_z_composite(B, f), graded_mu_composite(B, f));
    acc = (I.length() % 2 == 1) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

QuiverMap xi_retraction(const GradedBimonoid& B, const KernelGraded& K,
                        int n) {
  return factor_through(K.incl[static_cast<std::size_t>(n)],
                        xi_endomorphism(B, n));
}

namespace {

// Right-nested tensor of the kernel inclusions over the parts of I.
QuiverMap nested_incl(const KernelGraded& K, const Partition& I,
                      const Quiver& unit) {
  std::vector<QuiverMap> fs;
  for (int sz : part_sizes(I))
    fs.push_back(K.incl[static_cast<std::size_t>(sz)]);
  return nested_tensor_map(fs, unit);
}

}  // namespace

GradedRoundTrip epsilon_phi_roundtrip(const GradedBimonoid& B) {
  GradedRoundTrip out;
  out.K = kernel_graded(B);
  out.TK = tensor_T_graded(out.K.K);
  const Quiver unit = unit_quiver(B.ring, B.base);
  std::vector<QuiverMap> xi;
  xi.resize(static_cast<std::size_t>(B.D) + 1);
  for (int p = 1; p <= B.D; ++p)
    xi[static_cast<std::size_t>(p)] = xi_retraction(B, out.K, p);

  for (int n = 0; n <= B.D; ++n) {
    const PartitionSum& S = out.TK.sum[static_cast<std::size_t>(n)];
    const Quiver& Xn = B.X[static_cast<std::size_t>(n)];
    if (n == 0) {
      out.eps.push_back(compose(inverse_map(B.eps), out.TK.B.eps));
      out.phi.push_back(compose(inverse_map(out.TK.B.eps), B.eps));
    } else {
      QuiverMap eps = QuiverMap::zero(S.total, Xn);
      QuiverMap phi = QuiverMap::zero(Xn, S.total);
      for (std::size_t ii = 0; ii < S.parts.size(); ++ii) {
        const Partition& I = S.parts[ii];
        const FIntMorphism f = I.as_injection();
        eps = add(eps, compose(graded_z_composite(B, f),
                               compose(nested_incl(out.K, I, unit),
                                       S.proj[ii])));
        std::vector<QuiverMap> xs;
        for (int sz : part_sizes(I))
          xs.push_back(xi[static_cast<std::size_t>(sz)]);
        phi = add(phi, compose(S.iota[ii],
                               compose(nested_tensor_map(xs, unit),
                                       graded_mu_composite(B, f))));
      }
      out.eps.push_back(std::move(eps));
      out.phi.push_back(std::move(phi));
    }
  }
  // Round trips.
  for (int n = 0; n <= B.D; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    if (compose(out.eps[un], out.phi[un]) != QuiverMap::identity(B.X[un]))
      throw contract_error("epsilon_phi_roundtrip: eps o phi != id at degree " +
                           std::to_string(n));
    if (compose(out.phi[un], out.eps[un]) !=
        QuiverMap::identity(out.TK.B.X[un]))
      throw contract_error("epsilon_phi_roundtrip: phi o eps != id at degree " +
                           std::to_string(n));
  }
  // eps is a morphism of comonoids and monoids.
  for (int k = 1; k < B.D; ++k)
    for (int l = 1; k + l <= B.D; ++l) {
      const std::size_t n = static_cast<std::size_t>(k + l);
      const QuiverMap pair = tensor_S(out.eps[static_cast<std::size_t>(k)],
                                      out.eps[static_cast<std::size_t>(l)]);
      if (compose(B.comult(k, l), out.eps[n]) !=
          compose(pair, out.TK.B.comult(k, l)))
        throw contract_error("epsilon_phi_roundtrip: eps not comonoidal at " +
                             pq_str(k, l));
      if (compose(out.eps[n], out.TK.B.mult(k, l)) !=
          compose(B.mult(k, l), pair))
        throw contract_error("epsilon_phi_roundtrip: eps not monoidal at " +
                             pq_str(k, l));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Narrow simplicial modules.

const QuiverMap& NarrowSimplicialModule::d(int n, int j) const {
  auto it = faces.find({n, j});
  if (it == faces.end())
    throw contract_error("narrow module has no face d_" + std::to_string(j) +
                         " at level " + std::to_string(n));
  return it->second;
}

const QuiverMap& NarrowSimplicialModule::s(int n, int i) const {
  auto it = degens.find({n, i});
  if (it == degens.end())
    throw contract_error("narrow module has no degeneracy s_" +
                         std::to_string(i) + " at level " + std::to_string(n));
  return it->second;
}

const QuiverMap& NarrowSimplicialModule::mult(int p, int q) const {
  auto it = m.find({p, q});
  if (it == m.end())
    throw contract_error("narrow module has no m" + pq_str(p, q));
  return it->second;
}

CheckReport check_narrow(const NarrowSimplicialModule& A) {
  const int D = A.D;
  auto level = [&](int n) -> const Quiver& {
    return A.A[static_cast<std::size_t>(n)];
  };
  // Shapes.
  for (int n = 1; n <= D; ++n) {
    if (level(n).vertices != A.base || level(n).ring != A.ring)
      return CheckReport::fail("level " + std::to_string(n) +
                               " has wrong base or ring");
    for (int j = 1; j < n; ++j) {
      const QuiverMap& f = A.d(n, j);
      if (f.source != level(n) || f.target != level(n - 1))
        return CheckReport::fail("face d_" + std::to_string(j) + " at level " +
                                 std::to_string(n) + " has wrong shape");
    }
    if (n < D)
      for (int i = 1; i < n; ++i) {
        const QuiverMap& f = A.s(n, i);
        if (f.source != level(n) || f.target != level(n + 1))
          return CheckReport::fail("degeneracy s_" + std::to_string(i) +
                                   " at level " + std::to_string(n) +
                                   " has wrong shape");
      }
  }
  // Simplicial identities among the inner generators.
  for (int n = 3; n <= D; ++n)
    for (int j = 2; j < n; ++j)
      for (int i = 1; i < j; ++i)
        if (compose(A.d(n - 1, i), A.d(n, j)) !=
            compose(A.d(n - 1, j - 1), A.d(n, i)))
          return CheckReport::fail("d_i d_j fails at level " +
                                   std::to_string(n) + ", (i,j)=(" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
  for (int n = 1; n + 2 <= D; ++n)
    for (int j = 1; j < n; ++j)
      for (int i = 1; i <= j; ++i)
        if (compose(A.s(n + 1, i), A.s(n, j)) !=
            compose(A.s(n + 1, j + 1), A.s(n, i)))
          return CheckReport::fail("s_i s_j fails at level " +
                                   std::to_string(n));
  for (int n = 1; n + 1 <= D; ++n)
    for (int j = 1; j < n; ++j)
      for (int i = 1; i < n + 1; ++i) {
        const QuiverMap lhs = compose(A.d(n + 1, i), A.s(n, j));
        if (i == j || i == j + 1) {
          if (lhs != QuiverMap::identity(level(n)))
            return CheckReport::fail("d_i s_j != id at level " +
                                     std::to_string(n));
        } else if (i < j) {
          if (i >= 1 && j - 1 >= 1 &&
              lhs != compose(A.s(n - 1, j - 1), A.d(n, i)))
            return CheckReport::fail("d_i s_j (i<j) fails at level " +
                                     std::to_string(n));
        } else {
          if (i - 1 < n && lhs != compose(A.s(n - 1, j), A.d(n, i - 1)))
            return CheckReport::fail("d_i s_j (i>j+1) fails at level " +
                                     std::to_string(n));
        }
      }
  if (!A.has_monoid) return CheckReport::pass();

  const Quiver unit = unit_quiver(A.ring, A.base);
  if (A.u.source != unit || A.u.target != level(1))
    return CheckReport::fail("monoid unit has wrong shape");
  // A truncated monoid need not carry every product with p+q-1 <= D (the
  // kernel of a degree-D structure only yields p+q <= D); the laws are
  // checked for whatever products are present.
  for (int p = 1; p <= D; ++p)
    for (int q = 1; p + q - 1 <= D; ++q) {
      if (A.m.find({p, q}) == A.m.end()) continue;
      const QuiverMap& mpq = A.mult(p, q);
      if (mpq.source != tensor_S(level(p), level(q)) ||
          mpq.target != level(p + q - 1))
        return CheckReport::fail("m" + pq_str(p, q) + " has wrong shape");
      // Naturality in the left index.
      for (int j = 1; j < p; ++j)
        if (A.m.find({p - 1, q}) != A.m.end() &&
            compose(A.d(p + q - 1, j), mpq) !=
            compose(A.mult(p - 1, q),
                    tensor_S(A.d(p, j), QuiverMap::identity(level(q)))))
          return CheckReport::fail("m" + pq_str(p, q) +
                                   " not natural for d_" + std::to_string(j) +
                                   " (left)");
      // Naturality in the right index.
      for (int j = 1; j < q; ++j)
        if (A.m.find({p, q - 1}) != A.m.end() &&
            compose(A.d(p + q - 1, j + p - 1), mpq) !=
            compose(A.mult(p, q - 1),
                    tensor_S(QuiverMap::identity(level(p)), A.d(q, j))))
          return CheckReport::fail("m" + pq_str(p, q) +
                                   " not natural for d_" + std::to_string(j) +
                                   " (right)");
      if (p + q <= D) {
        for (int i = 1; i < p; ++i)
          if (A.m.find({p + 1, q}) != A.m.end() &&
              compose(A.s(p + q - 1, i), mpq) !=
              compose(A.mult(p + 1, q),
                      tensor_S(A.s(p, i), QuiverMap::identity(level(q)))))
            return CheckReport::fail("m" + pq_str(p, q) +
                                     " not natural for s_" +
                                     std::to_string(i) + " (left)");
        for (int i = 1; i < q; ++i)
          if (A.m.find({p, q + 1}) != A.m.end() &&
              compose(A.s(p + q - 1, i + p - 1), mpq) !=
              compose(A.mult(p, q + 1),
                      tensor_S(QuiverMap::identity(level(p)), A.s(q, i))))
            return CheckReport::fail("m" + pq_str(p, q) +
                                     " not natural for s_" +
                                     std::to_string(i) + " (right)");
      }
    }
  // Associativity.
  for (int p = 1; p <= D; ++p)
    for (int q = 1; q <= D; ++q)
      for (int r = 1; p + q + r - 2 <= D; ++r) {
        if (A.m.find({p, q}) == A.m.end() ||
            A.m.find({q, r}) == A.m.end() ||
            A.m.find({p + q - 1, r}) == A.m.end() ||
            A.m.find({p, q + r - 1}) == A.m.end())
          continue;
        const QuiverMap lhs = compose(
            A.mult(p + q - 1, r),
            tensor_S(A.mult(p, q), QuiverMap::identity(level(r))));
        const QuiverMap rhs = compose(
            compose(A.mult(p, q + r - 1),
                    tensor_S(QuiverMap::identity(level(p)), A.mult(q, r))),
            associator(level(p), level(q), level(r)));
        if (lhs != rhs)
          return CheckReport::fail("m not associative at (p,q,r)=(" +
                                   std::to_string(p) + "," +
                                   std::to_string(q) + "," +
                                   std::to_string(r) + ")");
      }
  // Unitality.
  for (int p = 1; p <= D; ++p) {
    if (A.m.find({p, 1}) == A.m.end() || A.m.find({1, p}) == A.m.end())
      continue;
    if (compose(A.mult(p, 1),
                compose(tensor_S(QuiverMap::identity(level(p)), A.u),
                        right_unitor_inv(level(p)))) !=
        QuiverMap::identity(level(p)))
      return CheckReport::fail("right unit fails at level " +
                               std::to_string(p));
    if (compose(A.mult(1, p),
                compose(tensor_S(A.u, QuiverMap::identity(level(p))),
                        left_unitor_inv(level(p)))) !=
        QuiverMap::identity(level(p)))
      return CheckReport::fail("left unit fails at level " +
                               std::to_string(p));
  }
  return CheckReport::pass();
}

QuiverMap narrow_act(const NarrowSimplicialModule& A, const FIntMorphism& f) {
  if (!f.is_narrow())
    throw contract_error("narrow_act: morphism is not narrow");
  const int n = f.n, mm = f.m;
  if (f == FIntMorphism::identity(n))
    return QuiverMap::identity(A.A[static_cast<std::size_t>(n)]);
  // Peel the largest missing value as an inner coface.
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int i = 0; i <= mm; ++i) hit[static_cast<std::size_t>(f(i))] = true;
  for (int j = n - 1; j >= 1; --j)
    if (!hit[static_cast<std::size_t>(j)]) {
      std::vector<int> vals;
      for (int i = 0; i <= mm; ++i) vals.push_back(f(i) > j ? f(i) - 1 : f(i));
      const FIntMorphism f2(mm, n - 1, std::move(vals));
      return compose(narrow_act(A, f2), A.d(n, j));
    }
  // Surjective: peel the first repeated value as an inner codegeneracy.
  for (int i = 0; i + 1 <= mm; ++i)
    if (f(i) == f(i + 1)) {
      std::vector<int> vals;
      for (int t = 0; t <= mm; ++t)
        if (t != i + 1) vals.push_back(f(t));
      const FIntMorphism f2(mm - 1, n, std::move(vals));
      return compose(A.s(mm - 1, i), narrow_act(A, f2));
    }
  throw contract_error("narrow_act: unreachable");
}

QuiverMap m_composite(const NarrowSimplicialModule& A, const Partition& I) {
  if (I.start != 0) throw contract_error("m_composite: partition must start at 0");
  const int k = I.length();
  if (k == 0) return A.u;
  if (k == 1)
    return QuiverMap::identity(A.A[static_cast<std::size_t>(I.n)]);
  const int p1 = I.members[1];
  const Partition rest = rebase(I.truncate_ge(p1));
  const QuiverMap Mrest = m_composite(A, rest);
  const int q = I.n - p1 - (k - 1) + 1;
  return compose(
      A.mult(p1, q),
      tensor_S(QuiverMap::identity(A.A[static_cast<std::size_t>(p1)]), Mrest));
}

// ---------------------------------------------------------------------------
// Augmented simplicial modules.

const Quiver& AugSimplicialModule::level(int n) const {
  if (n < -1 || n > D - 2)
    throw contract_error("augmented module: level out of range");
  return A[static_cast<std::size_t>(n + 1)];
}

const QuiverMap& AugSimplicialModule::d(int n, int i) const {
  auto it = faces.find({n, i});
  if (it == faces.end())
    throw contract_error("augmented module has no face (" +
                         std::to_string(n) + "," + std::to_string(i) + ")");
  return it->second;
}

const QuiverMap& AugSimplicialModule::s(int n, int i) const {
  auto it = degens.find({n, i});
  if (it == degens.end())
    throw contract_error("augmented module has no degeneracy (" +
                         std::to_string(n) + "," + std::to_string(i) + ")");
  return it->second;
}

AugSimplicialModule aug_of_narrow_module(const NarrowSimplicialModule& A) {
  AugSimplicialModule B;
  B.ring = A.ring;
  B.base = A.base;
  B.D = A.D;
  B.A.assign(A.A.begin() + 1, A.A.end());
  for (const auto& [nj, f] : A.faces)
    B.faces.emplace(std::make_pair(nj.first - 2, nj.second - 1), f);
  for (const auto& [ni, f] : A.degens)
    B.degens.emplace(std::make_pair(ni.first - 2, ni.second - 1), f);
  return B;
}

NarrowSimplicialModule narrow_of_aug_module(const AugSimplicialModule& B) {
  NarrowSimplicialModule A;
  A.ring = B.ring;
  A.base = B.base;
  A.D = B.D;
  A.A.resize(1);
  A.A.insert(A.A.end(), B.A.begin(), B.A.end());
  A.A[0] = Quiver(B.ring, B.base);
  for (const auto& [ni, f] : B.faces)
    A.faces.emplace(std::make_pair(ni.first + 2, ni.second + 1), f);
  for (const auto& [ni, f] : B.degens)
    A.degens.emplace(std::make_pair(ni.first + 2, ni.second + 1), f);
  return A;
}

CheckReport check_augmented(const AugSimplicialModule& B) {
  // The reindexing is an isomorphism of categories, so the augmented
  // identities are exactly the narrow ones.
  return check_narrow(narrow_of_aug_module(B));
}

// ---------------------------------------------------------------------------
// The simplicial kernel.

KernelModule kernel_K(const NaFStructure& X) {
  if (!X.associative)
    throw contract_error("kernel_K requires an associative Frobenius structure");
  const GradedBimonoid G = graded_of(X);
  KernelGraded KG = kernel_graded(colax_of(G));
  KernelModule out;
  out.incl = KG.incl;
  NarrowSimplicialModule& A = out.A;
  A.ring = G.ring;
  A.base = G.base;
  A.D = G.D;
  A.A.resize(1, Quiver(G.ring, G.base));
  A.A.insert(A.A.end(), KG.K.V.begin() + 1, KG.K.V.end());
  auto incl = [&](int n) -> const QuiverMap& {
    return out.incl[static_cast<std::size_t>(n)];
  };
  for (int n = 1; n <= A.D; ++n) {
    for (int j = 1; j < n; ++j)
      A.faces.emplace(
          std::make_pair(n, j),
          factor_through(incl(n - 1), compose(X.host.d(n, j), incl(n))));
    if (n < A.D)
      for (int i = 1; i < n; ++i)
        A.degens.emplace(
            std::make_pair(n, i),
            factor_through(incl(n + 1), compose(X.host.s(n, i), incl(n))));
  }
  A.has_monoid = true;
  for (int p = 1; p <= A.D; ++p)
    for (int q = 1; p + q <= A.D; ++q)
      A.m.emplace(std::make_pair(p, q),
                  factor_through(incl(p + q - 1),
                                 compose(X.host.d(p + q, p),
                                         compose(X.z(p, q),
                                                 tensor_S(incl(p), incl(q))))));
  A.u = factor_through(
      incl(1), compose(X.host.s(0, 0), inverse_map(X.host.counit)));
  return out;
}

QuiverMap templicial_act(const TemplicialModule& X, const FIntMorphism& f) {
  const int n = f.n, mm = f.m;
  if (f == FIntMorphism::identity(n))
    return QuiverMap::identity(X.X[static_cast<std::size_t>(n)]);
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int i = 0; i <= mm; ++i) hit[static_cast<std::size_t>(f(i))] = true;
  for (int j = n - 1; j >= 1; --j)
    if (!hit[static_cast<std::size_t>(j)]) {
      std::vector<int> vals;
      for (int i = 0; i <= mm; ++i) vals.push_back(f(i) > j ? f(i) - 1 : f(i));
      const FIntMorphism f2(mm, n - 1, std::move(vals));
      return compose(templicial_act(X, f2), X.d(n, j));
    }
  for (int i = 0; i + 1 <= mm; ++i)
    if (f(i) == f(i + 1)) {
      std::vector<int> vals;
      for (int t = 0; t <= mm; ++t)
        if (t != i + 1) vals.push_back(f(t));
      const FIntMorphism f2(mm - 1, n, std::move(vals));
      return compose(X.s(mm - 1, i), templicial_act(X, f2));
    }
  throw contract_error("templicial_act: unreachable");
}

QuiverMap tensor_action_component(const NarrowSimplicialModule& A,
                                  const FIntMorphism& f, const Partition& I) {
  const Quiver unit = unit_quiver(A.ring, A.base);
  if (f.n != I.n || I.start != 0)
    throw contract_error("tensor_action_component: partition mismatch");
  if (f.m == 0 && f.n == 0) return QuiverMap::identity(unit);
  const Partition J = preimage_partition(f, I);
  const FIntMorphism g = compose(f, J.as_injection());
  const std::vector<Partition> split = splitting(I, g);
  // Source quivers: one per part of I.
  std::vector<Quiver> qs;
  for (int sz : part_sizes(I))
    qs.push_back(A.A[static_cast<std::size_t>(sz)]);
  std::vector<std::size_t> block_sizes;
  std::vector<QuiverMap> factors;
  for (std::size_t i = 0; i < split.size(); ++i) {
    const Partition Ii = rebase(split[i]);
    block_sizes.push_back(static_cast<std::size_t>(Ii.length()));
    const int j0 = J.members[i], j1 = J.members[i + 1];
    // f_i : [j1 - j0] -> [f(j1) - f(j0)].
    std::vector<int> vals;
    for (int t = j0; t <= j1; ++t) vals.push_back(f(t) - f(j0));
    const FIntMorphism fi(j1 - j0, f(j1) - f(j0), std::move(vals));
    const FIntMorphism fIi = morphism_restriction(fi, Ii);
    factors.push_back(compose(narrow_act(A, fIi), m_composite(A, Ii)));
  }
  return compose(nested_tensor_map(factors, unit),
                 nested_regroup(qs, block_sizes, unit));
}

TensorTemplicial tensor_T(const NarrowSimplicialModule& A) {
  if (!A.has_monoid)
    throw contract_error("tensor_T requires a monoid structure");
  const Quiver unit = unit_quiver(A.ring, A.base);
  TensorTemplicial T;
  TemplicialModule& H = T.F.host;
  H.ring = A.ring;
  H.base = A.base;
  H.D = A.D;
  for (int n = 0; n <= A.D; ++n) {
    T.sum.push_back(partition_sum(A.A, unit, n));
    H.X.push_back(T.sum.back().total);
  }
  // Counit: degree 0 is a single unit summand.
  {
    QuiverMap eps(H.X[0], unit);
    for (std::size_t a = 0; a < A.base.size(); ++a) {
      const FreeModule dom = H.X[0].entry(a, a);
      if (dom.rank() == 0) continue;
      LinearMap comp(dom, unit.entry(a, a));
      comp.at(0, 0) = Scalar::one(A.ring);
      eps.set(a, a, std::move(comp));
    }
    H.counit = eps;
  }
  // Faces and degeneracies via the general action.
  auto assemble = [&](const FIntMorphism& f) {
    const PartitionSum& Sn = T.sum[static_cast<std::size_t>(f.n)];
    const PartitionSum& Sm = T.sum[static_cast<std::size_t>(f.m)];
    QuiverMap out = QuiverMap::zero(Sn.total, Sm.total);
    for (std::size_t ii = 0; ii < Sn.parts.size(); ++ii) {
      const Partition& I = Sn.parts[ii];
      const Partition J = preimage_partition(f, I);
      out = add(out, compose(Sm.iota[Sm.index_of(J)],
                             compose(tensor_action_component(A, f, I),
                                     Sn.proj[ii])));
    }
    return out;
  };
  for (int n = 1; n <= A.D; ++n)
    for (int j = 1; j < n; ++j)
      H.faces.emplace(std::make_pair(n, j),
                      assemble(FIntMorphism::delta(j, n)));
  for (int n = 0; n < A.D; ++n)
    for (int i = 0; i <= n; ++i)
      H.degens.emplace(std::make_pair(n, i),
                       assemble(FIntMorphism::sigma(i, n)));
  // mu separates, Z concatenates.
  for (int k = 1; k < A.D; ++k)
    for (int l = 1; k + l <= A.D; ++l) {
      const int n = k + l;
      const PartitionSum& Sn = T.sum[static_cast<std::size_t>(n)];
      const PartitionSum& Sk = T.sum[static_cast<std::size_t>(k)];
      const PartitionSum& Sl = T.sum[static_cast<std::size_t>(l)];
      QuiverMap mu_kl = QuiverMap::zero(Sn.total, tensor_S(Sk.total, Sl.total));
      QuiverMap z_kl = QuiverMap::zero(tensor_S(Sk.total, Sl.total), Sn.total);
      for (std::size_t ii = 0; ii < Sn.parts.size(); ++ii) {
        const Partition& I = Sn.parts[ii];
        if (!I.contains(k)) continue;
        std::vector<Quiver> qs;
        for (int sz : part_sizes(I))
          qs.push_back(A.A[static_cast<std::size_t>(sz)]);
        const Partition left = I.truncate_le(k);
        const Partition right = rebase(I.truncate_ge(k));
        const QuiverMap split =
            nested_split_at(qs, static_cast<std::size_t>(left.length()));
        mu_kl = add(mu_kl,
                    compose(tensor_S(Sk.iota[Sk.index_of(left)],
                                     Sl.iota[Sl.index_of(right)]),
                            compose(split, Sn.proj[ii])));
        z_kl = add(z_kl, compose(Sn.iota[ii],
                                 compose(inverse_map(split),
                                         tensor_S(Sk.proj[Sk.index_of(left)],
                                                  Sl.proj[Sl.index_of(right)]))));
      }
      H.comult.emplace(std::make_pair(k, l), std::move(mu_kl));
      T.F.Z.emplace(std::make_pair(k, l), std::move(z_kl));
    }
  T.F.associative = true;
  return T;
}

QuiverMap tensor_act(const TensorTemplicial& T, const FIntMorphism& f) {
  return templicial_act(T.F.host, f);
}

TemplicialRoundTrip epsilon_phi_templicial(const NaFStructure& X) {
  TemplicialRoundTrip out;
  out.K = kernel_K(X);
  out.TK = tensor_T(out.K.A);
  const GradedBimonoid G = graded_of(X);
  KernelGraded KG;
  KG.K.ring = G.ring;
  KG.K.base = G.base;
  KG.K.D = G.D;
  KG.K.V.resize(1, Quiver(G.ring, G.base));
  KG.K.V.insert(KG.K.V.end(), out.K.A.A.begin() + 1, out.K.A.A.end());
  KG.incl = out.K.incl;
  const Quiver unit = unit_quiver(G.ring, G.base);
  std::vector<QuiverMap> xi(static_cast<std::size_t>(G.D) + 1);
  for (int p = 1; p <= G.D; ++p)
    xi[static_cast<std::size_t>(p)] = xi_retraction(G, KG, p);
  for (int n = 0; n <= G.D; ++n) {
    const PartitionSum& S = out.TK.sum[static_cast<std::size_t>(n)];
    const Quiver& Xn = G.X[static_cast<std::size_t>(n)];
    if (n == 0) {
      out.eps.push_back(compose(inverse_map(G.eps), out.TK.F.host.counit));
      out.phi.push_back(compose(inverse_map(out.TK.F.host.counit), G.eps));
      continue;
    }
    QuiverMap eps = QuiverMap::zero(S.total, Xn);
    QuiverMap phi = QuiverMap::zero(Xn, S.total);
    for (std::size_t ii = 0; ii < S.parts.size(); ++ii) {
      const Partition& I = S.parts[ii];
      const FIntMorphism f = I.as_injection();
      std::vector<QuiverMap> ins, xs;
      for (int sz : part_sizes(I)) {
        ins.push_back(KG.incl[static_cast<std::size_t>(sz)]);
        xs.push_back(xi[static_cast<std::size_t>(sz)]);
      }
      eps = add(eps, compose(graded_z_composite(G, f),
                             compose(nested_tensor_map(ins, unit),
                                     S.proj[ii])));
      phi = add(phi, compose(S.iota[ii],
                             compose(nested_tensor_map(xs, unit),
                                     graded_mu_composite(G, f))));
    }
    out.eps.push_back(std::move(eps));
    out.phi.push_back(std::move(phi));
  }
  for (int n = 0; n <= G.D; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    if (compose(out.eps[un], out.phi[un]) != QuiverMap::identity(G.X[un]))
      throw contract_error("epsilon_phi_templicial: eps o phi != id at level " +
                           std::to_string(n));
    if (compose(out.phi[un], out.eps[un]) !=
        QuiverMap::identity(out.TK.F.host.X[un]))
      throw contract_error("epsilon_phi_templicial: phi o eps != id at level " +
                           std::to_string(n));
  }
  // Naturality of eps against every stored face and degeneracy.
  for (int n = 1; n <= G.D; ++n)
    for (int j = 1; j < n; ++j)
      if (compose(X.host.d(n, j), out.eps[static_cast<std::size_t>(n)]) !=
          compose(out.eps[static_cast<std::size_t>(n - 1)],
                  out.TK.F.host.d(n, j)))
        throw contract_error("epsilon_phi_templicial: eps not natural for d_" +
                             std::to_string(j) + " at level " +
                             std::to_string(n));
  for (int n = 0; n < G.D; ++n)
    for (int i = 0; i <= n; ++i)
      if (compose(X.host.s(n, i), out.eps[static_cast<std::size_t>(n)]) !=
          compose(out.eps[static_cast<std::size_t>(n + 1)],
                  out.TK.F.host.s(n, i)))
        throw contract_error("epsilon_phi_templicial: eps not natural for s_" +
                             std::to_string(i) + " at level " +
                             std::to_string(n));
  return out;
}

BaseChange kernel_base_change(const VertexMap& f, const GradedColax& B) {
  const KernelGraded KS = kernel_graded(B);
  const GradedColax pushed = pushforward_graded(f, B);
  BaseChange out;
  out.pushed_kernel = kernel_graded(pushed);
  out.psi.resize(static_cast<std::size_t>(B.D) + 1);
  for (int n = 1; n <= B.D; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    QuiverMap psi = factor_through(out.pushed_kernel.incl[un],
                                   pushforward(f, KS.incl[un]));
    if (!psi.is_isomorphism())
      throw contract_error("kernel_base_change: psi is not an isomorphism at "
                           "degree " + std::to_string(n));
    out.psi[un] = std::move(psi);
  }
  return out;
}

}  // namespace templike
