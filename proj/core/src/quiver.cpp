#include "templike/quiver.hpp"

#include <algorithm>
#include <set>

namespace templike {

namespace {

void check_same_base(const Quiver& q, const Quiver& p, const char* what) {
  if (q.ring != p.ring || q.vertices != p.vertices)
    throw contract_error(std::string(what) + ": vertex set or ring mismatch");
}

// Offset of the c-block inside (q tensor_S p)(a,b).
std::size_t tensor_block_offset(const Quiver& q, const Quiver& p,
                                std::size_t a, std::size_t b, std::size_t c) {
  std::size_t off = 0;
  for (std::size_t d = 0; d < c; ++d)
    off += q.entry_rank(a, d) * p.entry_rank(d, b);
  return off;
}

// Offset of the (a,b)-block inside f_!(q)(f(a), f(b)).
std::size_t push_block_offset(const VertexMap& f, const Quiver& q,
                              std::size_t a, std::size_t b) {
  const std::size_t x = f(a), y = f(b);
  std::size_t off = 0;
  for (std::size_t a2 = 0; a2 < q.vertices.size(); ++a2) {
    if (f(a2) != x) continue;
    for (std::size_t b2 = 0; b2 < q.vertices.size(); ++b2) {
      if (f(b2) != y) continue;
      if (a2 > a || (a2 == a && b2 >= b)) continue;
      off += q.entry_rank(a2, b2);
    }
  }
  return off;
}

}  // namespace

std::string triple_label(const std::string& a, const std::string& b,
                         const std::string& c) {
  return "(" + a + "|" + b + "|" + c + ")";
}

VertexMap::VertexMap(std::vector<std::string> s, std::vector<std::string> t,
                     std::vector<std::size_t> im)
    : src(std::move(s)), tgt(std::move(t)), images(std::move(im)) {
  if (images.size() != src.size())
    throw contract_error("VertexMap: wrong image count");
  for (std::size_t i : images)
    if (i >= tgt.size()) throw contract_error("VertexMap: image out of range");
}

VertexMap VertexMap::identity(std::vector<std::string> s) {
  std::vector<std::size_t> im(s.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
  return VertexMap(s, s, std::move(im));
}

VertexMap compose(const VertexMap& g, const VertexMap& f) {
  if (f.tgt != g.src) throw contract_error("VertexMap compose: mismatch");
  std::vector<std::size_t> im(f.src.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = g(f(i));
  return VertexMap(f.src, g.tgt, std::move(im));
}

Quiver::Quiver(Ring r, std::vector<std::string> verts)
    : ring(r), vertices(std::move(verts)) {
  std::set<std::string> seen(vertices.begin(), vertices.end());
  if (seen.size() != vertices.size())
    throw contract_error("Quiver: duplicate vertex labels");
}

std::size_t Quiver::vindex(const std::string& v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  if (it == vertices.end()) throw contract_error("Quiver: unknown vertex " + v);
  return static_cast<std::size_t>(it - vertices.begin());
}

FreeModule Quiver::entry(std::size_t a, std::size_t b) const {
  auto it = entries.find({a, b});
  return it == entries.end() ? FreeModule(ring, {}) : it->second;
}

std::size_t Quiver::entry_rank(std::size_t a, std::size_t b) const {
  auto it = entries.find({a, b});
  return it == entries.end() ? 0 : it->second.rank();
}

void Quiver::set_entry(std::size_t a, std::size_t b, FreeModule m) {
  if (a >= vertices.size() || b >= vertices.size())
    throw contract_error("Quiver: vertex index out of range");
  if (m.ring != ring) throw contract_error("Quiver: entry ring mismatch");
  if (m.rank() == 0)
    entries.erase({a, b});
  else
    entries[{a, b}] = std::move(m);
}

std::size_t Quiver::total_rank() const {
  std::size_t r = 0;
  for (const auto& [k, m] : entries) r += m.rank();
  return r;
}

bool operator==(const Quiver& q, const Quiver& p) {
  if (q.ring != p.ring || q.vertices != p.vertices) return false;
  auto nonzero = [](const Quiver& x) {
    std::map<std::pair<std::size_t, std::size_t>, FreeModule> m;
    for (const auto& [k, e] : x.entries)
      if (e.rank() > 0) m[k] = e;
    return m;
  };
  return nonzero(q) == nonzero(p);
}

QuiverMap::QuiverMap(Quiver src, Quiver tgt)
    : source(std::move(src)), target(std::move(tgt)) {
  check_same_base(source, target, "QuiverMap");
}

QuiverMap QuiverMap::identity(const Quiver& q) {
  QuiverMap f(q, q);
  for (const auto& [k, m] : q.entries)
    f.components[k] = LinearMap::identity(m);
  return f;
}

QuiverMap QuiverMap::zero(const Quiver& src, const Quiver& tgt) {
  return QuiverMap(src, tgt);
}

LinearMap QuiverMap::at(std::size_t a, std::size_t b) const {
  auto it = components.find({a, b});
  if (it != components.end()) return it->second;
  return LinearMap::zero(source.entry(a, b), target.entry(a, b));
}

void QuiverMap::set(std::size_t a, std::size_t b, LinearMap f) {
  if (f.domain != source.entry(a, b) || f.codomain != target.entry(a, b))
    throw contract_error("QuiverMap::set: component shape mismatch");
  if (f.is_zero())
    components.erase({a, b});
  else
    components[{a, b}] = std::move(f);
}

void QuiverMap::validate() const {
  check_same_base(source, target, "QuiverMap");
  for (const auto& [k, f] : components) {
    if (f.domain != source.entry(k.first, k.second) ||
        f.codomain != target.entry(k.first, k.second))
      throw contract_error("QuiverMap: component shape mismatch at (" +
                           source.vertices[k.first] + "," +
                           source.vertices[k.second] + ")");
  }
}

bool QuiverMap::is_isomorphism() const {
  const std::size_t n = source.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (source.entry_rank(a, b) == 0 && target.entry_rank(a, b) == 0)
        continue;
      if (!inverse(at(a, b))) return false;
    }
  return true;
}

bool operator==(const QuiverMap& f, const QuiverMap& g) {
  if (f.source != g.source || f.target != g.target) return false;
  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [k, m] : f.components) keys.insert(k);
  for (const auto& [k, m] : g.components) keys.insert(k);
  for (auto k : keys)
    if (!(f.at(k.first, k.second) == g.at(k.first, k.second))) return false;
  return true;
}

QuiverMap compose(const QuiverMap& f, const QuiverMap& g) {
  if (f.source != g.target) throw contract_error("QuiverMap compose: mismatch");
  QuiverMap h(g.source, f.target);
  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [k, m] : f.components) keys.insert(k);
  for (const auto& [k, m] : g.components) keys.insert(k);
  for (auto k : keys)
    h.set(k.first, k.second,
          compose(f.at(k.first, k.second), g.at(k.first, k.second)));
  return h;
}

QuiverMap add(const QuiverMap& f, const QuiverMap& g) {
  if (f.source != g.source || f.target != g.target)
    throw contract_error("QuiverMap add: shape mismatch");
  QuiverMap h(f.source, f.target);
  std::set<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [k, m] : f.components) keys.insert(k);
  for (const auto& [k, m] : g.components) keys.insert(k);
  for (auto k : keys)
    h.set(k.first, k.second,
          add(f.at(k.first, k.second), g.at(k.first, k.second)));
  return h;
}

QuiverMap sub(const QuiverMap& f, const QuiverMap& g) {
  return add(f, negate(g));
}

QuiverMap negate(const QuiverMap& f) {
  QuiverMap h(f.source, f.target);
  for (const auto& [k, m] : f.components) h.components[k] = negate(m);
  return h;
}

QuiverMap inverse_map(const QuiverMap& f) {
  QuiverMap h(f.target, f.source);
  const std::size_t n = f.source.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (f.source.entry_rank(a, b) == 0 && f.target.entry_rank(a, b) == 0)
        continue;
      auto inv = inverse(f.at(a, b));
      if (!inv)
        throw contract_error("inverse_map: component not invertible at (" +
                             f.source.vertices[a] + "," +
                             f.source.vertices[b] + ")");
      h.set(a, b, *inv);
    }
  return h;
}

Quiver tensor_S(const Quiver& q, const Quiver& p) {
  check_same_base(q, p, "tensor_S");
  const std::size_t n = q.vertices.size();
  Quiver t(q.ring, q.vertices);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::string> labels;
      for (std::size_t c = 0; c < n; ++c) {
        const FreeModule qm = q.entry(a, c), pm = p.entry(c, b);
        for (const auto& ql : qm.basis)
          for (const auto& pl : pm.basis)
            labels.push_back(triple_label(q.vertices[c], ql, pl));
      }
      t.set_entry(a, b, FreeModule(q.ring, std::move(labels)));
    }
  return t;
}

QuiverMap tensor_S(const QuiverMap& f, const QuiverMap& g) {
  check_same_base(f.source, g.source, "tensor_S");
  Quiver src = tensor_S(f.source, g.source);
  Quiver tgt = tensor_S(f.target, g.target);
  QuiverMap h(src, tgt);
  const std::size_t n = src.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (src.entry_rank(a, b) == 0 || tgt.entry_rank(a, b) == 0) continue;
      LinearMap comp(src.entry(a, b), tgt.entry(a, b));
      for (std::size_t c = 0; c < n; ++c) {
        const LinearMap fc = f.at(a, c), gc = g.at(c, b);
        if (fc.domain.rank() * gc.domain.rank() == 0) continue;
        if (fc.codomain.rank() * gc.codomain.rank() == 0) continue;
        const std::size_t co = tensor_block_offset(f.source, g.source, a, b, c);
        const std::size_t ro = tensor_block_offset(f.target, g.target, a, b, c);
        for (std::size_t i = 0; i < fc.codomain.rank(); ++i)
          for (std::size_t j = 0; j < gc.codomain.rank(); ++j)
            for (std::size_t k = 0; k < fc.domain.rank(); ++k)
              for (std::size_t l = 0; l < gc.domain.rank(); ++l)
                comp.at(ro + i * gc.codomain.rank() + j,
                        co + k * gc.domain.rank() + l) =
                    fc.at(i, k) * gc.at(j, l);
      }
      h.set(a, b, std::move(comp));
    }
  return h;
}

Quiver unit_quiver(const Ring& ring, std::vector<std::string> vertices) {
  Quiver u(ring, std::move(vertices));
  for (std::size_t a = 0; a < u.vertices.size(); ++a)
    u.set_entry(a, a, FreeModule(ring, {"1"}));
  return u;
}

namespace {

// Shared shape of the four unitors: an identity matrix between canonically
// isomorphic entries.
QuiverMap reshaping_identity(const Quiver& src, const Quiver& tgt) {
  QuiverMap h(src, tgt);
  const std::size_t n = src.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t r = src.entry_rank(a, b);
      if (r != tgt.entry_rank(a, b))
        throw contract_error("unitor: rank mismatch");
      if (r == 0) continue;
      LinearMap comp(src.entry(a, b), tgt.entry(a, b));
      for (std::size_t i = 0; i < r; ++i)
        comp.at(i, i) = Scalar::one(src.ring);
      h.set(a, b, std::move(comp));
    }
  return h;
}

}  // namespace

QuiverMap left_unitor(const Quiver& q) {
  Quiver u = unit_quiver(q.ring, q.vertices);
  return reshaping_identity(tensor_S(u, q), q);
}

QuiverMap left_unitor_inv(const Quiver& q) {
  Quiver u = unit_quiver(q.ring, q.vertices);
  return reshaping_identity(q, tensor_S(u, q));
}

QuiverMap right_unitor(const Quiver& q) {
  Quiver u = unit_quiver(q.ring, q.vertices);
  return reshaping_identity(tensor_S(q, u), q);
}

QuiverMap right_unitor_inv(const Quiver& q) {
  Quiver u = unit_quiver(q.ring, q.vertices);
  return reshaping_identity(q, tensor_S(q, u));
}

QuiverMap associator(const Quiver& q, const Quiver& p, const Quiver& r) {
  check_same_base(q, p, "associator");
  check_same_base(p, r, "associator");
  const std::size_t n = q.vertices.size();
  Quiver qp = tensor_S(q, p), pr = tensor_S(p, r);
  Quiver src = tensor_S(qp, r), tgt = tensor_S(q, pr);
  QuiverMap h(src, tgt);
  const Scalar one = Scalar::one(q.ring);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t d = 0; d < n; ++d) {
      if (src.entry_rank(a, d) == 0) continue;
      LinearMap comp(src.entry(a, d), tgt.entry(a, d));
      for (std::size_t b = 0; b < n; ++b) {      // block of ((QP) x R)
        const std::size_t rr = r.entry_rank(b, d);
        if (rr == 0) continue;
        for (std::size_t c = 0; c < n; ++c) {    // block inside (QP)(a,b)
          const std::size_t rq = q.entry_rank(a, c), rp = p.entry_rank(c, b);
          if (rq * rp == 0) continue;
          const std::size_t src_base =
              tensor_block_offset(qp, r, a, d, b) +
              tensor_block_offset(q, p, a, b, c) * rr;
          const std::size_t tgt_base =
              tensor_block_offset(q, pr, a, d, c);
          const std::size_t rpr = pr.entry_rank(c, d);
          for (std::size_t qi = 0; qi < rq; ++qi)
            for (std::size_t pi = 0; pi < rp; ++pi)
              for (std::size_t ri = 0; ri < rr; ++ri) {
                const std::size_t col =
                    src_base + (qi * rp + pi) * rr + ri;
                const std::size_t row =
                    tgt_base + qi * rpr +
                    tensor_block_offset(p, r, c, d, b) + pi * rr + ri;
                comp.at(row, col) = one;
              }
        }
      }
      h.set(a, d, std::move(comp));
    }
  return h;
}

Quiver pushforward(const VertexMap& f, const Quiver& q) {
  if (f.src != q.vertices)
    throw contract_error("pushforward: vertex set mismatch");
  Quiver t(q.ring, f.tgt);
  const std::size_t n = q.vertices.size();
  for (std::size_t x = 0; x < f.tgt.size(); ++x)
    for (std::size_t y = 0; y < f.tgt.size(); ++y) {
      std::vector<std::string> labels;
      for (std::size_t a = 0; a < n; ++a) {
        if (f(a) != x) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (f(b) != y) continue;
          for (const auto& l : q.entry(a, b).basis)
            labels.push_back(triple_label(q.vertices[a], q.vertices[b], l));
        }
      }
      t.set_entry(x, y, FreeModule(q.ring, std::move(labels)));
    }
  return t;
}

QuiverMap pushforward(const VertexMap& f, const QuiverMap& phi) {
  Quiver src = pushforward(f, phi.source), tgt = pushforward(f, phi.target);
  QuiverMap h(src, tgt);
  const std::size_t n = phi.source.vertices.size();
  for (std::size_t x = 0; x < f.tgt.size(); ++x)
    for (std::size_t y = 0; y < f.tgt.size(); ++y) {
      if (src.entry_rank(x, y) == 0 || tgt.entry_rank(x, y) == 0) continue;
      LinearMap comp(src.entry(x, y), tgt.entry(x, y));
      for (std::size_t a = 0; a < n; ++a) {
        if (f(a) != x) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (f(b) != y) continue;
          const LinearMap block = phi.at(a, b);
          const std::size_t co = push_block_offset(f, phi.source, a, b);
          const std::size_t ro = push_block_offset(f, phi.target, a, b);
          for (std::size_t i = 0; i < block.codomain.rank(); ++i)
            for (std::size_t j = 0; j < block.domain.rank(); ++j)
              comp.at(ro + i, co + j) = block.at(i, j);
        }
      }
      h.set(x, y, std::move(comp));
    }
  return h;
}

Quiver pullback(const VertexMap& f, const Quiver& q) {
  if (f.tgt != q.vertices) throw contract_error("pullback: vertex set mismatch");
  Quiver t(q.ring, f.src);
  for (std::size_t a = 0; a < f.src.size(); ++a)
    for (std::size_t b = 0; b < f.src.size(); ++b)
      t.set_entry(a, b, q.entry(f(a), f(b)));
  return t;
}

QuiverMap pullback(const VertexMap& f, const QuiverMap& phi) {
  QuiverMap h(pullback(f, phi.source), pullback(f, phi.target));
  for (std::size_t a = 0; a < f.src.size(); ++a)
    for (std::size_t b = 0; b < f.src.size(); ++b)
      h.set(a, b, phi.at(f(a), f(b)));
  return h;
}

QuiverMap adjunction_unit(const VertexMap& f, const Quiver& q) {
  Quiver fq = pushforward(f, q);
  QuiverMap h(q, pullback(f, fq));
  const Scalar one = Scalar::one(q.ring);
  for (const auto& [k, m] : q.entries) {
    const auto [a, b] = k;
    LinearMap comp(m, fq.entry(f(a), f(b)));
    const std::size_t off = push_block_offset(f, q, a, b);
    for (std::size_t i = 0; i < m.rank(); ++i) comp.at(off + i, i) = one;
    h.set(a, b, std::move(comp));
  }
  return h;
}

QuiverMap adjunction_counit(const VertexMap& f, const Quiver& p) {
  if (f.tgt != p.vertices)
    throw contract_error("adjunction_counit: vertex set mismatch");
  Quiver fsp = pullback(f, p);
  Quiver src = pushforward(f, fsp);
  QuiverMap h(src, p);
  const Scalar one = Scalar::one(p.ring);
  const std::size_t n = f.src.size();
  for (std::size_t x = 0; x < f.tgt.size(); ++x)
    for (std::size_t y = 0; y < f.tgt.size(); ++y) {
      if (src.entry_rank(x, y) == 0 || p.entry_rank(x, y) == 0) continue;
      LinearMap comp(src.entry(x, y), p.entry(x, y));
      for (std::size_t a = 0; a < n; ++a) {
        if (f(a) != x) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (f(b) != y) continue;
          const std::size_t off = push_block_offset(f, fsp, a, b);
          for (std::size_t i = 0; i < p.entry_rank(x, y); ++i)
            comp.at(i, off + i) = one;
        }
      }
      h.set(x, y, std::move(comp));
    }
  return h;
}

QuiverMap pushforward_compose_iso(const VertexMap& g, const VertexMap& f,
                                  const Quiver& q) {
  VertexMap gf = compose(g, f);
  Quiver src = pushforward(gf, q);
  Quiver fq = pushforward(f, q);
  Quiver tgt = pushforward(g, fq);
  QuiverMap h(src, tgt);
  const Scalar one = Scalar::one(q.ring);
  const std::size_t n = q.vertices.size();
  std::map<std::pair<std::size_t, std::size_t>, LinearMap> comps;
  for (std::size_t z = 0; z < g.tgt.size(); ++z)
    for (std::size_t w = 0; w < g.tgt.size(); ++w)
      if (src.entry_rank(z, w) > 0)
        comps.emplace(std::make_pair(z, w),
                      LinearMap(src.entry(z, w), tgt.entry(z, w)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t r = q.entry_rank(a, b);
      if (r == 0) continue;
      const std::size_t z = gf(a), w = gf(b);
      const std::size_t co = push_block_offset(gf, q, a, b);
      // row offset: block (f(a), f(b)) inside g_!, then (a,b) inside f_!.
      const std::size_t ro =
          push_block_offset(g, fq, f(a), f(b)) + push_block_offset(f, q, a, b);
      LinearMap& comp = comps.at({z, w});
      for (std::size_t i = 0; i < r; ++i) comp.at(ro + i, co + i) = one;
    }
  for (auto& [k, comp] : comps) h.set(k.first, k.second, std::move(comp));
  return h;
}

QuiverMap pullback_lax(const VertexMap& f, const Quiver& q, const Quiver& p) {
  check_same_base(q, p, "pullback_lax");
  if (f.tgt != q.vertices)
    throw contract_error("pullback_lax: vertex set mismatch");
  Quiver fsq = pullback(f, q), fsp = pullback(f, p);
  Quiver src = tensor_S(fsq, fsp);
  Quiver qp = tensor_S(q, p);
  Quiver tgt = pullback(f, qp);
  QuiverMap h(src, tgt);
  const Scalar one = Scalar::one(q.ring);
  const std::size_t n = f.src.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (src.entry_rank(a, b) == 0) continue;
      LinearMap comp(src.entry(a, b), tgt.entry(a, b));
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t rq = fsq.entry_rank(a, c), rp = fsp.entry_rank(c, b);
        if (rq * rp == 0) continue;
        const std::size_t co = tensor_block_offset(fsq, fsp, a, b, c);
        const std::size_t ro =
            tensor_block_offset(q, p, f(a), f(b), f(c));
        for (std::size_t i = 0; i < rq * rp; ++i)
          comp.at(ro + i, co + i) = one;
      }
      h.set(a, b, std::move(comp));
    }
  return h;
}

QuiverMap pullback_lax_unit(const VertexMap& f, const Ring& ring) {
  Quiver is = unit_quiver(ring, f.src);
  Quiver tgt = pullback(f, unit_quiver(ring, f.tgt));
  QuiverMap h(is, tgt);
  const Scalar one = Scalar::one(ring);
  for (std::size_t a = 0; a < f.src.size(); ++a) {
    LinearMap comp(is.entry(a, a), tgt.entry(a, a));
    comp.at(0, 0) = one;
    h.set(a, a, std::move(comp));
  }
  return h;
}

QuiverMap pushforward_colax(const VertexMap& f, const Quiver& q,
                            const Quiver& p) {
  check_same_base(q, p, "pushforward_colax");
  Quiver qp = tensor_S(q, p);
  Quiver src = pushforward(f, qp);
  Quiver fq = pushforward(f, q), fp = pushforward(f, p);
  Quiver tgt = tensor_S(fq, fp);
  QuiverMap h(src, tgt);
  const Scalar one = Scalar::one(q.ring);
  const std::size_t n = q.vertices.size();
  for (std::size_t x = 0; x < f.tgt.size(); ++x)
    for (std::size_t y = 0; y < f.tgt.size(); ++y) {
      if (src.entry_rank(x, y) == 0) continue;
      LinearMap comp(src.entry(x, y), tgt.entry(x, y));
      for (std::size_t a = 0; a < n; ++a) {
        if (f(a) != x) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (f(b) != y) continue;
          const std::size_t block_base = push_block_offset(f, qp, a, b);
          // inside qp(a,b): blocks over the intermediate vertex c
          for (std::size_t c = 0; c < n; ++c) {
            const std::size_t rq = q.entry_rank(a, c), rp = p.entry_rank(c, b);
            if (rq * rp == 0) continue;
            const std::size_t co =
                block_base + tensor_block_offset(q, p, a, b, c);
            // target: block f(c) of fq (x) fp, then (a,c)/(c,b) sub-blocks
            const std::size_t rfp = fp.entry_rank(f(c), y);
            const std::size_t ro =
                tensor_block_offset(fq, fp, x, y, f(c));
            const std::size_t qoff = push_block_offset(f, q, a, c);
            const std::size_t poff = push_block_offset(f, p, c, b);
            for (std::size_t i = 0; i < rq; ++i)
              for (std::size_t j = 0; j < rp; ++j)
                comp.at(ro + (qoff + i) * rfp + (poff + j),
                        co + i * rp + j) = one;
          }
        }
      }
      h.set(x, y, std::move(comp));
    }
  return h;
}

QuiverMap pushforward_colax_unit(const VertexMap& f, const Ring& ring) {
  Quiver is = unit_quiver(ring, f.src);
  Quiver src = pushforward(f, is);
  Quiver it = unit_quiver(ring, f.tgt);
  QuiverMap h(src, it);
  const Scalar one = Scalar::one(ring);
  for (std::size_t x = 0; x < f.tgt.size(); ++x) {
    const std::size_t r = src.entry_rank(x, x);
    if (r == 0) continue;
    LinearMap comp(src.entry(x, x), it.entry(x, x));
    for (std::size_t i = 0; i < r; ++i) comp.at(0, i) = one;
    h.set(x, x, std::move(comp));
  }
  return h;
}

Quiver direct_sum(const std::vector<std::pair<std::string, Quiver>>& parts) {
  if (parts.empty()) throw contract_error("direct_sum: no parts");
  std::set<std::string> tags;
  for (const auto& [tag, part] : parts) {
    check_same_base(parts.front().second, part, "direct_sum");
    if (!tags.insert(tag).second)
      throw contract_error("direct_sum: duplicate tag " + tag);
  }
  const Quiver& first = parts.front().second;
  Quiver t(first.ring, first.vertices);
  const std::size_t n = first.vertices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::string> labels;
      for (const auto& [tag, part] : parts)
        for (const auto& l : part.entry(a, b).basis)
          labels.push_back(pair_label(tag, l));
      t.set_entry(a, b, FreeModule(first.ring, std::move(labels)));
    }
  return t;
}

QuiverMap direct_sum_injection(
    const std::vector<std::pair<std::string, Quiver>>& parts, std::size_t k) {
  Quiver total = direct_sum(parts);
  const Quiver& part = parts.at(k).second;
  QuiverMap h(part, total);
  const Scalar one = Scalar::one(part.ring);
  for (const auto& [key, m] : part.entries) {
    const auto [a, b] = key;
    LinearMap comp(m, total.entry(a, b));
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      off += parts[j].second.entry_rank(a, b);
    for (std::size_t i = 0; i < m.rank(); ++i) comp.at(off + i, i) = one;
    h.set(a, b, std::move(comp));
  }
  return h;
}

QuiverMap direct_sum_projection(
    const std::vector<std::pair<std::string, Quiver>>& parts, std::size_t k) {
  Quiver total = direct_sum(parts);
  const Quiver& part = parts.at(k).second;
  QuiverMap h(total, part);
  const Scalar one = Scalar::one(part.ring);
  for (const auto& [key, m] : part.entries) {
    const auto [a, b] = key;
    LinearMap comp(total.entry(a, b), m);
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j)
      off += parts[j].second.entry_rank(a, b);
    for (std::size_t i = 0; i < m.rank(); ++i) comp.at(i, off + i) = one;
    h.set(a, b, std::move(comp));
  }
  return h;
}

Vec tensor_element(const Quiver& q, const Quiver& p, std::size_t a,
                   std::size_t c, std::size_t b, const Vec& x, const Vec& y) {
  check_same_base(q, p, "tensor_element");
  if (x.size() != q.entry_rank(a, c) || y.size() != p.entry_rank(c, b))
    throw contract_error("tensor_element: factor dimension mismatch");
  const Quiver t = tensor_S(q, p);
  Vec out = t.entry(a, b).zero_vec();
  const std::size_t off = tensor_block_offset(q, p, a, b, c);
  const std::size_t ry = y.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < ry; ++j)
      out[off + i * ry + j] = x[i] * y[j];
  return out;
}

FreeModule assemble_total(const Quiver& q) {
  std::vector<std::string> labels;
  for (const auto& [k, m] : q.entries)
    for (const auto& l : m.basis)
      labels.push_back(
          triple_label(q.vertices[k.first], q.vertices[k.second], l));
  return FreeModule(q.ring, std::move(labels));
}

}  // namespace templike
