#include "templike/linalg.hpp"

#include <algorithm>
#include <map>

namespace templike {

FreeModule::FreeModule(Ring r, std::vector<std::string> labels)
    : ring(r), basis(std::move(labels)) {
  std::vector<std::string> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw contract_error("duplicate basis label");
}

std::size_t FreeModule::index_of(const std::string& label) const {
  auto it = std::find(basis.begin(), basis.end(), label);
  if (it == basis.end()) throw contract_error("unknown basis label: " + label);
  return static_cast<std::size_t>(it - basis.begin());
}

Vec FreeModule::basis_vec(std::size_t i) const {
  Vec v = zero_vec();
  v.at(i) = Scalar::one(ring);
  return v;
}

std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

FreeModule tensor_module(const FreeModule& a, const FreeModule& b) {
  if (!(a.ring == b.ring)) throw contract_error("tensor over mixed rings");
  std::vector<std::string> labels;
  labels.reserve(a.rank() * b.rank());
  for (const auto& la : a.basis)
    for (const auto& lb : b.basis) labels.push_back(pair_label(la, lb));
  return FreeModule(a.ring, std::move(labels));
}

LinearMap::LinearMap(FreeModule dom, FreeModule cod)
    : domain(std::move(dom)), codomain(std::move(cod)) {
  if (!(domain.ring == codomain.ring))
    throw contract_error("linear map over mixed rings");
  mat.assign(codomain.rank(), Vec(domain.rank(), Scalar::zero(domain.ring)));
}

LinearMap LinearMap::identity(const FreeModule& m) {
  LinearMap f(m, m);
  for (std::size_t i = 0; i < m.rank(); ++i) f.at(i, i) = Scalar::one(m.ring);
  return f;
}

LinearMap LinearMap::zero(const FreeModule& dom, const FreeModule& cod) {
  return LinearMap(dom, cod);
}

Vec LinearMap::apply(const Vec& x) const {
  if (x.size() != domain.rank()) throw contract_error("apply: dimension mismatch");
  Vec y = codomain.zero_vec();
  for (std::size_t r = 0; r < codomain.rank(); ++r)
    for (std::size_t c = 0; c < domain.rank(); ++c)
      if (!mat[r][c].is_zero() && !x[c].is_zero()) y[r] += mat[r][c] * x[c];
  return y;
}

bool LinearMap::is_zero() const {
  for (const auto& row : mat)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

bool LinearMap::operator==(const LinearMap& o) const {
  return domain == o.domain && codomain == o.codomain && mat == o.mat;
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
  if (!(f.domain == g.codomain))
    throw contract_error("compose: intermediate modules differ");
  LinearMap h(g.domain, f.codomain);
  for (std::size_t r = 0; r < f.codomain.rank(); ++r)
    for (std::size_t k = 0; k < f.domain.rank(); ++k) {
      if (f.mat[r][k].is_zero()) continue;
      for (std::size_t c = 0; c < g.domain.rank(); ++c)
        if (!g.mat[k][c].is_zero()) h.at(r, c) += f.mat[r][k] * g.mat[k][c];
    }
  return h;
}

static void require_parallel(const LinearMap& f, const LinearMap& g) {
  if (!(f.domain == g.domain && f.codomain == g.codomain))
    throw contract_error("maps are not parallel");
}

LinearMap add(const LinearMap& f, const LinearMap& g) {
  require_parallel(f, g);
  LinearMap h = f;
  for (std::size_t r = 0; r < h.mat.size(); ++r)
    for (std::size_t c = 0; c < h.mat[r].size(); ++c) h.at(r, c) += g.at(r, c);
  return h;
}

LinearMap sub(const LinearMap& f, const LinearMap& g) {
  require_parallel(f, g);
  LinearMap h = f;
  for (std::size_t r = 0; r < h.mat.size(); ++r)
    for (std::size_t c = 0; c < h.mat[r].size(); ++c) h.at(r, c) -= g.at(r, c);
  return h;
}

LinearMap negate(const LinearMap& f) {
  LinearMap h = f;
  for (auto& row : h.mat)
    for (auto& e : row) e = -e;
  return h;
}

LinearMap scale(const Scalar& c, const LinearMap& f) {
  LinearMap h = f;
  for (auto& row : h.mat)
    for (auto& e : row) e *= c;
  return h;
}

LinearMap tensor_map(const LinearMap& f, const LinearMap& g) {
  LinearMap h(tensor_module(f.domain, g.domain), tensor_module(f.codomain, g.codomain));
  const std::size_t gc = g.domain.rank(), gr = g.codomain.rank();
  for (std::size_t rf = 0; rf < f.codomain.rank(); ++rf)
    for (std::size_t cf = 0; cf < f.domain.rank(); ++cf) {
      if (f.mat[rf][cf].is_zero()) continue;
      for (std::size_t rg = 0; rg < gr; ++rg)
        for (std::size_t cg = 0; cg < gc; ++cg)
          if (!g.mat[rg][cg].is_zero())
            h.at(rf * gr + rg, cf * gc + cg) = f.mat[rf][cf] * g.mat[rg][cg];
    }
  return h;
}

Vec add_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw contract_error("vector dimension mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw contract_error("vector dimension mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale_vec(const Scalar& c, const Vec& v) {
  Vec r = v;
  for (auto& e : r) e *= c;
  return r;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec tensor_vec(const Vec& a, const Vec& b) {
  Vec r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(x * y);
  return r;
}

// ---------------------------------------------------------------------------
// Field elimination
// ---------------------------------------------------------------------------

namespace {

// Forward elimination over a field, scanning columns left to right and
// picking the earliest usable row as pivot.  Returns pivot (row, col) pairs
// in order; `rows` is reduced in place to full row-reduced echelon form.
std::vector<std::pair<std::size_t, std::size_t>> rref(std::vector<Vec>& rows,
                                                      std::size_t ncols) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < ncols && pr < rows.size(); ++c) {
    std::size_t sel = pr;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pr], rows[sel]);
    Scalar inv = rows[pr][c].inverse();
    for (auto& e : rows[pr]) e *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pr || rows[r][c].is_zero()) continue;
      Scalar f = rows[r][c];
      for (std::size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= f * rows[pr][j];
    }
    pivots.emplace_back(pr, c);
    ++pr;
  }
  return pivots;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z
// ---------------------------------------------------------------------------

struct Smith {
  // U * A * V = S with U, V unimodular; diag holds the nonzero invariant
  // factors of S in order.
  std::vector<std::vector<mpz_class>> U, V;
  std::vector<mpz_class> diag;
  std::size_t nrows = 0, ncols = 0;
};

std::vector<std::vector<mpz_class>> eye(std::size_t n) {
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Smith smith_normal_form(const LinearMap& A) {
  const std::size_t nr = A.codomain.rank(), nc = A.domain.rank();
  std::vector<std::vector<mpz_class>> M(nr, std::vector<mpz_class>(nc, 0));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) M[r][c] = A.mat[r][c].value().get_num();

  Smith s;
  s.nrows = nr;
  s.ncols = nc;
  s.U = eye(nr);
  s.V = eye(nc);

  auto row_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    // row i -= q * row j
    for (std::size_t c = 0; c < nc; ++c) M[i][c] -= q * M[j][c];
    for (std::size_t c = 0; c < nr; ++c) s.U[i][c] -= q * s.U[j][c];
  };
  auto col_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    // col i -= q * col j
    for (std::size_t r = 0; r < nr; ++r) M[r][i] -= q * M[r][j];
    for (std::size_t r = 0; r < nc; ++r) s.V[r][i] -= q * s.V[r][j];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(M[i], M[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < nr; ++r) std::swap(M[r][i], M[r][j]);
    for (std::size_t r = 0; r < nc; ++r) std::swap(s.V[r][i], s.V[r][j]);
  };

  std::size_t t = 0;
  while (t < nr && t < nc) {
    // Locate the entry of smallest nonzero absolute value (earliest wins).
    std::size_t pr = nr, pc = nc;
    for (std::size_t r = t; r < nr; ++r)
      for (std::size_t c = t; c < nc; ++c)
        if (M[r][c] != 0 &&
            (pr == nr ||
             mpz_cmpabs(M[r][c].get_mpz_t(), M[pr][pc].get_mpz_t()) < 0)) {
          pr = r;
          pc = c;
        }
    if (pr == nr) break;  // remaining block is zero
    if (pr != t) row_swap(t, pr);
    if (pc != t) col_swap(t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (M[r][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), M[r][t].get_mpz_t(), M[t][t].get_mpz_t());
        row_op(r, t, q);
        if (M[r][t] != 0) {  // remainder smaller than pivot: swap up, restart
          row_swap(t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (M[t][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), M[t][c].get_mpz_t(), M[t][t].get_mpz_t());
        col_op(c, t, q);
        if (M[t][c] != 0) {
          col_swap(t, c);
          clean = false;
        }
      }
    }
    // Divisibility: pivot must divide every remaining entry.
    bool restart = false;
    for (std::size_t r = t + 1; r < nr && !restart; ++r)
      for (std::size_t c = t + 1; c < nc && !restart; ++c)
        if (M[r][c] % M[t][t] != 0) {
          row_op(t, r, mpz_class(-1));  // row t += row r, then redo the pivot
          restart = true;
        }
    if (restart) continue;
    if (M[t][t] < 0) {
      for (std::size_t c = 0; c < nc; ++c) M[t][c] = -M[t][c];
      for (std::size_t c = 0; c < nr; ++c) s.U[t][c] = -s.U[t][c];
    }
    s.diag.push_back(M[t][t]);
    ++t;
  }
  return s;
}

}  // namespace

std::optional<Vec> solve_affine(const LinearMap& A, const Vec& b) {
  if (b.size() != A.codomain.rank())
    throw contract_error("solve_affine: right-hand side has wrong length");
  const Ring ring = A.domain.ring;
  const std::size_t nc = A.domain.rank();

  if (ring.kind == RingKind::Integer) {
    Smith s = smith_normal_form(A);
    std::vector<mpz_class> c(s.nrows, 0);
    for (std::size_t i = 0; i < s.nrows; ++i)
      for (std::size_t j = 0; j < s.nrows; ++j)
        c[i] += s.U[i][j] * b[j].value().get_num();
    std::vector<mpz_class> y(s.ncols, 0);
    for (std::size_t i = 0; i < s.nrows; ++i) {
      if (i < s.diag.size()) {
        if (c[i] % s.diag[i] != 0) return std::nullopt;
        y[i] = c[i] / s.diag[i];
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    Vec x(nc, Scalar::zero(ring));
    for (std::size_t r = 0; r < s.ncols; ++r) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < s.ncols; ++i) acc += s.V[r][i] * y[i];
      x[r] = Scalar(ring, mpq_class(acc));
    }
    return x;
  }

  // Field case: eliminate on the augmented matrix.
  std::vector<Vec> rows(A.codomain.rank());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r] = A.mat[r];
    rows[r].push_back(b[r]);
  }
  auto pivots = rref(rows, nc);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (!rows[r].back().is_zero()) return std::nullopt;
  Vec x(nc, Scalar::zero(ring));
  for (auto [pr, pc] : pivots) x[pc] = rows[pr].back();
  return x;
}

std::vector<Vec> kernel_basis(const LinearMap& A) {
  const Ring ring = A.domain.ring;
  const std::size_t nc = A.domain.rank();

  if (ring.kind == RingKind::Integer) {
    Smith s = smith_normal_form(A);
    std::vector<Vec> basis;
    for (std::size_t i = s.diag.size(); i < s.ncols; ++i) {
      Vec v(nc, Scalar::zero(ring));
      for (std::size_t r = 0; r < nc; ++r) v[r] = Scalar(ring, mpq_class(s.V[r][i]));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::vector<Vec> rows = A.mat;
  auto pivots = rref(rows, nc);
  std::vector<bool> is_pivot(nc, false);
  for (auto [pr, pc] : pivots) is_pivot[pc] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < nc; ++c) {
    if (is_pivot[c]) continue;
    Vec v(nc, Scalar::zero(ring));
    v[c] = Scalar::one(ring);
    for (auto [pr, pc] : pivots) v[pc] = -rows[pr][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const LinearMap& A) {
  if (A.domain.ring.kind == RingKind::Integer)
    return smith_normal_form(A).diag.size();
  std::vector<Vec> rows = A.mat;
  return rref(rows, A.domain.rank()).size();
}

std::optional<Vec> coordinates_in(const std::vector<Vec>& gens, const Vec& v,
                                  const Ring& ring) {
  FreeModule dom(ring, [&] {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < gens.size(); ++i) l.push_back("g" + std::to_string(i));
    return l;
  }());
  FreeModule cod(ring, [&] {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < v.size(); ++i) l.push_back("e" + std::to_string(i));
    return l;
  }());
  LinearMap A(dom, cod);
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (gens[c].size() != v.size()) throw contract_error("generator length mismatch");
    for (std::size_t r = 0; r < v.size(); ++r) A.at(r, c) = gens[c][r];
  }
  return solve_affine(A, v);
}

bool in_span(const std::vector<Vec>& gens, const Vec& v, const Ring& ring) {
  return coordinates_in(gens, v, ring).has_value();
}

std::optional<LinearMap> inverse(const LinearMap& A) {
  if (A.domain.rank() != A.codomain.rank()) return std::nullopt;
  LinearMap inv(A.codomain, A.domain);
  for (std::size_t c = 0; c < A.codomain.rank(); ++c) {
    auto x = solve_affine(A, A.codomain.basis_vec(c));
    if (!x) return std::nullopt;
    for (std::size_t r = 0; r < A.domain.rank(); ++r) inv.at(r, c) = (*x)[r];
  }
  // solve_affine returns *a* preimage; confirm it is a two-sided inverse.
  if (!(compose(A, inv) == LinearMap::identity(A.codomain))) return std::nullopt;
  if (!(compose(inv, A) == LinearMap::identity(A.domain))) return std::nullopt;
  return inv;
}

}  // namespace templike
