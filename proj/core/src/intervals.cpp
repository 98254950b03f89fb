#include "templike/intervals.hpp"

#include <algorithm>
#include <sstream>

namespace templike {

namespace {
void check_dim(int n) {
  if (n < 0 || n > kMaxIntervalDim)
    throw contract_error("interval dimension out of range: " + std::to_string(n));
}
}  // namespace

FIntMorphism::FIntMorphism(int m_, int n_, std::vector<int> vals)
    : m(m_), n(n_), values(std::move(vals)) {
  check_dim(m);
  check_dim(n);
  if (values.size() != static_cast<std::size_t>(m) + 1)
    throw contract_error("FIntMorphism: wrong value count");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] > values[i + 1]) throw contract_error("FIntMorphism: not monotone");
  if (values.front() != 0 || values.back() != n)
    throw contract_error("FIntMorphism: endpoints not preserved");
}

FIntMorphism FIntMorphism::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return FIntMorphism(n, n, std::move(v));
}

FIntMorphism FIntMorphism::delta(int j, int m) {
  if (j <= 0 || j >= m) throw contract_error("delta: index must be inner");
  std::vector<int> v;
  for (int i = 0; i <= m; ++i)
    if (i != j) v.push_back(i);
  return FIntMorphism(m - 1, m, std::move(v));
}

FIntMorphism FIntMorphism::sigma(int i, int m) {
  if (i < 0 || i > m) throw contract_error("sigma: index out of range");
  std::vector<int> v;
  for (int k = 0; k <= m + 1; ++k) v.push_back(k <= i ? k : k - 1);
  return FIntMorphism(m + 1, m, std::move(v));
}

bool FIntMorphism::is_narrow() const {
  if (m < 1 || n < 1) return false;
  int zeros = 0, tops = 0;
  for (int v : values) {
    if (v == 0) ++zeros;
    if (v == n) ++tops;
  }
  return zeros == 1 && tops == 1;
}

std::string FIntMorphism::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  os << "]";
  return os.str();
}

FIntMorphism compose(const FIntMorphism& g, const FIntMorphism& f) {
  if (f.n != g.m) throw contract_error("FIntMorphism compose: dimension mismatch");
  std::vector<int> v;
  v.reserve(f.values.size());
  for (int x : f.values) v.push_back(g(x));
  return FIntMorphism(f.m, g.n, std::move(v));
}

FIntNormalForm normal_form(const FIntMorphism& f) {
  FIntNormalForm nf;
  // Missed interior values, in decreasing order (deltas are applied last).
  for (int v = f.n - 1; v >= 1; --v)
    if (std::find(f.values.begin(), f.values.end(), v) == f.values.end())
      nf.deltas.push_back(v);
  // Repeated positions, in increasing order (sigmas are applied first,
  // innermost sigma carrying the largest index).
  for (int i = 0; i < f.m; ++i)
    if (f(i) == f(i + 1)) nf.sigmas.push_back(i);
  return nf;
}

FIntMorphism from_normal_form(int m, int n, const FIntNormalForm& nf) {
  int mid = m - static_cast<int>(nf.sigmas.size());
  FIntMorphism f = FIntMorphism::identity(m);
  int cur = m;
  for (auto it = nf.sigmas.rbegin(); it != nf.sigmas.rend(); ++it) {
    f = compose(FIntMorphism::sigma(*it, cur - 1), f);
    --cur;
  }
  if (cur != mid) throw contract_error("from_normal_form: sigma count mismatch");
  for (auto it = nf.deltas.rbegin(); it != nf.deltas.rend(); ++it) {
    f = compose(FIntMorphism::delta(*it, cur + 1), f);
    ++cur;
  }
  if (cur != n) throw contract_error("from_normal_form: delta count mismatch");
  return f;
}

std::vector<FIntMorphism> all_fint_morphisms(int m, int n) {
  check_dim(m);
  check_dim(n);
  std::vector<FIntMorphism> out;
  if (m == 0) {
    if (n == 0) out.push_back(FIntMorphism::identity(0));
    return out;
  }
  // Enumerate the interior values[1..m-1] monotonically, lexicographically.
  std::vector<int> v(static_cast<std::size_t>(m) + 1, 0);
  v.back() = n;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == m) {
      if (v[static_cast<std::size_t>(m - 1)] <= n) out.emplace_back(m, n, v);
      return;
    }
    for (int x = v[static_cast<std::size_t>(pos) - 1]; x <= n; ++x) {
      v[static_cast<std::size_t>(pos)] = x;
      self(self, pos + 1);
    }
  };
  rec(rec, 1);
  return out;
}

FIntMorphism plus(const FIntMorphism& f, const FIntMorphism& g) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(f.m + g.m) + 1);
  for (int i = 0; i <= f.m; ++i) v.push_back(f(i));
  for (int i = 1; i <= g.m; ++i) v.push_back(f.n + g(i));
  return FIntMorphism(f.m + g.m, f.n + g.n, std::move(v));
}

AugMorphism::AugMorphism(int m_, int n_, std::vector<int> vals)
    : m(m_), n(n_), values(std::move(vals)) {
  if (m < -1 || n < -1) throw contract_error("AugMorphism: dimension < -1");
  if (values.size() != static_cast<std::size_t>(m + 1))
    throw contract_error("AugMorphism: wrong value count");
  for (int v : values)
    if (v < 0 || v > n) throw contract_error("AugMorphism: value out of range");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] > values[i + 1]) throw contract_error("AugMorphism: not monotone");
}

AugMorphism AugMorphism::identity(int n) {
  std::vector<int> v;
  for (int i = 0; i <= n; ++i) v.push_back(i);
  return AugMorphism(n, n, std::move(v));
}

AugMorphism compose(const AugMorphism& g, const AugMorphism& f) {
  if (f.n != g.m) throw contract_error("AugMorphism compose: dimension mismatch");
  std::vector<int> v;
  for (int x : f.values) v.push_back(g(x));
  return AugMorphism(f.m, g.n, std::move(v));
}

AugMorphism join(const AugMorphism& f, const AugMorphism& g) {
  std::vector<int> v;
  for (int x : f.values) v.push_back(x);
  for (int x : g.values) v.push_back(f.n + 1 + x);
  return AugMorphism(f.m + g.m + 1, f.n + g.n + 1, std::move(v));
}

FIntMorphism narrow_of_aug(const AugMorphism& f) {
  std::vector<int> v;
  v.push_back(0);
  for (int x : f.values) v.push_back(x + 1);
  v.push_back(f.n + 2);
  return FIntMorphism(f.m + 2, f.n + 2, std::move(v));
}

AugMorphism aug_of_narrow(const FIntMorphism& f) {
  if (!f.is_narrow()) throw contract_error("aug_of_narrow: morphism is not narrow");
  std::vector<int> v;
  for (int i = 1; i < f.m; ++i) v.push_back(f(i) - 1);
  return AugMorphism(f.m - 2, f.n - 2, std::move(v));
}

FIntMorphism diamond(const FIntMorphism& f, const FIntMorphism& g) {
  return narrow_of_aug(join(aug_of_narrow(f), aug_of_narrow(g)));
}

Partition::Partition(int n_, std::vector<int> members_, int start_)
    : n(n_), start(start_), members(std::move(members_)) {
  check_dim(n);
  if (!std::is_sorted(members.begin(), members.end()) ||
      std::adjacent_find(members.begin(), members.end()) != members.end())
    throw contract_error("Partition: members must be strictly increasing");
  if (members.empty() || members.front() != start || members.back() != start + n)
    throw contract_error("Partition: endpoints missing");
}

bool Partition::contains(int s) const {
  return std::binary_search(members.begin(), members.end(), s);
}

bool Partition::subset_of(const Partition& other) const {
  if (n != other.n || start != other.start) return false;
  return std::includes(other.members.begin(), other.members.end(), members.begin(),
                       members.end());
}

Partition Partition::union_with(const Partition& other) const {
  if (n != other.n || start != other.start)
    throw contract_error("Partition union: ambient mismatch");
  std::vector<int> u;
  std::set_union(members.begin(), members.end(), other.members.begin(),
                 other.members.end(), std::back_inserter(u));
  return Partition(n, std::move(u), start);
}

Partition Partition::truncate_le(int s) const {
  if (s < start || s > start + n) throw contract_error("truncate_le: out of range");
  std::vector<int> v;
  for (int x : members)
    if (x < s) v.push_back(x);
  v.push_back(s);
  return Partition(s - start, std::move(v), start);
}

Partition Partition::truncate_ge(int s) const {
  if (s < start || s > start + n) throw contract_error("truncate_ge: out of range");
  std::vector<int> v{s};
  for (int x : members)
    if (x > s) v.push_back(x);
  return Partition(start + n - s, std::move(v), s);
}

FIntMorphism Partition::as_injection() const {
  std::vector<int> v;
  for (int x : members) v.push_back(x - start);
  return FIntMorphism(length(), n, std::move(v));
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < members.size(); ++i) os << (i ? "," : "") << members[i];
  os << "}";
  return os.str();
}

std::vector<Partition> enumerate_partitions(int n) {
  check_dim(n);
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back(0, std::vector<int>{0}, 0);
    return out;
  }
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<int> v{0};
    for (int i = 1; i < n; ++i)
      if (mask & (1ul << (i - 1))) v.push_back(i);
    v.push_back(n);
    out.emplace_back(n, std::move(v), 0);
  }
  return out;
}

Partition plus(const Partition& I, const Partition& J) {
  if (J.start != I.start + I.n)
    throw contract_error("Partition plus: J must start where I ends");
  std::vector<int> v = I.members;
  for (std::size_t i = 1; i < J.members.size(); ++i) v.push_back(J.members[i]);
  return Partition(I.n + J.n, std::move(v), I.start);
}

std::vector<Partition> splitting(const Partition& I, const FIntMorphism& f) {
  if (f.n != I.n) throw contract_error("splitting: f must target [n]");
  std::vector<Partition> parts;
  for (int k = 1; k <= f.m; ++k)
    parts.push_back(I.truncate_le(f(k) + I.start).truncate_ge(f(k - 1) + I.start));
  return parts;
}

FIntMorphism complement(const Partition& I) {
  if (I.length() == 0) {
    // l(I) = 0 forces n = 0: the complement is sigma_0 : [1] -> [0].
    return FIntMorphism::sigma(0, 0);
  }
  std::vector<int> image{0};
  for (int v = 1; v <= I.n - 1; ++v)
    if (!I.contains(v + I.start)) image.push_back(v);
  if (I.n >= 1) image.push_back(I.n);
  const int m = static_cast<int>(image.size()) - 1;
  return FIntMorphism(m, I.n, std::move(image));
}

int p_index(const Partition& I, int s) {
  if (s < I.start || s > I.start + I.n) throw contract_error("p_index: out of range");
  for (int p = 0; p <= I.length(); ++p)
    if (s <= I.members[static_cast<std::size_t>(p)]) return p;
  throw contract_error("p_index: unreachable");
}

Partition preimage_partition(const FIntMorphism& f, const Partition& I) {
  if (f.n != I.n || I.start != 0)
    throw contract_error("preimage_partition: ambient mismatch");
  std::vector<int> v;
  for (int i = 0; i <= f.m; ++i)
    if (I.contains(f(i)) && (v.empty() || v.back() != i)) v.push_back(i);
  return Partition(f.m, std::move(v), 0);
}

FIntMorphism morphism_restriction(const FIntMorphism& f, const Partition& I) {
  if (I.n == 0) return FIntMorphism::identity(1);
  Partition J = preimage_partition(f, I);
  FIntMorphism Ic = complement(I);
  FIntMorphism Jc = complement(J);
  // Solve I^c of f_I = f of J^c pointwise; I^c is injective here (n > 0).
  std::vector<int> v;
  for (int k = 0; k <= Jc.m; ++k) {
    int target = f(Jc(k));
    auto it = std::find(Ic.values.begin(), Ic.values.end(), target);
    if (it == Ic.values.end())
      throw contract_error("morphism_restriction: value escapes the complement");
    v.push_back(static_cast<int>(it - Ic.values.begin()));
  }
  return FIntMorphism(Jc.m, Ic.m, std::move(v));
}

}  // namespace templike
