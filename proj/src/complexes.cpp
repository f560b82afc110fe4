#include "godex/complexes.hpp"

#include <algorithm>
#include <sstream>

namespace godex {

namespace {

std::string degree_tag(int n) { return " in degree " + std::to_string(n); }

}  // namespace

CochainComplex::CochainComplex(const Field& field, int lo)
    : rep_(std::make_shared<const Rep>(Rep{field, lo, {}, {}, std::nullopt})) {}

CochainComplex::CochainComplex(const Field& field, int lo, std::vector<std::size_t> dims,
                               std::vector<Matrix> diffs, std::optional<int> truncated_at) {
  if (dims.empty() ? !diffs.empty() : diffs.size() != dims.size() - 1) {
    throw std::invalid_argument("CochainComplex: expected one differential per adjacent degree pair");
  }
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (!(diffs[k].field() == field) || diffs[k].rows() != dims[k + 1] || diffs[k].cols() != dims[k]) {
      throw InvariantViolation("CochainComplex: d^" + std::to_string(lo + static_cast<int>(k)) +
                               " has shape " + std::to_string(diffs[k].rows()) + "x" +
                               std::to_string(diffs[k].cols()) + ", expected " + std::to_string(dims[k + 1]) +
                               "x" + std::to_string(dims[k]));
    }
  }
  rep_ = std::make_shared<const Rep>(Rep{field, lo, std::move(dims), std::move(diffs), truncated_at});
}

std::size_t CochainComplex::dim(int n) const {
  if (n < lo() || n > hi()) return 0;
  return rep_->dims[static_cast<std::size_t>(n - lo())];
}

Matrix CochainComplex::d(int n) const {
  if (n < lo() || n >= hi()) return Matrix(field(), dim(n + 1), dim(n));
  return rep_->diffs[static_cast<std::size_t>(n - lo())];
}

std::size_t CochainComplex::total_dim() const {
  std::size_t t = 0;
  for (auto v : rep_->dims) t += v;
  return t;
}

int CochainComplex::certified_degree() const {
  return rep_->truncated_at ? *rep_->truncated_at - 1 : INT_MAX;
}

CochainComplex CochainComplex::with_truncation(std::optional<int> truncated_at) const {
  CochainComplex out = *this;
  Rep rep = *rep_;
  rep.truncated_at = truncated_at;
  out.rep_ = std::make_shared<const Rep>(std::move(rep));
  return out;
}

void CochainComplex::validate() const {
  for (int n = lo(); n + 1 < hi(); ++n) {
    if (!(d(n + 1) * d(n)).is_zero()) {
      throw InvariantViolation("d∘d != 0" + degree_tag(n));
    }
  }
}

bool operator==(const CochainComplex& a, const CochainComplex& b) {
  if (!(a.field() == b.field())) return false;
  int lo = std::min(a.lo(), b.lo());
  int hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi; ++n) {
    if (a.dim(n) != b.dim(n)) return false;
  }
  for (int n = lo; n < hi; ++n) {
    if (!(a.d(n) == b.d(n))) return false;
  }
  return true;
}

ChainMap::ChainMap(CochainComplex source, CochainComplex target, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!(source_.field() == target_.field())) throw FieldMismatch("ChainMap: source and target fields differ");
  for (auto& [n, m] : components) {
    if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n)) {
      throw InvariantViolation("ChainMap: component" + degree_tag(n) + " has shape " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                               std::to_string(target_.dim(n)) + "x" + std::to_string(source_.dim(n)));
    }
    if (m.rows() != 0 && m.cols() != 0) components_.emplace(n, std::move(m));
  }
}

ChainMap ChainMap::identity(const CochainComplex& c) {
  std::map<int, Matrix> comps;
  for (int n = c.lo(); n <= c.hi(); ++n) comps.emplace(n, Matrix::identity(c.field(), c.dim(n)));
  return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(const CochainComplex& source, const CochainComplex& target) {
  return ChainMap(source, target, {});
}

Matrix ChainMap::component(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return Matrix(source_.field(), target_.dim(n), source_.dim(n));
}

namespace {

// A truncated complex lacks d^N, so commutation is only meaningful below N.
int commutation_top(const ChainMap& f, int max_degree) {
  return std::min({f.hi(), max_degree, f.source().certified_degree(), f.target().certified_degree()});
}

}  // namespace

bool ChainMap::commutes(int max_degree) const {
  int top = commutation_top(*this, max_degree);
  for (int n = lo() - 1; n <= top; ++n) {
    if (!(target_.d(n) * component(n) == component(n + 1) * source_.d(n))) return false;
  }
  return true;
}

void ChainMap::validate(int max_degree) const {
  int top = commutation_top(*this, max_degree);
  for (int n = lo() - 1; n <= top; ++n) {
    if (!(target_.d(n) * component(n) == component(n + 1) * source_.d(n))) {
      throw InvariantViolation("chain map does not commute with d" + degree_tag(n));
    }
  }
}

ChainMap ChainMap::after(const ChainMap& g) const {
  if (g.target_.field() != source_.field()) throw FieldMismatch("ChainMap composition: field mismatch");
  std::map<int, Matrix> comps;
  for (int n = std::min(g.lo(), lo()); n <= std::max(g.hi(), hi()); ++n) {
    if (g.target_.dim(n) != source_.dim(n)) {
      throw InvariantViolation("ChainMap composition: middle complexes differ" + degree_tag(n));
    }
    if (source_.dim(n) == 0) continue;
    comps.emplace(n, component(n) * g.component(n));
  }
  return ChainMap(g.source_, target_, std::move(comps));
}

ChainMap ChainMap::operator+(const ChainMap& other) const {
  std::map<int, Matrix> comps;
  for (int n = lo(); n <= hi(); ++n) comps.emplace(n, component(n) + other.component(n));
  return ChainMap(source_, target_, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& other) const {
  std::map<int, Matrix> comps;
  for (int n = lo(); n <= hi(); ++n) comps.emplace(n, component(n) - other.component(n));
  return ChainMap(source_, target_, std::move(comps));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) {
    if (!(a.component(n) == b.component(n))) return false;
  }
  return true;
}

Cohomology cohomology(const CochainComplex& c) {
  Cohomology out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Subspace z = Subspace::kernel(c.d(n));
    Subspace b = Subspace::span(c.d(n - 1));
    Subquotient q = subquotient(z, b);
    out.betti[n] = q.dim;
    out.cycles.emplace(n, std::move(z));
    out.proj.emplace(n, std::move(q.projection));
    out.section.emplace(n, std::move(q.section));
  }
  return out;
}

Matrix induced_map(const ChainMap& f, int n, const Cohomology& source, const Cohomology& target) {
  const Field& field = f.source().field();
  auto bs = source.betti.find(n);
  auto bt = target.betti.find(n);
  const std::size_t ds = bs == source.betti.end() ? 0 : bs->second;
  const std::size_t dt = bt == target.betti.end() ? 0 : bt->second;
  if (ds == 0 || dt == 0) return Matrix(field, dt, ds);
  Matrix reps = source.cycles.at(n).basis() * source.section.at(n);
  Matrix img = f.component(n) * reps;
  return target.proj.at(n) * target.cycles.at(n).coordinates(img);
}

std::map<int, std::size_t> betti_numbers(const CochainComplex& c, int max_degree) {
  std::map<int, std::size_t> out;
  int top = std::min(c.hi(), max_degree);
  std::size_t prev = rank(c.d(c.lo() - 1));
  for (int n = c.lo(); n <= top; ++n) {
    std::size_t r = rank(c.d(n));
    out[n] = c.dim(n) - r - prev;
    prev = r;
  }
  return out;
}

QuisReport is_quis(const ChainMap& f, std::optional<int> max_degree) {
  const CochainComplex& a = f.source();
  const CochainComplex& b = f.target();
  int top;
  if (max_degree) {
    top = *max_degree;
  } else {
    top = std::min(a.certified_degree(), b.certified_degree());
    if (top == INT_MAX) top = std::max(a.hi(), b.hi());
  }
  QuisReport rep;
  int lo = std::min(a.lo(), b.lo());
  rep.checked_through = top;
  if (top < lo) return rep;
  std::size_t rank_a_prev = rank(a.d(lo - 1));
  std::size_t rank_b_prev = rank(b.d(lo - 1));
  for (int n = lo; n <= top; ++n) {
    Matrix da = a.d(n);
    std::size_t rank_a = rank(da);
    std::size_t rank_b = rank(b.d(n));
    std::size_t betti_a = a.dim(n) - rank_a - rank_a_prev;
    std::size_t betti_b = b.dim(n) - rank_b - rank_b_prev;
    bool ok = betti_a == betti_b;
    if (ok && betti_a > 0) {
      Matrix image_of_cycles = f.component(n) * Subspace::kernel(da).basis();
      std::vector<Matrix> parts{image_of_cycles, b.d(n - 1)};
      std::size_t induced = rank(Matrix::hstack(a.field(), b.dim(n), parts)) - rank_b_prev;
      ok = induced == betti_a;
    }
    rep.per_degree[n] = ok;
    rep.flag = rep.flag && ok;
    rank_a_prev = rank_a;
    rank_b_prev = rank_b;
  }
  return rep;
}

Biproduct biproduct(const CochainComplex& a, const CochainComplex& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("biproduct: field mismatch");
  CochainComplex sum = direct_sum({a, b});
  std::map<int, Matrix> i1, i2, p1, p2;
  const Field& f = a.field();
  for (int n = sum.lo(); n <= sum.hi(); ++n) {
    std::size_t da = a.dim(n), db = b.dim(n);
    Matrix ia(f, da + db, da), ib(f, da + db, db);
    ia.set_block(0, 0, Matrix::identity(f, da));
    ib.set_block(da, 0, Matrix::identity(f, db));
    p1.emplace(n, ia.transposed());
    p2.emplace(n, ib.transposed());
    i1.emplace(n, std::move(ia));
    i2.emplace(n, std::move(ib));
  }
  return Biproduct{sum, ChainMap(a, sum, std::move(i1)), ChainMap(b, sum, std::move(i2)),
                   ChainMap(sum, a, std::move(p1)), ChainMap(sum, b, std::move(p2))};
}

CochainComplex direct_sum(const std::vector<CochainComplex>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
  const Field& f = parts.front().field();
  int lo = INT_MAX, hi = INT_MIN;
  std::optional<int> trunc;
  for (const auto& c : parts) {
    if (!(c.field() == f)) throw FieldMismatch("direct_sum: field mismatch");
    lo = std::min(lo, c.lo());
    hi = std::max(hi, c.hi());
    if (c.truncated_at()) trunc = trunc ? std::min(*trunc, *c.truncated_at()) : *c.truncated_at();
  }
  if (hi < lo) return CochainComplex(f, parts.front().lo());
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    std::size_t d = 0;
    for (const auto& c : parts) d += c.dim(n);
    dims.push_back(d);
  }
  for (int n = lo; n < hi; ++n) {
    std::vector<Matrix> blocks;
    for (const auto& c : parts) blocks.push_back(c.d(n));
    diffs.push_back(Matrix::block_diagonal(f, blocks));
  }
  return CochainComplex(f, lo, std::move(dims), std::move(diffs), trunc);
}

ChainMap direct_sum(const std::vector<ChainMap>& parts) {
  std::vector<CochainComplex> src, tgt;
  for (const auto& m : parts) {
    src.push_back(m.source());
    tgt.push_back(m.target());
  }
  CochainComplex s = direct_sum(src), t = direct_sum(tgt);
  std::map<int, Matrix> comps;
  for (int n = std::min(s.lo(), t.lo()); n <= std::max(s.hi(), t.hi()); ++n) {
    std::vector<Matrix> blocks;
    for (const auto& m : parts) blocks.push_back(m.component(n));
    comps.emplace(n, Matrix::block_diagonal(s.field(), blocks));
  }
  return ChainMap(s, t, std::move(comps));
}

namespace {

// Offsets of the a^i ⊗ b^{n-i} blocks inside (A⊗B)^n.
std::map<int, std::size_t> tensor_offsets(const CochainComplex& a, const CochainComplex& b, int n) {
  std::map<int, std::size_t> off;
  std::size_t o = 0;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    off[i] = o;
    o += a.dim(i) * b.dim(n - i);
  }
  off[INT_MAX] = o;
  return off;
}

}  // namespace

CochainComplex tensor(const CochainComplex& a, const CochainComplex& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("tensor: field mismatch");
  const Field& f = a.field();
  if (a.hi() < a.lo() || b.hi() < b.lo()) return CochainComplex(f, a.lo() + b.lo());
  int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) dims.push_back(tensor_offsets(a, b, n)[INT_MAX]);
  for (int n = lo; n < hi; ++n) {
    auto src = tensor_offsets(a, b, n);
    auto dst = tensor_offsets(a, b, n + 1);
    Matrix d(f, dims[n + 1 - lo], dims[n - lo]);
    for (int i = a.lo(); i <= a.hi(); ++i) {
      int j = n - i;
      if (a.dim(i) == 0 || b.dim(j) == 0) continue;
      if (i + 1 <= a.hi()) {
        d.add_block(dst[i + 1], src[i], Matrix::kronecker(a.d(i), Matrix::identity(f, b.dim(j))));
      }
      if (b.dim(j + 1) > 0) {
        d.add_block(dst[i], src[i], Matrix::kronecker(Matrix::identity(f, a.dim(i)), b.d(j)),
                    (i % 2 == 0) ? 1 : -1);
      }
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex(f, lo, std::move(dims), std::move(diffs));
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  CochainComplex s = tensor(f.source(), g.source());
  CochainComplex t = tensor(f.target(), g.target());
  std::map<int, Matrix> comps;
  for (int n = std::min(s.lo(), t.lo()); n <= std::max(s.hi(), t.hi()); ++n) {
    auto src = tensor_offsets(f.source(), g.source(), n);
    auto dst = tensor_offsets(f.target(), g.target(), n);
    Matrix m(s.field(), t.dim(n), s.dim(n));
    for (int i = std::min(f.lo(), f.lo()); i <= f.hi(); ++i) {
      if (!src.count(i) || !dst.count(i)) continue;
      Matrix k = Matrix::kronecker(f.component(i), g.component(n - i));
      if (k.rows() && k.cols()) m.add_block(dst[i], src[i], k);
    }
    comps.emplace(n, std::move(m));
  }
  return ChainMap(s, t, std::move(comps));
}

long long euler_characteristic(const CochainComplex& c, int max_degree) {
  long long chi = 0;
  for (int n = c.lo(); n <= std::min(c.hi(), max_degree); ++n) {
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dim(n));
  }
  return chi;
}

std::string betti_string(const std::map<int, std::size_t>& betti) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [n, b] : betti) {
    if (b == 0) continue;
    os << (first ? "" : ", ") << n << ":" << b;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace godex

namespace godex {

CochainComplex truncate_above(const CochainComplex& c, int m) {
  if (c.hi() <= m) return c.with_truncation(c.truncated_at() ? std::min(*c.truncated_at(), m) : m);
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = c.lo(); n <= m; ++n) dims.push_back(c.dim(n));
  for (int n = c.lo(); n < m; ++n) diffs.push_back(c.d(n));
  if (dims.empty()) return CochainComplex(c.field(), c.lo()).with_truncation(m);
  return CochainComplex(c.field(), c.lo(), std::move(dims), std::move(diffs), m);
}

ChainMap truncate_map(const ChainMap& f, const CochainComplex& source, const CochainComplex& target) {
  std::map<int, Matrix> comps;
  for (int n = source.lo(); n <= source.hi(); ++n) {
    if (target.dim(n) == 0 || source.dim(n) == 0) continue;
    comps.emplace(n, f.component(n));
  }
  return ChainMap(source, target, std::move(comps));
}

}  // namespace godex
