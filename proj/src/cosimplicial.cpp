#include "godex/cosimplicial.hpp"

#include <algorithm>

namespace godex {

namespace {

int sign(int k) { return (k % 2 == 0) ? 1 : -1; }

// Compares components in degrees <= top. Callers pass the smallest top
// degree among the complexes a composite passes through, since truncated
// levels make composites vanish above it.
bool same_components(const ChainMap& a, const ChainMap& b, int top = INT_MAX) {
  int lo = std::min(a.lo(), b.lo());
  int hi = std::min(std::max(a.hi(), b.hi()), top);
  for (int n = lo; n <= hi; ++n) {
    if (!(a.component(n) == b.component(n))) return false;
  }
  return true;
}

std::string where(const char* identity, int p, int i, int j) {
  return std::string(identity) + " at level " + std::to_string(p) + " (i=" + std::to_string(i) +
         ", j=" + std::to_string(j) + ")";
}

}  // namespace

CosimplicialComplex::CosimplicialComplex(std::vector<CochainComplex> levels,
                                         std::vector<std::vector<ChainMap>> cofaces,
                                         std::vector<std::vector<ChainMap>> codegeneracies) {
  if (levels.empty()) throw std::invalid_argument("CosimplicialComplex: no levels");
  const std::size_t n = levels.size();
  if (cofaces.size() != n) throw std::invalid_argument("CosimplicialComplex: cofaces must have one entry per level");
  if (codegeneracies.size() != n) {
    throw std::invalid_argument("CosimplicialComplex: codegeneracies must have one entry per level");
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (cofaces[p].size() != (p == 0 ? 0 : p + 1)) {
      throw std::invalid_argument("CosimplicialComplex: level " + std::to_string(p) + " needs " +
                                  std::to_string(p == 0 ? 0 : p + 1) + " cofaces");
    }
    if (codegeneracies[p].size() != (p + 1 < n ? p + 1 : 0)) {
      throw std::invalid_argument("CosimplicialComplex: level " + std::to_string(p) +
                                  " has the wrong number of codegeneracies");
    }
  }
  rep_ = std::make_shared<const Rep>(Rep{std::move(levels), std::move(cofaces), std::move(codegeneracies)});
}

CosimplicialComplex CosimplicialComplex::constant(const CochainComplex& a, int p_max) {
  std::vector<CochainComplex> levels(static_cast<std::size_t>(p_max) + 1, a);
  std::vector<std::vector<ChainMap>> cof(levels.size()), codeg(levels.size());
  ChainMap id = ChainMap::identity(a);
  for (int p = 0; p <= p_max; ++p) {
    if (p > 0) cof[p].assign(static_cast<std::size_t>(p) + 1, id);
    if (p < p_max) codeg[p].assign(static_cast<std::size_t>(p) + 1, id);
  }
  return CosimplicialComplex(std::move(levels), std::move(cof), std::move(codeg));
}

const ChainMap& CosimplicialComplex::coface(int p, int i) const {
  return rep_->cofaces.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(i));
}

const ChainMap& CosimplicialComplex::codegeneracy(int p, int j) const {
  return rep_->codegeneracies.at(static_cast<std::size_t>(p)).at(static_cast<std::size_t>(j));
}

int CosimplicialComplex::lower_bound() const {
  int b = INT_MAX;
  for (const auto& l : rep_->levels) b = std::min(b, l.lo());
  return b;
}

CosimplicialComplex CosimplicialComplex::reversed() const {
  const int P = p_max();
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) cof[p].push_back(coface(p, p - i));
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) cod[p].push_back(codegeneracy(p, p - j));
  return CosimplicialComplex(rep_->levels, std::move(cof), std::move(cod));
}

std::optional<std::string> CosimplicialComplex::identity_failure() const {
  const int top = p_max();
  auto top_of = [&](std::initializer_list<int> ps) {
    int t = INT_MAX;
    for (int p : ps) t = std::min(t, level(p).hi());
    return t;
  };
  for (int p = 0; p <= top; ++p) {
    for (int i = 0; i <= p; ++i) {
      if (p > 0 && !coface(p, i).commutes()) return where("coface is not a chain map", p, i, -1);
      if (p < top && !codegeneracy(p, i).commutes()) return where("codegeneracy is not a chain map", p, -1, i);
    }
  }
  // d^j d^i = d^i d^{j-1} for i < j, as maps X(p-1) -> X(p+1).
  for (int p = 1; p < top; ++p) {
    for (int j = 1; j <= p + 1; ++j) {
      for (int i = 0; i < j; ++i) {
        if (!same_components(coface(p + 1, j).after(coface(p, i)), coface(p + 1, i).after(coface(p, j - 1)),
                             top_of({p - 1, p, p + 1}))) {
          return where("d^j d^i = d^i d^{j-1}", p + 1, i, j);
        }
      }
    }
  }
  // s^j s^i = s^i s^{j+1} for i <= j, as maps X(p+2) -> X(p).
  for (int p = 0; p + 2 <= top; ++p) {
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= j; ++i) {
        if (!same_components(codegeneracy(p, j).after(codegeneracy(p + 1, i)),
                             codegeneracy(p, i).after(codegeneracy(p + 1, j + 1)), top_of({p, p + 1, p + 2}))) {
          return where("s^j s^i = s^i s^{j+1}", p, i, j);
        }
      }
    }
  }
  // s^j d^i as maps X(p) -> X(p).
  for (int p = 0; p + 1 <= top; ++p) {
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= p + 1; ++i) {
        ChainMap lhs = codegeneracy(p, j).after(coface(p + 1, i));
        const int t = top_of({std::max(p - 1, 0), p, p + 1});
        bool ok;
        if (i < j) {
          ok = same_components(lhs, coface(p, i).after(codegeneracy(p - 1, j - 1)), t);
        } else if (i == j || i == j + 1) {
          ok = same_components(lhs, ChainMap::identity(level(p)), t);
        } else {
          ok = same_components(lhs, coface(p, i - 1).after(codegeneracy(p - 1, j)), t);
        }
        if (!ok) return where("s^j d^i", p, i, j);
      }
    }
  }
  return std::nullopt;
}

void CosimplicialComplex::validate() const {
  if (auto f = identity_failure()) throw NotCosimplicial("cosimplicial identity fails: " + *f);
}

std::optional<std::string> CosimplicialMap::naturality_failure() const {
  if (source.p_max() != target.p_max() || static_cast<int>(components.size()) != source.p_max() + 1) {
    return std::string("level counts differ");
  }
  auto top_of = [&](int a, int b) {
    return std::min({source.level(a).hi(), source.level(b).hi(), target.level(a).hi(), target.level(b).hi()});
  };
  for (int p = 0; p <= source.p_max(); ++p) {
    if (!components[p].commutes()) return "component " + std::to_string(p) + " is not a chain map";
    for (int i = 0; p > 0 && i <= p; ++i) {
      if (!same_components(components[p].after(source.coface(p, i)),
                           target.coface(p, i).after(components[p - 1]), top_of(p - 1, p))) {
        return "does not commute with d^" + std::to_string(i) + " into level " + std::to_string(p);
      }
    }
    for (int j = 0; p < source.p_max() && j <= p; ++j) {
      if (!same_components(components[p].after(source.codegeneracy(p, j)),
                           target.codegeneracy(p, j).after(components[p + 1]), top_of(p, p + 1))) {
        return "does not commute with s^" + std::to_string(j) + " into level " + std::to_string(p);
      }
    }
  }
  return std::nullopt;
}

std::size_t SimpleLayout::offset(int n, int p) const {
  return offsets.at(static_cast<std::size_t>(n - lo)).at(static_cast<std::size_t>(p));
}

std::size_t SimpleLayout::dim(int n) const {
  if (n < lo || n > top) return 0;
  return offsets[static_cast<std::size_t>(n - lo)].back();
}

SimpleLayout simple_layout(const CosimplicialComplex& x, int n_top) {
  SimpleLayout l;
  l.lo = x.lower_bound();
  l.top = n_top;
  for (int n = l.lo; n <= n_top; ++n) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (int p = 0; p <= std::min(n - l.lo, x.p_max()); ++p) {
      off.push_back(o);
      o += x.level(p).dim(n - p);
    }
    off.push_back(o);
    l.offsets.push_back(std::move(off));
  }
  return l;
}

CochainComplex simple_unchecked(const CosimplicialComplex& x, int n_top, bool drop_internal_sign) {
  const int b = x.lower_bound();
  if (x.p_max() < n_top - b) {
    throw InsufficientLevels("simple: need " + std::to_string(n_top - b) + " cosimplicial levels for degree " +
                             std::to_string(n_top) + ", have " + std::to_string(x.p_max()));
  }
  const Field& f = x.field();
  if (n_top < b) return CochainComplex(f, b);
  SimpleLayout l = simple_layout(x, n_top);
  std::vector<std::size_t> dims;
  for (int n = b; n <= n_top; ++n) dims.push_back(l.dim(n));
  std::vector<Matrix> diffs;
  for (int n = b; n < n_top; ++n) {
    Matrix d(f, l.dim(n + 1), l.dim(n));
    for (int p = 0; p <= n - b; ++p) {
      const int q = n - p;
      if (x.level(p).dim(q) == 0) continue;
      for (int i = 0; i <= p + 1; ++i) {
        d.add_block(l.offset(n + 1, p + 1), l.offset(n, p), x.coface(p + 1, i).component(q), sign(i));
      }
      int s = drop_internal_sign ? 1 : sign(p);
      d.add_block(l.offset(n + 1, p), l.offset(n, p), x.level(p).d(q), s);
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex(f, b, std::move(dims), std::move(diffs), n_top);
}

CochainComplex simple(const CosimplicialComplex& x, int n_top) {
  CochainComplex s = simple_unchecked(x, n_top, false);
  s.validate();
  return s;
}

ChainMap simple_map(const CosimplicialMap& f, int n_top) {
  if (auto fail = f.naturality_failure()) throw NotCosimplicial("simple_map: " + *fail);
  CochainComplex s = simple(f.source, n_top);
  CochainComplex t = simple(f.target, n_top);
  SimpleLayout ls = simple_layout(f.source, n_top);
  SimpleLayout lt = simple_layout(f.target, n_top);
  const int b = std::min(s.lo(), t.lo());
  std::map<int, Matrix> comps;
  for (int n = b; n <= n_top; ++n) {
    Matrix m(s.field(), t.dim(n), s.dim(n));
    for (int p = 0; p <= f.source.p_max(); ++p) {
      if (n - p < b) break;
      if (n < ls.lo || n < lt.lo) continue;
      if (static_cast<std::size_t>(p) + 1 >= ls.offsets[n - ls.lo].size()) continue;
      if (static_cast<std::size_t>(p) + 1 >= lt.offsets[n - lt.lo].size()) continue;
      m.add_block(lt.offset(n, p), ls.offset(n, p), f.components[p].component(n - p));
    }
    comps.emplace(n, std::move(m));
  }
  return ChainMap(s, t, std::move(comps));
}

ChainMap lambda(const CochainComplex& a, int n_top) {
  const int p_max = std::max(0, n_top - a.lo());
  CosimplicialComplex c = CosimplicialComplex::constant(a, p_max);
  CochainComplex s = simple(c, n_top);
  std::map<int, Matrix> comps;
  for (int n = a.lo(); n <= std::min(a.hi(), n_top); ++n) {
    Matrix m(a.field(), s.dim(n), a.dim(n));
    m.set_block(0, 0, Matrix::identity(a.field(), a.dim(n)));
    comps.emplace(n, std::move(m));
  }
  return ChainMap(a, s, std::move(comps));
}

// ---------------------------------------------------------------------------
// Bicosimplicial objects

BicosimplicialComplex::BicosimplicialComplex(std::vector<std::vector<CochainComplex>> levels,
                                             std::vector<std::vector<std::vector<ChainMap>>> hcofaces,
                                             std::vector<std::vector<std::vector<ChainMap>>> vcofaces,
                                             std::vector<std::vector<std::vector<ChainMap>>> hcodeg,
                                             std::vector<std::vector<std::vector<ChainMap>>> vcodeg)
    : levels_(std::move(levels)),
      hcofaces_(std::move(hcofaces)),
      vcofaces_(std::move(vcofaces)),
      hcodeg_(std::move(hcodeg)),
      vcodeg_(std::move(vcodeg)) {
  if (levels_.empty() || levels_.front().empty()) throw std::invalid_argument("BicosimplicialComplex: no levels");
}

int BicosimplicialComplex::lower_bound() const {
  int b = INT_MAX;
  for (const auto& row : levels_)
    for (const auto& c : row) b = std::min(b, c.lo());
  return b;
}

BicosimplicialComplex BicosimplicialComplex::transposed() const {
  const int P = p_max(), Q = q_max();
  std::vector<std::vector<CochainComplex>> lv(Q + 1, std::vector<CochainComplex>(P + 1));
  std::vector<std::vector<std::vector<ChainMap>>> hc(Q + 1, std::vector<std::vector<ChainMap>>(P + 1));
  auto vc = hc, hs = hc, vs = hc;
  for (int p = 0; p <= P; ++p) {
    for (int q = 0; q <= Q; ++q) {
      lv[q][p] = levels_[p][q];
      hc[q][p] = vcofaces_[p][q];
      vc[q][p] = hcofaces_[p][q];
      hs[q][p] = vcodeg_[p][q];
      vs[q][p] = hcodeg_[p][q];
    }
  }
  return BicosimplicialComplex(std::move(lv), std::move(hc), std::move(vc), std::move(hs), std::move(vs));
}

CosimplicialComplex BicosimplicialComplex::diagonal() const {
  const int top = std::min(p_max(), q_max());
  std::vector<CochainComplex> lv;
  std::vector<std::vector<ChainMap>> cof(top + 1), codeg(top + 1);
  for (int p = 0; p <= top; ++p) {
    lv.push_back(levels_[p][p]);
    for (int i = 0; p > 0 && i <= p; ++i) {
      cof[p].push_back(vcoface(p, p, i).after(hcoface(p, p - 1, i)));
    }
    for (int j = 0; p < top && j <= p; ++j) {
      codeg[p].push_back(vcodeg(p, p, j).after(hcodeg(p, p + 1, j)));
    }
  }
  return CosimplicialComplex(std::move(lv), std::move(cof), std::move(codeg));
}

std::optional<std::string> BicosimplicialComplex::identity_failure() const {
  const int P = p_max(), Q = q_max();
  // Each row and column is a cosimplicial object.
  for (int q = 0; q <= Q; ++q) {
    std::vector<CochainComplex> lv;
    std::vector<std::vector<ChainMap>> cof(P + 1), codeg(P + 1);
    for (int p = 0; p <= P; ++p) {
      lv.push_back(levels_[p][q]);
      if (p > 0) cof[p] = hcofaces_[p][q];
      if (p < P) codeg[p] = hcodeg_[p][q];
    }
    if (auto f = CosimplicialComplex(lv, cof, codeg).identity_failure()) {
      return "horizontal, row " + std::to_string(q) + ": " + *f;
    }
  }
  for (int p = 0; p <= P; ++p) {
    std::vector<CochainComplex> lv;
    std::vector<std::vector<ChainMap>> cof(Q + 1), codeg(Q + 1);
    for (int q = 0; q <= Q; ++q) {
      lv.push_back(levels_[p][q]);
      if (q > 0) cof[q] = vcofaces_[p][q];
      if (q < Q) codeg[q] = vcodeg_[p][q];
    }
    if (auto f = CosimplicialComplex(lv, cof, codeg).identity_failure()) {
      return "vertical, column " + std::to_string(p) + ": " + *f;
    }
  }
  // Horizontal and vertical cofaces commute.
  for (int p = 1; p <= P; ++p) {
    for (int q = 1; q <= Q; ++q) {
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
          if (!same_components(hcoface(p, q, i).after(vcoface(p - 1, q, j)),
                               vcoface(p, q, j).after(hcoface(p, q - 1, i)))) {
            return "horizontal and vertical cofaces do not commute at (" + std::to_string(p) + "," +
                   std::to_string(q) + ")";
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::size_t IteratedLayout::offset(int n, int i, int j) const {
  return offsets.at(static_cast<std::size_t>(n - lo)).at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

IteratedLayout iterated_layout(const BicosimplicialComplex& z, int n_top) {
  IteratedLayout l;
  l.lo = z.lower_bound();
  for (int n = l.lo; n <= n_top; ++n) {
    std::vector<std::vector<std::size_t>> rows;
    std::size_t o = 0;
    for (int i = 0; i <= std::min(n - l.lo, z.p_max()); ++i) {
      std::vector<std::size_t> row;
      for (int j = 0; j <= std::min(n - l.lo - i, z.q_max()); ++j) {
        row.push_back(o);
        o += z.level(i, j).dim(n - i - j);
      }
      rows.push_back(std::move(row));
    }
    l.offsets.push_back(std::move(rows));
    l.dims.push_back(o);
  }
  return l;
}

namespace {

void require_levels(const BicosimplicialComplex& z, int n_top) {
  const int need = n_top - z.lower_bound();
  if (z.p_max() < need || z.q_max() < need) {
    throw InsufficientLevels("bicosimplicial simple: need " + std::to_string(need) + " levels in each direction");
  }
}

}  // namespace

CochainComplex iterated_simple(const BicosimplicialComplex& z, int n_top) {
  require_levels(z, n_top);
  const int b = z.lower_bound();
  const Field& f = z.field();
  IteratedLayout l = iterated_layout(z, n_top);
  std::vector<Matrix> diffs;
  for (int n = b; n < n_top; ++n) {
    Matrix d(f, l.dims[n + 1 - b], l.dims[n - b]);
    for (int i = 0; i <= n - b; ++i) {
      for (int j = 0; j <= n - b - i; ++j) {
        const int k = n - i - j;
        if (z.level(i, j).dim(k) == 0) continue;
        const std::size_t col = l.offset(n, i, j);
        for (int t = 0; t <= i + 1; ++t) {
          d.add_block(l.offset(n + 1, i + 1, j), col, z.hcoface(i + 1, j, t).component(k), sign(t));
        }
        for (int t = 0; t <= j + 1; ++t) {
          d.add_block(l.offset(n + 1, i, j + 1), col, z.vcoface(i, j + 1, t).component(k), sign(i + t));
        }
        d.add_block(l.offset(n + 1, i, j), col, z.level(i, j).d(k), sign(i + j));
      }
    }
    diffs.push_back(std::move(d));
  }
  CochainComplex s(f, b, l.dims, std::move(diffs), n_top);
  s.validate();
  return s;
}

ChainMap iterated_simple_map(const BicosimplicialMap& f, int n_top) {
  CochainComplex s = iterated_simple(f.source, n_top);
  CochainComplex t = iterated_simple(f.target, n_top);
  IteratedLayout ls = iterated_layout(f.source, n_top);
  IteratedLayout lt = iterated_layout(f.target, n_top);
  const int b = ls.lo;
  if (lt.lo != b) throw std::invalid_argument("iterated_simple_map: lower bounds differ");
  std::map<int, Matrix> comps;
  for (int n = b; n <= n_top; ++n) {
    Matrix m(s.field(), t.dim(n), s.dim(n));
    for (int i = 0; i <= n - b; ++i) {
      for (int j = 0; j <= n - b - i; ++j) {
        m.add_block(lt.offset(n, i, j), ls.offset(n, i, j), f.components.at(i).at(j).component(n - i - j));
      }
    }
    comps.emplace(n, std::move(m));
  }
  return ChainMap(s, t, std::move(comps));
}

ChainMap aw_map(const BicosimplicialComplex& z, int n_top) {
  require_levels(z, n_top);
  const int b = z.lower_bound();
  const Field& f = z.field();
  CochainComplex ss = iterated_simple(z, n_top);
  CosimplicialComplex diag = z.diagonal();
  CochainComplex sd = simple(diag, n_top);
  IteratedLayout ls = iterated_layout(z, n_top);
  SimpleLayout lt = simple_layout(diag, n_top);
  std::map<int, Matrix> comps;
  for (int n = b; n <= n_top; ++n) {
    Matrix m(f, sd.dim(n), ss.dim(n));
    for (int i = 0; i <= n - b; ++i) {
      for (int j = 0; j <= n - b - i; ++j) {
        const int p = i + j;
        const int k = n - p;
        if (z.level(i, j).dim(k) == 0 || z.level(p, p).dim(k) == 0) continue;
        // (d_h^0)^j moves the first index from i to p; then d_v^{j+1}, ..., d_v^p
        // move the second index from j to p.
        Matrix block = Matrix::identity(f, z.level(i, j).dim(k));
        for (int a = i + 1; a <= p; ++a) block = z.hcoface(a, j, 0).component(k) * block;
        for (int c = j + 1; c <= p; ++c) block = z.vcoface(p, c, c).component(k) * block;
        // The horizontal index i sits outside the vertical one in ssZ, while
        // the cup-product ordering puts the vertical (front) face first; the
        // Koszul sign of that transposition makes the map commute with d.
        m.add_block(lt.offset(n, p), ls.offset(n, i, j), block, sign(i * j));
      }
    }
    comps.emplace(n, std::move(m));
  }
  ChainMap mu(ss, sd, std::move(comps));
  mu.validate(n_top - 1);
  return mu;
}

namespace {

BicosimplicialComplex constant_along(const CosimplicialComplex& x, bool vary_first) {
  const int P = x.p_max();
  std::vector<std::vector<CochainComplex>> lv(P + 1, std::vector<CochainComplex>(P + 1));
  std::vector<std::vector<std::vector<ChainMap>>> hc(P + 1, std::vector<std::vector<ChainMap>>(P + 1));
  auto vc = hc, hs = hc, vs = hc;
  for (int p = 0; p <= P; ++p) {
    for (int q = 0; q <= P; ++q) {
      const int var = vary_first ? p : q;
      lv[p][q] = x.level(var);
      ChainMap id = ChainMap::identity(x.level(var));
      auto& moving_cof = vary_first ? hc : vc;
      auto& fixed_cof = vary_first ? vc : hc;
      auto& moving_deg = vary_first ? hs : vs;
      auto& fixed_deg = vary_first ? vs : hs;
      const int other = vary_first ? q : p;
      for (int i = 0; var > 0 && i <= var; ++i) moving_cof[p][q].push_back(x.coface(var, i));
      for (int i = 0; other > 0 && i <= other; ++i) fixed_cof[p][q].push_back(id);
      for (int j = 0; var < P && j <= var; ++j) moving_deg[p][q].push_back(x.codegeneracy(var, j));
      for (int j = 0; other < P && j <= other; ++j) fixed_deg[p][q].push_back(id);
    }
  }
  return BicosimplicialComplex(std::move(lv), std::move(hc), std::move(vc), std::move(hs), std::move(vs));
}

}  // namespace

BicosimplicialComplex constant_in_second(const CosimplicialComplex& x) { return constant_along(x, true); }
BicosimplicialComplex constant_in_first(const CosimplicialComplex& x) { return constant_along(x, false); }

// ---------------------------------------------------------------------------
// Path object and extra degeneracies

PathObject path_object(const CochainComplex& a, int p_max) {
  const Field& f = a.field();
  std::vector<CochainComplex> levels;
  for (int n = 0; n <= p_max; ++n) levels.push_back(direct_sum(std::vector<CochainComplex>(n + 2, a)));

  // Summand k of P(n) is the map [n] -> [1] with k zeros. Precomposing with
  // δ^i drops a zero iff i < k; precomposing with σ^j adds one iff j < k.
  auto selection = [&](int n_src, int n_tgt, auto source_index) {
    std::map<int, Matrix> comps;
    for (int q = a.lo(); q <= a.hi(); ++q) {
      const std::size_t d = a.dim(q);
      Matrix m(f, d * (n_tgt + 2), d * (n_src + 2));
      for (int k = 0; k <= n_tgt + 1; ++k) {
        m.set_block(d * k, d * source_index(k), Matrix::identity(f, d));
      }
      comps.emplace(q, std::move(m));
    }
    return ChainMap(levels[n_src], levels[n_tgt], std::move(comps));
  };

  std::vector<std::vector<ChainMap>> cof(p_max + 1), codeg(p_max + 1);
  for (int n = 1; n <= p_max; ++n) {
    for (int i = 0; i <= n; ++i) cof[n].push_back(selection(n - 1, n, [i](int k) { return i < k ? k - 1 : k; }));
  }
  for (int n = 0; n < p_max; ++n) {
    for (int j = 0; j <= n; ++j) codeg[n].push_back(selection(n + 1, n, [j](int k) { return j < k ? k + 1 : k; }));
  }
  CosimplicialComplex path(levels, std::move(cof), std::move(codeg));
  CosimplicialComplex ca = CosimplicialComplex::constant(a, p_max);

  auto evaluation = [&](bool at_one) {
    std::vector<ChainMap> comps;
    for (int n = 0; n <= p_max; ++n) {
      const int k = at_one ? 0 : n + 1;
      std::map<int, Matrix> m;
      for (int q = a.lo(); q <= a.hi(); ++q) {
        const std::size_t d = a.dim(q);
        Matrix e(f, d, d * (n + 2));
        e.set_block(0, d * k, Matrix::identity(f, d));
        m.emplace(q, std::move(e));
      }
      comps.emplace_back(levels[n], a, std::move(m));
    }
    return CosimplicialMap{path, ca, std::move(comps)};
  };
  // A^{d_0} restricts along d_0: [0] -> [1], whose image is the vertex 1.
  return PathObject{path, evaluation(true), evaluation(false)};
}

CosimplicialMap coaugmentation_map(const CosimplicialComplex& x, const CochainComplex& a, const ChainMap& eps) {
  std::vector<ChainMap> comps{eps};
  for (int p = 1; p <= x.p_max(); ++p) comps.push_back(x.coface(p, 0).after(comps.back()));
  return CosimplicialMap{CosimplicialComplex::constant(a, x.p_max()), x, std::move(comps)};
}

CollapseCertificate collapse_by_extra_degeneracy(const CosimplicialComplex& x, const ExtraDegeneracy& e,
                                                 int n_top) {
  const int P = x.p_max();
  if (static_cast<int>(e.extra.size()) != P + 1) {
    throw NotExtraDegeneracy("expected one extra degeneracy per level");
  }
  auto fail = [](const std::string& what, int p) {
    throw NotExtraDegeneracy("extra degeneracy identity " + what + " fails at level " + std::to_string(p));
  };
  // d^i out of level p-1, with the coaugmentation playing d^0 out of level -1.
  auto d = [&](int p, int i) -> ChainMap { return p == 0 ? e.coaugmentation : x.coface(p, i); };
  auto level_hi = [&](int k) {
    if (k > P) return INT_MAX;
    return k < 0 ? e.augmentation_source.hi() : x.level(k).hi();
  };
  if (P >= 1 && !same_components(x.coface(1, 0).after(e.coaugmentation), x.coface(1, 1).after(e.coaugmentation),
                                 std::min({level_hi(-1), level_hi(0), level_hi(1)}))) {
    fail("d^0 ε = d^1 ε", 0);
  }
  for (int p = 0; p <= P; ++p) {
    const ChainMap& sm = e.extra[p];
    const int t = std::min({level_hi(p - 2), level_hi(p - 1), level_hi(p), level_hi(p + 1)});
    const CochainComplex& below = p == 0 ? e.augmentation_source : x.level(p - 1);
    if (!same_components(sm.after(d(p, 0)), ChainMap::identity(below), t)) fail("s^{-1} d^0 = id", p);
    for (int i = 1; i <= p; ++i) {
      if (!same_components(sm.after(d(p, i)), d(p - 1, i - 1).after(e.extra[p - 1]), t)) {
        fail("s^{-1} d^i = d^{i-1} s^{-1} (i=" + std::to_string(i) + ")", p);
      }
    }
    if (p < P) {
      if (!same_components(sm.after(x.codegeneracy(p, 0)), sm.after(e.extra[p + 1]), t)) {
        fail("s^{-1} s^0 = s^{-1} s^{-1}", p);
      }
      for (int j = 1; j <= p; ++j) {
        if (!same_components(sm.after(x.codegeneracy(p, j)), x.codegeneracy(p - 1, j - 1).after(e.extra[p + 1]), t)) {
          fail("s^{-1} s^j = s^{j-1} s^{-1} (j=" + std::to_string(j) + ")", p);
        }
      }
    }
  }
  CollapseCertificate cert;
  cert.identities_hold = true;
  ChainMap se = simple_map(coaugmentation_map(x, e.augmentation_source, e.coaugmentation), n_top);
  cert.quis = is_quis(se);
  cert.certified_degree = n_top - 1;
  return cert;
}

}  // namespace godex

namespace godex {

BicosimplicialComplex external_tensor(const CosimplicialComplex& x, const CosimplicialComplex& y) {
  const int P = x.p_max();
  const int Q = y.p_max();
  std::vector<std::vector<CochainComplex>> lv(P + 1, std::vector<CochainComplex>(Q + 1));
  std::vector<std::vector<std::vector<ChainMap>>> hc(P + 1, std::vector<std::vector<ChainMap>>(Q + 1));
  auto vc = hc, hs = hc, vs = hc;
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) lv[p][q] = tensor(x.level(p), y.level(q));
  for (int p = 0; p <= P; ++p) {
    for (int q = 0; q <= Q; ++q) {
      ChainMap idx = ChainMap::identity(x.level(p));
      ChainMap idy = ChainMap::identity(y.level(q));
      for (int i = 0; p > 0 && i <= p; ++i) hc[p][q].push_back(tensor(x.coface(p, i), idy));
      for (int i = 0; q > 0 && i <= q; ++i) vc[p][q].push_back(tensor(idx, y.coface(q, i)));
      for (int j = 0; p < P && j <= p; ++j) hs[p][q].push_back(tensor(x.codegeneracy(p, j), idy));
      for (int j = 0; q < Q && j <= q; ++j) vs[p][q].push_back(tensor(idx, y.codegeneracy(q, j)));
    }
  }
  return BicosimplicialComplex(std::move(lv), std::move(hc), std::move(vc), std::move(hs), std::move(vs));
}

}  // namespace godex

namespace godex {

CosimplicialBiproduct cosimplicial_biproduct(const CosimplicialComplex& x, const CosimplicialComplex& y) {
  const int P = x.p_max();
  if (y.p_max() != P) throw std::invalid_argument("cosimplicial_biproduct: level counts differ");
  std::vector<Biproduct> bp;
  std::vector<CochainComplex> levels;
  for (int p = 0; p <= P; ++p) {
    bp.push_back(biproduct(x.level(p), y.level(p)));
    levels.push_back(bp.back().sum);
  }
  auto sum_map = [&](const ChainMap& a, const ChainMap& b, int sp, int tp) {
    ChainMap m = direct_sum(std::vector<ChainMap>{a, b});
    return truncate_map(m, levels[sp], levels[tp]);
  };
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) cof[p].push_back(sum_map(x.coface(p, i), y.coface(p, i), p - 1, p));
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) cod[p].push_back(sum_map(x.codegeneracy(p, j), y.codegeneracy(p, j), p + 1, p));
  CosimplicialBiproduct out;
  out.sum = CosimplicialComplex(levels, std::move(cof), std::move(cod));
  out.inc1 = {x, out.sum, {}};
  out.inc2 = {y, out.sum, {}};
  out.pr1 = {out.sum, x, {}};
  out.pr2 = {out.sum, y, {}};
  for (int p = 0; p <= P; ++p) {
    out.inc1.components.push_back(bp[p].inc1);
    out.inc2.components.push_back(bp[p].inc2);
    out.pr1.components.push_back(bp[p].pr1);
    out.pr2.components.push_back(bp[p].pr2);
  }
  return out;
}

CosimplicialMap compose(const CosimplicialMap& g, const CosimplicialMap& f) {
  CosimplicialMap out{f.source, g.target, {}};
  for (std::size_t p = 0; p < f.components.size(); ++p) out.components.push_back(g.components[p].after(f.components[p]));
  return out;
}

BicosimplicialMap external_tensor_map(const CosimplicialMap& f, const CosimplicialMap& g) {
  BicosimplicialMap out{external_tensor(f.source, g.source), external_tensor(f.target, g.target), {}};
  for (std::size_t p = 0; p < f.components.size(); ++p) {
    std::vector<ChainMap> row;
    for (std::size_t q = 0; q < g.components.size(); ++q) row.push_back(tensor(f.components[p], g.components[q]));
    out.components.push_back(std::move(row));
  }
  return out;
}

BicosimplicialMap transposed(const BicosimplicialMap& f) {
  BicosimplicialMap out{f.source.transposed(), f.target.transposed(), {}};
  const std::size_t P = f.components.size();
  const std::size_t Q = f.components.front().size();
  out.components.assign(Q, std::vector<ChainMap>(P));
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t q = 0; q < Q; ++q) out.components[q][p] = f.components[p][q];
  return out;
}

}  // namespace godex
