#include "godex/site.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace godex {

// ---------------------------------------------------------------------------
// Poset

Poset::Poset(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& relations)
    : names_(std::move(names)) {
  if (names_.size() > 64) throw TooLarge("Poset: at most 64 elements are supported");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("Poset: duplicate element names");
  up_.assign(names_.size(), 0);
  for (std::size_t i = 0; i < names_.size(); ++i) up_[i] = std::uint64_t{1} << i;
  for (const auto& [a, b] : relations) up_[static_cast<std::size_t>(index(a))] |= std::uint64_t{1} << index(b);
  // Transitive closure.
  for (std::size_t k = 0; k < names_.size(); ++k) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if ((up_[i] >> k) & 1u) up_[i] |= up_[k];
    }
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (((up_[i] >> j) & 1u) && ((up_[j] >> i) & 1u)) {
        throw std::invalid_argument("Poset: relation is not antisymmetric (" + names_[i] + ", " + names_[j] + ")");
      }
    }
  }
  finish();
}

Poset Poset::from_relation(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = names.size();
  if (leq.size() != n) throw std::invalid_argument("Poset: relation matrix has the wrong size");
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw std::invalid_argument("Poset: relation matrix has the wrong size");
    if (!leq[i][i]) throw std::invalid_argument("Poset: relation is not reflexive at " + names[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) {
        throw std::invalid_argument("Poset: relation is not antisymmetric (" + names[i] + ", " + names[j] + ")");
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (leq[i][j] && leq[j][k] && !leq[i][k]) {
          throw std::invalid_argument("Poset: relation is not transitive (" + names[i] + ", " + names[j] + ", " +
                                      names[k] + ")");
        }
      }
      if (leq[i][j]) rel.emplace_back(names[i], names[j]);
    }
  }
  return Poset(std::move(names), rel);
}

void Poset::finish() {
  const int n = static_cast<int>(names_.size());
  covers_.clear();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z) {
        if (z != x && z != y && leq(x, z) && leq(z, y)) cover = false;
      }
      if (cover) covers_.emplace_back(x, y);
    }
  }
  linear_.clear();
  std::vector<bool> placed(names_.size(), false);
  while (static_cast<int>(linear_.size()) < n) {
    for (int x = 0; x < n; ++x) {
      if (placed[x]) continue;
      bool ready = true;
      for (int y = 0; y < n && ready; ++y) {
        if (y != x && !placed[y] && leq(y, x)) ready = false;
      }
      if (ready) {
        placed[x] = true;
        linear_.push_back(x);
        break;
      }
    }
  }
}

Poset Poset::point() { return Poset({"p"}, {}); }
Poset Poset::sierpinski() { return Poset({"c", "o"}, {{"c", "o"}}); }

Poset Poset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(names[i], names[i + 1]);
  return Poset(names, rel);
}

Poset Poset::pseudocircle() {
  return Poset({"a", "b", "x", "y"}, {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
}

Poset Poset::pseudo_sphere() {
  return Poset({"a", "b", "c", "d", "e", "f"},
               {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "e"}, {"c", "f"}, {"d", "e"}, {"d", "f"}});
}

Poset Poset::named(const std::string& name) {
  if (name == "point") return point();
  if (name == "sierpinski") return sierpinski();
  if (name == "chain3") return chain(3);
  if (name == "pseudocircle") return pseudocircle();
  if (name == "pseudosphere") return pseudo_sphere();
  throw std::invalid_argument("unknown poset name '" + name + "'");
}

int Poset::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownElement("unknown element '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

std::uint64_t Poset::all_mask() const {
  return names_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << names_.size()) - 1;
}

bool Poset::is_up_set(std::uint64_t mask) const {
  if (mask & ~all_mask()) return false;
  for (std::size_t x = 0; x < names_.size(); ++x) {
    if (((mask >> x) & 1u) && (up_[x] & ~mask)) return false;
  }
  return true;
}

std::size_t OpenSet::size() const { return static_cast<std::size_t>(std::popcount(mask)); }

std::vector<int> OpenSet::members() const {
  std::vector<int> out;
  for (int x = 0; x < 64; ++x)
    if (contains(x)) out.push_back(x);
  return out;
}

OpenSet open_from_names(const Poset& p, const std::vector<std::string>& names) {
  OpenSet u;
  for (const auto& n : names) u.mask |= std::uint64_t{1} << p.index(n);
  if (!p.is_up_set(u.mask)) throw NotOpen("not an up-set: " + open_to_string(p, u));
  return u;
}

std::string open_to_string(const Poset& p, const OpenSet& u) {
  std::string s = "{";
  bool first = true;
  for (int x : u.members()) {
    s += (first ? "" : ",") + p.name(x);
    first = false;
  }
  return s + "}";
}

std::vector<OpenSet> up_sets(const Poset& p, std::size_t cap) {
  if (p.size() > cap) {
    throw TooLarge("up_sets: poset has " + std::to_string(p.size()) + " elements, cap is " + std::to_string(cap));
  }
  std::vector<OpenSet> out;
  for (std::uint64_t m = 0; m <= p.all_mask(); ++m) {
    if (p.is_up_set(m)) out.push_back(OpenSet{m});
  }
  std::stable_sort(out.begin(), out.end(), [](const OpenSet& a, const OpenSet& b) { return a.size() < b.size(); });
  return out;
}

// ---------------------------------------------------------------------------
// Sheaf

namespace {

bool same_shape(const CochainComplex& a, const CochainComplex& b) {
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) {
    if (a.dim(n) != b.dim(n)) return false;
  }
  return true;
}

bool same_components(const ChainMap& a, const ChainMap& b) {
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) {
    if (!(a.component(n) == b.component(n))) return false;
  }
  return true;
}

}  // namespace

Sheaf::Sheaf(std::shared_ptr<const Poset> poset, const Field& field, std::vector<CochainComplex> stalks,
             std::map<std::pair<int, int>, ChainMap> cover_restrictions) {
  const Poset& p = *poset;
  const int n = static_cast<int>(p.size());
  if (static_cast<int>(stalks.size()) != n) throw std::invalid_argument("Sheaf: one stalk per element required");
  for (const auto& s : stalks) {
    if (!(s.field() == field)) throw FieldMismatch("Sheaf: stalk field mismatch");
  }
  std::map<std::pair<int, int>, ChainMap> all;
  for (int x = 0; x < n; ++x) all.emplace(std::make_pair(x, x), ChainMap::identity(stalks[x]));
  for (auto& [key, r] : cover_restrictions) {
    auto [x, y] = key;
    if (std::find(p.covers().begin(), p.covers().end(), key) == p.covers().end()) {
      throw InvariantViolation("restriction given for " + p.name(x) + " -> " + p.name(y) +
                               ", which is not a covering pair");
    }
    if (!same_shape(r.source(), stalks[x]) || !same_shape(r.target(), stalks[y])) {
      throw InvariantViolation("restriction " + p.name(x) + " -> " + p.name(y) + " has the wrong shape");
    }
    ChainMap fixed = truncate_map(r, stalks[x], stalks[y]);
    if (!fixed.commutes()) {
      throw InvariantViolation("restriction " + p.name(x) + " -> " + p.name(y) + " is not a chain map");
    }
    all.emplace(key, std::move(fixed));
  }
  for (const auto& [x, y] : p.covers()) {
    if (!all.count({x, y})) all.emplace(std::make_pair(x, y), ChainMap::zero(stalks[x], stalks[y]));
  }
  // Compose along covers, walking the linear extension from the top so that
  // r_{z→y} is known before r_{x→y} for x ⋖ z.
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const int x = *it;
    for (int y = 0; y < n; ++y) {
      if (y == x || !p.leq(x, y) || all.count({x, y})) continue;
      for (const auto& [a, z] : p.covers()) {
        if (a == x && p.leq(z, y)) {
          all.emplace(std::make_pair(x, y), all.at({z, y}).after(all.at({x, z})));
          break;
        }
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || !p.leq(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (z == y || !p.leq(y, z)) continue;
        if (!same_components(all.at({y, z}).after(all.at({x, y})), all.at({x, z}))) {
          throw InvariantViolation("restrictions are not functorial on " + p.name(x) + " <= " + p.name(y) +
                                   " <= " + p.name(z));
        }
      }
    }
  }
  rep_ = std::make_shared<const Rep>(Rep{std::move(poset), field, std::move(stalks), std::move(all)});
}

const ChainMap& Sheaf::restriction(int x, int y) const {
  auto it = rep_->restrictions.find({x, y});
  if (it == rep_->restrictions.end()) {
    throw std::invalid_argument("restriction requested for incomparable pair " + poset().name(x) + ", " +
                                poset().name(y));
  }
  return it->second;
}

int Sheaf::lower_bound() const {
  int b = INT_MAX;
  for (const auto& s : rep_->stalks) b = std::min(b, s.lo());
  return b;
}

int Sheaf::upper_bound() const {
  int t = INT_MIN;
  for (const auto& s : rep_->stalks) t = std::max(t, s.hi());
  return t;
}

std::optional<int> Sheaf::truncated_at() const {
  std::optional<int> t;
  for (const auto& s : rep_->stalks) {
    if (s.truncated_at()) t = t ? std::min(*t, *s.truncated_at()) : *s.truncated_at();
  }
  return t;
}

int Sheaf::certified_degree() const {
  auto t = truncated_at();
  return t ? *t - 1 : INT_MAX;
}

SheafMap::SheafMap(Sheaf source, Sheaf target, std::vector<ChainMap> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (components_.size() != source_.poset().size() || !(source_.poset() == target_.poset())) {
    throw std::invalid_argument("SheafMap: posets differ or component count is wrong");
  }
}

SheafMap SheafMap::identity(const Sheaf& f) {
  std::vector<ChainMap> comps;
  for (const auto& s : f.stalks()) comps.push_back(ChainMap::identity(s));
  return SheafMap(f, f, std::move(comps));
}

std::optional<std::string> SheafMap::failure() const {
  const Poset& p = source_.poset();
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!components_[x].commutes()) return "component at " + p.name(static_cast<int>(x)) + " is not a chain map";
  }
  for (const auto& [x, y] : p.covers()) {
    if (!same_components(target_.restriction(x, y).after(components_[x]),
                         components_[y].after(source_.restriction(x, y)))) {
      return "does not commute with the restriction " + p.name(x) + " -> " + p.name(y);
    }
  }
  return std::nullopt;
}

SheafMap SheafMap::after(const SheafMap& g) const {
  std::vector<ChainMap> comps;
  for (std::size_t x = 0; x < components_.size(); ++x) comps.push_back(components_[x].after(g.components_[x]));
  return SheafMap(g.source_, target_, std::move(comps));
}

// ---------------------------------------------------------------------------
// Sections

namespace {

// Members of U with larger elements first, so that row reduction of the
// constraints puts the free variables on the minimal elements.
std::vector<int> ordered_members(const Poset& p, const OpenSet& u) {
  std::vector<int> out;
  const auto& lin = p.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it)
    if (u.contains(*it)) out.push_back(*it);
  return out;
}

// Rows `rows` (ambient indices) of blockdiag(maps) * basis, computed block by
// block so the block-diagonal matrix is never formed.
Matrix blockwise_rows(const Field& field, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& row_offsets, const std::vector<std::size_t>& col_offsets,
                      const std::function<Matrix(std::size_t)>& block, const Matrix& basis) {
  Matrix out(field, rows.size(), basis.cols());
  const std::size_t nblocks = row_offsets.size() - 1;
  std::size_t k = 0;
  for (std::size_t b = 0; b < nblocks && k < rows.size(); ++b) {
    std::vector<std::size_t> local;
    std::size_t start = k;
    while (k < rows.size() && rows[k] < row_offsets[b + 1]) local.push_back(rows[k++] - row_offsets[b]);
    if (local.empty()) continue;
    const std::size_t w = col_offsets[b + 1] - col_offsets[b];
    if (w == 0) continue;
    Matrix m = block(b).select_rows(local) * basis.block(col_offsets[b], 0, w, basis.cols());
    out.set_block(start, 0, m);
  }
  return out;
}

// Each row holds a single entry equal to one: the map copies coordinates.
bool is_selection(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.entry_is_zero(i, j)) continue;
      if (!(m.at(i, j) == Scalar(m.field(), 1))) return false;
      ++ones;
    }
    if (ones != 1) return false;
  }
  return true;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

// When every restriction inside U copies coordinates, the constraints only
// identify coordinates with each other and the sections are the functions
// constant on each class. Returns nullopt otherwise.
std::optional<Subspace> selection_kernel(const Sheaf& f, const OpenSet& u, const std::vector<int>& elements,
                                         const std::vector<int>& pos, const std::vector<std::size_t>& off, int n) {
  const Poset& p = f.poset();
  std::vector<Matrix> maps;
  for (const auto& [x, y] : p.covers()) {
    if (!u.contains(x)) continue;
    Matrix r = f.restriction(x, y).component(n);
    if (!is_selection(r)) return std::nullopt;
    maps.push_back(std::move(r));
  }
  const std::size_t amb = off.back();
  std::vector<std::size_t> parent(amb);
  for (std::size_t i = 0; i < amb; ++i) parent[i] = i;
  std::size_t k = 0;
  for (const auto& [x, y] : p.covers()) {
    if (!u.contains(x)) continue;
    const Matrix& r = maps[k++];
    for (std::size_t i = 0; i < r.rows(); ++i) {
      std::size_t j = 0;
      while (r.entry_is_zero(i, j)) ++j;
      std::size_t a = find_root(parent, off[pos[y]] + i);
      std::size_t b = find_root(parent, off[pos[x]] + j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  (void)elements;
  std::vector<std::size_t> reps;
  std::vector<std::size_t> column(amb);
  for (std::size_t i = 0; i < amb; ++i) {
    std::size_t r = find_root(parent, i);
    if (r == i) {
      column[i] = reps.size();
      reps.push_back(i);
    }
  }
  Matrix basis(f.field(), amb, reps.size());
  for (std::size_t i = 0; i < amb; ++i) basis.set(i, column[find_root(parent, i)], 1);
  return Subspace::from_normal_form(std::move(basis), std::move(reps));
}

}  // namespace

Sections sections(const Sheaf& f, const OpenSet& u) {
  const Poset& p = f.poset();
  if (!p.is_up_set(u.mask)) throw NotOpen("sections: not an up-set: " + open_to_string(p, u));
  Sections out;
  out.elements = ordered_members(p, u);
  const Field& field = f.field();
  const int b = f.lower_bound();
  int top = f.upper_bound();
  if (out.elements.empty() || top < b) {
    out.complex = CochainComplex(field, b);
    return out;
  }
  std::vector<int> pos(p.size(), -1);
  for (std::size_t i = 0; i < out.elements.size(); ++i) pos[out.elements[i]] = static_cast<int>(i);

  for (int n = b; n <= top; ++n) {
    std::vector<std::size_t> off{0};
    for (int x : out.elements) off.push_back(off.back() + f.stalk(x).dim(n));
    const std::size_t amb = off.back();
    if (auto fast = selection_kernel(f, u, out.elements, pos, off, n)) {
      out.basis.emplace(n, std::move(*fast));
      out.offsets.emplace(n, std::move(off));
      continue;
    }
    std::size_t nrows = 0;
    for (const auto& [x, y] : p.covers())
      if (u.contains(x)) nrows += f.stalk(y).dim(n);
    Matrix c(field, nrows, amb);
    std::size_t r = 0;
    for (const auto& [x, y] : p.covers()) {
      if (!u.contains(x)) continue;
      const std::size_t dy = f.stalk(y).dim(n);
      if (dy == 0) continue;
      c.set_block(r, off[pos[x]], f.restriction(x, y).component(n));
      c.set_block(r, off[pos[y]], Matrix::identity(field, dy).negated());
      r += dy;
    }
    out.basis.emplace(n, Subspace::kernel(c));
    out.offsets.emplace(n, std::move(off));
  }

  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = b; n <= top; ++n) dims.push_back(out.basis.at(n).dim());
  for (int n = b; n < top; ++n) {
    const Subspace& next = out.basis.at(n + 1);
    diffs.push_back(blockwise_rows(
        field, next.coord_rows(), out.offsets.at(n + 1), out.offsets.at(n),
        [&](std::size_t i) { return f.stalk(out.elements[i]).d(n); }, out.basis.at(n).basis()));
  }
  out.complex = CochainComplex(field, b, std::move(dims), std::move(diffs), f.truncated_at());
  return out;
}

ChainMap Sections::evaluation(int x, const Sheaf& f) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  if (it == elements.end()) throw std::invalid_argument("evaluation: element not in the open set");
  const std::size_t i = static_cast<std::size_t>(it - elements.begin());
  std::map<int, Matrix> comps;
  for (const auto& [n, k] : basis) {
    const auto& off = offsets.at(n);
    comps.emplace(n, k.basis().block(off[i], 0, off[i + 1] - off[i], k.dim()));
  }
  return ChainMap(complex, f.stalk(x), std::move(comps));
}

ChainMap sections_map(const SheafMap& f, const Sections& src, const Sections& tgt) {
  if (src.elements != tgt.elements) throw std::invalid_argument("sections_map: open sets differ");
  std::map<int, Matrix> comps;
  for (const auto& [n, ks] : src.basis) {
    auto it = tgt.basis.find(n);
    if (it == tgt.basis.end()) continue;
    comps.emplace(n, blockwise_rows(
                         f.source().field(), it->second.coord_rows(), tgt.offsets.at(n), src.offsets.at(n),
                         [&](std::size_t i) { return f.component(src.elements[i]).component(n); }, ks.basis()));
  }
  return ChainMap(src.complex, tgt.complex, std::move(comps));
}

ChainMap sections_map(const SheafMap& f, const OpenSet& u) {
  return sections_map(f, sections(f.source(), u), sections(f.target(), u));
}

ChainMap restrict_sections(const Sheaf& f, const Sections& big, const Sections& small) {
  std::map<int, Matrix> comps;
  for (const auto& [n, ks] : small.basis) {
    auto it = big.basis.find(n);
    if (it == big.basis.end()) continue;
    const auto& soff = small.offsets.at(n);
    const auto& boff = big.offsets.at(n);
    std::vector<std::size_t> rows;
    for (std::size_t r : ks.coord_rows()) {
      std::size_t i = static_cast<std::size_t>(std::upper_bound(soff.begin(), soff.end(), r) - soff.begin()) - 1;
      int x = small.elements[i];
      std::size_t j = static_cast<std::size_t>(std::find(big.elements.begin(), big.elements.end(), x) -
                                               big.elements.begin());
      if (j == big.elements.size()) throw std::invalid_argument("restrict_sections: open sets are not nested");
      rows.push_back(boff[j] + (r - soff[i]));
    }
    comps.emplace(n, it->second.basis().select_rows(rows));
  }
  (void)f;
  return ChainMap(big.complex, small.complex, std::move(comps));
}

bool check_sheaf_equalizer(const Sheaf& f, const OpenSet& u, const std::vector<OpenSet>& cover) {
  const Poset& p = f.poset();
  std::uint64_t uni = 0;
  for (const auto& v : cover) {
    if (!p.is_up_set(v.mask)) throw NotOpen("cover member is not open: " + open_to_string(p, v));
    if (v.mask & ~u.mask) throw NotACover("cover member " + open_to_string(p, v) + " is not inside U");
    uni |= v.mask;
  }
  if (uni != u.mask) throw NotACover("cover does not exhaust " + open_to_string(p, u));
  Sections whole = sections(f, u);
  std::vector<Sections> parts;
  for (const auto& v : cover) parts.push_back(sections(f, v));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Sections> overlaps;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.size(); ++j) {
      pairs.emplace_back(i, j);
      overlaps.push_back(sections(f, OpenSet{cover[i].mask & cover[j].mask}));
    }
  }
  const Field& field = f.field();
  for (int n = f.lower_bound(); n <= f.upper_bound(); ++n) {
    std::vector<Matrix> into_parts;
    std::vector<std::size_t> part_off{0};
    for (const auto& s : parts) {
      into_parts.push_back(restrict_sections(f, whole, s).component(n));
      part_off.push_back(part_off.back() + s.complex.dim(n));
    }
    std::size_t overlap_total = 0;
    for (const auto& s : overlaps) overlap_total += s.complex.dim(n);
    Matrix delta(field, overlap_total, part_off.back());
    std::size_t row = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      delta.set_block(row, part_off[i], restrict_sections(f, parts[i], overlaps[k]).component(n));
      delta.add_block(row, part_off[j], restrict_sections(f, parts[j], overlaps[k]).component(n), -1);
      row += overlaps[k].complex.dim(n);
    }
    Subspace eq = Subspace::kernel(delta);
    Matrix glue = Matrix::vstack(field, whole.complex.dim(n), into_parts);
    if (rank(glue) != whole.complex.dim(n)) return false;
    if (eq.dim() != whole.complex.dim(n) || !eq.contains(glue)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

Sheaf constant_sheaf(std::shared_ptr<const Poset> p, const CochainComplex& c) {
  std::vector<CochainComplex> stalks(p->size(), c);
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& cov : p->covers()) res.emplace(cov, ChainMap::identity(c));
  Field f = c.field();
  return Sheaf(std::move(p), f, std::move(stalks), std::move(res));
}

Sheaf skyscraper(std::shared_ptr<const Poset> p, int x, const CochainComplex& d) {
  if (x < 0 || static_cast<std::size_t>(x) >= p->size()) throw UnknownElement("skyscraper: unknown element");
  CochainComplex zero(d.field(), d.lo());
  std::vector<CochainComplex> stalks;
  for (int y = 0; y < static_cast<int>(p->size()); ++y) stalks.push_back(p->leq(y, x) ? d : zero);
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [a, b] : p->covers()) {
    res.emplace(std::make_pair(a, b), (p->leq(a, x) && p->leq(b, x)) ? ChainMap::identity(d)
                                                                     : ChainMap::zero(stalks[a], stalks[b]));
  }
  Field f = d.field();
  return Sheaf(std::move(p), f, std::move(stalks), std::move(res));
}

SheafMap skyscraper_unit(const Sheaf& f, int x) {
  Sheaf sky = skyscraper(f.poset_ptr(), x, f.stalk(x));
  std::vector<ChainMap> comps;
  for (int y = 0; y < static_cast<int>(f.poset().size()); ++y) {
    comps.push_back(f.poset().leq(y, x) ? f.restriction(y, x) : ChainMap::zero(f.stalk(y), sky.stalk(y)));
  }
  return SheafMap(f, sky, std::move(comps));
}

void MonotoneMap::validate() const {
  if (images.size() != source->size()) throw NotMonotone("monotone map: one image per source element required");
  for (int im : images) {
    if (im < 0 || static_cast<std::size_t>(im) >= target->size()) throw UnknownElement("monotone map: bad image");
  }
  for (int x = 0; x < static_cast<int>(source->size()); ++x) {
    for (int y = 0; y < static_cast<int>(source->size()); ++y) {
      if (source->leq(x, y) && !target->leq(images[x], images[y])) {
        throw NotMonotone("map is not monotone on " + source->name(x) + " <= " + source->name(y));
      }
    }
  }
}

OpenSet MonotoneMap::preimage(const OpenSet& v) const {
  OpenSet u;
  for (int x = 0; x < static_cast<int>(source->size()); ++x)
    if (v.contains(images[x])) u.mask |= std::uint64_t{1} << x;
  return u;
}

Sheaf direct_image(const MonotoneMap& f, const Sheaf& sheaf) {
  f.validate();
  const Poset& q = *f.target;
  std::vector<Sections> secs;
  std::vector<CochainComplex> stalks;
  for (int y = 0; y < static_cast<int>(q.size()); ++y) {
    secs.push_back(sections(sheaf, f.preimage(OpenSet{q.up_mask(y)})));
    stalks.push_back(secs.back().complex);
  }
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [a, b] : q.covers()) res.emplace(std::make_pair(a, b), restrict_sections(sheaf, secs[a], secs[b]));
  return Sheaf(f.target, sheaf.field(), std::move(stalks), std::move(res));
}

SheafMap direct_image_map(const MonotoneMap& f, const SheafMap& g) {
  Sheaf s = direct_image(f, g.source());
  Sheaf t = direct_image(f, g.target());
  std::vector<ChainMap> comps;
  for (int y = 0; y < static_cast<int>(f.target->size()); ++y) {
    comps.push_back(sections_map(g, f.preimage(OpenSet{f.target->up_mask(y)})));
  }
  return SheafMap(s, t, std::move(comps));
}

Sheaf sheaf_sum(const Sheaf& a, const Sheaf& b) {
  const Poset& p = a.poset();
  std::vector<CochainComplex> stalks;
  for (std::size_t x = 0; x < p.size(); ++x) stalks.push_back(direct_sum({a.stalk(x), b.stalk(x)}));
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [x, y] : p.covers()) {
    res.emplace(std::make_pair(x, y), direct_sum(std::vector<ChainMap>{a.restriction(x, y), b.restriction(x, y)}));
  }
  return Sheaf(a.poset_ptr(), a.field(), std::move(stalks), std::move(res));
}

std::vector<std::map<int, std::size_t>> stalk_betti(const Sheaf& f) {
  std::vector<std::map<int, std::size_t>> out;
  for (const auto& s : f.stalks()) out.push_back(betti_numbers(s));
  return out;
}

Sheaf truncate_sheaf(const Sheaf& f, int m) {
  std::vector<CochainComplex> stalks;
  for (const auto& s : f.stalks()) stalks.push_back(truncate_above(s, m));
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [x, y] : f.poset().covers()) {
    res.emplace(std::make_pair(x, y), truncate_map(f.restriction(x, y), stalks[x], stalks[y]));
  }
  return Sheaf(f.poset_ptr(), f.field(), std::move(stalks), std::move(res));
}

}  // namespace godex
