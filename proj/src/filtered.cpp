#include "godex/filtered.hpp"

#include <algorithm>
#include <climits>

namespace godex {
namespace {

std::string at(int k, int n) { return "(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")"; }

// Subspace spanned by blocks placed at row offsets of an ambient space.
Subspace embedded(const Field& field, std::size_t ambient,
                  const std::vector<std::pair<std::size_t, Matrix>>& blocks) {
  std::size_t cols = 0;
  for (const auto& [off, b] : blocks) cols += b.cols();
  Matrix m(field, ambient, cols);
  std::size_t c = 0;
  for (const auto& [off, b] : blocks) {
    if (b.cols() && b.rows()) m.set_block(off, c, b);
    c += b.cols();
  }
  return Subspace::span(m);
}

Subspace image_of(const Matrix& m, const Subspace& s) {
  if (m.rows() == 0) return Subspace(s.field(), 0);
  return Subspace::image(m, s);
}

Subspace preimage_of(const Matrix& m, const Subspace& target, std::size_t source_dim) {
  if (m.rows() == 0) return Subspace::full(target.field(), source_dim);
  return Subspace::preimage(m, target);
}

int page_top(const FilteredComplex& fc, std::optional<int> max_degree) {
  int top = std::min(fc.base().hi(), fc.base().certified_degree());
  if (max_degree) top = std::min(top, *max_degree);
  return top;
}

class PageBuilder {
 public:
  explicit PageBuilder(const FilteredComplex& fc) : fc_(fc) {}

  // Z_r^{p,n}; r = -1 gives F^p A^n.
  const Subspace& cycles(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    Subspace z = fc_.step(p, n);
    if (r >= 0 && fc_.base().dim(n) > 0) {
      z = z.intersect(preimage_of(fc_.base().d(n), fc_.step(p + r, n + 1), fc_.base().dim(n)));
    }
    return z_.emplace(key, std::move(z)).first->second;
  }

  Subspace boundaries(int r, int p, int n) {
    Subspace b = cycles(r - 1, p + 1, n);
    if (fc_.base().dim(n - 1) > 0 && fc_.base().dim(n) > 0) {
      b = b.sum(image_of(fc_.base().d(n - 1), cycles(r - 1, p - r + 1, n - 1)));
    }
    return b;
  }

 private:
  const FilteredComplex& fc_;
  std::map<std::tuple<int, int, int>, Subspace> z_;
};

// Columns of the quotient basis, as vectors of the ambient space.
Matrix representatives(const PageTerm& t) { return t.cycles.basis() * t.quotient.section; }

Matrix to_quotient(const PageTerm& t, const Matrix& vectors) {
  return t.quotient.projection * t.cycles.coordinates(vectors);
}

}  // namespace

// ---------------------------------------------------------------------------
// FilteredComplex

FilteredComplex::FilteredComplex(CochainComplex base, int k_min, int k_max, std::map<int, std::vector<Subspace>> steps)
    : base_(std::move(base)), k_min_(k_min), k_max_(k_max), steps_(std::move(steps)) {
  if (k_max_ < k_min_) throw NotFiltered("filtration: k_max < k_min");
  for (const auto& [n, v] : steps_) {
    if (v.size() != static_cast<std::size_t>(k_max_ - k_min_ + 1)) {
      throw NotFiltered("filtration: degree " + std::to_string(n) + " needs one step per k");
    }
    for (const auto& s : v) {
      if (s.ambient() != base_.dim(n)) throw NotFiltered("filtration: ambient mismatch in degree " + std::to_string(n));
    }
    if (base_.dim(n) && v.front().dim() != base_.dim(n)) {
      throw NotFiltered("filtration: F^k_min is not everything in degree " + std::to_string(n));
    }
  }
  for (int n = base_.lo(); n <= base_.hi(); ++n) {
    for (int k = k_min_; k <= k_max_; ++k) {
      Subspace s = step(k, n);
      if (!s.contains(step(k + 1, n))) throw NotFiltered("filtration is not decreasing at " + at(k, n));
      if (n < base_.hi() && base_.dim(n + 1) > 0 && !step(k, n + 1).contains(image_of(base_.d(n), s))) {
        throw NotFiltered("d does not preserve the filtration at " + at(k, n));
      }
    }
  }
}

FilteredComplex FilteredComplex::trivial(const CochainComplex& base, int weight) {
  return FilteredComplex(base, weight, weight, {});
}

Subspace FilteredComplex::step(int k, int n) const {
  const std::size_t d = base_.dim(n);
  if (d == 0) return Subspace(base_.field(), 0);
  if (k <= k_min_) return Subspace::full(base_.field(), d);
  if (k > k_max_) return Subspace(base_.field(), d);
  auto it = steps_.find(n);
  if (it == steps_.end()) return Subspace(base_.field(), d);
  return it->second[static_cast<std::size_t>(k - k_min_)];
}

bool same_filtration(const FilteredComplex& a, const FilteredComplex& b, int max_degree) {
  if (!(a.base() == b.base())) return false;
  const int lo = std::min(a.k_min(), b.k_min());
  const int hi = std::max(a.k_max(), b.k_max()) + 1;
  for (int n = a.base().lo(); n <= std::min(a.base().hi(), max_degree); ++n) {
    for (int k = lo; k <= hi; ++k) {
      if (!(a.step(k, n) == b.step(k, n))) return false;
    }
  }
  return true;
}

CochainComplex associated_graded(const FilteredComplex& fc, int p) {
  const CochainComplex& a = fc.base();
  std::vector<Subquotient> q;
  std::vector<Subspace> z;
  std::vector<std::size_t> dims;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    z.push_back(fc.step(p, n));
    q.push_back(subquotient(z.back(), fc.step(p + 1, n)));
    dims.push_back(q.back().dim);
  }
  std::vector<Matrix> diffs;
  for (int n = a.lo(); n < a.hi(); ++n) {
    const std::size_t k = static_cast<std::size_t>(n - a.lo());
    Matrix img = a.d(n) * (z[k].basis() * q[k].section);
    diffs.push_back(q[k + 1].projection * z[k + 1].coordinates(img));
  }
  if (dims.empty()) return CochainComplex(a.field(), a.lo());
  return CochainComplex(a.field(), a.lo(), std::move(dims), std::move(diffs), a.truncated_at());
}

// ---------------------------------------------------------------------------
// Pages

std::size_t SpectralPage::dim(int p, int q) const {
  auto it = terms.find({p, q});
  return it == terms.end() ? 0 : it->second.dim();
}

std::map<std::pair<int, int>, std::size_t> SpectralPage::dims() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [pq, t] : terms)
    if (t.dim()) out.emplace(pq, t.dim());
  return out;
}

SpectralPage er_page(const FilteredComplex& fc, int r, std::optional<int> max_degree) {
  if (r < 0) throw std::invalid_argument("er_page: r must be >= 0");
  const CochainComplex& a = fc.base();
  const int top = page_top(fc, max_degree);
  PageBuilder pb(fc);
  SpectralPage page;
  page.r = r;
  for (int n = a.lo(); n <= top; ++n) {
    if (a.dim(n) == 0) continue;
    for (int p = fc.k_min(); p <= fc.k_max(); ++p) {
      PageTerm t;
      t.cycles = pb.cycles(r, p, n);
      t.quotient = subquotient(t.cycles, pb.boundaries(r, p, n));
      page.terms.emplace(std::make_pair(p, n - p), std::move(t));
    }
  }
  for (const auto& [pq, t] : page.terms) {
    const auto [p, q] = pq;
    auto it = page.terms.find({p + r, q - r + 1});
    if (t.dim() == 0 || it == page.terms.end() || it->second.dim() == 0) continue;
    Matrix image = a.d(p + q) * representatives(t);
    page.differentials.emplace(pq, to_quotient(it->second, image));
  }
  return page;
}

std::vector<SpectralPage> spectral_pages(const FilteredComplex& fc, int r_max, std::optional<int> max_degree) {
  const CochainComplex& a = fc.base();
  const int top = page_top(fc, max_degree);
  // Degree `top` has no outgoing differential on record unless nothing is above it.
  const int checked = top == a.hi() ? top : top - 1;
  std::vector<SpectralPage> pages;
  for (int r = 0; r <= r_max; ++r) pages.push_back(er_page(fc, r, max_degree));
  for (int r = 0; r < r_max; ++r) {
    const SpectralPage& e = pages[r];
    for (const auto& [pq, d] : e.differentials) {
      auto next = e.differentials.find({pq.first + r, pq.second - r + 1});
      if (next != e.differentials.end() && !(next->second * d).is_zero()) {
        throw InvariantViolation("d_r d_r != 0 on page " + std::to_string(r));
      }
    }
    for (const auto& [pq, t] : e.terms) {
      if (pq.first + pq.second > checked) continue;
      std::size_t ker = t.dim();
      if (auto out = e.differentials.find(pq); out != e.differentials.end()) ker -= rank(out->second);
      std::size_t im = 0;
      if (auto in = e.differentials.find({pq.first - r, pq.second + r - 1}); in != e.differentials.end()) {
        im = rank(in->second);
      }
      if (pages[r + 1].dim(pq.first, pq.second) != ker - im) {
        throw InvariantViolation("E_" + std::to_string(r + 1) + " is not the cohomology of E_" + std::to_string(r) +
                                 " at (" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")");
      }
    }
  }
  return pages;
}

int stable_page(const FilteredComplex& fc) { return std::max(1, fc.k_max() - fc.k_min() + 1); }

// ---------------------------------------------------------------------------
// Filtered maps

void FilteredMap::validate() const {
  const int lo = std::min(source.k_min(), target.k_min());
  const int hi = std::max(source.k_max(), target.k_max()) + 1;
  const CochainComplex& s = source.base();
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (s.dim(n) == 0 || target.base().dim(n) == 0) continue;
    Matrix m = map.component(n);
    for (int k = lo; k <= hi; ++k) {
      if (!target.step(k, n).contains(image_of(m, source.step(k, n)))) {
        throw NotFiltered("map does not preserve the filtration at " + at(k, n));
      }
    }
  }
}

std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& f, int r, std::optional<int> max_degree) {
  SpectralPage s = er_page(f.source, r, max_degree);
  SpectralPage t = er_page(f.target, r, max_degree);
  std::map<std::pair<int, int>, Matrix> out;
  for (const auto& [pq, term] : s.terms) {
    auto it = t.terms.find(pq);
    const std::size_t rows = it == t.terms.end() ? 0 : it->second.dim();
    if (term.dim() == 0 || rows == 0) {
      out.emplace(pq, Matrix(f.source.field(), rows, term.dim()));
      continue;
    }
    Matrix image = f.map.component(pq.first + pq.second) * representatives(term);
    out.emplace(pq, to_quotient(it->second, image));
  }
  return out;
}

bool is_er_quis(const FilteredMap& f, int r, std::optional<int> max_degree) {
  f.validate();
  int top = std::min(f.source.base().certified_degree(), f.target.base().certified_degree());
  if (max_degree) top = std::min(top, *max_degree);
  SpectralPage s = er_page(f.source, r + 1, top);
  SpectralPage t = er_page(f.target, r + 1, top);
  auto maps = page_map(f, r + 1, top);
  for (const auto& [pq, term] : t.terms) {
    if (term.dim() && s.dim(pq.first, pq.second) == 0) return false;
  }
  for (const auto& [pq, m] : maps) {
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

FilteredComplex decalage(const FilteredComplex& fc) {
  const CochainComplex& a = fc.base();
  if (a.total_dim() == 0) return FilteredComplex::trivial(a, fc.k_min());
  const int k_min = fc.k_min() - a.hi() - 1;
  const int k_max = fc.k_max() - a.lo();
  std::map<int, std::vector<Subspace>> steps;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    if (a.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = k_min; k <= k_max; ++k) {
      Subspace s = fc.step(k + n, n);
      if (a.dim(n + 1) > 0) s = s.intersect(preimage_of(a.d(n), fc.step(k + n + 1, n + 1), a.dim(n)));
      v.push_back(std::move(s));
    }
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(a, k_min, k_max, std::move(steps));
}

FilteredComplex filtered_tensor(const FilteredComplex& a, const FilteredComplex& b) {
  CochainComplex base = tensor(a.base(), b.base());
  const int k_min = a.k_min() + b.k_min();
  const int k_max = a.k_max() + b.k_max();
  std::map<int, std::vector<Subspace>> steps;
  for (int n = base.lo(); n <= base.hi(); ++n) {
    if (base.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = k_min; k <= k_max; ++k) {
      std::vector<std::pair<std::size_t, Matrix>> blocks;
      std::size_t off = 0;
      for (int i = a.base().lo(); i <= a.base().hi(); ++i) {
        const int j = n - i;
        const std::size_t size = a.base().dim(i) * b.base().dim(j);
        if (size) {
          for (int ka = a.k_min(); ka <= a.k_max(); ++ka) {
            blocks.emplace_back(off, Matrix::kronecker(a.step(ka, i).basis(), b.step(k - ka, j).basis()));
          }
        }
        off += size;
      }
      v.push_back(embedded(base.field(), base.dim(n), blocks));
    }
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(base, k_min, k_max, std::move(steps));
}

FilteredComplex filtered_sum(const std::vector<FilteredComplex>& parts) {
  std::vector<CochainComplex> bases;
  int k_min = INT_MAX, k_max = INT_MIN;
  for (const auto& p : parts) {
    bases.push_back(p.base());
    k_min = std::min(k_min, p.k_min());
    k_max = std::max(k_max, p.k_max());
  }
  CochainComplex base = direct_sum(bases);
  std::map<int, std::vector<Subspace>> steps;
  for (int n = base.lo(); n <= base.hi(); ++n) {
    if (base.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = k_min; k <= k_max; ++k) {
      std::vector<std::pair<std::size_t, Matrix>> blocks;
      std::size_t off = 0;
      for (const auto& p : parts) {
        blocks.emplace_back(off, p.step(k, n).basis());
        off += p.base().dim(n);
      }
      v.push_back(embedded(base.field(), base.dim(n), blocks));
    }
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(base, k_min, k_max, std::move(steps));
}

FilteredComplex transport(const FilteredComplex& fc, const ChainMap& iso) {
  const CochainComplex& t = iso.target();
  std::map<int, std::vector<Subspace>> steps;
  for (int n = t.lo(); n <= t.hi(); ++n) {
    if (t.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = fc.k_min(); k <= fc.k_max(); ++k) v.push_back(image_of(iso.component(n), fc.step(k, n)));
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(t, fc.k_min(), fc.k_max(), std::move(steps));
}

void FilteredCosimplicial::validate() const {
  const int P = complex.p_max();
  if (static_cast<int>(levels.size()) != P + 1) throw NotFiltered("filtered cosimplicial: level count mismatch");
  for (int p = 0; p <= P; ++p) {
    if (!(levels[p].base() == complex.level(p))) {
      throw NotFiltered("filtered cosimplicial: level " + std::to_string(p) + " has a different complex");
    }
  }
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) FilteredMap{levels[p - 1], levels[p], complex.coface(p, i)}.validate();
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) FilteredMap{levels[p + 1], levels[p], complex.codegeneracy(p, j)}.validate();
}

FilteredCosimplicial filtered_constant(const FilteredComplex& a, int p_max) {
  return FilteredCosimplicial{CosimplicialComplex::constant(a.base(), p_max),
                              std::vector<FilteredComplex>(static_cast<std::size_t>(p_max + 1), a)};
}

FilteredCosimplicial levelwise_decalage(const FilteredCosimplicial& x) {
  FilteredCosimplicial out{x.complex, {}};
  for (const auto& l : x.levels) out.levels.push_back(decalage(l));
  return out;
}

FilteredComplex filtered_simple(const FilteredCosimplicial& x, int r, int n_top) {
  CochainComplex base = simple(x.complex, n_top);
  SimpleLayout l = simple_layout(x.complex, n_top);
  const int used = std::min(x.complex.p_max(), n_top - l.lo);
  int k_min = INT_MAX, k_max = INT_MIN;
  for (int i = 0; i <= used; ++i) {
    k_min = std::min(k_min, x.levels[i].k_min() + r * i);
    k_max = std::max(k_max, x.levels[i].k_max() + r * i);
  }
  std::map<int, std::vector<Subspace>> steps;
  for (int n = l.lo; n <= n_top; ++n) {
    if (base.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = k_min; k <= k_max; ++k) {
      std::vector<std::pair<std::size_t, Matrix>> blocks;
      for (int i = 0; i <= std::min(n - l.lo, used); ++i) {
        blocks.emplace_back(l.offset(n, i), x.levels[i].step(k - r * i, n - i).basis());
      }
      v.push_back(embedded(base.field(), base.dim(n), blocks));
    }
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(base, k_min, k_max, std::move(steps));
}

}  // namespace godex
