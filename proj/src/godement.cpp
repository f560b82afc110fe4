#include "godex/godement.hpp"

#include <algorithm>

#include "godex/oracle.hpp"

namespace godex {
namespace {

std::vector<int> ups(const Poset& p, int x) {
  std::vector<int> out;
  for (int y = 0; y < static_cast<int>(p.size()); ++y)
    if (p.leq(x, y)) out.push_back(y);
  return out;
}

// Offsets of the factors S_y, y in ups(x), inside (TS)_x in degree q.
std::vector<std::size_t> factor_offsets(const Sheaf& s, const std::vector<int>& factors, int q) {
  std::vector<std::size_t> off{0};
  for (int y : factors) off.push_back(off.back() + s.stalk(y).dim(q));
  return off;
}

std::size_t position(const std::vector<int>& v, int y) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), y) - v.begin());
}

bool same_through(const ChainMap& a, const ChainMap& b, int top) {
  for (int n = std::min(a.lo(), b.lo()); n <= std::min(std::max(a.hi(), b.hi()), top); ++n) {
    if (!(a.component(n) == b.component(n))) return false;
  }
  return true;
}

// T(g) for g: S -> S', given TS and TS' already built.
SheafMap t_map(const SheafMap& g, const Sheaf& ts, const Sheaf& tt) {
  const Poset& p = ts.poset();
  std::vector<ChainMap> comps;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    auto fac = ups(p, x);
    const CochainComplex& src = ts.stalk(x);
    const CochainComplex& tgt = tt.stalk(x);
    std::map<int, Matrix> m;
    for (int q = src.lo(); q <= src.hi(); ++q) {
      if (tgt.dim(q) == 0 || src.dim(q) == 0) continue;
      auto so = factor_offsets(g.source(), fac, q);
      auto to = factor_offsets(g.target(), fac, q);
      if (so.back() != src.dim(q) || to.back() != tgt.dim(q)) {
        throw InvariantViolation("T(f): factor sizes do not match TF at " + p.name(x) + " degree " + std::to_string(q) + " " + std::to_string(so.back()) + "/" + std::to_string(src.dim(q)) + " " + std::to_string(to.back()) + "/" + std::to_string(tgt.dim(q)));
      }
      Matrix b(ts.field(), tgt.dim(q), src.dim(q));
      for (std::size_t k = 0; k < fac.size(); ++k) {
        if (so[k + 1] == so[k] || to[k + 1] == to[k]) continue;
        b.set_block(to[k], so[k], g.component(fac[k]).component(q));
      }
      m.emplace(q, std::move(b));
    }
    comps.emplace_back(src, tgt, std::move(m));
  }
  return SheafMap(ts, tt, std::move(comps));
}

SheafMap eta_into(const Sheaf& s, const Sheaf& ts) {
  const Poset& p = s.poset();
  std::vector<ChainMap> comps;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    auto fac = ups(p, x);
    const CochainComplex& tgt = ts.stalk(x);
    std::map<int, Matrix> m;
    for (int q = s.stalk(x).lo(); q <= s.stalk(x).hi(); ++q) {
      if (tgt.dim(q) == 0 || s.stalk(x).dim(q) == 0) continue;
      auto off = factor_offsets(s, fac, q);
      Matrix b(s.field(), tgt.dim(q), s.stalk(x).dim(q));
      for (std::size_t k = 0; k < fac.size(); ++k) {
        if (off[k + 1] == off[k]) continue;
        b.set_block(off[k], 0, s.restriction(x, fac[k]).component(q));
      }
      m.emplace(q, std::move(b));
    }
    comps.emplace_back(s.stalk(x), tgt, std::move(m));
  }
  return SheafMap(s, ts, std::move(comps));
}

// ν_S: T(TS) -> TS.
SheafMap nu_from(const Sheaf& s, const Sheaf& ts, const Sheaf& tts) {
  const Poset& p = s.poset();
  std::vector<ChainMap> comps;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    auto fac = ups(p, x);
    const CochainComplex& src = tts.stalk(x);
    const CochainComplex& tgt = ts.stalk(x);
    std::map<int, Matrix> m;
    for (int q = src.lo(); q <= src.hi(); ++q) {
      if (tgt.dim(q) == 0 || src.dim(q) == 0) continue;
      auto outer = factor_offsets(ts, fac, q);  // (TS)_y inside (T²S)_x
      auto target = factor_offsets(s, fac, q);  // S_y inside (TS)_x
      Matrix b(s.field(), tgt.dim(q), src.dim(q));
      for (std::size_t k = 0; k < fac.size(); ++k) {
        const int y = fac[k];
        const std::size_t d = s.stalk(y).dim(q);
        if (d == 0) continue;
        auto inner_fac = ups(p, y);
        auto inner = factor_offsets(s, inner_fac, q);
        const std::size_t col = outer[k] + inner[position(inner_fac, y)];
        b.set_block(target[k], col, Matrix::identity(s.field(), d));
      }
      m.emplace(q, std::move(b));
    }
    comps.emplace_back(src, tgt, std::move(m));
  }
  return SheafMap(tts, ts, std::move(comps));
}

// Re-bases every component of g onto new source and target sheaves with the
// same stalks up to truncation.
SheafMap rebase(const SheafMap& g, const Sheaf& source, const Sheaf& target) {
  std::vector<ChainMap> comps;
  for (int x = 0; x < static_cast<int>(source.poset().size()); ++x) {
    comps.push_back(truncate_map(g.component(x), source.stalk(x), target.stalk(x)));
  }
  return SheafMap(source, target, std::move(comps));
}

// T^times(g) for g: powers[src] -> powers[tgt].
SheafMap apply_t(SheafMap g, const std::vector<Sheaf>& powers, int src, int tgt, int times) {
  for (int k = 1; k <= times; ++k) g = t_map(g, powers[src + k], powers[tgt + k]);
  return g;
}

std::vector<OpenSet> opens_or_all(const Poset& p, const std::optional<std::vector<OpenSet>>& opens) {
  if (opens && !opens->empty()) return *opens;
  return up_sets(p);
}

void add_witnesses(EquivalenceReport& r, const std::string& where, const QuisReport& q) {
  for (const auto& [n, ok] : q.per_degree) {
    if (!ok) r.witnesses.push_back({where, n});
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CosimplicialSheaf

CosimplicialSheaf::CosimplicialSheaf(std::vector<Sheaf> levels, std::vector<std::vector<SheafMap>> cofaces,
                                     std::vector<std::vector<SheafMap>> codegeneracies)
    : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codeg_(std::move(codegeneracies)) {
  if (levels_.empty() || cofaces_.size() != levels_.size() || codeg_.size() != levels_.size()) {
    throw std::invalid_argument("CosimplicialSheaf: inconsistent level counts");
  }
}

CosimplicialComplex CosimplicialSheaf::at_stalk(int x) const {
  const int P = p_max();
  std::vector<CochainComplex> lv;
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 0; p <= P; ++p) lv.push_back(levels_[p].stalk(x));
  for (int p = 1; p <= P; ++p)
    for (const auto& m : cofaces_[p]) cof[p].push_back(m.component(x));
  for (int p = 0; p < P; ++p)
    for (const auto& m : codeg_[p]) cod[p].push_back(m.component(x));
  return CosimplicialComplex(std::move(lv), std::move(cof), std::move(cod));
}

namespace {

CosimplicialComplex from_sections(const CosimplicialSheaf& g, const std::vector<Sections>& secs) {
  const int P = g.p_max();
  std::vector<CochainComplex> lv;
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 0; p <= P; ++p) lv.push_back(secs[p].complex);
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) cof[p].push_back(sections_map(g.coface(p, i), secs[p - 1], secs[p]));
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) cod[p].push_back(sections_map(g.codegeneracy(p, j), secs[p + 1], secs[p]));
  return CosimplicialComplex(std::move(lv), std::move(cof), std::move(cod));
}

std::vector<Sections> level_sections(const CosimplicialSheaf& g, const OpenSet& u) {
  std::vector<Sections> secs;
  for (int p = 0; p <= g.p_max(); ++p) secs.push_back(sections(g.level(p), u));
  return secs;
}

}  // namespace

CosimplicialComplex CosimplicialSheaf::at_open(const OpenSet& u) const {
  return from_sections(*this, level_sections(*this, u));
}

std::optional<std::string> CosimplicialSheaf::identity_failure() const {
  const Poset& p = levels_.front().poset();
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    if (auto f = at_stalk(x).identity_failure()) return "at " + p.name(x) + ": " + *f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The triple

Sheaf godement_T_sheaf(const Sheaf& f) {
  const Poset& p = f.poset();
  const int n = static_cast<int>(p.size());
  std::vector<CochainComplex> stalks;
  for (int x = 0; x < n; ++x) {
    std::vector<CochainComplex> parts;
    for (int y : ups(p, x)) parts.push_back(f.stalk(y));
    stalks.push_back(direct_sum(parts));
  }
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [x, y] : p.covers()) {
    auto fx = ups(p, x);
    auto fy = ups(p, y);
    std::map<int, Matrix> comps;
    for (int q = stalks[x].lo(); q <= stalks[x].hi(); ++q) {
      if (stalks[x].dim(q) == 0 || stalks[y].dim(q) == 0) continue;
      auto ox = factor_offsets(f, fx, q);
      auto oy = factor_offsets(f, fy, q);
      Matrix m(f.field(), stalks[y].dim(q), stalks[x].dim(q));
      for (std::size_t k = 0; k < fy.size(); ++k) {
        const std::size_t d = oy[k + 1] - oy[k];
        if (d) m.set_block(oy[k], ox[position(fx, fy[k])], Matrix::identity(f.field(), d));
      }
      comps.emplace(q, std::move(m));
    }
    res.emplace(std::make_pair(x, y), ChainMap(stalks[x], stalks[y], std::move(comps)));
  }
  return Sheaf(f.poset_ptr(), f.field(), std::move(stalks), std::move(res));
}

SheafMap godement_T_map(const SheafMap& f) {
  return t_map(f, godement_T_sheaf(f.source()), godement_T_sheaf(f.target()));
}

SheafMap godement_eta(const Sheaf& f) { return eta_into(f, godement_T_sheaf(f)); }

SheafMap godement_nu(const Sheaf& f) {
  Sheaf tf = godement_T_sheaf(f);
  return nu_from(f, tf, godement_T_sheaf(tf));
}

std::optional<std::string> triple_law_failure(const Sheaf& f) {
  Sheaf tf = godement_T_sheaf(f);
  Sheaf ttf = godement_T_sheaf(tf);
  Sheaf tttf = godement_T_sheaf(ttf);
  SheafMap eta = eta_into(f, tf);
  SheafMap nu = nu_from(f, tf, ttf);
  SheafMap t_eta = t_map(eta, tf, ttf);
  SheafMap eta_t = eta_into(tf, ttf);
  SheafMap t_nu = t_map(nu, tttf, ttf);
  SheafMap nu_t = nu_from(tf, ttf, tttf);
  const Poset& p = f.poset();
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    ChainMap id = ChainMap::identity(tf.stalk(x));
    if (!same_through(nu.component(x).after(t_eta.component(x)), id, INT_MAX)) return "ν∘Tη != id at " + p.name(x);
    if (!same_through(nu.component(x).after(eta_t.component(x)), id, INT_MAX)) return "ν∘ηT != id at " + p.name(x);
    if (!same_through(nu.component(x).after(t_nu.component(x)), nu.component(x).after(nu_t.component(x)), INT_MAX)) {
      return "ν∘Tν != ν∘νT at " + p.name(x);
    }
  }
  return std::nullopt;
}

GodementTriple godement_T(const Sheaf& f) {
  if (auto fail = triple_law_failure(f)) throw InvariantViolation("triple law fails: " + *fail);
  Sheaf tf = godement_T_sheaf(f);
  Sheaf ttf = godement_T_sheaf(tf);
  return GodementTriple{tf, eta_into(f, tf), nu_from(f, tf, ttf)};
}

// ---------------------------------------------------------------------------
// Resolution

GodementResolution godement_resolution(const Sheaf& f, int p_max, std::optional<int> n_top) {
  if (p_max < 0) throw std::invalid_argument("godement_resolution: p_max must be >= 0");
  // powers[k] holds T^k F, truncated at the current level's bound.
  std::vector<Sheaf> powers{f};
  std::vector<Sheaf> levels;
  std::vector<std::vector<SheafMap>> cof(p_max + 1), cod(p_max + 1);
  SheafMap eta;
  for (int p = 0; p <= p_max; ++p) {
    if (n_top) {
      for (auto& s : powers) s = truncate_sheaf(s, *n_top - p);
    }
    powers.push_back(godement_T_sheaf(powers[p]));
    levels.push_back(powers[p + 1]);
    if (p == 0) {
      eta = eta_into(powers[0], powers[1]);
      continue;
    }
    for (int i = 0; i <= p; ++i) {
      SheafMap d = apply_t(eta_into(powers[p - i], powers[p - i + 1]), powers, p - i, p - i + 1, i);
      cof[p].push_back(rebase(d, levels[p - 1], levels[p]));
    }
    for (int j = 0; j < p; ++j) {
      const int base = p - 1 - j;
      SheafMap s = apply_t(nu_from(powers[base], powers[base + 1], powers[base + 2]), powers, base + 2, base + 1, j);
      cod[p - 1].push_back(rebase(s, levels[p], levels[p - 1]));
    }
  }
  GodementResolution r;
  r.source = f;
  r.g = CosimplicialSheaf(std::move(levels), std::move(cof), std::move(cod));
  r.eta = rebase(eta, f, r.g.level(0));
  r.n_top = n_top;
  if (auto fail = r.g.identity_failure()) throw InvariantViolation("Godement resolution: " + *fail);
  return r;
}

GodementResolution godement_resolution_truncated(const Sheaf& f, int n_top) {
  return godement_resolution(f, std::max(0, n_top - f.lower_bound()), n_top);
}

ExtraDegeneracy stalk_extra_degeneracy(const GodementResolution& r, int x) {
  const Poset& p = r.source.poset();
  auto fac = ups(p, x);
  const std::size_t pos = position(fac, x);
  ExtraDegeneracy e;
  e.augmentation_source = r.source.stalk(x);
  e.coaugmentation = r.eta.component(x);
  for (int lvl = 0; lvl <= r.g.p_max(); ++lvl) {
    const Sheaf& below_sheaf = lvl == 0 ? r.source : r.g.level(lvl - 1);
    const CochainComplex& src = r.g.level(lvl).stalk(x);
    const CochainComplex& tgt = below_sheaf.stalk(x);
    std::map<int, Matrix> comps;
    for (int q = src.lo(); q <= src.hi(); ++q) {
      if (src.dim(q) == 0 || tgt.dim(q) == 0) continue;
      auto off = factor_offsets(below_sheaf, fac, q);
      Matrix m(src.field(), tgt.dim(q), src.dim(q));
      m.set_block(0, off[pos], Matrix::identity(src.field(), tgt.dim(q)));
      comps.emplace(q, std::move(m));
    }
    e.extra.emplace_back(src, tgt, std::move(comps));
  }
  return e;
}

SkyscraperCollapse skyscraper_extra_degeneracy(const GodementResolution& r, int x, const OpenSet& u) {
  const Sheaf& s = r.source;
  const Poset& p = s.poset();
  const int n = static_cast<int>(p.size());
  // σ_y: (TS)_y -> S_y picks the factor x when y <= x.
  auto sigma = [&](const Sheaf& base, const Sheaf& tbase) {
    std::vector<ChainMap> comps;
    for (int y = 0; y < n; ++y) {
      const CochainComplex& src = tbase.stalk(y);
      const CochainComplex& tgt = base.stalk(y);
      std::map<int, Matrix> m;
      if (p.leq(y, x)) {
        auto fac = ups(p, y);
        for (int q = src.lo(); q <= src.hi(); ++q) {
          if (src.dim(q) == 0 || tgt.dim(q) == 0) continue;
          auto off = factor_offsets(base, fac, q);
          Matrix b(src.field(), tgt.dim(q), src.dim(q));
          b.set_block(0, off[position(fac, x)], Matrix::identity(src.field(), tgt.dim(q)));
          m.emplace(q, std::move(b));
        }
      }
      comps.emplace_back(src, tgt, std::move(m));
    }
    return SheafMap(tbase, base, std::move(comps));
  };
  std::vector<Sections> secs = level_sections(r.g, u);
  Sections below = sections(s, u);
  SkyscraperCollapse out;
  out.complex = from_sections(r.g, secs).reversed();
  out.extra.augmentation_source = below.complex;
  out.extra.coaugmentation = sections_map(r.eta, below, secs[0]);
  for (int lvl = 0; lvl <= r.g.p_max(); ++lvl) {
    // T^lvl σ on the powers of S truncated like level lvl.
    std::vector<Sheaf> powers{s};
    if (r.n_top) powers[0] = truncate_sheaf(s, *r.n_top - lvl);
    for (int k = 0; k <= lvl; ++k) powers.push_back(godement_T_sheaf(powers[k]));
    SheafMap m = apply_t(sigma(powers[0], powers[1]), powers, 1, 0, lvl);
    const Sheaf& tgt = lvl == 0 ? s : r.g.level(lvl - 1);
    m = rebase(m, r.g.level(lvl), tgt);
    out.extra.extra.push_back(sections_map(m, secs[lvl], lvl == 0 ? below : secs[lvl - 1]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hypercohomology

namespace {

ChainMap rho_component(const GodementResolution& r, const CosimplicialComplex& gx, const CochainComplex& hx, int x,
                       int n_top) {
  SimpleLayout l = simple_layout(gx, n_top);
  const CochainComplex& fx = r.source.stalk(x);
  const ChainMap& eta = r.eta.component(x);
  std::map<int, Matrix> comps;
  for (int n = fx.lo(); n <= std::min(fx.hi(), n_top); ++n) {
    if (fx.dim(n) == 0 || n < l.lo) continue;
    Matrix m(fx.field(), hx.dim(n), fx.dim(n));
    Matrix e = eta.component(n);
    if (e.rows()) m.set_block(l.offset(n, 0), 0, e);
    comps.emplace(n, std::move(m));
  }
  ChainMap rho(fx, hx, std::move(comps));
  rho.validate();
  return rho;
}

}  // namespace

Hypercohomology hypercohomology_sheaf(const Sheaf& f, int n_top) {
  if (n_top < f.upper_bound()) {
    throw InsufficientLevels("hypercohomology: N = " + std::to_string(n_top) + " is below the top degree " +
                             std::to_string(f.upper_bound()));
  }
  Hypercohomology h;
  h.n_top = n_top;
  h.resolution = godement_resolution_truncated(f, n_top);
  const Poset& p = f.poset();
  const int n = static_cast<int>(p.size());
  std::vector<CosimplicialComplex> gx;
  std::vector<CochainComplex> stalks;
  for (int x = 0; x < n; ++x) {
    gx.push_back(h.resolution.g.at_stalk(x));
    stalks.push_back(simple(gx.back(), n_top));
  }
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [x, y] : p.covers()) {
    CosimplicialMap m{gx[x], gx[y], {}};
    for (int lvl = 0; lvl <= h.resolution.g.p_max(); ++lvl) {
      m.components.push_back(h.resolution.g.level(lvl).restriction(x, y));
    }
    res.emplace(std::make_pair(x, y), simple_map(m, n_top));
  }
  h.h = Sheaf(f.poset_ptr(), f.field(), stalks, std::move(res));
  std::vector<ChainMap> rho;
  for (int x = 0; x < n; ++x) rho.push_back(rho_component(h.resolution, gx[x], stalks[x], x, n_top));
  h.rho = SheafMap(f, h.h, std::move(rho));
  if (auto fail = h.rho.failure()) throw InvariantViolation("rho_F: " + *fail);
  return h;
}

SheafMap hypercohomology_map(const SheafMap& f, int n_top) {
  Hypercohomology hs = hypercohomology_sheaf(f.source(), n_top);
  Hypercohomology ht = hypercohomology_sheaf(f.target(), n_top);
  const auto& gs = hs.resolution.g;
  const auto& gt = ht.resolution.g;
  if (gs.p_max() != gt.p_max()) {
    throw std::invalid_argument("hypercohomology_map: source and target need the same lower bound");
  }
  // Level p of the map is T^{p+1} f.
  std::vector<SheafMap> levels;
  SheafMap cur = f;
  for (int lvl = 0; lvl <= gs.p_max(); ++lvl) {
    cur = t_map(cur, gs.level(lvl), gt.level(lvl));
    levels.push_back(cur);
  }
  const int n = static_cast<int>(f.source().poset().size());
  std::vector<ChainMap> comps;
  for (int x = 0; x < n; ++x) {
    CosimplicialMap m{gs.at_stalk(x), gt.at_stalk(x), {}};
    for (const auto& l : levels) m.components.push_back(l.component(x));
    ChainMap s = simple_map(m, n_top);
    comps.push_back(ChainMap(hs.h.stalk(x), ht.h.stalk(x), [&] {
      std::map<int, Matrix> c;
      for (int d = s.lo(); d <= s.hi(); ++d) c.emplace(d, s.component(d));
      return c;
    }()));
  }
  SheafMap out(hs.h, ht.h, std::move(comps));
  if (auto fail = out.failure()) throw InvariantViolation("H(f): " + *fail);
  return out;
}

// ---------------------------------------------------------------------------
// Equivalences

EquivalenceReport equivalence_check(const SheafMap& f, EquivalenceKind kind,
                                    const std::optional<std::vector<OpenSet>>& opens) {
  EquivalenceReport r;
  r.kind = kind;
  const Poset& p = f.source().poset();
  r.certified_degree = std::min(f.source().certified_degree(), f.target().certified_degree());
  if (kind == EquivalenceKind::local) {
    for (int x = 0; x < static_cast<int>(p.size()); ++x) {
      add_witnesses(r, p.name(x), is_quis(f.component(x)));
    }
  } else {
    for (const auto& u : opens_or_all(p, opens)) {
      add_witnesses(r, open_to_string(p, u), is_quis(sections_map(f, u)));
    }
  }
  r.verdict = r.witnesses.empty();
  return r;
}

namespace {

// Γ(U, S) -> Norm_U(S): a section goes to its values in the p = 0 block.
ChainMap canonical_to_normalized(const Sheaf& s, const OpenSet& u) {
  Sections sec = sections(s, u);
  CochainComplex norm = normalized_replacement(s, u);
  std::vector<ChainMap> ev;
  std::vector<int> order = u.members();  // length-one chains, ascending
  for (int y : order) ev.push_back(sec.evaluation(y, s));
  std::map<int, Matrix> comps;
  for (int n = sec.complex.lo(); n <= sec.complex.hi(); ++n) {
    if (sec.complex.dim(n) == 0 || norm.dim(n) == 0) continue;
    std::vector<Matrix> parts;
    std::size_t rows = 0;
    for (const auto& e : ev) {
      parts.push_back(e.component(n));
      rows += parts.back().rows();
    }
    Matrix top = Matrix::vstack(s.field(), sec.complex.dim(n), parts);
    Matrix m(s.field(), norm.dim(n), sec.complex.dim(n));
    if (rows) m.set_block(0, 0, top);
    comps.emplace(n, std::move(m));
  }
  return ChainMap(sec.complex, norm, std::move(comps));
}

}  // namespace

EquivalenceReport descent_check(const Sheaf& s, int n_top, DescentStrategy strategy,
                                const std::optional<std::vector<OpenSet>>& opens) {
  const Poset& p = s.poset();
  if (strategy == DescentStrategy::automatic) {
    strategy = p.size() <= 4 ? DescentStrategy::literal : DescentStrategy::reduced;
  }
  EquivalenceReport r;
  r.kind = EquivalenceKind::global;
  r.certified_degree = std::min(n_top - 1, s.certified_degree());
  if (strategy == DescentStrategy::literal) {
    Hypercohomology h = hypercohomology_sheaf(s, n_top);
    EquivalenceReport g = equivalence_check(h.rho, EquivalenceKind::global, opens);
    g.certified_degree = std::min(g.certified_degree, r.certified_degree);
    return g;
  }
  for (const auto& u : opens_or_all(p, opens)) {
    ChainMap c = canonical_to_normalized(s, u);
    add_witnesses(r, open_to_string(p, u), is_quis(c, r.certified_degree));
  }
  r.verdict = r.witnesses.empty();
  return r;
}

EquivalenceReport thomason_check(const Hypercohomology& h, DescentStrategy strategy) {
  return descent_check(h.h, h.n_top, strategy);
}

EquivalenceReport thomason_check(const Sheaf& f, int n_top, DescentStrategy strategy) {
  return thomason_check(hypercohomology_sheaf(f, n_top), strategy);
}

EquivalenceReport stalk_commutation_check(const Hypercohomology& h) {
  EquivalenceReport r;
  r.kind = EquivalenceKind::local;
  r.certified_degree = h.n_top - 1;
  const Poset& p = h.h.poset();
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    CochainComplex direct = simple(h.resolution.g.at_stalk(x), h.n_top);
    const CochainComplex& stored = h.h.stalk(x);
    bool same = direct == stored;
    if (same) {
      // θ is the identity in every degree; confirm it is a quis as a map.
      ChainMap theta = ChainMap::identity(stored);
      same = is_quis(theta).flag;
    }
    if (!same) r.witnesses.push_back({p.name(x), stored.lo()});
  }
  r.verdict = r.witnesses.empty();
  return r;
}

DerivedSections derived_sections(const Hypercohomology& h, const OpenSet& u) {
  DerivedSections d;
  d.complex = sections(h.h, u).complex;
  d.certified_degree = h.n_top - 1;
  d.betti = betti_numbers(d.complex, d.certified_degree);
  return d;
}

DerivedSections derived_sections(const Sheaf& f, const OpenSet& u, int n_top) {
  if (!f.poset().is_up_set(u.mask)) throw NotOpen("derived_sections: not an up-set");
  return derived_sections(hypercohomology_sheaf(f, n_top), u);
}

Sheaf derived_direct_image(const MonotoneMap& f, const Sheaf& sheaf, int n_top) {
  f.validate();
  return direct_image(f, hypercohomology_sheaf(sheaf, n_top).h);
}

Sheaf cohomology_sheaf(const Sheaf& f, int q) {
  const Poset& p = f.poset();
  const int n = static_cast<int>(p.size());
  std::vector<Cohomology> coh;
  std::vector<CochainComplex> stalks;
  for (int x = 0; x < n; ++x) {
    coh.push_back(cohomology(f.stalk(x)));
    auto it = coh.back().betti.find(q);
    const std::size_t b = it == coh.back().betti.end() ? 0 : it->second;
    stalks.push_back(b ? CochainComplex(f.field(), 0, {b}, {}) : CochainComplex(f.field(), 0));
  }
  std::map<std::pair<int, int>, ChainMap> res;
  for (const auto& [x, y] : p.covers()) {
    Matrix m = induced_map(f.restriction(x, y), q, coh[x], coh[y]);
    std::map<int, Matrix> comps;
    if (m.rows() && m.cols()) comps.emplace(0, std::move(m));
    res.emplace(std::make_pair(x, y), ChainMap(stalks[x], stalks[y], std::move(comps)));
  }
  return Sheaf(f.poset_ptr(), f.field(), std::move(stalks), std::move(res));
}

DescentSpectralSequence descent_spectral_sequence(const Sheaf& f, const OpenSet& u, int r_max, int n_top) {
  if (!f.poset().is_up_set(u.mask)) throw NotOpen("descent_spectral_sequence: not an up-set");
  GodementResolution r = godement_resolution_truncated(f, n_top);
  FilteredCosimplicial x{r.g.at_open(u), {}};
  for (int p = 0; p <= x.complex.p_max(); ++p) x.levels.push_back(FilteredComplex::trivial(x.complex.level(p), 0));
  DescentSpectralSequence out;
  out.total = filtered_simple(x, 1, n_top);
  out.certified_degree = n_top - 1;
  out.pages = spectral_pages(out.total, r_max, out.certified_degree);
  return out;
}

std::map<std::pair<int, int>, std::size_t> descent_e2_oracle(const Sheaf& f, const OpenSet& u, int n_top) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (int q = f.lower_bound(); q <= std::min(f.upper_bound(), n_top - 1); ++q) {
    Sheaf h = cohomology_sheaf(f, q);
    DerivedSections d = derived_sections(h, u, n_top - q);
    for (const auto& [p, b] : d.betti)
      if (b && p + q <= n_top - 1) out.emplace(std::make_pair(p, q), b);
  }
  return out;
}

int default_n_top(const Sheaf& f) { return f.upper_bound() + 4; }

}  // namespace godex
