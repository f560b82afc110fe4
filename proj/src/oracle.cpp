#include "godex/oracle.hpp"

#include <algorithm>

namespace godex {
namespace {

int sign(int k) { return (k % 2 == 0) ? 1 : -1; }

void extend_chains(const Poset& p, Chain& prefix, int length, bool strict, std::vector<Chain>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  const int last = prefix.back();
  for (int y = 0; y < static_cast<int>(p.size()); ++y) {
    if (!p.leq(last, y) || (strict && y == last)) continue;
    prefix.push_back(y);
    extend_chains(p, prefix, length, strict, out);
    prefix.pop_back();
  }
}

std::vector<Chain> chains(const Poset& p, int length, std::uint64_t first, bool strict) {
  std::vector<Chain> out;
  if (length <= 0) return out;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    if (!((first >> x) & 1u)) continue;
    Chain c{x};
    extend_chains(p, c, length, strict, out);
  }
  return out;
}

// Per-degree offsets of the blocks F_{last(c)} for a list of chains.
std::vector<std::size_t> chain_offsets(const Sheaf& f, const std::vector<Chain>& cs, int q) {
  std::vector<std::size_t> off{0};
  for (const auto& c : cs) off.push_back(off.back() + f.stalk(c.back()).dim(q));
  return off;
}

}  // namespace

std::vector<Chain> weak_chains(const Poset& p, int length, std::uint64_t first) {
  return chains(p, length, first, false);
}

std::vector<Chain> strict_chains(const Poset& p, int length) { return chains(p, length, p.all_mask(), true); }

CosimplicialComplex cosimplicial_replacement(const Sheaf& f, int p_max, const OpenSet& u) {
  const Poset& poset = f.poset();
  const Field& field = f.field();
  const int lo = f.lower_bound();
  const int hi = f.upper_bound();
  std::vector<std::vector<Chain>> cs;
  std::vector<std::map<Chain, std::size_t>> index;
  std::vector<CochainComplex> levels;
  for (int p = 0; p <= p_max; ++p) {
    cs.push_back(weak_chains(poset, p + 1, u.mask));
    std::map<Chain, std::size_t> idx;
    std::vector<CochainComplex> parts;
    for (std::size_t k = 0; k < cs.back().size(); ++k) {
      idx.emplace(cs.back()[k], k);
      parts.push_back(f.stalk(cs.back()[k].back()));
    }
    index.push_back(std::move(idx));
    levels.push_back(parts.empty() ? CochainComplex(field, lo) : direct_sum(parts));
  }
  std::vector<std::vector<ChainMap>> cofaces(p_max + 1), codeg(p_max + 1);
  for (int p = 1; p <= p_max; ++p) {
    for (int i = 0; i <= p; ++i) {
      std::map<int, Matrix> comps;
      for (int q = lo; q <= hi; ++q) {
        auto toff = chain_offsets(f, cs[p], q);
        auto soff = chain_offsets(f, cs[p - 1], q);
        Matrix m(field, toff.back(), soff.back());
        for (std::size_t k = 0; k < cs[p].size(); ++k) {
          const Chain& c = cs[p][k];
          Chain face = c;
          face.erase(face.begin() + i);
          auto it = index[p - 1].find(face);
          if (it == index[p - 1].end()) continue;  // y_0 left U
          const std::size_t s = it->second;
          if (i < p) {
            m.set_block(toff[k], soff[s], Matrix::identity(field, toff[k + 1] - toff[k]));
          } else {
            m.set_block(toff[k], soff[s], f.restriction(c[p - 1], c[p]).component(q));
          }
        }
        comps.emplace(q, std::move(m));
      }
      cofaces[p].emplace_back(levels[p - 1], levels[p], std::move(comps));
    }
  }
  for (int p = 0; p < p_max; ++p) {
    for (int j = 0; j <= p; ++j) {
      std::map<int, Matrix> comps;
      for (int q = lo; q <= hi; ++q) {
        auto toff = chain_offsets(f, cs[p], q);
        auto soff = chain_offsets(f, cs[p + 1], q);
        Matrix m(field, toff.back(), soff.back());
        for (std::size_t k = 0; k < cs[p].size(); ++k) {
          Chain deg = cs[p][k];
          deg.insert(deg.begin() + j, deg[j]);
          const std::size_t s = index[p + 1].at(deg);
          m.set_block(toff[k], soff[s], Matrix::identity(field, toff[k + 1] - toff[k]));
        }
        comps.emplace(q, std::move(m));
      }
      codeg[p].emplace_back(levels[p + 1], levels[p], std::move(comps));
    }
  }
  return CosimplicialComplex(std::move(levels), std::move(cofaces), std::move(codeg));
}

CosimplicialComplex cosimplicial_replacement(const Sheaf& f, int p_max) {
  return cosimplicial_replacement(f, p_max, OpenSet{f.poset().all_mask()});
}

CochainComplex holim_replacement(const Sheaf& f, int n_top) {
  const int p_max = std::max(0, n_top - f.lower_bound());
  return simple(cosimplicial_replacement(f, p_max), n_top);
}

CochainComplex normalized_replacement(const Sheaf& f) { return normalized_replacement(f, OpenSet{f.poset().all_mask()}); }

CochainComplex normalized_replacement(const Sheaf& f, const OpenSet& u) {
  const Poset& poset = f.poset();
  const Field& field = f.field();
  const int lo = f.lower_bound();
  const int hi = f.upper_bound();
  std::vector<std::vector<Chain>> cs;
  for (int len = 1; len <= static_cast<int>(poset.size()); ++len) {
    auto c = strict_chains(poset, len);
    std::erase_if(c, [&](const Chain& ch) { return !u.contains(ch.front()); });
    if (c.empty()) break;
    cs.push_back(std::move(c));
  }
  if (cs.empty()) return CochainComplex(field, lo);
  const int top_p = static_cast<int>(cs.size()) - 1;
  const int n_hi = hi + top_p;
  // offsets[n - lo][p] locates the block of chains of length p + 1 in degree n;
  // inside it, chains are laid out in order, each holding F_{last}^{n-p}.
  std::vector<std::vector<std::size_t>> off;
  std::vector<std::size_t> dims;
  for (int n = lo; n <= n_hi; ++n) {
    std::vector<std::size_t> o{0};
    for (int p = 0; p <= top_p; ++p) {
      std::size_t add = 0;
      for (const auto& c : cs[p]) add += f.stalk(c.back()).dim(n - p);
      o.push_back(o.back() + add);
    }
    dims.push_back(o.back());
    off.push_back(std::move(o));
  }
  std::vector<std::map<Chain, std::size_t>> index(cs.size());
  for (std::size_t p = 0; p < cs.size(); ++p)
    for (std::size_t k = 0; k < cs[p].size(); ++k) index[p].emplace(cs[p][k], k);

  std::vector<Matrix> diffs;
  for (int n = lo; n < n_hi; ++n) {
    Matrix d(field, dims[n + 1 - lo], dims[n - lo]);
    for (int p = 0; p <= top_p; ++p) {
      const int q = n - p;
      auto src = chain_offsets(f, cs[p], q);
      std::size_t base_src = off[n - lo][p];
      // internal differential
      {
        auto tgt = chain_offsets(f, cs[p], q + 1);
        std::size_t base_tgt = off[n + 1 - lo][p];
        for (std::size_t k = 0; k < cs[p].size(); ++k) {
          d.add_block(base_tgt + tgt[k], base_src + src[k], f.stalk(cs[p][k].back()).d(q), sign(p));
        }
      }
      if (p == top_p) continue;
      auto tgt = chain_offsets(f, cs[p + 1], q);
      std::size_t base_tgt = off[n + 1 - lo][p + 1];
      for (std::size_t k = 0; k < cs[p + 1].size(); ++k) {
        const Chain& c = cs[p + 1][k];
        for (int i = 0; i <= p + 1; ++i) {
          Chain face = c;
          face.erase(face.begin() + i);
          const std::size_t s = index[p].at(face);
          Matrix block = i <= p ? Matrix::identity(field, tgt[k + 1] - tgt[k])
                                : f.restriction(c[p], c[p + 1]).component(q);
          d.add_block(base_tgt + tgt[k], base_src + src[s], block, sign(i));
        }
      }
    }
    diffs.push_back(std::move(d));
  }
  CochainComplex out(field, lo, std::move(dims), std::move(diffs));
  out.validate();
  if (auto t = f.truncated_at()) return truncate_above(out, *t);
  return out;
}

NerveComplex nerve(const Poset& p, const Field& field) {
  NerveComplex out;
  for (int len = 1; len <= static_cast<int>(p.size()); ++len) {
    auto c = strict_chains(p, len);
    if (c.empty()) break;
    out.simplices.push_back(std::move(c));
  }
  std::vector<std::size_t> dims;
  for (const auto& s : out.simplices) dims.push_back(s.size());
  for (std::size_t k = 0; k + 1 < out.simplices.size(); ++k) {
    const auto& lower = out.simplices[k];
    const auto& upper = out.simplices[k + 1];
    Matrix d(field, upper.size(), lower.size());
    for (std::size_t r = 0; r < upper.size(); ++r) {
      for (std::size_t i = 0; i < upper[r].size(); ++i) {
        Chain face = upper[r];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const std::size_t c =
            static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
        d.set(r, c, static_cast<long long>(sign(static_cast<int>(i))));
      }
    }
    out.coboundaries.push_back(std::move(d));
  }
  out.complex = CochainComplex(field, 0, dims, out.coboundaries);
  out.complex.validate();
  return out;
}

std::map<int, std::size_t> constant_cohomology(const Poset& p, const Field& field, const CochainComplex& c) {
  NerveComplex n = nerve(p, field);
  CochainComplex total = tensor(n.complex, c);
  total.validate();
  return betti_numbers(total);
}

}  // namespace godex
