#include "godex/random.hpp"

#include <algorithm>

namespace godex {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling on the top of the range keeps the draw unbiased and
  // independent of the standard library's distribution implementations.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

int Rng::between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

Scalar Rng::entry(const Field& field) {
  if (field.is_prime()) return Scalar(field, static_cast<long long>(below(field.characteristic())));
  return Scalar(field, static_cast<long long>(between(-2, 2)));
}

Matrix random_matrix(Rng& rng, const Field& field, std::size_t rows, std::size_t cols) {
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng.entry(field));
  return m;
}

Matrix random_invertible(Rng& rng, const Field& field, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, field, n, n);
    if (rank(m) == n) return m;
  }
}

namespace {

// Homogeneous linear equations Σ_t L_t X_{u_t} R_t = 0 in matrix unknowns.
struct LinearSystem {
  struct Term {
    std::size_t unknown;
    Matrix left;
    Matrix right;
    int sign;
  };
  struct Equation {
    std::size_t rows, cols;
    std::vector<Term> terms;
  };

  explicit LinearSystem(const Field& f) : field(f) {}

  std::size_t add_unknown(std::size_t rows, std::size_t cols) {
    shapes.emplace_back(rows, cols);
    return shapes.size() - 1;
  }

  // A random element of the solution space, as one matrix per unknown.
  std::vector<Matrix> solve_random(Rng& rng) const {
    std::vector<std::size_t> col_off{0};
    for (auto [r, c] : shapes) col_off.push_back(col_off.back() + r * c);
    std::size_t nrows = 0;
    for (const auto& e : equations) nrows += e.rows * e.cols;
    Matrix sys(field, nrows, col_off.back());
    std::size_t row = 0;
    for (const auto& e : equations) {
      for (const auto& t : e.terms) {
        // vec(L X R) = (R^T ⊗ L) vec(X), vec stacking columns.
        Matrix k = Matrix::kronecker(t.right.transposed(), t.left);
        if (k.rows() && k.cols()) sys.add_block(row, col_off[t.unknown], k, t.sign);
      }
      row += e.rows * e.cols;
    }
    Subspace sol = Subspace::kernel(sys);
    Matrix v = sol.basis() * random_matrix(rng, field, sol.dim(), 1);
    std::vector<Matrix> out;
    for (std::size_t u = 0; u < shapes.size(); ++u) {
      auto [r, c] = shapes[u];
      Matrix m(field, r, c);
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < r; ++i) m.set(i, j, v.at(col_off[u] + j * r + i, 0));
      out.push_back(std::move(m));
    }
    return out;
  }

  Field field;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  std::vector<Equation> equations;
};

}  // namespace

CochainComplex random_complex(Rng& rng, const Field& field, int lo, const std::vector<std::size_t>& dims) {
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    // Rows of `ann` span the row vectors killing im d^{n-1}.
    Matrix ann = k == 0 ? Matrix::identity(field, dims[0])
                        : Subspace::kernel(diffs.back().transposed()).basis().transposed();
    const std::size_t r = static_cast<std::size_t>(rng.between(0, static_cast<int>(std::min(dims[k + 1], ann.rows()))));
    Matrix d = random_matrix(rng, field, dims[k + 1], r) * random_matrix(rng, field, r, ann.rows()) * ann;
    diffs.push_back(std::move(d));
  }
  CochainComplex c(field, lo, dims, std::move(diffs));
  c.validate();
  return c;
}

CochainComplex random_complex(Rng& rng, const Field& field, int lo, int hi, std::size_t max_dim) {
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(rng.below(max_dim + 1));
  return random_complex(rng, field, lo, dims);
}

FilteredComplex random_filtration(Rng& rng, const CochainComplex& base, int k_min, int k_max) {
  const Field& field = base.field();
  std::map<int, std::vector<Subspace>> steps;
  for (int n = base.lo(); n <= base.hi(); ++n) {
    if (base.dim(n)) steps[n].assign(static_cast<std::size_t>(k_max - k_min + 1), Subspace(field, base.dim(n)));
  }
  auto step = [&](int k, int n) {
    if (base.dim(n) == 0) return Subspace(field, 0);
    if (k > k_max) return Subspace(field, base.dim(n));
    return steps[n][static_cast<std::size_t>(k - k_min)];
  };
  for (int k = k_max; k >= k_min; --k) {
    for (int n = base.hi(); n >= base.lo(); --n) {
      if (base.dim(n) == 0) continue;
      Subspace s = Subspace::full(field, base.dim(n));
      if (k > k_min) {
        Subspace room = base.dim(n + 1) ? Subspace::preimage(base.d(n), step(k, n + 1)) : s;
        const std::size_t extra = rng.below(room.dim() + 1);
        s = step(k + 1, n).sum(Subspace::span(room.basis() * random_matrix(rng, field, room.dim(), extra)));
      }
      steps[n][static_cast<std::size_t>(k - k_min)] = std::move(s);
    }
  }
  return FilteredComplex(base, k_min, k_max, std::move(steps));
}

FilteredComplex random_filtered_complex(Rng& rng, const Field& field, int lo, int hi, std::size_t max_dim, int k_min,
                                        int k_max) {
  return random_filtration(rng, random_complex(rng, field, lo, hi, max_dim), k_min, k_max);
}

ChainMap random_chain_map(Rng& rng, const CochainComplex& source, const CochainComplex& target) {
  const Field& field = source.field();
  const int lo = std::min(source.lo(), target.lo());
  const int hi = std::max(source.hi(), target.hi());
  LinearSystem sys(field);
  std::map<int, std::size_t> unk;
  for (int n = lo; n <= hi; ++n) unk[n] = sys.add_unknown(target.dim(n), source.dim(n));
  for (int n = lo; n < hi; ++n) {
    LinearSystem::Equation e{target.dim(n + 1), source.dim(n), {}};
    e.terms.push_back({unk[n], target.d(n), Matrix::identity(field, source.dim(n)), 1});
    e.terms.push_back({unk[n + 1], Matrix::identity(field, target.dim(n + 1)), source.d(n), -1});
    sys.equations.push_back(std::move(e));
  }
  auto sol = sys.solve_random(rng);
  std::map<int, Matrix> comps;
  for (int n = lo; n <= hi; ++n) comps.emplace(n, sol[unk[n]]);
  ChainMap f(source, target, std::move(comps));
  f.validate();
  return f;
}

Poset random_poset(Rng& rng, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.coin()) rel.emplace_back(names[i], names[j]);
    }
  }
  return Poset(std::move(names), rel);
}

Sheaf random_sheaf(Rng& rng, std::shared_ptr<const Poset> p, const Field& field, const SheafBounds& bounds) {
  const Poset& poset = *p;
  const int n = static_cast<int>(poset.size());
  const int lo = bounds.lo;
  const int hi = bounds.hi;
  std::vector<CochainComplex> stalks(n);
  // full[{x, z}][q - lo]: the composite restriction, known once x is processed.
  std::map<std::pair<int, int>, std::vector<Matrix>> full;
  std::map<std::pair<int, int>, ChainMap> covers;
  const auto& lin = poset.linear_extension();
  for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
    const int x = *it;
    stalks[x] = random_complex(rng, field, lo, hi, bounds.max_dim);
    std::vector<int> up;
    for (const auto& [a, b] : poset.covers())
      if (a == x) up.push_back(b);
    LinearSystem sys(field);
    std::map<std::pair<int, int>, std::size_t> unk;  // (y, q)
    for (int y : up)
      for (int q = lo; q <= hi; ++q) unk[{y, q}] = sys.add_unknown(stalks[y].dim(q), stalks[x].dim(q));
    for (int y : up) {
      for (int q = lo; q < hi; ++q) {
        LinearSystem::Equation e{stalks[y].dim(q + 1), stalks[x].dim(q), {}};
        e.terms.push_back({unk[{y, q}], stalks[y].d(q), Matrix::identity(field, stalks[x].dim(q)), 1});
        e.terms.push_back({unk[{y, q + 1}], Matrix::identity(field, stalks[y].dim(q + 1)), stalks[x].d(q), -1});
        sys.equations.push_back(std::move(e));
      }
    }
    for (std::size_t a = 0; a < up.size(); ++a) {
      for (std::size_t b = a + 1; b < up.size(); ++b) {
        for (int z = 0; z < n; ++z) {
          if (!poset.leq(up[a], z) || !poset.leq(up[b], z)) continue;
          for (int q = lo; q <= hi; ++q) {
            LinearSystem::Equation e{stalks[z].dim(q), stalks[x].dim(q), {}};
            const Matrix id = Matrix::identity(field, stalks[x].dim(q));
            e.terms.push_back({unk[{up[a], q}], full.at({up[a], z})[q - lo], id, 1});
            e.terms.push_back({unk[{up[b], q}], full.at({up[b], z})[q - lo], id, -1});
            sys.equations.push_back(std::move(e));
          }
        }
      }
    }
    auto sol = sys.solve_random(rng);
    std::vector<Matrix> ident;
    for (int q = lo; q <= hi; ++q) ident.push_back(Matrix::identity(field, stalks[x].dim(q)));
    full[{x, x}] = ident;
    for (int y : up) {
      std::map<int, Matrix> comps;
      for (int q = lo; q <= hi; ++q) comps.emplace(q, sol[unk[{y, q}]]);
      covers.emplace(std::make_pair(x, y), ChainMap(stalks[x], stalks[y], std::move(comps)));
    }
    for (int z = 0; z < n; ++z) {
      if (z == x || !poset.leq(x, z)) continue;
      for (int y : up) {
        if (!poset.leq(y, z)) continue;
        std::vector<Matrix> comp;
        for (int q = lo; q <= hi; ++q) comp.push_back(full.at({y, z})[q - lo] * sol[unk[{y, q}]]);
        full[{x, z}] = std::move(comp);
        break;
      }
    }
  }
  return Sheaf(std::move(p), field, std::move(stalks), std::move(covers));
}

SheafMap random_sheaf_map(Rng& rng, const Sheaf& source, const Sheaf& target) {
  const Poset& poset = source.poset();
  const Field& field = source.field();
  const int n = static_cast<int>(poset.size());
  const int lo = std::min(source.lower_bound(), target.lower_bound());
  const int hi = std::max(source.upper_bound(), target.upper_bound());
  LinearSystem sys(field);
  std::map<std::pair<int, int>, std::size_t> unk;
  for (int x = 0; x < n; ++x)
    for (int q = lo; q <= hi; ++q) unk[{x, q}] = sys.add_unknown(target.stalk(x).dim(q), source.stalk(x).dim(q));
  for (int x = 0; x < n; ++x) {
    const auto& s = source.stalk(x);
    const auto& t = target.stalk(x);
    for (int q = lo; q < hi; ++q) {
      LinearSystem::Equation e{t.dim(q + 1), s.dim(q), {}};
      e.terms.push_back({unk[{x, q}], t.d(q), Matrix::identity(field, s.dim(q)), 1});
      e.terms.push_back({unk[{x, q + 1}], Matrix::identity(field, t.dim(q + 1)), s.d(q), -1});
      sys.equations.push_back(std::move(e));
    }
  }
  for (const auto& [x, y] : poset.covers()) {
    for (int q = lo; q <= hi; ++q) {
      LinearSystem::Equation e{target.stalk(y).dim(q), source.stalk(x).dim(q), {}};
      e.terms.push_back({unk[{x, q}], target.restriction(x, y).component(q),
                         Matrix::identity(field, source.stalk(x).dim(q)), 1});
      e.terms.push_back({unk[{y, q}], Matrix::identity(field, target.stalk(y).dim(q)),
                         source.restriction(x, y).component(q), -1});
      sys.equations.push_back(std::move(e));
    }
  }
  auto sol = sys.solve_random(rng);
  std::vector<ChainMap> comps;
  for (int x = 0; x < n; ++x) {
    std::map<int, Matrix> c;
    for (int q = lo; q <= hi; ++q) c.emplace(q, sol[unk[{x, q}]]);
    comps.emplace_back(source.stalk(x), target.stalk(x), std::move(c));
  }
  SheafMap f(source, target, std::move(comps));
  if (auto fail = f.failure()) throw InvariantViolation("random_sheaf_map: " + *fail);
  return f;
}

Conjugated conjugate_levels(Rng& rng, const CosimplicialComplex& x) {
  const Field& field = x.field();
  const int P = x.p_max();
  std::vector<std::map<int, Matrix>> a(P + 1), ainv(P + 1);
  std::vector<CochainComplex> levels;
  Conjugated out;
  for (int p = 0; p <= P; ++p) {
    const CochainComplex& l = x.level(p);
    for (int q = l.lo(); q <= l.hi(); ++q) {
      a[p].emplace(q, random_invertible(rng, field, l.dim(q)));
      ainv[p].emplace(q, inverse(a[p].at(q)));
    }
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int q = l.lo(); q <= l.hi(); ++q) dims.push_back(l.dim(q));
    for (int q = l.lo(); q < l.hi(); ++q) diffs.push_back(a[p].at(q + 1) * l.d(q) * ainv[p].at(q));
    levels.emplace_back(field, l.lo(), std::move(dims), std::move(diffs), l.truncated_at());
    out.iso.emplace_back(l, levels.back(), a[p]);
  }
  auto conj = [&](const ChainMap& m, int sp, int tp) {
    std::map<int, Matrix> comps;
    const CochainComplex& s = levels[sp];
    const CochainComplex& t = levels[tp];
    for (int q = std::max(s.lo(), t.lo()); q <= std::min(s.hi(), t.hi()); ++q) {
      comps.emplace(q, a[tp].at(q) * m.component(q) * ainv[sp].at(q));
    }
    return ChainMap(s, t, std::move(comps));
  };
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) cof[p].push_back(conj(x.coface(p, i), p - 1, p));
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) cod[p].push_back(conj(x.codegeneracy(p, j), p + 1, p));
  out.complex = CosimplicialComplex(levels, std::move(cof), std::move(cod));
  return out;
}

}  // namespace godex
