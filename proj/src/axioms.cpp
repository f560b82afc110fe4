#include "godex/axioms.hpp"

#include <climits>

#include "godex/oracle.hpp"

namespace godex {
namespace {

std::vector<Poset> poset_pool(int max_size) {
  std::vector<Poset> all{Poset::point(),
                         Poset::sierpinski(),
                         Poset::chain(3),
                         Poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}),
                         Poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}),
                         Poset::chain(4),
                         Poset::pseudocircle()};
  std::vector<Poset> out;
  for (auto& p : all)
    if (static_cast<int>(p.size()) <= max_size) out.push_back(std::move(p));
  return out;
}

// Levelwise X ⊗ K for a fixed complex K.
CosimplicialComplex tensor_levels(const CosimplicialComplex& x, const CochainComplex& k) {
  const int P = x.p_max();
  std::vector<CochainComplex> levels;
  for (int p = 0; p <= P; ++p) levels.push_back(tensor(x.level(p), k));
  ChainMap id = ChainMap::identity(k);
  std::vector<std::vector<ChainMap>> cof(P + 1), cod(P + 1);
  for (int p = 1; p <= P; ++p)
    for (int i = 0; i <= p; ++i) cof[p].push_back(tensor(x.coface(p, i), id));
  for (int p = 0; p < P; ++p)
    for (int j = 0; j <= p; ++j) cod[p].push_back(tensor(x.codegeneracy(p, j), id));
  return CosimplicialComplex(std::move(levels), std::move(cof), std::move(cod));
}

CosimplicialMap identity_map(const CosimplicialComplex& x) {
  CosimplicialMap f{x, x, {}};
  for (int p = 0; p <= x.p_max(); ++p) f.components.push_back(ChainMap::identity(x.level(p)));
  return f;
}

bool levelwise_quis(const CosimplicialMap& f) {
  for (const auto& c : f.components)
    if (!is_quis(c).flag) return false;
  return true;
}

// X -> X ⊕ C for levelwise acyclic C, followed by a random automorphism of
// each level of the sum.
CosimplicialMap quis_into_larger(Rng& rng, const CosimplicialComplex& x, const CosimplicialComplex& c) {
  CosimplicialBiproduct bp = cosimplicial_biproduct(x, c);
  Conjugated conj = conjugate_levels(rng, bp.sum);
  CosimplicialMap iso{bp.sum, conj.complex, conj.iso};
  return compose(iso, bp.inc1);
}

CosimplicialComplex acyclic_companion(Rng& rng, const Field& field, const AxiomParams& prm, int p_max) {
  CosimplicialComplex y = random_cosimplicial(rng, field, std::min(prm.max_poset, 2), 1, 0, 0, p_max);
  Matrix one = Matrix::identity(field, 1);
  CochainComplex cone(field, 0, {1, 1}, {one});
  return tensor_levels(y, cone);
}

ChainMap product_comparison(const CosimplicialComplex& x, const CosimplicialComplex& y, int n_top) {
  CosimplicialBiproduct bp = cosimplicial_biproduct(x, y);
  ChainMap p1 = simple_map(bp.pr1, n_top);
  ChainMap p2 = simple_map(bp.pr2, n_top);
  CochainComplex target = direct_sum({p1.target(), p2.target()});
  std::map<int, Matrix> comps;
  for (int n = p1.source().lo(); n <= n_top; ++n) {
    std::vector<Matrix> parts{p1.component(n), p2.component(n)};
    comps.emplace(n, Matrix::vstack(x.field(), p1.source().dim(n), parts));
  }
  return ChainMap(p1.source(), target, std::move(comps));
}

bool is_identity_through(const ChainMap& f, int n_top) {
  for (int n = f.source().lo(); n <= n_top; ++n) {
    if (f.source().dim(n) != f.target().dim(n) || !f.component(n).is_identity()) return false;
  }
  return true;
}

FilteredCosimplicial filtered_sum_cosimplicial(const FilteredCosimplicial& a, const FilteredCosimplicial& b) {
  FilteredCosimplicial out{cosimplicial_biproduct(a.complex, b.complex).sum, {}};
  for (int p = 0; p <= a.complex.p_max(); ++p) out.levels.push_back(filtered_sum({a.levels[p], b.levels[p]}));
  return out;
}

// Levelwise Y ⊗ K with Y pure of weight w.
FilteredCosimplicial weighted_tensor(const CosimplicialComplex& y, int w, const FilteredComplex& k) {
  FilteredCosimplicial out{tensor_levels(y, k.base()), {}};
  for (int p = 0; p <= y.p_max(); ++p) {
    out.levels.push_back(filtered_tensor(FilteredComplex::trivial(y.level(p), w), k));
  }
  return out;
}

struct FilteredConjugated {
  FilteredCosimplicial complex;
  std::vector<ChainMap> iso;
};

FilteredConjugated conjugate_filtered(Rng& rng, const FilteredCosimplicial& x) {
  Conjugated c = conjugate_levels(rng, x.complex);
  FilteredConjugated out{{c.complex, {}}, c.iso};
  for (int p = 0; p <= x.complex.p_max(); ++p) out.complex.levels.push_back(transport(x.levels[p], c.iso[p]));
  return out;
}

FilteredCosimplicial filtered_acyclic_companion(Rng& rng, const Field& field, int p_max) {
  CosimplicialComplex y = random_cosimplicial(rng, field, 2, 1, 0, 0, p_max);
  Matrix one = Matrix::identity(field, 1);
  CochainComplex cone(field, 0, {1, 1}, {one});
  return weighted_tensor(y, rng.between(0, 2), FilteredComplex::trivial(cone, 0));
}

}  // namespace

FilteredCosimplicial random_filtered_cosimplicial(Rng& rng, const Field& field, int max_poset, std::size_t max_dim,
                                                  int p_max) {
  auto part = [&] {
    CosimplicialComplex y = random_cosimplicial(rng, field, max_poset, max_dim, 0, rng.between(0, 1), p_max);
    FilteredComplex k = random_filtered_complex(rng, field, 0, 1, 2, 0, 2);
    return weighted_tensor(y, rng.between(0, 1), k);
  };
  FilteredCosimplicial a = part();
  FilteredCosimplicial b = part();
  FilteredCosimplicial x = conjugate_filtered(rng, filtered_sum_cosimplicial(a, b)).complex;
  x.validate();
  return x;
}

FilteredComplex filtered_iterated_simple(const FilteredCosimplicial& x, const FilteredCosimplicial& y, int r,
                                         int n_top) {
  BicosimplicialComplex z = external_tensor(x.complex, y.complex);
  CochainComplex base = iterated_simple(z, n_top);
  IteratedLayout il = iterated_layout(z, n_top);
  const int lo = il.lo;
  std::map<std::pair<int, int>, FilteredComplex> lv;
  int k_min = INT_MAX, k_max = INT_MIN;
  for (int i = 0; i <= std::min(n_top - lo, z.p_max()); ++i) {
    for (int j = 0; j <= std::min(n_top - lo - i, z.q_max()); ++j) {
      FilteredComplex f = filtered_tensor(x.levels[i], y.levels[j]);
      k_min = std::min(k_min, f.k_min() + r * (i + j));
      k_max = std::max(k_max, f.k_max() + r * (i + j));
      lv.emplace(std::make_pair(i, j), std::move(f));
    }
  }
  std::map<int, std::vector<Subspace>> steps;
  for (int n = lo; n <= n_top; ++n) {
    if (base.dim(n) == 0) continue;
    std::vector<Subspace> v;
    for (int k = k_min; k <= k_max; ++k) {
      std::vector<Matrix> cols;
      for (int i = 0; i <= std::min(n - lo, z.p_max()); ++i) {
        for (int j = 0; j <= std::min(n - lo - i, z.q_max()); ++j) {
          Matrix b = lv.at({i, j}).step(k - r * (i + j), n - i - j).basis();
          if (b.cols() == 0) continue;
          Matrix placed(base.field(), base.dim(n), b.cols());
          if (b.rows()) placed.set_block(il.offset(n, i, j), 0, b);
          cols.push_back(std::move(placed));
        }
      }
      v.push_back(cols.empty() ? Subspace(base.field(), base.dim(n))
                               : Subspace::span(Matrix::hstack(base.field(), base.dim(n), cols)));
    }
    steps.emplace(n, std::move(v));
  }
  return FilteredComplex(base, k_min, k_max, std::move(steps));
}

bool FilteredAxiomReport::all_pass() const {
  for (const auto& t : trials)
    if (!t.all_pass()) return false;
  return true;
}

FilteredAxiomReport check_filtered_axioms(std::uint64_t seed, const AxiomParams& prm, int r) {
  FilteredAxiomReport report;
  report.seed = seed;
  report.r = r;
  const Field& field = prm.field;
  const int N = prm.n_top;
  const int P = N;
  const int small_poset = std::min(prm.max_poset, 2);
  const std::size_t small = std::min<std::size_t>(prm.max_dim, 2);
  for (int t = 0; t < prm.trials; ++t) {
    FilteredAxiomTrial tr;
    tr.seed = seed + static_cast<std::uint64_t>(t);
    Rng rng(tr.seed);
    auto note = [&](const std::string& s) { tr.failures.push_back(s); };
    try {
      FilteredCosimplicial x = random_filtered_cosimplicial(rng, field, small_poset, small, P);
      FilteredCosimplicial y = random_filtered_cosimplicial(rng, field, small_poset, small, P);
      FilteredComplex sx = filtered_simple(x, r, N);

      // S1
      FilteredComplex sxy = filtered_simple(filtered_sum_cosimplicial(x, y), r, N);
      FilteredMap cmp{sxy, filtered_sum({sx, filtered_simple(y, r, N)}), product_comparison(x.complex, y.complex, N)};
      tr.s1 = is_er_quis(cmp, r, N - 1);
      if (!tr.s1) note("S1: comparison is not an E_r-quis");

      // S2
      FilteredCosimplicial xs = random_filtered_cosimplicial(rng, field, 1, 1, P);
      FilteredCosimplicial ys = random_filtered_cosimplicial(rng, field, 1, 1, P);
      BicosimplicialComplex z = external_tensor(xs.complex, ys.complex);
      FilteredCosimplicial diag{z.diagonal(), {}};
      for (int p = 0; p <= diag.complex.p_max(); ++p) diag.levels.push_back(filtered_tensor(xs.levels[p], ys.levels[p]));
      FilteredMap aw{filtered_iterated_simple(xs, ys, r, N), filtered_simple(diag, r, N), aw_map(z, N)};
      tr.s2 = is_er_quis(aw, r, N - 1);
      if (!tr.s2) note("S2: Alexander-Whitney map is not an E_r-quis");

      // S3
      FilteredComplex a = random_filtered_complex(rng, field, 0, rng.between(0, 2), prm.max_dim, 0, 2);
      FilteredMap lam{a, filtered_simple(filtered_constant(a, P), r, N), lambda(a.base(), N)};
      tr.s3 = is_er_quis(lam, r, N - 1);
      if (!tr.s3) note("S3: lambda is not an E_r-quis");

      // S4
      FilteredCosimplicial c = filtered_acyclic_companion(rng, field, P);
      CosimplicialBiproduct bp = cosimplicial_biproduct(x.complex, c.complex);
      FilteredConjugated conj = conjugate_filtered(rng, filtered_sum_cosimplicial(x, c));
      CosimplicialMap g = compose(CosimplicialMap{bp.sum, conj.complex.complex, conj.iso}, bp.inc1);
      for (int p = 0; p <= P; ++p) {
        if (!is_er_quis(FilteredMap{x.levels[p], conj.complex.levels[p], g.components[p]}, r)) {
          throw InvariantViolation("S4 instance is not a levelwise E_r-quis");
        }
      }
      tr.s4 = is_er_quis(FilteredMap{sx, filtered_simple(conj.complex, r, N), simple_map(g, N)}, r, N - 1);
      if (!tr.s4) note("S4: s(f) is not an E_r-quis for a levelwise E_r-quis f");

      // S5
      PathObject path = path_object(a.base(), P);
      FilteredCosimplicial fp{path.path, {}};
      for (int n = 0; n <= P; ++n) fp.levels.push_back(filtered_sum(std::vector<FilteredComplex>(n + 2, a)));
      FilteredComplex sp = filtered_simple(fp, r, N);
      FilteredComplex sa = filtered_simple(filtered_constant(a, P), r, N);
      tr.s5 = is_er_quis(FilteredMap{sp, sa, simple_map(path.ev0, N)}, r, N - 1) &&
              is_er_quis(FilteredMap{sp, sa, simple_map(path.ev1, N)}, r, N - 1);
      if (!tr.s5) note("S5: evaluation from the path object is not an E_r-quis");

      // Levelwise non-quis witness.
      CosimplicialComplex e = reduced_path_object(CochainComplex(field, 0, {1}, {}), P);
      FilteredCosimplicial fe{e, {}};
      for (int n = 0; n <= P; ++n) fe.levels.push_back(FilteredComplex::trivial(e.level(n), 0));
      FilteredCosimplicial xe = filtered_sum_cosimplicial(x, fe);
      CosimplicialMap w = cosimplicial_biproduct(x.complex, e).inc1;
      tr.non_quis_detected = !is_er_quis(FilteredMap{sx, filtered_simple(xe, r, N), simple_map(w, N)}, r, N - 1);
      if (!tr.non_quis_detected) note("witness: s(X -> X + E) unexpectedly an E_r-quis");
    } catch (const std::exception& ex) {
      note(std::string("exception: ") + ex.what());
    }
    report.trials.push_back(std::move(tr));
  }
  return report;
}

bool AxiomReport::all_pass() const {
  if (!sign_mutant_detected) return false;
  for (const auto& t : trials)
    if (!t.all_pass()) return false;
  return true;
}

CosimplicialComplex random_cosimplicial(Rng& rng, const Field& field, int max_poset, std::size_t max_dim, int lo,
                                        int hi, int p_max) {
  auto pool = poset_pool(max_poset);
  auto p = std::make_shared<const Poset>(pool[rng.below(pool.size())]);
  Sheaf f = random_sheaf(rng, p, field, SheafBounds{lo, hi, max_dim});
  return conjugate_levels(rng, cosimplicial_replacement(f, p_max)).complex;
}

CosimplicialComplex reduced_path_object(const CochainComplex& a, int p_max) {
  PathObject path = path_object(a, p_max);
  const Field& f = a.field();
  std::vector<CochainComplex> levels;
  for (int n = 0; n <= p_max; ++n) {
    levels.push_back(n == 0 ? CochainComplex(f, a.lo()) : direct_sum(std::vector<CochainComplex>(n, a)));
  }
  // Summands 1..n of P(n) form E(n).
  auto restrict = [&](const ChainMap& m, int ns, int nt) {
    std::map<int, Matrix> comps;
    for (int q = a.lo(); q <= a.hi(); ++q) {
      const std::size_t d = a.dim(q);
      comps.emplace(q, m.component(q).block(d, d, d * nt, d * ns));
    }
    return ChainMap(levels[ns], levels[nt], std::move(comps));
  };
  std::vector<std::vector<ChainMap>> cof(p_max + 1), cod(p_max + 1);
  for (int n = 1; n <= p_max; ++n)
    for (int i = 0; i <= n; ++i) cof[n].push_back(restrict(path.path.coface(n, i), n - 1, n));
  for (int n = 0; n < p_max; ++n)
    for (int j = 0; j <= n; ++j) cod[n].push_back(restrict(path.path.codegeneracy(n, j), n + 1, n));
  CosimplicialComplex e(std::move(levels), std::move(cof), std::move(cod));
  e.validate();
  return e;
}

LambdaMuComposites lambda_mu_composites(const CosimplicialComplex& x, int n_top) {
  const Field& f = x.field();
  CochainComplex sx = simple(x, n_top);
  SimpleLayout l = simple_layout(x, n_top);
  const int b = l.lo;
  auto through = [&](const BicosimplicialComplex& z, bool into_vertical) {
    CochainComplex ss = iterated_simple(z, n_top);
    IteratedLayout il = iterated_layout(z, n_top);
    std::map<int, Matrix> comps;
    for (int n = b; n <= n_top; ++n) {
      Matrix m(f, ss.dim(n), sx.dim(n));
      for (int p = 0; p <= std::min(n - b, x.p_max()); ++p) {
        const std::size_t d = x.level(p).dim(n - p);
        if (d == 0) continue;
        const std::size_t row = into_vertical ? il.offset(n, 0, p) : il.offset(n, p, 0);
        m.set_block(row, l.offset(n, p), Matrix::identity(f, d));
      }
      comps.emplace(n, std::move(m));
    }
    ChainMap inc(sx, ss, std::move(comps));
    inc.validate(n_top - 1);
    return aw_map(z, n_top).after(inc);
  };
  return LambdaMuComposites{through(constant_in_first(x), true), through(constant_in_second(x), false)};
}

AxiomReport check_descent_axioms(std::uint64_t seed, const AxiomParams& prm) {
  AxiomReport report;
  report.seed = seed;
  const Field& field = prm.field;
  const int N = prm.n_top;
  const int b = 0;
  const int P = N - b;
  for (int t = 0; t < prm.trials; ++t) {
    AxiomTrial tr;
    tr.seed = seed + static_cast<std::uint64_t>(t);
    Rng rng(tr.seed);
    auto note = [&](const std::string& s) { tr.failures.push_back(s); };
    try {
      const int hi = rng.between(0, 2);
      CosimplicialComplex x = random_cosimplicial(rng, field, prm.max_poset, prm.max_dim, b, hi, P);
      CosimplicialComplex y = random_cosimplicial(rng, field, prm.max_poset, prm.max_dim, b, 1, P);

      if (!report.sign_mutant_detected) {
        try {
          simple_unchecked(x, N, true).validate();
        } catch (const InvariantViolation&) {
          report.sign_mutant_detected = true;
        }
      }

      // S1: s(X × Y) -> s(X) × s(Y).
      ChainMap cmp = product_comparison(x, y, N);
      tr.s1 = cmp.commutes(N - 1) && is_quis(cmp, N - 1).flag;
      if (!tr.s1) note("S1: s(X x Y) -> sX x sY is not a quis");

      // S2: Alexander-Whitney on a small X ⊠ Y.
      const std::size_t small = std::min<std::size_t>(prm.max_dim, 2);
      CosimplicialComplex xs = random_cosimplicial(rng, field, std::min(prm.max_poset, 2), small, b, 1, P);
      CosimplicialComplex ys = random_cosimplicial(rng, field, std::min(prm.max_poset, 2), small, b, 0, P);
      tr.s2 = is_quis(aw_map(external_tensor(xs, ys), N), N - 1).flag;
      if (!tr.s2) note("S2: Alexander-Whitney map is not a quis");

      // S3: λ_A.
      CochainComplex a = random_complex(rng, field, b, hi, prm.max_dim);
      tr.s3 = is_quis(lambda(a, N), N - 1).flag;
      if (!tr.s3) note("S3: lambda is not a quis");

      // S4: a levelwise quis X -> X ⊕ C, conjugated.
      CosimplicialMap g = quis_into_larger(rng, x, acyclic_companion(rng, field, prm, P));
      if (!levelwise_quis(g)) throw InvariantViolation("S4 instance is not levelwise quis");
      tr.s4 = is_quis(simple_map(g, N), N - 1).flag;
      if (!tr.s4) note("S4: s(f) is not a quis for a levelwise quis f");

      // Levelwise non-quis witness X -> X ⊕ E.
      CochainComplex unit(field, 0, {1}, {});
      CosimplicialComplex e = reduced_path_object(unit, P);
      CosimplicialMap w = cosimplicial_biproduct(x, e).inc1;
      tr.non_quis_detected = !is_quis(simple_map(w, N), N - 1).flag;
      if (!tr.non_quis_detected) note("witness: s(X -> X + E) unexpectedly a quis");

      // S5: A^{d_0} and A^{d_1}.
      PathObject path = path_object(a, P);
      tr.s5 = is_quis(simple_map(path.ev0, N), N - 1).flag && is_quis(simple_map(path.ev1, N), N - 1).flag;
      if (!tr.s5) note("S5: evaluation from the path object is not a quis");

      // Diagonal swap on g ⊠ id, with g a quis or the witness.
      CosimplicialMap gs = rng.coin() ? quis_into_larger(rng, xs, acyclic_companion(rng, field, prm, P))
                                      : cosimplicial_biproduct(xs, reduced_path_object(unit, P)).inc1;
      BicosimplicialMap big = external_tensor_map(gs, identity_map(ys));
      const bool q1 = is_quis(iterated_simple_map(big, N), N - 1).flag;
      const bool q2 = is_quis(iterated_simple_map(transposed(big), N), N - 1).flag;
      tr.swap_consistent = q1 == q2;
      if (!tr.swap_consistent) note("diagonal swap: quis verdicts differ");

      // λ/μ compatibility.
      LambdaMuComposites lm = lambda_mu_composites(x, N);
      tr.lambda_mu_identity = is_identity_through(lm.through_first, N) && is_identity_through(lm.through_second, N);
      if (!tr.lambda_mu_identity) note("lambda/mu composites are not the identity");
    } catch (const std::exception& ex) {
      note(std::string("exception: ") + ex.what());
    }
    report.trials.push_back(std::move(tr));
  }
  return report;
}

}  // namespace godex
