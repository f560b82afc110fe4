#include "godex/suite.hpp"

#include "godex/oracle.hpp"

namespace godex {
namespace {

std::string first_witness(const EquivalenceReport& r) {
  if (r.witnesses.empty()) return "";
  return r.witnesses.front().where + " degree " + std::to_string(r.witnesses.front().degree);
}

CochainComplex acyclic_pair(const Field& field) {
  Matrix one(field, 1, 1);
  one.set(0, 0, 1);
  return CochainComplex(field, 0, {1, 1}, {one});
}

// F -> F ⊕ A (inclusion) or F ⊕ A -> F (projection), stalkwise biproducts.
SheafMap summand_map(const Sheaf& f, const Sheaf& a, bool inclusion) {
  Sheaf sum = sheaf_sum(f, a);
  std::vector<ChainMap> comps;
  for (std::size_t x = 0; x < f.poset().size(); ++x) {
    Biproduct b = biproduct(f.stalk(static_cast<int>(x)), a.stalk(static_cast<int>(x)));
    comps.push_back(inclusion ? b.inc1 : b.pr1);
  }
  return inclusion ? SheafMap(f, sum, std::move(comps)) : SheafMap(sum, f, std::move(comps));
}

std::shared_ptr<const Poset> suite_poset(Rng& rng, const SuiteParams& params, std::size_t index, std::string& name) {
  if (params.poset_size > 0) {
    auto p = std::make_shared<const Poset>(random_poset(rng, params.poset_size));
    name = "random" + std::to_string(params.poset_size);
    return p;
  }
  name = params.posets.at(index % params.posets.size());
  return std::make_shared<const Poset>(Poset::named(name));
}

}  // namespace

std::map<int, std::size_t> nonzero_betti(const std::map<int, std::size_t>& betti) {
  std::map<int, std::size_t> out;
  for (const auto& [n, b] : betti) {
    if (b) out.emplace(n, b);
  }
  return out;
}

bool TheoremReport::all_pass() const {
  for (const auto& i : instances) {
    if (!i.all_pass()) return false;
  }
  return true;
}

TheoremInstance check_theorem(const Sheaf& f, int n_top) {
  TheoremInstance t;
  Hypercohomology h = hypercohomology_sheaf(f, n_top);
  EquivalenceReport local = equivalence_check(h.rho, EquivalenceKind::local);
  EquivalenceReport theta = stalk_commutation_check(h);
  EquivalenceReport thomason = thomason_check(h);
  t.rho_local = local.verdict;
  t.theta = theta.verdict;
  t.thomason = thomason.verdict;
  if (!t.rho_local) t.failures.push_back("rho_F not local at " + first_witness(local));
  if (!t.theta) t.failures.push_back("theta fails at " + first_witness(theta));
  if (!t.thomason) t.failures.push_back("descent of H(F) fails at " + first_witness(thomason));

  DerivedSections ds = derived_sections(h, OpenSet{f.poset().all_mask()});
  t.certified_degree = ds.certified_degree;
  t.betti = nonzero_betti(ds.betti);
  auto holim = nonzero_betti(betti_numbers(holim_replacement(f, n_top), ds.certified_degree));
  auto norm = nonzero_betti(betti_numbers(normalized_replacement(f), ds.certified_degree));
  t.oracle = holim == t.betti && norm == t.betti;
  if (holim != t.betti) t.failures.push_back("holim " + betti_string(holim) + " vs " + betti_string(t.betti));
  if (norm != t.betti) t.failures.push_back("normalized " + betti_string(norm) + " vs " + betti_string(t.betti));
  return t;
}

TheoremReport run_theorem_suite(std::uint64_t seed, const SuiteParams& params) {
  TheoremReport report;
  report.seed = seed;
  const std::size_t groups = params.poset_size > 0 ? 1 : params.posets.size();
  std::uint64_t s = seed;
  for (std::size_t g = 0; g < groups; ++g) {
    for (int trial = 0; trial < params.trials; ++trial, ++s) {
      Rng rng(s);
      std::string name;
      auto p = suite_poset(rng, params, g, name);
      Sheaf f = random_sheaf(rng, p, params.field, SheafBounds{params.lo, params.hi, params.max_dim});
      TheoremInstance t = check_theorem(f, params.n_top);
      t.poset = name;
      t.trial = trial;
      t.seed = s;
      report.instances.push_back(std::move(t));
    }
  }
  return report;
}

std::vector<SkyscraperInstance> run_skyscraper_suite(std::uint64_t seed, const SuiteParams& params) {
  std::vector<SkyscraperInstance> out;
  for (std::size_t g = 0; g < params.posets.size(); ++g) {
    Rng rng(seed + g);
    const std::string& name = params.posets[g];
    auto p = std::make_shared<const Poset>(Poset::named(name));
    CochainComplex d = random_complex(rng, params.field, params.lo, params.hi, params.max_dim);
    auto expected = nonzero_betti(betti_numbers(d));
    for (int x = 0; x < static_cast<int>(p->size()); ++x) {
      Hypercohomology h = hypercohomology_sheaf(skyscraper(p, x, d), params.n_top);
      for (const auto& u : up_sets(*p)) {
        SkyscraperInstance s;
        s.poset = name;
        s.point = p->name(x);
        s.open = open_to_string(*p, u);
        if (u.contains(x)) s.expected = expected;
        s.got = nonzero_betti(derived_sections(h, u).betti);
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::vector<LocalEqInstance> run_localeq_suite(std::uint64_t seed, const SuiteParams& params, int trials) {
  static const char* kinds[] = {"random", "acyclic-inclusion", "skyscraper-projection", "rho"};
  std::vector<LocalEqInstance> out;
  const SheafBounds bounds{params.lo, params.hi, params.max_dim};
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    Rng rng(s);
    const int kind = t % 4;
    std::string name;
    auto p = suite_poset(rng, params, static_cast<std::size_t>(t / 4), name);
    Sheaf f = random_sheaf(rng, p, params.field, bounds);
    const int x = rng.between(0, static_cast<int>(p->size()) - 1);
    SheafMap m;
    switch (kind) {
      case 0:
        m = random_sheaf_map(rng, f, random_sheaf(rng, p, params.field, bounds));
        break;
      case 1:
        m = summand_map(f, skyscraper(p, x, acyclic_pair(params.field)), true);
        break;
      case 2:
        m = summand_map(f, skyscraper(p, x, random_complex(rng, params.field, params.lo, params.hi, params.max_dim)),
                        false);
        break;
      default:
        m = hypercohomology_sheaf(f, params.n_top).rho;
        break;
    }
    LocalEqInstance li;
    li.poset = name;
    li.kind = kinds[kind];
    li.seed = s;
    EquivalenceReport w = equivalence_check(m, EquivalenceKind::local);
    EquivalenceReport ts = equivalence_check(godement_T_map(m), EquivalenceKind::global);
    EquivalenceReport hs = equivalence_check(hypercohomology_map(m, params.n_top), EquivalenceKind::global);
    li.w = w.verdict;
    li.t_s = ts.verdict;
    li.h_s = hs.verdict;
    li.certified_degree = std::min({w.certified_degree, ts.certified_degree, hs.certified_degree});
    out.push_back(std::move(li));
  }
  return out;
}

SeparationWitness separation_witness(const Field& field, int n_top) {
  auto p = std::make_shared<const Poset>(Poset::pseudocircle());
  Sheaf k = constant_sheaf(p, CochainComplex(field, 0, {1}, {}));
  SeparationWitness w;
  w.n_top = n_top;
  w.map = hypercohomology_sheaf(k, n_top).rho;
  w.local = equivalence_check(w.map, EquivalenceKind::local);
  w.global = equivalence_check(w.map, EquivalenceKind::global);
  return w;
}

}  // namespace godex
