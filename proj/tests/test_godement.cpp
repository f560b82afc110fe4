#include "doctest.h"

#include "godex/oracle.hpp"
#include "godex/suite.hpp"

using namespace godex;

namespace {

std::shared_ptr<const Poset> named(const std::string& n) { return std::make_shared<const Poset>(Poset::named(n)); }

Sheaf suite_sheaf(std::uint64_t seed, const std::string& poset) {
  Rng rng(seed);
  return random_sheaf(rng, named(poset), Field::prime(5), SheafBounds{0, 1, 2});
}

// Σ over weak chains x <= y_0 <= ... <= y_p of dim F_{y_p}^n.
std::size_t chain_count_dim(const Sheaf& f, int x, int p, int n) {
  const Poset& P = f.poset();
  std::size_t total = 0;
  for (int y = 0; y < static_cast<int>(P.size()); ++y) {
    if (!P.leq(x, y)) continue;
    total += p == 0 ? f.stalk(y).dim(n) : chain_count_dim(f, y, p - 1, n);
  }
  return total;
}

}  // namespace

TEST_CASE("triple laws") {
  for (const auto& n : suite_posets()) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      Sheaf f = suite_sheaf(s, n);
      CHECK_MESSAGE(!triple_law_failure(f), n << " seed " << s);
    }
  }
}

TEST_CASE("resolution level dimensions count chains") {
  for (const auto& n : {"sierpinski", "pseudocircle", "pseudosphere"}) {
    Sheaf f = suite_sheaf(5, n);
    GodementResolution r = godement_resolution(f, 3);
    CHECK_FALSE(r.g.identity_failure());
    for (int p = 0; p <= 3; ++p) {
      for (int x = 0; x < static_cast<int>(f.poset().size()); ++x) {
        for (int d = 0; d <= 1; ++d) CHECK(r.g.level(p).stalk(x).dim(d) == chain_count_dim(f, x, p, d));
      }
    }
  }
}

TEST_CASE("truncated resolution stores degrees up to N - p") {
  Sheaf f = suite_sheaf(6, "chain3");
  GodementResolution r = godement_resolution_truncated(f, 4);
  CHECK(r.g.p_max() == 4);
  for (int p = 0; p <= r.g.p_max(); ++p) CHECK(r.g.level(p).truncated_at() == 4 - p);
}

TEST_CASE("stalks of the resolution collapse by the extra degeneracy") {
  Sheaf f = suite_sheaf(7, "pseudocircle");
  GodementResolution r = godement_resolution_truncated(f, 6);
  for (int x = 0; x < static_cast<int>(f.poset().size()); ++x) {
    CollapseCertificate c = collapse_by_extra_degeneracy(r.g.at_stalk(x), stalk_extra_degeneracy(r, x), 6);
    CHECK(c.identities_hold);
    CHECK(c.quis.flag);
  }
}

TEST_CASE("skyscraper sections collapse") {
  const Field f = Field::prime(5);
  auto p = named("pseudocircle");
  Rng rng(8);
  CochainComplex d = random_complex(rng, f, 0, 1, 2);
  const auto want = nonzero_betti(betti_numbers(d));
  for (int x = 0; x < static_cast<int>(p->size()); ++x) {
    Sheaf s = skyscraper(p, x, d);
    GodementResolution r = godement_resolution_truncated(s, 6);
    for (const auto& u : up_sets(*p)) {
      if (!u.contains(x)) continue;
      SkyscraperCollapse sc = skyscraper_extra_degeneracy(r, x, u);
      CHECK(collapse_by_extra_degeneracy(sc.complex, sc.extra, 6).quis.flag);
    }
  }
  SuiteParams sp;
  sp.posets = {"sierpinski", "pseudocircle"};
  for (const auto& i : run_skyscraper_suite(9, sp)) CHECK_MESSAGE(i.pass(), i.poset << " " << i.point << " " << i.open);
}

TEST_CASE("the three conditions and the oracles on random sheaves") {
  for (const auto& n : suite_posets()) {
    TheoremInstance t = check_theorem(suite_sheaf(10, n), 6);
    CHECK_MESSAGE(t.all_pass(), n << (t.failures.empty() ? "" : ": " + t.failures.front()));
    CHECK(t.certified_degree == 5);
  }
}

TEST_CASE("literal and reduced descent checks agree") {
  for (const auto& n : {"sierpinski", "chain3", "pseudocircle"}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      Sheaf f = suite_sheaf(s, n);
      CHECK(descent_check(f, 6, DescentStrategy::literal).verdict ==
            descent_check(f, 6, DescentStrategy::reduced).verdict);
      CHECK(thomason_check(f, 6, DescentStrategy::literal).verdict);
      CHECK(thomason_check(f, 6, DescentStrategy::reduced).verdict);
    }
  }
}

TEST_CASE("rho of H(F) and H(rho_F) are global equivalences") {
  Sheaf f = suite_sheaf(11, "pseudocircle");
  Hypercohomology h = hypercohomology_sheaf(f, 5);
  Hypercohomology hh = hypercohomology_sheaf(h.h, 5);
  CHECK(equivalence_check(hh.rho, EquivalenceKind::global).verdict);
  CHECK(equivalence_check(hypercohomology_map(h.rho, 5), EquivalenceKind::global).verdict);
}

TEST_CASE("separation witness is local but not global") {
  SeparationWitness w = separation_witness(Field::prime(5), 6);
  CHECK(w.local.verdict);
  REQUIRE_FALSE(w.global.verdict);
  CHECK(w.global.witnesses.front().where == "{a,b,x,y}");
  CHECK(w.global.witnesses.front().degree == 1);
}

TEST_CASE("W and T(f) in S and H(f) in S agree") {
  SuiteParams sp;
  sp.posets = {"sierpinski", "pseudocircle"};
  int w = 0;
  auto all = run_localeq_suite(12, sp, 8);
  for (const auto& i : all) {
    CHECK_MESSAGE(i.agree(), i.poset << " " << i.kind);
    w += i.w;
  }
  CHECK(w > 0);
  CHECK(w < static_cast<int>(all.size()));
}

TEST_CASE("derived pushforward is consistent with preimages") {
  auto src = named("pseudocircle");
  auto tgt = named("sierpinski");
  MonotoneMap m{src, tgt, {0, 0, 1, 1}};
  Sheaf f = suite_sheaf(13, "pseudocircle");
  Sheaf push = derived_direct_image(m, f, 6);
  for (const auto& v : up_sets(*tgt)) {
    CHECK(nonzero_betti(betti_numbers(sections(push, v).complex, 5)) ==
          nonzero_betti(derived_sections(f, m.preimage(v), 6).betti));
  }
}

TEST_CASE("descent spectral sequence") {
  for (const auto& n : {"sierpinski", "pseudocircle"}) {
    Sheaf f = suite_sheaf(14, n);
    OpenSet all{f.poset().all_mask()};
    DescentSpectralSequence ss = descent_spectral_sequence(f, all, 2, 6);
    CHECK(ss.pages[2].dims() == descent_e2_oracle(f, all, 6));
    SpectralPage inf = er_page(ss.total, stable_page(ss.total), 5);
    auto rg = derived_sections(f, all, 6).betti;
    for (int d = 0; d <= 5; ++d) {
      std::size_t sum = 0;
      for (const auto& [pq, t] : inf.terms) sum += pq.first + pq.second == d ? t.dim() : 0;
      CHECK(sum == rg[d]);
    }
  }
}

TEST_CASE("errors") {
  Sheaf f = suite_sheaf(15, "sierpinski");
  CHECK_THROWS_AS(derived_sections(f, OpenSet{1}, 6), NotOpen);
  CHECK_THROWS_AS(hypercohomology_sheaf(f, 0), InsufficientLevels);
}
