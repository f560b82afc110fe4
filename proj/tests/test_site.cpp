#include "doctest.h"

#include "godex/oracle.hpp"
#include "godex/random.hpp"
#include "godex/suite.hpp"

using namespace godex;

namespace {

std::shared_ptr<const Poset> named(const std::string& n) { return std::make_shared<const Poset>(Poset::named(n)); }

CochainComplex field_in_degree_zero(const Field& f) { return CochainComplex(f, 0, {1}, {}); }

// Up-sets by brute force over all masks.
std::size_t count_up_sets(const Poset& p) {
  const int n = static_cast<int>(p.size());
  std::size_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n && ok; ++y) {
        if (((m >> x) & 1u) && p.leq(x, y) && !((m >> y) & 1u)) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

// Connected components of the comparability graph restricted to U.
std::size_t components(const Poset& p, const OpenSet& u) {
  std::vector<int> members = u.members(), label(p.size(), -1);
  std::size_t c = 0;
  for (int s : members) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = static_cast<int>(c);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : members) {
        if (label[y] < 0 && (p.leq(x, y) || p.leq(y, x))) {
          label[y] = static_cast<int>(c);
          stack.push_back(y);
        }
      }
    }
    ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("named posets") {
  CHECK(Poset::named("point").size() == 1);
  CHECK(Poset::named("sierpinski").covers().size() == 1);
  CHECK(Poset::named("chain3").covers().size() == 2);
  CHECK(Poset::named("pseudocircle").covers().size() == 4);
  CHECK(Poset::named("pseudosphere").covers().size() == 8);
  CHECK_THROWS(Poset::named("torus"));
  CHECK_THROWS_AS(Poset::named("point").index("z"), UnknownElement);
  CHECK_THROWS(Poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
}

TEST_CASE("up-set enumeration matches brute force") {
  for (const auto& n : suite_posets()) {
    auto p = named(n);
    CHECK(up_sets(*p).size() == count_up_sets(*p));
  }
  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    Poset p = random_poset(rng, 5);
    CHECK(up_sets(p).size() == count_up_sets(p));
  }
  CHECK_THROWS_AS(open_from_names(Poset::named("sierpinski"), {"c"}), NotOpen);
}

TEST_CASE("random posets are deterministic in the seed") {
  Rng a(9), b(9);
  CHECK(random_poset(a, 6) == random_poset(b, 6));
}

TEST_CASE("sections of the constant sheaf count components") {
  const Field f = Field::prime(5);
  for (const auto& n : suite_posets()) {
    auto p = named(n);
    Sheaf k = constant_sheaf(p, field_in_degree_zero(f));
    for (const auto& u : up_sets(*p)) {
      CHECK(sections(k, u).complex.dim(0) == components(*p, u));
    }
  }
}

TEST_CASE("random sheaves are functorial and satisfy the equalizer condition") {
  Rng rng(2);
  const Field f = Field::prime(5);
  for (const auto& n : suite_posets()) {
    auto p = named(n);
    Sheaf s = random_sheaf(rng, p, f, SheafBounds{0, 1, 2});
    for (int x = 0; x < static_cast<int>(p->size()); ++x) {
      for (int y = 0; y < static_cast<int>(p->size()); ++y) {
        for (int z = 0; z < static_cast<int>(p->size()); ++z) {
          if (p->leq(x, y) && p->leq(y, z)) {
            CHECK(s.restriction(y, z).after(s.restriction(x, y)) == s.restriction(x, z));
          }
        }
      }
    }
    OpenSet all{p->all_mask()};
    std::vector<OpenSet> cover;
    for (int x = 0; x < static_cast<int>(p->size()); ++x) cover.push_back(OpenSet{p->up_mask(x)});
    CHECK(check_sheaf_equalizer(s, all, cover));
  }
}

TEST_CASE("skyscraper stalks") {
  const Field f = Field::prime(5);
  auto p = named("pseudosphere");
  Rng rng(3);
  CochainComplex d = random_complex(rng, f, 0, 1, 2);
  for (int x = 0; x < static_cast<int>(p->size()); ++x) {
    Sheaf s = skyscraper(p, x, d);
    for (int y = 0; y < static_cast<int>(p->size()); ++y) {
      CHECK(s.stalk(y).total_dim() == (p->leq(y, x) ? d.total_dim() : 0));
    }
  }
}

TEST_CASE("direct image sections are sections of the preimage") {
  const Field f = Field::prime(5);
  auto src = named("pseudocircle");
  auto tgt = named("sierpinski");
  MonotoneMap m{src, tgt, {tgt->index("c"), tgt->index("c"), tgt->index("o"), tgt->index("o")}};
  m.validate();
  Rng rng(4);
  Sheaf s = random_sheaf(rng, src, f, SheafBounds{0, 1, 2});
  Sheaf push = direct_image(m, s);
  for (const auto& v : up_sets(*tgt)) {
    CHECK(betti_numbers(sections(push, v).complex) == betti_numbers(sections(s, m.preimage(v)).complex));
  }
  MonotoneMap bad{src, tgt, {tgt->index("o"), tgt->index("o"), tgt->index("c"), tgt->index("c")}};
  CHECK_THROWS_AS(bad.validate(), NotMonotone);
}
