#include "doctest.h"

#include "godex/oracle.hpp"
#include "godex/random.hpp"
#include "godex/suite.hpp"

using namespace godex;

namespace {

// Strict chains of each length, counted by recursion on the top element.
std::vector<long long> strict_chain_counts(const Poset& p) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<long long>> ending(1, std::vector<long long>(n, 1));
  for (int len = 1; len < n; ++len) {
    std::vector<long long> next(n, 0);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (x != y && p.leq(x, y)) next[y] += ending.back()[x];
      }
    }
    ending.push_back(next);
  }
  std::vector<long long> out;
  for (const auto& e : ending) {
    long long s = 0;
    for (long long v : e) s += v;
    out.push_back(s);
  }
  return out;
}

long long chi(const std::map<int, std::size_t>& betti) {
  long long s = 0;
  for (const auto& [n, b] : betti) s += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(b);
  return s;
}

using Betti = std::map<int, std::size_t>;

}  // namespace

TEST_CASE("nerve cohomology of the suite posets") {
  const Field f = Field::prime(5);
  const CochainComplex k(f, 0, {1}, {});
  const std::map<std::string, Betti> want{{"point", {{0, 1}}},
                                          {"sierpinski", {{0, 1}}},
                                          {"chain3", {{0, 1}}},
                                          {"pseudocircle", {{0, 1}, {1, 1}}},
                                          {"pseudosphere", {{0, 1}, {2, 1}}}};
  for (const auto& [name, betti] : want) {
    Poset p = Poset::named(name);
    auto got = nonzero_betti(constant_cohomology(p, f, k));
    CHECK_MESSAGE(got == betti, name);
    long long euler = 0;
    auto counts = strict_chain_counts(p);
    for (std::size_t i = 0; i < counts.size(); ++i) euler += (i % 2 == 0 ? 1 : -1) * counts[i];
    CHECK(chi(got) == euler);
  }
}

TEST_CASE("nerve simplices are the strict chains") {
  Poset p = Poset::named("pseudosphere");
  NerveComplex nv = nerve(p, Field::prime(5));
  auto counts = strict_chain_counts(p);
  for (std::size_t i = 0; i < nv.simplices.size(); ++i) CHECK(nv.simplices[i].size() == static_cast<std::size_t>(counts[i]));
  for (std::size_t i = 0; i + 1 < nv.coboundaries.size(); ++i) {
    CHECK((nv.coboundaries[i + 1] * nv.coboundaries[i]).is_zero());
  }
}

TEST_CASE("holim replacement of a point is the stalk") {
  Rng rng(1);
  const Field f = Field::prime(5);
  auto p = std::make_shared<const Poset>(Poset::point());
  Sheaf s = random_sheaf(rng, p, f, SheafBounds{0, 2, 2});
  CHECK(nonzero_betti(betti_numbers(holim_replacement(s, 6), 5)) == nonzero_betti(betti_numbers(s.stalk(0))));
}

TEST_CASE("normalized and unnormalized replacements agree") {
  Rng rng(2);
  const Field f = Field::prime(5);
  for (const auto& n : suite_posets()) {
    auto p = std::make_shared<const Poset>(Poset::named(n));
    for (int t = 0; t < 3; ++t) {
      Sheaf s = random_sheaf(rng, p, f, SheafBounds{0, 1, 2});
      CHECK_MESSAGE(nonzero_betti(betti_numbers(holim_replacement(s, 6), 5)) ==
                        nonzero_betti(betti_numbers(normalized_replacement(s), 5)),
                    n);
    }
  }
}

TEST_CASE("holim of a constant sheaf is nerve cohomology") {
  Rng rng(3);
  const Field f = Field::prime(5);
  for (const auto& n : suite_posets()) {
    auto p = std::make_shared<const Poset>(Poset::named(n));
    CochainComplex c = random_complex(rng, f, 0, 1, 2);
    Sheaf k = constant_sheaf(p, c);
    CHECK_MESSAGE(nonzero_betti(betti_numbers(holim_replacement(k, 6), 5)) == nonzero_betti(constant_cohomology(*p, f, c)), n);
  }
}
