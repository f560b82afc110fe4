#include "doctest.h"

#include "godex/axioms.hpp"
#include "godex/filtered.hpp"
#include "godex/random.hpp"

using namespace godex;

namespace {

// A = (k -> k), d = 1, with F^1 A^0 = 0 and F^1 A^1 = A^1.
FilteredComplex shift_example(const Field& f) {
  CochainComplex base(f, 0, {1, 1}, {Matrix::identity(f, 1)});
  std::map<int, std::vector<Subspace>> steps;
  steps[0] = {Subspace::full(f, 1), Subspace(f, 1)};
  steps[1] = {Subspace::full(f, 1), Subspace::full(f, 1)};
  return FilteredComplex(base, 0, 1, steps);
}

}  // namespace

TEST_CASE("pages of a two-step filtration") {
  FilteredComplex fc = shift_example(Field::prime(7));
  auto pages = spectral_pages(fc, 3);
  using Dims = std::map<std::pair<int, int>, std::size_t>;
  CHECK(pages[0].dims() == Dims{{{0, 0}, 1}, {{1, 0}, 1}});
  CHECK(pages[1].dims() == Dims{{{0, 0}, 1}, {{1, 0}, 1}});
  CHECK(pages[2].dims().empty());
  CHECK(stable_page(fc) == 2);
}

TEST_CASE("trivial filtration has E_1 = H") {
  Rng rng(1);
  const Field f = Field::prime(5);
  CochainComplex c = random_complex(rng, f, 0, 3, 3);
  SpectralPage e1 = er_page(FilteredComplex::trivial(c, 2), 1);
  for (const auto& [n, b] : betti_numbers(c)) CHECK(e1.dim(2, n - 2) == b);
}

TEST_CASE("non-decreasing flags are rejected") {
  const Field f = Field::prime(5);
  CochainComplex base(f, 0, {1}, {});
  std::map<int, std::vector<Subspace>> steps;
  steps[0] = {Subspace(f, 1), Subspace::full(f, 1)};
  CHECK_THROWS_AS(FilteredComplex(base, 0, 1, steps), NotFiltered);
}

TEST_CASE("identity is an E_r quasi-isomorphism and zero usually is not") {
  Rng rng(2);
  const Field f = Field::prime(5);
  FilteredComplex a = random_filtered_complex(rng, f, 0, 2, 2, 0, 2);
  CHECK(is_er_quis(FilteredMap{a, a, ChainMap::identity(a.base())}, 0));
  bool nonzero = false;
  for (const auto& [pq, d] : er_page(a, 1).dims()) nonzero = nonzero || d;
  CHECK(is_er_quis(FilteredMap{a, a, ChainMap::zero(a.base(), a.base())}, 0) == !nonzero);
}

TEST_CASE("decalage shifts pages by one from r = 1") {
  Rng rng(3);
  const Field f = Field::prime(5);
  for (int t = 0; t < 5; ++t) {
    FilteredComplex a = random_filtered_complex(rng, f, 0, 3, 3, 0, 3);
    FilteredComplex d = decalage(a);
    for (int r = 1; r <= 3; ++r) {
      SpectralPage dec = er_page(d, r), orig = er_page(a, r + 1);
      for (const auto& [pq, term] : dec.terms) CHECK(term.dim() == orig.dim(2 * pq.first + pq.second, -pq.first));
      for (const auto& [pq, term] : orig.terms) {
        const int p = -pq.second, q = pq.first - 2 * p;
        CHECK(term.dim() == dec.dim(p, q));
      }
    }
  }
}

TEST_CASE("decalage interchanges with the simple functor") {
  const Field f = Field::prime(5);
  for (int r = 0; r <= 1; ++r) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      Rng rng(100 + s);
      FilteredCosimplicial x = random_filtered_cosimplicial(rng, f, 2, 2, 6);
      CHECK(same_filtration(decalage(filtered_simple(x, r + 1, 6)), filtered_simple(levelwise_decalage(x), r, 6), 5));
    }
  }
}

TEST_CASE("interchange needs the index shift") {
  const Field f = Field::prime(5);
  int differ = 0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    Rng rng(200 + s);
    FilteredCosimplicial x = random_filtered_cosimplicial(rng, f, 2, 2, 6);
    differ += !same_filtration(decalage(filtered_simple(x, 1, 6)), filtered_simple(levelwise_decalage(x), 1, 6), 5);
  }
  CHECK(differ > 0);
}

TEST_CASE("filtered descent axioms on a short run") {
  AxiomParams p;
  p.trials = 3;
  for (int r = 0; r <= 1; ++r) {
    FilteredAxiomReport rep = check_filtered_axioms(5, p, r);
    for (const auto& t : rep.trials) {
      CHECK_MESSAGE(t.all_pass(), "r=" << r << " seed " << t.seed << (t.failures.empty() ? "" : ": " + t.failures.front()));
    }
  }
}
