#include "doctest.h"

#include "godex/axioms.hpp"
#include "godex/cosimplicial.hpp"
#include "godex/random.hpp"

using namespace godex;

namespace {

long long alternating_dims(const CochainComplex& c) {
  long long s = 0;
  for (int n = c.lo(); n <= c.hi(); ++n) s += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dim(n));
  return s;
}

std::size_t at(const std::map<int, std::size_t>& b, int n) {
  auto it = b.find(n);
  return it == b.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("betti numbers satisfy the Euler characteristic") {
  Rng rng(1);
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 20; ++t) {
      CochainComplex c = random_complex(rng, f, -1, 3, 3);
      long long chi = 0;
      for (const auto& [n, b] : betti_numbers(c)) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(b);
      CHECK(chi == alternating_dims(c));
      CHECK(euler_characteristic(c) == chi);
    }
  }
}

TEST_CASE("d∘d != 0 is rejected") {
  const Field f = Field::prime(5);
  Matrix one = Matrix::identity(f, 1);
  CHECK_THROWS_AS(CochainComplex(f, 0, {1, 1, 1}, {one, one}).validate(), InvariantViolation);
}

TEST_CASE("quasi-isomorphism tests") {
  Rng rng(2);
  const Field f = Field::prime(7);
  CochainComplex c = random_complex(rng, f, 0, 2, 3);
  CHECK(is_quis(ChainMap::identity(c)).flag);
  if (!betti_numbers(c).empty()) {
    bool nonzero = false;
    for (const auto& [n, b] : betti_numbers(c)) nonzero = nonzero || b;
    CHECK(is_quis(ChainMap::zero(c, c)).flag == !nonzero);
  }
  Biproduct b = biproduct(c, random_complex(rng, f, 0, 2, 2));
  CHECK(b.pr1.after(b.inc1) == ChainMap::identity(c));
  CHECK(b.pr2.after(b.inc1) == ChainMap::zero(c, b.pr2.target()));
}

TEST_CASE("tensor products follow the Kunneth formula") {
  Rng rng(3);
  const Field f = Field::prime(5);
  for (int t = 0; t < 10; ++t) {
    CochainComplex a = random_complex(rng, f, 0, 2, 2);
    CochainComplex b = random_complex(rng, f, -1, 1, 2);
    auto ba = betti_numbers(a), bb = betti_numbers(b), bt = betti_numbers(tensor(a, b));
    for (int n = -1; n <= 3; ++n) {
      std::size_t want = 0;
      for (int i = 0; i <= 2; ++i) want += at(ba, i) * at(bb, n - i);
      CHECK(at(bt, n) == want);
    }
  }
}

TEST_CASE("truncation keeps cohomology below the cut") {
  Rng rng(4);
  const Field f = Field::prime(3);
  CochainComplex c = random_complex(rng, f, 0, 5, 3);
  CochainComplex t = truncate_above(c, 3);
  CHECK(t.truncated_at() == 3);
  CHECK(t.certified_degree() == 2);
  for (int n = 0; n <= 2; ++n) CHECK(at(betti_numbers(t), n) == at(betti_numbers(c), n));
}

TEST_CASE("simple of a constant cosimplicial complex") {
  Rng rng(5);
  const Field f = Field::prime(5);
  CochainComplex a = random_complex(rng, f, 0, 2, 2);
  const int n_top = 6;
  CosimplicialComplex ca = CosimplicialComplex::constant(a, n_top);
  CHECK_FALSE(ca.identity_failure());
  QuisReport q = is_quis(lambda(a, n_top));
  CHECK(q.flag);
  CHECK_THROWS_AS(simple(CosimplicialComplex::constant(a, 2), n_top), InsufficientLevels);
}

TEST_CASE("path object evaluations are natural and split") {
  Rng rng(6);
  const Field f = Field::prime(5);
  CochainComplex a = random_complex(rng, f, 0, 1, 2);
  PathObject po = path_object(a, 5);
  CHECK_FALSE(po.path.identity_failure());
  CHECK_FALSE(po.ev0.naturality_failure());
  CHECK_FALSE(po.ev1.naturality_failure());
  CHECK(is_quis(simple_map(po.ev0, 5)).flag);
  CHECK(is_quis(simple_map(po.ev1, 5)).flag);
}

TEST_CASE("random cosimplicial complexes satisfy the identities") {
  Rng rng(7);
  const Field f = Field::prime(5);
  for (int t = 0; t < 5; ++t) {
    CosimplicialComplex x = random_cosimplicial(rng, f, 3, 2, 0, 1, 6);
    CHECK_FALSE(x.identity_failure());
    CHECK_FALSE(x.reversed().identity_failure());
  }
}

TEST_CASE("descent axioms on a short run, with the sign mutant caught") {
  AxiomParams p;
  p.trials = 4;
  AxiomReport r = check_descent_axioms(17, p);
  CHECK(r.trials.size() == 4);
  for (const auto& t : r.trials) {
    CHECK_MESSAGE(t.all_pass(), "seed " << t.seed << (t.failures.empty() ? "" : ": " + t.failures.front()));
  }
  CHECK(r.sign_mutant_detected);
  CHECK(r.all_pass());
}
