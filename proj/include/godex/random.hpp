#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "godex/cosimplicial.hpp"
#include "godex/filtered.hpp"
#include "godex/site.hpp"

namespace godex {

/// Seeded generator. Draws are defined in terms of raw mt19937_64 output so
/// a seed reproduces the same instance on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  bool coin() { return below(2) == 1; }
  /// A random entry: uniform residue over GF(p), an integer in [-2, 2] over Q.
  Scalar entry(const Field& field);

 private:
  std::mt19937_64 engine_;
};

Matrix random_matrix(Rng& rng, const Field& field, std::size_t rows, std::size_t cols);
Matrix random_invertible(Rng& rng, const Field& field, std::size_t n);

/// Random complex with the given dimensions starting at degree lo. Each d^n
/// is a random combination of rows annihilating im d^{n-1}.
CochainComplex random_complex(Rng& rng, const Field& field, int lo, const std::vector<std::size_t>& dims);
/// Dimensions drawn in [0, max_dim] for degrees lo..hi.
CochainComplex random_complex(Rng& rng, const Field& field, int lo, int hi, std::size_t max_dim);

/// Random complex with a random d-compatible flag F^{k_min} = A ⊇ ... ⊇
/// F^{k_max} ⊇ 0, grown from the top step down.
FilteredComplex random_filtered_complex(Rng& rng, const Field& field, int lo, int hi, std::size_t max_dim, int k_min,
                                        int k_max);
/// A random filtration on a given complex.
FilteredComplex random_filtration(Rng& rng, const CochainComplex& base, int k_min, int k_max);

/// A uniformly random element of the space of chain maps source -> target.
ChainMap random_chain_map(Rng& rng, const CochainComplex& source, const CochainComplex& target);

struct SheafBounds {
  int lo = 0;
  int hi = 1;
  std::size_t max_dim = 2;
};

/// n elements x0..x{n-1}; each pair i < j is related with probability 1/2,
/// then closed transitively.
Poset random_poset(Rng& rng, int n);

/// Stalks drawn independently; restrictions on the covers out of each x are
/// a random solution of the chain-map and functoriality equations, solved
/// from the top of the poset down.
Sheaf random_sheaf(Rng& rng, std::shared_ptr<const Poset> p, const Field& field, const SheafBounds& bounds);
/// A uniformly random sheaf map source -> target.
SheafMap random_sheaf_map(Rng& rng, const Sheaf& source, const Sheaf& target);

/// Replaces every level X(p) by an isomorphic copy through random
/// invertible matrices in each degree.
struct Conjugated {
  CosimplicialComplex complex;
  /// iso[p]: X(p) -> complex.level(p).
  std::vector<ChainMap> iso;
};
Conjugated conjugate_levels(Rng& rng, const CosimplicialComplex& x);

}  // namespace godex
