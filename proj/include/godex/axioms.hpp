#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "godex/cosimplicial.hpp"
#include "godex/filtered.hpp"
#include "godex/random.hpp"

namespace godex {

struct AxiomParams {
  int trials = 50;
  /// Random instances are cosimplicial replacements of diagrams on posets
  /// with at most this many elements, so the nondegenerate part sits in
  /// cosimplicial levels below it.
  int max_poset = 4;
  std::size_t max_dim = 3;
  int n_top = 6;
  Field field = Field::prime(5);
};

struct AxiomTrial {
  std::uint64_t seed = 0;
  bool s1 = false;
  bool s2 = false;
  bool s3 = false;
  bool s4 = false;
  bool s5 = false;
  /// Extra checks run alongside the axioms.
  bool non_quis_detected = false;  // s(f) of a levelwise non-quis witness fails
  bool swap_consistent = false;    // ss f quis iff ss f^T quis
  bool lambda_mu_identity = false;
  std::vector<std::string> failures;

  bool all_pass() const {
    return s1 && s2 && s3 && s4 && s5 && non_quis_detected && swap_consistent && lambda_mu_identity;
  }
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::vector<AxiomTrial> trials;
  /// Dropping (-1)^p in s was caught by the d∘d check.
  bool sign_mutant_detected = false;
  bool all_pass() const;
};

/// Randomized audit of (S1)-(S5) for bounded complexes; trial t uses the
/// seed seed + t.
AxiomReport check_descent_axioms(std::uint64_t seed, const AxiomParams& params);

/// Random cosimplicial complex: the replacement of a random diagram on a
/// random small poset, conjugated levelwise by random isomorphisms.
CosimplicialComplex random_cosimplicial(Rng& rng, const Field& field, int max_poset, std::size_t max_dim,
                                        int lo, int hi, int p_max);

/// Subobject of A^{Δ[1]} vanishing at both vertices: level n holds the
/// summands of the n non-constant maps [n] -> [1]. Its simple has the
/// cohomology of A shifted up by one.
CosimplicialComplex reduced_path_object(const CochainComplex& a, int p_max);

/// The two composites s(X) -> ss(Δ×X) -> s(X) and s(X) -> ss(X×Δ) -> s(X)
/// built from λ and the Alexander-Whitney map.
struct LambdaMuComposites {
  ChainMap through_first;   // μ_{Δ×X} ∘ λ_{sX}
  ChainMap through_second;  // μ_{X×Δ} ∘ s(λ_X)
};
LambdaMuComposites lambda_mu_composites(const CosimplicialComplex& x, int n_top);

/// Random filtered cosimplicial complex: (Y1 ⊗ K1) ⊕ (Y2 ⊗ K2) with Yi
/// random cosimplicial complexes of a fixed weight, Ki random filtered
/// complexes, conjugated levelwise with the filtration transported.
FilteredCosimplicial random_filtered_cosimplicial(Rng& rng, const Field& field, int max_poset, std::size_t max_dim,
                                                  int p_max);

struct FilteredAxiomTrial {
  std::uint64_t seed = 0;
  bool s1 = false;
  bool s2 = false;
  bool s3 = false;
  bool s4 = false;
  bool s5 = false;
  bool non_quis_detected = false;
  std::vector<std::string> failures;

  bool all_pass() const { return s1 && s2 && s3 && s4 && s5 && non_quis_detected; }
};

struct FilteredAxiomReport {
  std::uint64_t seed = 0;
  int r = 0;
  std::vector<FilteredAxiomTrial> trials;
  bool all_pass() const;
};

/// (S1)-(S5) for filtered complexes with simple functor (s, δ_r) and weak
/// equivalences the E_r-quasi-isomorphisms.
FilteredAxiomReport check_filtered_axioms(std::uint64_t seed, const AxiomParams& params, int r);

/// δ_r on ss(X ⊠ Y): F^{k - r(i+j)} of the tensor filtration on X(i) ⊗ Y(j).
FilteredComplex filtered_iterated_simple(const FilteredCosimplicial& x, const FilteredCosimplicial& y, int r,
                                         int n_top);

}  // namespace godex
