#pragma once

#include <map>
#include <vector>

#include "godex/cosimplicial.hpp"
#include "godex/site.hpp"

namespace godex {

using Chain = std::vector<int>;

/// Weakly increasing chains y_0 <= ... <= y_{length-1} with y_0 in `first`,
/// in lexicographic order of element indices.
std::vector<Chain> weak_chains(const Poset& p, int length, std::uint64_t first);
/// Strictly increasing chains x_0 < ... < x_{length-1}, lexicographic.
std::vector<Chain> strict_chains(const Poset& p, int length);

/// Cosimplicial replacement of the diagram x -> F_x restricted to chains
/// starting in U: X(p) = ⊕_{y_0 <= ... <= y_p, y_0 ∈ U} F_{y_p}.
/// d^i deletes y_i (i < p) or applies r_{y_{p-1}→y_p} (i = p); s^j repeats y_j.
CosimplicialComplex cosimplicial_replacement(const Sheaf& f, int p_max, const OpenSet& u);
CosimplicialComplex cosimplicial_replacement(const Sheaf& f, int p_max);

/// Total complex of the weak-chain replacement over the whole poset,
/// truncated at N.
CochainComplex holim_replacement(const Sheaf& f, int n_top);
/// Same over strict chains only (the normalized variant). Not truncated:
/// the nerve is finite. A truncated sheaf gives a total complex cut at
/// the same level.
CochainComplex normalized_replacement(const Sheaf& f);
/// Strict chains starting in U.
CochainComplex normalized_replacement(const Sheaf& f, const OpenSet& u);

/// Order complex of the poset with its simplicial coboundary.
struct NerveComplex {
  /// simplices[p] lists the strict chains with p + 1 elements.
  std::vector<std::vector<Chain>> simplices;
  /// coboundaries[p]: C^p -> C^{p+1}, (δφ)(σ) = Σ_i (-1)^i φ(∂_i σ).
  std::vector<Matrix> coboundaries;
  CochainComplex complex;
};

NerveComplex nerve(const Poset& p, const Field& field);

/// Cohomology of the nerve with coefficients in the complex C: the total
/// complex of C^*(nerve) ⊗ C.
std::map<int, std::size_t> constant_cohomology(const Poset& p, const Field& field, const CochainComplex& c);

}  // namespace godex
