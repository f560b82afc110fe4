#pragma once

#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "godex/cosimplicial.hpp"
#include "godex/exactlin.hpp"

namespace godex {

struct NotFiltered : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Cochain complex with a decreasing filtration F^k A^n, stored as
/// explicit subspaces for k_min <= k <= k_max. Below k_min the filtration
/// is everything and above k_max it is zero.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// steps[n][k - k_min] is F^k A^n; missing degrees take F^k = A^n for
  /// k <= k_min and 0 above. Throws NotFiltered unless the flag is
  /// decreasing, exhaustive at k_min and d-compatible.
  FilteredComplex(CochainComplex base, int k_min, int k_max, std::map<int, std::vector<Subspace>> steps);

  /// F^k = A for k <= weight and 0 above.
  static FilteredComplex trivial(const CochainComplex& base, int weight = 0);

  const CochainComplex& base() const { return base_; }
  const Field& field() const { return base_.field(); }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  /// F^k A^n, saturated outside [k_min, k_max].
  Subspace step(int k, int n) const;

 private:
  CochainComplex base_;
  int k_min_ = 0;
  int k_max_ = -1;
  std::map<int, std::vector<Subspace>> steps_;
};

/// Literal equality of F^k A^n for every k and every n <= max_degree.
bool same_filtration(const FilteredComplex& a, const FilteredComplex& b, int max_degree = INT_MAX);

/// Gr^p A = F^p A / F^{p+1} A as a complex.
CochainComplex associated_graded(const FilteredComplex& fc, int p);

/// E_r^{p,q} = Z_r / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}) with
/// Z_r^{p,n} = F^p A^n ∩ d^{-1}(F^{p+r} A^{n+1}), n = p + q.
struct PageTerm {
  Subspace cycles;  // Z_r^{p,n} inside A^n
  Subquotient quotient;
  std::size_t dim() const { return quotient.dim; }
};

struct SpectralPage {
  int r = 0;
  std::map<std::pair<int, int>, PageTerm> terms;
  /// d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}, keyed by the source (p, q).
  std::map<std::pair<int, int>, Matrix> differentials;

  std::size_t dim(int p, int q) const;
  /// Nonzero dimensions only.
  std::map<std::pair<int, int>, std::size_t> dims() const;
};

/// Terms in total degrees up to max_degree (all stored degrees by default).
SpectralPage er_page(const FilteredComplex& fc, int r, std::optional<int> max_degree = std::nullopt);
/// Pages 0..r_max. Asserts d_r∘d_r = 0 and dim E_{r+1} = dim H(E_r, d_r)
/// for every pair of consecutive pages.
std::vector<SpectralPage> spectral_pages(const FilteredComplex& fc, int r_max,
                                         std::optional<int> max_degree = std::nullopt);
/// A page index past which the sequence is constant: the filtration width.
int stable_page(const FilteredComplex& fc);

struct FilteredMap {
  FilteredComplex source;
  FilteredComplex target;
  ChainMap map;

  /// Throws NotFiltered naming the first (k, n) with f(F^k) ⊄ F^k.
  void validate() const;
};

/// Induced maps E_r^{p,q}(f), one per source term.
std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& f, int r, std::optional<int> max_degree = std::nullopt);
/// Whether E_{r+1}(f) is an isomorphism in every bidegree with total degree
/// up to max_degree (the certified degrees of both ends by default).
/// Throws NotFiltered if f breaks the filtrations.
bool is_er_quis(const FilteredMap& f, int r, std::optional<int> max_degree = std::nullopt);

/// (Dec F)^k A^n = ker(d: F^{k+n} A^n -> F^{k+n} A^{n+1} / F^{k+n+1} A^{n+1}).
FilteredComplex decalage(const FilteredComplex& fc);

/// F^k(A ⊗ B) = Σ_{a+b=k} F^a A ⊗ F^b B, in the layout of tensor().
FilteredComplex filtered_tensor(const FilteredComplex& a, const FilteredComplex& b);
/// Direct-sum filtration on direct_sum().
FilteredComplex filtered_sum(const std::vector<FilteredComplex>& parts);
/// The filtration transported along an isomorphism of complexes.
FilteredComplex transport(const FilteredComplex& fc, const ChainMap& iso);

/// A cosimplicial complex with a filtration on each level preserved by
/// every coface and codegeneracy.
struct FilteredCosimplicial {
  CosimplicialComplex complex;
  std::vector<FilteredComplex> levels;

  void validate() const;
};

FilteredCosimplicial filtered_constant(const FilteredComplex& a, int p_max);
/// Levelwise Dec.
FilteredCosimplicial levelwise_decalage(const FilteredCosimplicial& x);

/// (s, δ_r): base simple(X, N) and δ_r(F)^k s^n = ⊕_{i+j=n} F^{k-ri} X(i)^j.
FilteredComplex filtered_simple(const FilteredCosimplicial& x, int r, int n_top);

}  // namespace godex
