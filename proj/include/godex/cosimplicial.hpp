#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "godex/complexes.hpp"

namespace godex {

struct InsufficientLevels : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotCosimplicial : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotExtraDegeneracy : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Cosimplicial object in cochain complexes, cut off after level p_max.
///
/// coface(p, i) is d^i: X(p-1) -> X(p) for 1 <= p <= p_max, 0 <= i <= p.
/// codegeneracy(p, j) is s^j: X(p+1) -> X(p) for p < p_max, 0 <= j <= p.
/// Levels may themselves be truncated (level p typically stores degrees up
/// to N - p); structure maps are compared only where both sides are stored.
class CosimplicialComplex {
 public:
  CosimplicialComplex() = default;
  CosimplicialComplex(std::vector<CochainComplex> levels, std::vector<std::vector<ChainMap>> cofaces,
                      std::vector<std::vector<ChainMap>> codegeneracies);

  /// All structure maps identities.
  static CosimplicialComplex constant(const CochainComplex& a, int p_max);

  int p_max() const { return static_cast<int>(rep_->levels.size()) - 1; }
  const Field& field() const { return rep_->levels.front().field(); }
  const CochainComplex& level(int p) const { return rep_->levels.at(static_cast<std::size_t>(p)); }
  const ChainMap& coface(int p, int i) const;
  const ChainMap& codegeneracy(int p, int j) const;
  /// Smallest lower bound among the levels.
  int lower_bound() const;
  /// The same levels with d^i and s^j renumbered as d^{p-i} and s^{p-j}.
  CosimplicialComplex reversed() const;

  /// Empty when every cosimplicial identity holds, otherwise a description
  /// of the first failure.
  std::optional<std::string> identity_failure() const;
  /// Throws NotCosimplicial on the first failing identity.
  void validate() const;

 private:
  struct Rep {
    std::vector<CochainComplex> levels;
    std::vector<std::vector<ChainMap>> cofaces;
    std::vector<std::vector<ChainMap>> codegeneracies;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Levelwise chain maps f(p): X(p) -> Y(p).
struct CosimplicialMap {
  CosimplicialComplex source;
  CosimplicialComplex target;
  std::vector<ChainMap> components;

  /// Empty when f commutes with every coface and codegeneracy.
  std::optional<std::string> naturality_failure() const;
};

struct CosimplicialBiproduct {
  CosimplicialComplex sum;
  CosimplicialMap inc1, inc2, pr1, pr2;
};
/// Levelwise biproduct X × Y.
CosimplicialBiproduct cosimplicial_biproduct(const CosimplicialComplex& x, const CosimplicialComplex& y);
/// g ∘ f, levelwise.
CosimplicialMap compose(const CosimplicialMap& g, const CosimplicialMap& f);

/// Offsets of the summands X(p)^{n-p} inside s(X)^n.
struct SimpleLayout {
  int lo = 0;
  int top = 0;
  /// offsets[n - lo][p] for p = 0..; the last entry is the total dimension.
  std::vector<std::vector<std::size_t>> offsets;

  std::size_t offset(int n, int p) const;
  std::size_t dim(int n) const;
};

SimpleLayout simple_layout(const CosimplicialComplex& x, int n_top);

/// Total complex s(X)^n = ⊕_{p+q=n} X(p)^q for n <= N, differential
/// Σ_i (-1)^i d^i + (-1)^p d_X(p). The result is truncated at N.
/// Throws InsufficientLevels unless p_max >= N - b.
CochainComplex simple(const CosimplicialComplex& x, int n_top);
/// Same, with an explicit mutation hook used by negative controls:
/// when drop_internal_sign is set the (-1)^p factor is omitted.
CochainComplex simple_unchecked(const CosimplicialComplex& x, int n_top, bool drop_internal_sign);

/// Block-diagonal s(f). Throws NotCosimplicial if f is not natural.
ChainMap simple_map(const CosimplicialMap& f, int n_top);

/// Inclusion A -> s(cA) into the p = 0 summand.
ChainMap lambda(const CochainComplex& a, int n_top);

/// Bicosimplicial object Z(p, q) in cochain complexes. The first index is
/// called horizontal, the second vertical.
class BicosimplicialComplex {
 public:
  BicosimplicialComplex() = default;
  /// levels[p][q]; hcofaces[p][q][i]: Z(p-1,q) -> Z(p,q);
  /// vcofaces[p][q][i]: Z(p,q-1) -> Z(p,q); hcodeg[p][q][j]: Z(p+1,q) -> Z(p,q);
  /// vcodeg[p][q][j]: Z(p,q+1) -> Z(p,q). Levels with p + q > total_max may
  /// be omitted by callers that only need low total degrees: they are
  /// stored as zero complexes.
  BicosimplicialComplex(std::vector<std::vector<CochainComplex>> levels,
                        std::vector<std::vector<std::vector<ChainMap>>> hcofaces,
                        std::vector<std::vector<std::vector<ChainMap>>> vcofaces,
                        std::vector<std::vector<std::vector<ChainMap>>> hcodeg,
                        std::vector<std::vector<std::vector<ChainMap>>> vcodeg);

  int p_max() const { return static_cast<int>(levels_.size()) - 1; }
  int q_max() const { return static_cast<int>(levels_.front().size()) - 1; }
  const Field& field() const { return levels_.front().front().field(); }
  const CochainComplex& level(int p, int q) const { return levels_.at(p).at(q); }
  const ChainMap& hcoface(int p, int q, int i) const { return hcofaces_.at(p).at(q).at(i); }
  const ChainMap& vcoface(int p, int q, int i) const { return vcofaces_.at(p).at(q).at(i); }
  const ChainMap& hcodeg(int p, int q, int j) const { return hcodeg_.at(p).at(q).at(j); }
  const ChainMap& vcodeg(int p, int q, int j) const { return vcodeg_.at(p).at(q).at(j); }
  int lower_bound() const;

  /// Swap the two cosimplicial directions.
  BicosimplicialComplex transposed() const;
  /// The diagonal p -> Z(p, p) with d^i = d_h^i d_v^i, s^j = s_h^j s_v^j.
  CosimplicialComplex diagonal() const;
  /// Checks the cosimplicial identities in each direction and that
  /// horizontal and vertical maps commute.
  std::optional<std::string> identity_failure() const;

 private:
  std::vector<std::vector<CochainComplex>> levels_;
  std::vector<std::vector<std::vector<ChainMap>>> hcofaces_, vcofaces_, hcodeg_, vcodeg_;
};

struct BicosimplicialMap {
  BicosimplicialComplex source;
  BicosimplicialComplex target;
  /// components[p][q]: Z(p,q) -> T(p,q).
  std::vector<std::vector<ChainMap>> components;
};

/// Offsets of Z(i,j)^k inside ssZ^n, ordered by i, then j, then degree.
struct IteratedLayout {
  int lo = 0;
  std::vector<std::vector<std::vector<std::size_t>>> offsets;  // [n-lo][i][j]
  std::vector<std::size_t> dims;                               // [n-lo]
  std::size_t offset(int n, int i, int j) const;
};

IteratedLayout iterated_layout(const BicosimplicialComplex& z, int n_top);

/// s(n -> s(m -> Z(n, m))): outer index first. Truncated at N.
CochainComplex iterated_simple(const BicosimplicialComplex& z, int n_top);
ChainMap iterated_simple_map(const BicosimplicialMap& f, int n_top);

/// Alexander-Whitney map ssZ -> sDZ. The component Z(i,j)^k -> Z(p,p)^k
/// with p = i + j is Z((d^0)^j, d^p ... d^{j+1}) times the sign
/// (-1)^{ij} (see the comment in the implementation).
ChainMap aw_map(const BicosimplicialComplex& z, int n_top);

/// Constant bicosimplicial objects (X×Δ)(n,m) = X(n) and (Δ×X)(n,m) = X(m).
BicosimplicialComplex constant_in_second(const CosimplicialComplex& x);
BicosimplicialComplex constant_in_first(const CosimplicialComplex& x);
/// (X ⊠ Y)(p, q) = X(p) ⊗ Y(q), with structure maps acting on one factor.
BicosimplicialComplex external_tensor(const CosimplicialComplex& x, const CosimplicialComplex& y);
BicosimplicialMap external_tensor_map(const CosimplicialMap& f, const CosimplicialMap& g);
/// The same map viewed on the transposed objects.
BicosimplicialMap transposed(const BicosimplicialMap& f);

/// Path object A^{Δ[1]} with evaluations at the two vertices.
struct PathObject {
  CosimplicialComplex path;
  CosimplicialMap ev0;
  CosimplicialMap ev1;
};
/// P(n) = ⊕ over the n + 2 monotone maps [n] -> [1]; summand k is the map
/// with k zeros. ev_e picks the constant map at e.
PathObject path_object(const CochainComplex& a, int p_max);

/// Coaugmented cosimplicial object with a candidate extra degeneracy.
/// extra[p] is s^{-1}: X(p) -> X(p-1) for p >= 0, where X(-1) = A.
struct ExtraDegeneracy {
  CochainComplex augmentation_source;
  ChainMap coaugmentation;  // A -> X(0)
  std::vector<ChainMap> extra;
};

struct CollapseCertificate {
  bool identities_hold = false;
  QuisReport quis;
  int certified_degree = 0;
};

/// Verifies the extra degeneracy identities
///   s^{-1} d^0 = id, s^{-1} d^i = d^{i-1} s^{-1} (i >= 1),
///   s^{-1} s^j = s^{j-1} s^{-1} (j >= 1), s^{-1} s^0 = s^{-1} s^{-1},
/// then checks that s(cA) -> s(X) is a quasi-isomorphism below N.
/// Throws NotExtraDegeneracy naming the first failing identity.
CollapseCertificate collapse_by_extra_degeneracy(const CosimplicialComplex& x, const ExtraDegeneracy& e,
                                                 int n_top);

/// The cosimplicial map cA -> X induced by a coaugmentation.
CosimplicialMap coaugmentation_map(const CosimplicialComplex& x, const CochainComplex& a,
                                   const ChainMap& eps);

}  // namespace godex
