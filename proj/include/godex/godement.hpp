#pragma once

#include <optional>
#include <string>
#include <vector>

#include "godex/cosimplicial.hpp"
#include "godex/filtered.hpp"
#include "godex/site.hpp"

namespace godex {

/// Levels, cofaces d^i: level(p-1) -> level(p) and codegeneracies
/// s^j: level(p+1) -> level(p), all sheaves and sheaf maps.
class CosimplicialSheaf {
 public:
  CosimplicialSheaf() = default;
  CosimplicialSheaf(std::vector<Sheaf> levels, std::vector<std::vector<SheafMap>> cofaces,
                    std::vector<std::vector<SheafMap>> codegeneracies);

  int p_max() const { return static_cast<int>(levels_.size()) - 1; }
  const Sheaf& level(int p) const { return levels_.at(static_cast<std::size_t>(p)); }
  const SheafMap& coface(int p, int i) const { return cofaces_.at(p).at(i); }
  const SheafMap& codegeneracy(int p, int j) const { return codeg_.at(p).at(j); }

  /// The cosimplicial complex of stalks at x.
  CosimplicialComplex at_stalk(int x) const;
  /// Γ(U, -) applied levelwise.
  CosimplicialComplex at_open(const OpenSet& u) const;
  /// Empty when the cosimplicial identities hold at every stalk.
  std::optional<std::string> identity_failure() const;

 private:
  std::vector<Sheaf> levels_;
  std::vector<std::vector<SheafMap>> cofaces_;
  std::vector<std::vector<SheafMap>> codeg_;
};

/// (TF)_x = ⊕_{y >= x} F_y, factors in increasing index order; the
/// restriction to x' >= x keeps the factors y >= x'.
Sheaf godement_T_sheaf(const Sheaf& f);
/// T(f)_x = ⊕_{y >= x} f_y.
SheafMap godement_T_map(const SheafMap& f);
/// η_F: F -> TF, with component r_{x→y} into factor y.
SheafMap godement_eta(const Sheaf& f);
/// ν_F: T²F -> TF, keeping the (y, y) factor of ⊕_{y >= x} ⊕_{z >= y} F_z.
SheafMap godement_nu(const Sheaf& f);

struct GodementTriple {
  Sheaf tf;
  SheafMap eta;
  SheafMap nu;
};
/// T, η and ν on F. Throws InvariantViolation unless ν∘Tη = ν∘ηT = id and
/// ν∘Tν = ν∘νT hold exactly.
GodementTriple godement_T(const Sheaf& f);
/// Returns the first failing triple law, if any.
std::optional<std::string> triple_law_failure(const Sheaf& f);

struct GodementResolution {
  Sheaf source;
  CosimplicialSheaf g;
  /// Coaugmentation F -> G(0).
  SheafMap eta;
  /// Level p is truncated at N - p when set.
  std::optional<int> n_top;
};

/// G(p) = T^{p+1}F with d^i = T^i η T^{p-i} and s^j = T^j ν T^{p-j},
/// built by iterating T. With n_top set, level p keeps degrees <= N - p
/// and p_max defaults to N - b. Cosimplicial identities are asserted.
GodementResolution godement_resolution(const Sheaf& f, int p_max, std::optional<int> n_top = std::nullopt);
GodementResolution godement_resolution_truncated(const Sheaf& f, int n_top);

/// Stalkwise extra degeneracy at x: s^{-1} projects (T G(p-1))_x onto its
/// factor y = x.
ExtraDegeneracy stalk_extra_degeneracy(const GodementResolution& r, int x);
/// For a skyscraper S = x_*D: the extra degeneracy on Γ(U, G•S) given by
/// T^p of TS -> S (factor x). It acts on the last coface, so it is stated
/// for the reversed cosimplicial object, which is what `complex` holds.
struct SkyscraperCollapse {
  CosimplicialComplex complex;
  ExtraDegeneracy extra;
};
SkyscraperCollapse skyscraper_extra_degeneracy(const GodementResolution& r, int x, const OpenSet& u);

struct Hypercohomology {
  GodementResolution resolution;
  /// H_x = s(G•(F)_x), truncated at N.
  Sheaf h;
  /// ρ_F = s(η)∘λ: F -> H.
  SheafMap rho;
  int n_top = 0;
};
Hypercohomology hypercohomology_sheaf(const Sheaf& f, int n_top);
/// ℍ(f): ℍ(F) -> ℍ(G) from T^{p+1}(f) levelwise.
SheafMap hypercohomology_map(const SheafMap& f, int n_top);
/// T(f) as a sheaf map; the same as godement_T_map.
inline SheafMap t_of(const SheafMap& f) { return godement_T_map(f); }

enum class EquivalenceKind { local, global };

struct EquivalenceWitness {
  /// An element name or an open set in braces.
  std::string where;
  int degree = 0;
};

struct EquivalenceReport {
  EquivalenceKind kind = EquivalenceKind::local;
  bool verdict = true;
  std::vector<EquivalenceWitness> witnesses;
  int certified_degree = 0;
};

/// local: is_quis at every stalk. global: is_quis of Γ(U, f) for each open
/// (all up-sets when `opens` is empty; TooLarge above the cap).
EquivalenceReport equivalence_check(const SheafMap& f, EquivalenceKind kind,
                                    const std::optional<std::vector<OpenSet>>& opens = std::nullopt);

enum class DescentStrategy {
  /// literal for posets with at most 4 elements, reduced otherwise.
  automatic,
  /// Build ℍ(S) and check ρ_S on sections.
  literal,
  /// Compose Γ(U, ρ_S) with the normalization quis onto the strict-chain
  /// replacement of S over U; ρ_S is a global equivalence iff each
  /// composite Γ(U, S) -> Norm_U(S) is a quis.
  reduced,
};

/// Whether ρ_S: S -> ℍ(S) is a global equivalence in certified degrees.
EquivalenceReport descent_check(const Sheaf& s, int n_top, DescentStrategy strategy = DescentStrategy::automatic,
                                const std::optional<std::vector<OpenSet>>& opens = std::nullopt);
/// Thomason descent of ℍ(F): ρ_{ℍF} is a global equivalence.
EquivalenceReport thomason_check(const Sheaf& f, int n_top, DescentStrategy strategy = DescentStrategy::automatic);
EquivalenceReport thomason_check(const Hypercohomology& h, DescentStrategy strategy = DescentStrategy::automatic);

/// θ at every x: ℍ(F)_x against s(G•(F)_x), both computed. On a finite
/// poset they agree as complexes and θ is the identity.
EquivalenceReport stalk_commutation_check(const Hypercohomology& h);

struct DerivedSections {
  CochainComplex complex;
  std::map<int, std::size_t> betti;
  int certified_degree = 0;
};
/// ℝΓ(U, F) = Γ(U, ℍ(F)); betti reported through the certified degree.
DerivedSections derived_sections(const Sheaf& f, const OpenSet& u, int n_top);
DerivedSections derived_sections(const Hypercohomology& h, const OpenSet& u);

/// ℝf_*F = f_*ℍ(F).
Sheaf derived_direct_image(const MonotoneMap& f, const Sheaf& sheaf, int n_top);

/// Stalkwise cohomology sheaf ℋ^q F, concentrated in degree 0.
Sheaf cohomology_sheaf(const Sheaf& f, int q);

/// Column filtration F^k = ⊕_{i >= k} on s(Γ(U, G•F)) and its pages.
struct DescentSpectralSequence {
  FilteredComplex total;
  /// Pages r = 0..r_max in total degrees up to certified_degree.
  std::vector<SpectralPage> pages;
  int certified_degree = 0;
};
DescentSpectralSequence descent_spectral_sequence(const Sheaf& f, const OpenSet& u, int r_max, int n_top);
/// dim H^p(Γ(U, G•(ℋ^q F))) for p + q <= N - 1, computed sheaf by sheaf.
std::map<std::pair<int, int>, std::size_t> descent_e2_oracle(const Sheaf& f, const OpenSet& u, int n_top);

/// Default truncation for a sheaf: top degree + 4.
int default_n_top(const Sheaf& f);

}  // namespace godex
