#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "godex/complexes.hpp"

namespace godex {

struct UnknownElement : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotOpen : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotMonotone : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotACover : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Finite poset, at most 64 elements. Open sets of the associated
/// Alexandrov space are the up-sets; the smallest open containing x is
/// ↑x = {y : y >= x}.
class Poset {
 public:
  Poset() = default;
  /// relations are pairs (x, y) meaning x <= y; the reflexive-transitive
  /// closure is taken. Throws std::invalid_argument on a cycle or
  /// duplicate names.
  Poset(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& relations);
  /// leq given as a full relation; verified reflexive, antisymmetric and
  /// transitive.
  static Poset from_relation(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq);

  static Poset point();
  /// c < o.
  static Poset sierpinski();
  /// 0 < 1 < ... < n-1, named c0, c1, ...
  static Poset chain(int n);
  /// a, b < x, y.
  static Poset pseudocircle();
  /// a, b < c, d < e, f: two pseudocircle layers stacked.
  static Poset pseudo_sphere();
  /// Looks up point, sierpinski, chain3, pseudocircle, pseudosphere.
  static Poset named(const std::string& name);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;
  bool leq(int x, int y) const { return (up_[static_cast<std::size_t>(x)] >> y) & 1u; }
  /// Covering pairs x ⋖ y, sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  std::uint64_t up_mask(int x) const { return up_[static_cast<std::size_t>(x)]; }
  std::uint64_t all_mask() const;
  /// Elements ordered so that x < y implies x comes first; ties by index.
  const std::vector<int>& linear_extension() const { return linear_; }
  bool is_up_set(std::uint64_t mask) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.up_ == b.up_;
  }

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<std::uint64_t> up_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<int> linear_;
};

/// An up-closed subset, as a bitmask over poset indices.
struct OpenSet {
  std::uint64_t mask = 0;

  bool contains(int x) const { return (mask >> x) & 1u; }
  std::size_t size() const;
  std::vector<int> members() const;
  friend bool operator==(const OpenSet&, const OpenSet&) = default;
};

OpenSet open_from_names(const Poset& p, const std::vector<std::string>& names);
std::string open_to_string(const Poset& p, const OpenSet& u);

/// Every up-set, ordered by size and then by mask. Throws TooLarge when
/// the poset has more than cap elements.
std::vector<OpenSet> up_sets(const Poset& p, std::size_t cap = 12);

/// Sheaf of cochain complexes on a finite Alexandrov space, stored through
/// its stalks F_x = F(↑x) and restrictions r_{x→y}: F_x -> F_y for x <= y.
class Sheaf {
 public:
  Sheaf() = default;
  /// Restrictions are given on covering pairs; the others are composed.
  /// Throws InvariantViolation if a restriction is not a chain map or if
  /// two paths give different composites.
  Sheaf(std::shared_ptr<const Poset> poset, const Field& field, std::vector<CochainComplex> stalks,
        std::map<std::pair<int, int>, ChainMap> cover_restrictions);

  const Poset& poset() const { return *rep_->poset; }
  const std::shared_ptr<const Poset>& poset_ptr() const { return rep_->poset; }
  const Field& field() const { return rep_->field; }
  const CochainComplex& stalk(int x) const { return rep_->stalks.at(static_cast<std::size_t>(x)); }
  const std::vector<CochainComplex>& stalks() const { return rep_->stalks; }
  /// r_{x→y}; requires x <= y.
  const ChainMap& restriction(int x, int y) const;
  int lower_bound() const;
  int upper_bound() const;
  /// Smallest degree at which any stalk was truncated.
  std::optional<int> truncated_at() const;
  int certified_degree() const;

 private:
  struct Rep {
    std::shared_ptr<const Poset> poset;
    Field field;
    std::vector<CochainComplex> stalks;
    std::map<std::pair<int, int>, ChainMap> restrictions;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Components f_x: F_x -> G_x commuting with restrictions.
class SheafMap {
 public:
  SheafMap() = default;
  SheafMap(Sheaf source, Sheaf target, std::vector<ChainMap> components);

  static SheafMap identity(const Sheaf& f);

  const Sheaf& source() const { return source_; }
  const Sheaf& target() const { return target_; }
  const ChainMap& component(int x) const { return components_.at(static_cast<std::size_t>(x)); }
  const std::vector<ChainMap>& components() const { return components_; }

  /// Empty when every component is a chain map commuting with restrictions.
  std::optional<std::string> failure() const;
  SheafMap after(const SheafMap& g) const;

 private:
  Sheaf source_;
  Sheaf target_;
  std::vector<ChainMap> components_;
};

/// Γ(U, F) with its evaluation maps.
///
/// In degree n the sections are the kernel of the restriction constraints
/// inside ⊕_{x∈U} F_x^n; basis(n) holds that kernel, with the members of U
/// laid out in the order of `elements`.
struct Sections {
  CochainComplex complex;
  std::vector<int> elements;
  /// Offset of each element's block in the ambient ⊕ F_x^n, per degree.
  std::map<int, std::vector<std::size_t>> offsets;
  std::map<int, Subspace> basis;
  /// Evaluation Γ(U, F) -> F_x.
  ChainMap evaluation(int x, const Sheaf& f) const;
};

Sections sections(const Sheaf& f, const OpenSet& u);
/// Γ(U, f).
ChainMap sections_map(const SheafMap& f, const OpenSet& u);
ChainMap sections_map(const SheafMap& f, const Sections& src, const Sections& tgt);
/// Restriction Γ(U, F) -> Γ(V, F) for V ⊆ U.
ChainMap restrict_sections(const Sheaf& f, const Sections& big, const Sections& small);

/// True iff Γ(U, F) is the equalizer of ∏ Γ(V_i) ⇉ ∏ Γ(V_i ∩ V_j).
bool check_sheaf_equalizer(const Sheaf& f, const OpenSet& u, const std::vector<OpenSet>& cover);

Sheaf constant_sheaf(std::shared_ptr<const Poset> p, const CochainComplex& c);
/// x_*D: stalk D at every y <= x, zero elsewhere.
Sheaf skyscraper(std::shared_ptr<const Poset> p, int x, const CochainComplex& d);
/// Unit F -> x_*(F_x), with component r_{y→x} at y <= x.
SheafMap skyscraper_unit(const Sheaf& f, int x);

/// A monotone map between posets, as target indices.
struct MonotoneMap {
  std::shared_ptr<const Poset> source;
  std::shared_ptr<const Poset> target;
  std::vector<int> images;

  /// Throws NotMonotone.
  void validate() const;
  OpenSet preimage(const OpenSet& v) const;
};

/// (f_*F)_q = Γ(f^{-1}(↑q), F).
Sheaf direct_image(const MonotoneMap& f, const Sheaf& sheaf);
SheafMap direct_image_map(const MonotoneMap& f, const SheafMap& g);

/// Stalkwise direct sum.
Sheaf sheaf_sum(const Sheaf& a, const Sheaf& b);
/// Cohomology of every stalk in each degree.
std::vector<std::map<int, std::size_t>> stalk_betti(const Sheaf& f);
/// Stalkwise truncation σ≤m.
Sheaf truncate_sheaf(const Sheaf& f, int m);

}  // namespace godex
