#pragma once

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "godex/exactlin.hpp"

namespace godex {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// A structural invariant failed (d∘d != 0, a map does not commute, ...).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Bounded cochain complex. Degree n holds field^dim(n) and d^n has shape
/// dim(n+1) x dim(n). Outside [lo, hi] every space is zero.
///
/// A complex produced by a truncated construction remembers the level N it
/// was cut at: degrees up to N are stored but d^N is missing, so only
/// degrees below N are trustworthy.
class CochainComplex {
 public:
  CochainComplex() : CochainComplex(Field::rationals(), 0) {}
  /// The zero complex.
  CochainComplex(const Field& field, int lo);
  /// dims[k] is the dimension in degree lo + k; diffs[k] is d^{lo+k}, so
  /// diffs.size() == dims.size() - 1 (or 0 for an empty range).
  CochainComplex(const Field& field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs,
                 std::optional<int> truncated_at = std::nullopt);

  const Field& field() const { return rep_->field; }
  int lo() const { return rep_->lo; }
  /// lo - 1 when the complex has no stored degrees.
  int hi() const { return rep_->lo + static_cast<int>(rep_->dims.size()) - 1; }
  std::size_t dim(int n) const;
  /// d^n, the zero matrix of the right shape outside the stored range.
  Matrix d(int n) const;
  std::size_t total_dim() const;

  std::optional<int> truncated_at() const { return rep_->truncated_at; }
  /// Largest degree whose cohomology is fully determined.
  int certified_degree() const;
  CochainComplex with_truncation(std::optional<int> truncated_at) const;

  /// Throws InvariantViolation if a shape is wrong or d∘d != 0.
  void validate() const;

  friend bool operator==(const CochainComplex& a, const CochainComplex& b);

 private:
  struct Rep {
    Field field;
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    std::optional<int> truncated_at;
  };
  std::shared_ptr<const Rep> rep_;
};

/// Degreewise maps f^n: source^n -> target^n.
class ChainMap {
 public:
  ChainMap() = default;
  /// Missing components are zero.
  ChainMap(CochainComplex source, CochainComplex target, std::map<int, Matrix> components);

  static ChainMap identity(const CochainComplex& c);
  static ChainMap zero(const CochainComplex& source, const CochainComplex& target);

  const CochainComplex& source() const { return source_; }
  const CochainComplex& target() const { return target_; }
  Matrix component(int n) const;
  int lo() const { return std::min(source_.lo(), target_.lo()); }
  int hi() const { return std::max(source_.hi(), target_.hi()); }

  /// Throws InvariantViolation unless d_target f = f d_source in every
  /// degree up to max_degree (both sides' stored ranges by default).
  void validate(int max_degree = INT_MAX) const;
  bool commutes(int max_degree = INT_MAX) const;

  /// this ∘ g.
  ChainMap after(const ChainMap& g) const;
  ChainMap operator+(const ChainMap& other) const;
  ChainMap operator-(const ChainMap& other) const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  CochainComplex source_;
  CochainComplex target_;
  std::map<int, Matrix> components_;
};

struct Cohomology {
  std::map<int, std::size_t> betti;
  std::map<int, Subspace> cycles;
  /// Cycle coordinates -> cohomology coordinates.
  std::map<int, Matrix> proj;
  /// Cohomology coordinates -> cycle coordinates.
  std::map<int, Matrix> section;
};

Cohomology cohomology(const CochainComplex& c);
/// H^n(f) in the bases chosen by cohomology(); shape betti_t(n) x betti_s(n).
Matrix induced_map(const ChainMap& f, int n, const Cohomology& source, const Cohomology& target);
/// Betti numbers only, from ranks; cheaper than cohomology().
std::map<int, std::size_t> betti_numbers(const CochainComplex& c, int max_degree = INT_MAX);

struct QuisReport {
  bool flag = true;
  std::map<int, bool> per_degree;
  /// Largest degree that was examined.
  int checked_through = INT_MIN;
};

/// Tests whether H^n(f) is an isomorphism in each degree up to max_degree,
/// defaulting to the certified degrees of both ends.
QuisReport is_quis(const ChainMap& f, std::optional<int> max_degree = std::nullopt);

struct Biproduct {
  CochainComplex sum;
  ChainMap inc1, inc2, pr1, pr2;
};
Biproduct biproduct(const CochainComplex& a, const CochainComplex& b);
/// Direct sum of a list of complexes (block-diagonal differentials).
CochainComplex direct_sum(const std::vector<CochainComplex>& parts);
/// Block-diagonal direct sum of chain maps.
ChainMap direct_sum(const std::vector<ChainMap>& parts);

/// A ⊗ B with d(a⊗b) = da⊗b + (-1)^i a⊗db for a in degree i. Degree n is
/// ordered by i ascending, each block a ⊗ b in Kronecker order.
CochainComplex tensor(const CochainComplex& a, const CochainComplex& b);
ChainMap tensor(const ChainMap& f, const ChainMap& g);

/// Keeps degrees <= m and drops d^m. Functorial: a chain map C -> D
/// truncates to σ≤m C -> σ≤m' D for any m' <= m.
CochainComplex truncate_above(const CochainComplex& c, int m);
ChainMap truncate_map(const ChainMap& f, const CochainComplex& source, const CochainComplex& target);

/// Σ(-1)^n dim(n) over degrees up to max_degree.
long long euler_characteristic(const CochainComplex& c, int max_degree = INT_MAX);

std::string betti_string(const std::map<int, std::size_t>& betti);

}  // namespace godex
