#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace turan {

/// Default cap on explicitly listed include/exclude elements.
inline constexpr std::int64_t kDefaultIndexCap = 1'000'000;

/// A set H of integer indices k >= 2, stored as a periodic skeleton plus
/// finite explicit additions and removals:
///
///   k in H  <=>  k in include  or  (base(k) and k not in exclude).
///
/// The representation is kept in a canonical form (minimal period, include
/// disjoint from the base, exclude inside the base) so that two sets with the
/// same membership compare equal.
class IndexSet {
 public:
  enum class BaseKind { Empty, Full, Residues };

  /// Empty set.
  IndexSet();

  static IndexSet empty();
  static IndexSet full();
  /// {k >= 2 : k mod modulus in residues}.
  static IndexSet residues(std::int64_t modulus, const std::vector<std::int64_t>& residues);
  static IndexSet finite(const std::set<std::int64_t>& elements,
                         std::int64_t cap = kDefaultIndexCap);
  /// [lo, hi] intersected with N_2.
  static IndexSet range(std::int64_t lo, std::int64_t hi);
  static IndexSet singleton(std::int64_t n);
  /// N_2 minus {n}.
  static IndexSet all_but(std::int64_t n);
  /// (n, infinity) intersected with N_2.
  static IndexSet above(std::int64_t n);
  static IndexSet even();
  /// Odd indices >= 3.
  static IndexSet odd();

  /// General constructor; canonicalizes.
  static IndexSet make(BaseKind kind, std::int64_t modulus, std::vector<bool> residue_mask,
                       std::set<std::int64_t> include, std::set<std::int64_t> exclude,
                       std::int64_t cap = kDefaultIndexCap);

  /// Throws std::domain_error when k < 2.
  bool contains(std::int64_t k) const;

  IndexSet complement() const;

  /// H intersected with [2, n], ascending.
  std::vector<std::int64_t> truncate(std::int64_t n) const;

  bool is_finite() const { return kind_ == BaseKind::Empty; }
  bool is_cofinite() const { return kind_ == BaseKind::Full; }
  /// Largest element of a finite set (1 when empty).
  std::int64_t max_element() const;

  BaseKind base_kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<bool>& residue_mask() const { return mask_; }
  const std::set<std::int64_t>& include() const { return include_; }
  const std::set<std::int64_t>& exclude() const { return exclude_; }

  /// Residues r of m hit by some element of H.
  std::vector<bool> residues_mod(std::int64_t m) const;

  std::string describe() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b);

 private:
  bool base_contains(std::int64_t k) const;
  void canonicalize(std::int64_t cap);

  BaseKind kind_ = BaseKind::Empty;
  std::int64_t modulus_ = 1;
  std::vector<bool> mask_{false};
  std::set<std::int64_t> include_;
  std::set<std::int64_t> exclude_;
};

struct DegenerateReduction {
  /// An element of H congruent to 0 or +-1 modulo m.
  std::int64_t witness_residue = 0;
};

struct ReducedIndices {
  std::vector<std::int64_t> indices;  // subset of [2, m/2], ascending
};

using ModReduction = std::variant<DegenerateReduction, ReducedIndices>;

/// H(m) = {k in [2, m/2] : +-k = h (mod m) for some h in H}, or Degenerate
/// when some h in H is 0 or +-1 modulo m.
ModReduction reduce_mod(const IndexSet& h, std::int64_t m);

}  // namespace turan
