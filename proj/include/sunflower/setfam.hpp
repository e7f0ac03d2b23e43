#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunflower {

using Element = std::uint32_t;

/// Strictly increasing list of element ids.
using ElementSet = std::vector<Element>;

inline constexpr std::size_t kDefaultMaxUniverse = 4096;

/// Invalid family data. Parse failures carry the offending line (1-based,
/// 0 when not tied to a line).
class FamilyError : public std::invalid_argument {
 public:
  FamilyError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

bool is_subset(const ElementSet& small, const ElementSet& big);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
std::string format_set(const ElementSet& s);

struct Link;

/// A uniform family of distinct m-sets over the ground set {0, ..., n-1}.
///
/// Members are kept in canonical lexicographic order and the family is
/// immutable once built. Each member is also stored as a fixed-width bitset
/// row, and each element as a column bitset over members, so intersection
/// sizes and restriction counts are popcounts.
class SetFamily {
 public:
  /// Validates and canonicalizes. Throws FamilyError on a duplicate member,
  /// nonuniform cardinality, unsorted or repeated ids, or ids >= n.
  SetFamily(std::size_t n, std::size_t m, std::vector<ElementSet> members,
            std::size_t max_universe = kDefaultMaxUniverse);

  std::size_t universe() const { return n_; }
  std::size_t cardinality() const { return m_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  const ElementSet& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<ElementSet>& members() const { return members_; }

  std::size_t intersection_size(std::size_t i, std::size_t j) const;
  ElementSet intersection(std::size_t i, std::size_t j) const;

  /// |F[S]|, the number of members containing `s`.
  std::size_t count_containing(const ElementSet& s) const;
  /// Indices of the members containing `s`, ascending.
  std::vector<std::size_t> members_containing(const ElementSet& s) const;

  /// Index of `s` among the members, or size() when absent.
  std::size_t find(const ElementSet& s) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.members_ == b.members_;
  }

 private:
  struct Canonical {};
  SetFamily(Canonical, std::size_t n, std::size_t m, std::vector<ElementSet> members);
  void build_bitsets();
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {rows_.data() + i * row_words_, row_words_};
  }
  std::span<const std::uint64_t> column(std::size_t e) const {
    return {columns_.data() + e * column_words_, column_words_};
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<ElementSet> members_;
  std::size_t row_words_ = 0;
  std::size_t column_words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> columns_;

  friend SetFamily restrict(const SetFamily& f, const ElementSet& s);
  friend Link link(const SetFamily& f, const ElementSet& s);
};

/// F[S]: members containing S, order preserved.
SetFamily restrict(const SetFamily& f, const ElementSet& s);

/// The link {U - S : U in F[S]} over cardinality m - |S|, with `origin[i]`
/// the index in the parent family of the member that became link member i.
struct Link {
  SetFamily family;
  std::vector<std::size_t> origin;
};
Link link(const SetFamily& f, const ElementSet& s);

/// Counts of ordered pairs (T, U) in F^2 by |T ∩ U|, indexed 0..m.
/// `jobs` > 1 splits rows across threads; the result does not depend on it.
std::vector<std::uint64_t> intersection_histogram(const SetFamily& f, unsigned jobs = 1);

/// Family file text. Header `n=<int> m=<int>`, then one member per line as
/// space-separated element ids; `#` starts a comment.
SetFamily load_family(const std::string& text, std::size_t max_universe = kDefaultMaxUniverse);
std::string save_family(const SetFamily& f);

SetFamily read_family_file(const std::string& path, std::size_t max_universe = kDefaultMaxUniverse);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace sunflower
