#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdist {

/// A finite group stored as a dense multiplication table.
///
/// Element 0 is always the identity. `mul(i, j)` is the index of g_i * g_j.
/// Instances are immutable once constructed and always satisfy the group
/// axioms (checked exhaustively by `from_table`).
class FiniteGroup {
 public:
  /// Validates associativity, identity at index 0, inverses, and the Latin
  /// square property. Throws `Error(InvalidArgument)` on failure.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string label);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverses_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& inverses() const { return inverses_; }
  const std::string& label() const { return label_; }

  int element_order(int a) const;
  std::vector<int> element_orders() const;
  bool is_abelian() const;

  /// Conjugacy classes, each sorted, ordered by smallest member (so the class
  /// of the identity comes first).
  std::vector<std::vector<int>> conjugacy_classes() const;

  /// Greedy generating set: repeatedly adds the highest-order element not yet
  /// in the generated subgroup.
  std::vector<int> generators() const;

  /// Tables are compared; labels are not.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> inverses, std::string label)
      : table_(std::move(table)), inverses_(std::move(inverses)), label_(std::move(label)) {}

  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  std::string label_;
};

/// A bijection t: source -> target between groups of equal order,
/// `map[h] = t(h)`.
class GroupBijection {
 public:
  GroupBijection(FiniteGroup source, FiniteGroup target, std::vector<int> map);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<int>& map() const { return map_; }
  int operator()(int h) const { return map_[h]; }

  GroupBijection inverse() const;
  bool fixes_identity() const { return map_[0] == 0; }
  bool is_homomorphism() const;
  bool is_anti_homomorphism() const;

  /// t'(h) = t(e)^{-1} t(h): the identity-fixing representative reached by a
  /// left translation on the target.
  GroupBijection canonical() const;
  /// h -> g * t(h)
  GroupBijection translated_target(int g) const;
  /// h -> t(k * h)
  GroupBijection translated_source(int k) const;

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<int> map_;
};

FiniteGroup make_cyclic(int n);
/// S_n for 1 <= n <= 5. S_3 is ordered {id, s, r, sr, r^2, sr^2} with
/// s = (12), r = (123), composition right-to-left.
FiniteGroup make_symmetric(int n);
/// Lexicographic indexing: (i, j) -> i * |b| + j.
FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Order 2n: index k is r^k, index n + k is s r^k.
FiniteGroup make_dihedral(int n);
/// Indices: 1, -1, i, -i, j, -j, k, -k.
FiniteGroup make_quaternion();

/// Largest order accepted by the brute-force isomorphism and automorphism
/// searches.
inline constexpr int kMaxSearchOrder = 24;

/// Returns an isomorphism a -> b if one exists. Throws SizeLimit past
/// `kMaxSearchOrder`.
std::optional<GroupBijection> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
inline bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  return find_isomorphism(a, b).has_value();
}

/// All automorphisms of g as index maps; the identity map comes first.
std::vector<std::vector<int>> automorphisms(const FiniteGroup& g);

/// Parses "Z<n>", "S<n>", "D<n>", "Q8" and products joined with 'x'
/// ("Z2xZ2xZ2"). Orders above kMaxSearchOrder raise SizeLimit.
FiniteGroup parse_group(std::string_view literal);

/// Parses {"order": n, "table": [[...]], "label": "..."}.
FiniteGroup group_from_json(std::string_view json_text);

}  // namespace fdist
