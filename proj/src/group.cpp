#include "fdist/group.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <queue>

#include <json.hpp>

#include "fdist/error.hpp"

namespace fdist {

namespace {

using Table = std::vector<std::vector<int>>;

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<char> seen(v.size(), 0);
  for (int x : v) {
    if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(Table table, std::string label) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorKind::InvalidArgument, "group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::InvalidArgument, "group table is not square");
    if (!is_permutation_of_range(row)) fail(ErrorKind::InvalidArgument, "group table row is not a permutation");
  }
  for (int j = 0; j < n; ++j) {
    std::vector<int> col(n);
    for (int i = 0; i < n; ++i) col[i] = table[i][j];
    if (!is_permutation_of_range(col)) fail(ErrorKind::InvalidArgument, "group table column is not a permutation");
  }
  for (int i = 0; i < n; ++i) {
    if (table[0][i] != i || table[i][0] != i) fail(ErrorKind::InvalidArgument, "element 0 is not the identity");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          fail(ErrorKind::InvalidArgument, "group table is not associative");

  std::vector<int> inverses(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table[i][j] == 0) {
        inverses[i] = j;
        break;
      }
    }
    if (inverses[i] < 0 || table[inverses[i]][i] != 0) fail(ErrorKind::InvalidArgument, "missing inverse");
  }
  return FiniteGroup(std::move(table), std::move(inverses), std::move(label));
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::element_orders() const {
  std::vector<int> orders(order());
  for (int i = 0; i < order(); ++i) orders[i] = element_order(i);
  return orders;
}

bool FiniteGroup::is_abelian() const {
  for (int i = 0; i < order(); ++i)
    for (int j = i + 1; j < order(); ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  const int n = order();
  std::vector<int> class_of(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (class_of[x] >= 0) continue;
    std::vector<int> cls;
    for (int g = 0; g < n; ++g) {
      int y = mul(mul(g, x), inverse(g));
      if (class_of[y] < 0) {
        class_of[y] = static_cast<int>(classes.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<int> FiniteGroup::generators() const {
  const int n = order();
  std::vector<char> in_subgroup(n, 0);
  in_subgroup[0] = 1;
  std::vector<int> gens;
  const auto orders = element_orders();
  std::vector<int> by_order(n);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(), [&](int a, int b) { return orders[a] > orders[b]; });

  auto close = [&] {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (in_subgroup[i]) members.push_back(i);
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
      for (int gen : gens) {
        int y = mul(members[idx], gen);
        if (!in_subgroup[y]) {
          in_subgroup[y] = 1;
          members.push_back(y);
        }
      }
    }
  };

  for (int candidate : by_order) {
    if (in_subgroup[candidate]) continue;
    gens.push_back(candidate);
    close();
  }
  return gens;
}

GroupBijection::GroupBijection(FiniteGroup source, FiniteGroup target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (source_.order() != target_.order()) fail(ErrorKind::InvalidArgument, "bijection between groups of different order");
  if (static_cast<int>(map_.size()) != source_.order() || !is_permutation_of_range(map_))
    fail(ErrorKind::InvalidArgument, "bijection map is not a permutation");
}

GroupBijection GroupBijection::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t h = 0; h < map_.size(); ++h) inv[map_[h]] = static_cast<int>(h);
  return GroupBijection(target_, source_, std::move(inv));
}

bool GroupBijection::is_homomorphism() const {
  const int n = source_.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (map_[source_.mul(a, b)] != target_.mul(map_[a], map_[b])) return false;
  return true;
}

bool GroupBijection::is_anti_homomorphism() const {
  const int n = source_.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (map_[source_.mul(a, b)] != target_.mul(map_[b], map_[a])) return false;
  return true;
}

GroupBijection GroupBijection::canonical() const { return translated_target(target_.inverse(map_[0])); }

GroupBijection GroupBijection::translated_target(int g) const {
  std::vector<int> m(map_.size());
  for (std::size_t h = 0; h < map_.size(); ++h) m[h] = target_.mul(g, map_[h]);
  return GroupBijection(source_, target_, std::move(m));
}

GroupBijection GroupBijection::translated_source(int k) const {
  std::vector<int> m(map_.size());
  for (int h = 0; h < source_.order(); ++h) m[h] = map_[source_.mul(k, h)];
  return GroupBijection(source_, target_, std::move(m));
}

FiniteGroup make_cyclic(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return FiniteGroup::from_table(std::move(t), "Z" + std::to_string(n));
}

FiniteGroup make_symmetric(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "symmetric group degree must be positive");
  if (n > 5) fail(ErrorKind::SizeLimit, "symmetric groups are limited to degree 5");

  using Perm = std::vector<int>;
  auto compose = [n](const Perm& p, const Perm& q) {  // (p q)(x) = p(q(x))
    Perm r(n);
    for (int x = 0; x < n; ++x) r[x] = p[q[x]];
    return r;
  };

  std::vector<Perm> elements;
  if (n == 3) {
    const Perm id{0, 1, 2}, s{1, 0, 2}, r{1, 2, 0};
    const Perm r2 = compose(r, r);
    elements = {id, s, r, compose(s, r), r2, compose(s, r2)};
  } else {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      elements.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  const int order = static_cast<int>(elements.size());
  auto index_of = [&](const Perm& p) {
    return static_cast<int>(std::find(elements.begin(), elements.end(), p) - elements.begin());
  };
  Table t(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) t[i][j] = index_of(compose(elements[i], elements[j]));
  return FiniteGroup::from_table(std::move(t), "S" + std::to_string(n));
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  return FiniteGroup::from_table(std::move(t), a.label() + "x" + b.label());
}

FiniteGroup make_dihedral(int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "dihedral group needs n >= 2");
  const int order = 2 * n;
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  Table t(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const bool si = i >= n, sj = j >= n;
      const int a = i % n, b = j % n;
      // r^a s = s r^{-a}
      if (!si && !sj) t[i][j] = mod(a + b);
      else if (!si && sj) t[i][j] = n + mod(b - a);
      else if (si && !sj) t[i][j] = n + mod(a + b);
      else t[i][j] = mod(b - a);
    }
  }
  return FiniteGroup::from_table(std::move(t), "D" + std::to_string(n));
}

FiniteGroup make_quaternion() {
  // units 1, i, j, k as 0..3; product[u][v] = {sign, unit}
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Table t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const int ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * kSign[ux][uy];
      t[x][y] = 2 * kUnit[ux][uy] + (sign < 0 ? 1 : 0);
    }
  }
  return FiniteGroup::from_table(std::move(t), "Q8");
}

namespace {

std::vector<int> sorted_orders(const FiniteGroup& g) {
  auto o = g.element_orders();
  std::sort(o.begin(), o.end());
  return o;
}

// Enumerates homomorphic bijections a -> b by choosing images of a's
// generators among elements of matching order and extending along words.
// `visit` returns false to stop the search.
void for_each_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                          const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = a.order();
  if (n > kMaxSearchOrder || b.order() > kMaxSearchOrder)
    fail(ErrorKind::SizeLimit, "isomorphism search is limited to order " + std::to_string(kMaxSearchOrder));
  if (n != b.order() || sorted_orders(a) != sorted_orders(b)) return;

  const auto gens = a.generators();
  const auto a_orders = a.element_orders();
  const auto b_orders = b.element_orders();

  // BFS spanning tree: element = parent * gens[via]
  std::vector<int> parent(n, -1), via(n, -1), bfs{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t idx = 0; idx < bfs.size(); ++idx) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int y = a.mul(bfs[idx], gens[gi]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = bfs[idx];
        via[y] = static_cast<int>(gi);
        bfs.push_back(y);
      }
    }
  }

  std::vector<int> images(gens.size(), -1);
  std::vector<int> map(n);
  std::vector<char> used(n);

  auto try_complete = [&]() -> bool {
    std::fill(used.begin(), used.end(), 0);
    map[0] = 0;
    used[0] = 1;
    for (std::size_t idx = 1; idx < bfs.size(); ++idx) {
      int y = bfs[idx];
      int img = b.mul(map[parent[y]], images[via[y]]);
      if (used[img]) return false;
      used[img] = 1;
      map[y] = img;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
    return true;
  };

  bool stop = false;
  std::function<void(std::size_t)> assign = [&](std::size_t gi) {
    if (stop) return;
    if (gi == gens.size()) {
      if (try_complete() && !visit(map)) stop = true;
      return;
    }
    for (int cand = 1; cand < n && !stop; ++cand) {
      if (b_orders[cand] != a_orders[gens[gi]]) continue;
      images[gi] = cand;
      assign(gi + 1);
    }
  };
  if (gens.empty()) {
    map[0] = 0;
    visit(map);
    return;
  }
  assign(0);
}

}  // namespace

std::optional<GroupBijection> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  std::optional<GroupBijection> found;
  for_each_isomorphism(a, b, [&](const std::vector<int>& map) {
    found.emplace(a, b, map);
    return false;
  });
  return found;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroup& g) {
  std::vector<std::vector<int>> result;
  for_each_isomorphism(g, g, [&](const std::vector<int>& map) {
    result.push_back(map);
    return true;
  });
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

int parse_positive(std::string_view digits, std::string_view literal) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || value < 1)
    fail(ErrorKind::InvalidArgument, "bad group literal '" + std::string(literal) + "'");
  return value;
}

FiniteGroup parse_factor(std::string_view token) {
  if (token == "Q8") return make_quaternion();
  if (token.size() < 2) fail(ErrorKind::InvalidArgument, "bad group literal '" + std::string(token) + "'");
  const int n = parse_positive(token.substr(1), token);
  if ((token[0] == 'Z' && n > kMaxSearchOrder) || (token[0] == 'D' && n > kMaxSearchOrder / 2))
    fail(ErrorKind::SizeLimit, "group literals are limited to order " + std::to_string(kMaxSearchOrder));
  switch (token[0]) {
    case 'Z': return make_cyclic(n);
    case 'S': return make_symmetric(n);
    case 'D': return make_dihedral(n);
    default: fail(ErrorKind::InvalidArgument, "bad group literal '" + std::string(token) + "'");
  }
}

}  // namespace

FiniteGroup parse_group(std::string_view literal) {
  std::optional<FiniteGroup> result;
  std::size_t start = 0;
  while (start <= literal.size()) {
    std::size_t end = literal.find('x', start);
    if (end == std::string_view::npos) end = literal.size();
    FiniteGroup factor = parse_factor(literal.substr(start, end - start));
    result = result ? make_direct_product(*result, factor) : factor;
    if (result->order() > kMaxSearchOrder)
      fail(ErrorKind::SizeLimit, "group literals are limited to order " + std::to_string(kMaxSearchOrder));
    start = end + 1;
  }
  return *result;
}

FiniteGroup group_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("group JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("table")) fail(ErrorKind::InvalidArgument, "group JSON needs a \"table\" field");
  Table table;
  try {
    table = j.at("table").get<Table>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("group JSON table: ") + e.what());
  }
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
    fail(ErrorKind::InvalidArgument, "group JSON order does not match table size");
  if (static_cast<int>(table.size()) > kMaxSearchOrder)
    fail(ErrorKind::SizeLimit, "imported groups are limited to order " + std::to_string(kMaxSearchOrder));
  std::string label = j.value("label", std::string("G") + std::to_string(table.size()));
  return FiniteGroup::from_table(std::move(table), std::move(label));
}

}  // namespace fdist
