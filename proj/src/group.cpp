#include "opalg/group.hpp"

#include <algorithm>
#include <set>

namespace opalg {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table)
    : table_(std::move(table)) {
  order_ = static_cast<int>(table_.size());
  if (order_ == 0) throw InvalidGroupTable("empty multiplication table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != order_)
      throw InvalidGroupTable("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= order_)
        throw InvalidGroupTable("table entry out of range");
  }
  // Latin square: every row and column is a permutation.
  for (int g = 0; g < order_; ++g) {
    std::vector<bool> row_seen(order_, false), col_seen(order_, false);
    for (int h = 0; h < order_; ++h) {
      if (row_seen[table_[g][h]])
        throw InvalidGroupTable("row is not a permutation");
      row_seen[table_[g][h]] = true;
      if (col_seen[table_[h][g]])
        throw InvalidGroupTable("column is not a permutation");
      col_seen[table_[h][g]] = true;
    }
  }
  // Identity at index 0.
  for (int g = 0; g < order_; ++g)
    if (table_[0][g] != g || table_[g][0] != g)
      throw InvalidGroupTable("index 0 is not a two-sided identity");
  // Associativity on all triples.
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      for (int c = 0; c < order_; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InvalidGroupTable("multiplication table is not associative");
  // Inverses.
  inverse_.assign(order_, -1);
  for (int g = 0; g < order_; ++g) {
    for (int h = 0; h < order_; ++h) {
      if (table_[g][h] == 0) {
        if (table_[h][g] != 0)
          throw InvalidGroupTable("one-sided inverse found");
        inverse_[g] = h;
        break;
      }
    }
    if (inverse_[g] < 0) throw InvalidGroupTable("element without inverse");
  }
}

std::vector<int> FiniteGroup::subgroup_closure(
    const std::vector<int>& generators) const {
  std::set<int> elems{0};
  for (int g : generators) {
    if (g < 0 || g >= order_) throw InvalidGroupTable("generator out of range");
    elems.insert(g);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> snapshot(elems.begin(), elems.end());
    for (int a : snapshot) {
      for (int b : snapshot) {
        if (elems.insert(table_[a][b]).second) grew = true;
      }
      if (elems.insert(inverse_[a]).second) grew = true;
    }
  }
  return {elems.begin(), elems.end()};
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<bool> seen(order_, false);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < order_; ++g) {
    if (seen[g]) continue;
    std::set<int> cls;
    for (int h = 0; h < order_; ++h)
      cls.insert(table_[table_[h][g]][inverse_[h]]);
    std::vector<int> sorted(cls.begin(), cls.end());
    for (int x : sorted) seen[x] = true;
    classes.push_back(std::move(sorted));
  }
  return classes;
}

Eigen::MatrixXcd FiniteGroup::left_regular_matrix(int g) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order_, order_);
  for (int h = 0; h < order_; ++h) m(table_[g][h], h) = 1.0;
  return m;
}

FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t));
}

FiniteGroup dihedral_group(int n) {
  // Element f*n + k stands for s^f r^k; s r s = r^{-1}.
  int order = 2 * n;
  auto idx = [n](int f, int k) { return f * n + ((k % n) + n) % n; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int f1 = 0; f1 < 2; ++f1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int k2 = 0; k2 < n; ++k2) {
          int f = (f1 + f2) % 2;
          int k = k2 + (f2 == 0 ? k1 : -k1);
          t[idx(f1, k1)][idx(f2, k2)] = idx(f, k);
        }
  return FiniteGroup(std::move(t));
}

FiniteGroup symmetric_group_3() { return dihedral_group(3); }

FiniteGroup builtin_group(const std::string& name) {
  if (name == "S3") return symmetric_group_3();
  if (name == "D4") return dihedral_group(4);
  if (name.size() >= 2 && name[0] == 'Z') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      digits = digits && name[i] >= '0' && name[i] <= '9';
    if (digits && name.size() <= 3) {
      int n = std::stoi(name.substr(1));
      if (n >= 1 && n <= 12) return cyclic_group(n);
    }
  }
  throw InvalidGroupTable("unknown built-in group: " + name);
}

}  // namespace opalg
