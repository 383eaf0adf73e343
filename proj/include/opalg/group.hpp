#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "opalg/errors.hpp"

namespace opalg {

/// A finite group presented by its multiplication table.  Index 0 is the
/// identity; table[g][h] is the product g*h (row = left factor).
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<int>> table);

  int order() const { return order_; }
  int mul(int g, int h) const { return table_[g][h]; }
  int inverse(int g) const { return inverse_[g]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  /// Smallest subgroup containing the given elements, sorted ascending.
  std::vector<int> subgroup_closure(const std::vector<int>& generators) const;

  /// Conjugacy classes, each sorted ascending; classes ordered by their
  /// smallest element.
  std::vector<std::vector<int>> conjugacy_classes() const;

  /// Permutation matrix of left multiplication by g on the group basis.
  Eigen::MatrixXcd left_regular_matrix(int g) const;

 private:
  int order_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

FiniteGroup cyclic_group(int n);
/// Dihedral group of order 2n: indices 0..n-1 are the rotations, n..2n-1
/// the reflections.
FiniteGroup dihedral_group(int n);
/// The symmetric group on three letters (as the order-6 dihedral group).
FiniteGroup symmetric_group_3();

/// Built-in group lookup by name: "Z1".."Z6", "S3", "D4" (order 8).
FiniteGroup builtin_group(const std::string& name);

}  // namespace opalg
