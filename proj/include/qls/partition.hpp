#pragma once

#include <functional>
#include <vector>

#include "qls/rational.hpp"

namespace qls {

/// Set partition of [0,m) in restricted-growth form: rgs[0] = 0 and
/// rgs[i] <= 1 + max(rgs[0..i)). The RGS is the canonical representation;
/// equality, ordering and hashing all go through it.
class Partition {
 public:
  explicit Partition(std::vector<int> rgs);
  static Partition discrete(int m);
  static Partition indiscrete(int m);
  static Partition from_cells(int m, const std::vector<std::vector<int>>& cells);

  int ground_size() const { return static_cast<int>(rgs_.size()); }
  const std::vector<int>& rgs() const { return rgs_; }
  int cell_of(int i) const { return rgs_[i]; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  int rank() const { return ground_size() - cell_count(); }
  Int mobius() const;
  std::vector<int> support() const;  // sorted union of nonsingleton cells
  bool full_support() const;
  bool is_matching() const;  // every cell has size exactly 2
  int r3plus() const;        // number of cells of size >= 3

  bool refines(const Partition& coarser) const;  // *this <= coarser

  // reindex onto the listed positions (sorted subset of the ground set)
  Partition restrict_to(const std::vector<int>& positions) const;
  // inverse: place this partition's points at `positions` inside [0,new_m),
  // all other points becoming singletons
  Partition embed(int new_m, const std::vector<int>& positions) const;

  bool operator==(const Partition& o) const { return rgs_ == o.rgs_; }
  bool operator<(const Partition& o) const { return rgs_ < o.rgs_; }

 private:
  std::vector<int> rgs_;
  std::vector<std::vector<int>> cells_;
};

Partition meet(const Partition& a, const Partition& b);  // GroundMismatch
Partition join(const Partition& a, const Partition& b);

// Enumerates partitions of [0,m) in lexicographic RGS order. max_cell < 0
// means unconstrained. Throws GroundTooLarge past m_cap.
void for_each_partition(int m, int max_cell, bool full_support_only,
                        const std::function<void(const Partition&)>& fn,
                        int m_cap = 12);
std::vector<Partition> enumerate_partitions(int m, int max_cell = -1,
                                            bool full_support_only = false,
                                            int m_cap = 12);

struct PartitionAlgebra {
  int rank;
  Int mobius;
  std::vector<int> support;
  bool is_matching;
};
PartitionAlgebra partition_algebra(const Partition& p);

// Level-set partition of x at the given positions (sorted subset of tuple
// indices), reindexed to [0,|positions|).
Partition kernel(const std::vector<int>& x, const std::vector<int>& positions);

// sigma^delta weight: delta per singleton cell, (r-1) per r-cell with r > 1.
Rat sigma_cell_weight(int size, const Rat& delta);
Rat sigma_weight(const Partition& p, const Rat& delta);  // DeltaOutOfRange

struct ExpFormulaResult {
  Rat lhs, rhs;
  bool equal;
};
// lhs = sum over partitions of [m] of prod x_{|cell|};
// rhs = m! [y^m] exp(sum_k x_k y^k / k!), by truncated series exponentiation.
ExpFormulaResult exp_formula_check(int m, const std::vector<Rat>& x);

struct BreakingResult {
  Rat lhs, rhs;
  bool holds;
};
// Per-cell partition-breaking inequalities for a single r-cell.
// variant 1: refinements with cells <= 3;
// variant 2: refinements with cells <= 4 and exactly one cell >= 3 (r >= 3);
// variant 3: delta^{-r3+} times refinements with cells <= 2.
BreakingResult breaking_check(int r, const Rat& delta, int variant);

}  // namespace qls
