#pragma once

#include <cstdint>
#include <vector>

#include "qls/latin.hpp"
#include "qls/partition.hpp"

namespace qls {

/// Triple of partitions on a common ground set [0,m).
struct PartitionTriple {
  Partition p1, p2, p3;

  PartitionTriple(Partition a, Partition b, Partition c);

  int ground_size() const { return p1.ground_size(); }
  const Partition& part(int i) const;  // i in {0,1,2}

  bool is_system() const;          // equal supports
  std::vector<int> support() const;  // union of the three supports
  int total_cells() const;

  // reindexed onto the union support
  PartitionTriple restrict_to(const std::vector<int>& positions) const;
};

// A set of cells of p1 ⊔ p2 ⊔ p3, as a bitmask in that order.
using CellSet = std::uint64_t;

CellSet all_cells(const PartitionTriple& t);

// Least fixed point of the infection rule: for a point a with containing
// cells (c1, c2, c3), two infected cells infect the third.
CellSet close(const PartitionTriple& t, CellSet s);

// crank = 2m - min{|S| : <S> = all cells}, computed independently per
// join-component of p1 v p2 v p3 (all rank notions are additive across
// components). Throws GroundTooLarge past the cap.
int crank(const PartitionTriple& t, int ground_cap = 8);

int trank(const PartitionTriple& t);
Rat lrank(const PartitionTriple& t);  // may be half-integral
int complexity(const PartitionTriple& t);  // trank - |supp|; NotASystem

// Exact crank for triples with all cells of size <= 2:
// rank1 + rank2 + rank3 - k, k = #join-cells where all three restrictions
// are perfect matchings. Throws CellTooLarge otherwise.
int crank_pi2_formula(const PartitionTriple& t);

// Lambda(c_{p1}, c_{p2}, c_{p3}) as an exact rational: the number of
// measurable triples (f1,f2,f3) with (f1(a),f2(a),f3(a)) in L for every a,
// divided by n^{2m}. Backtracking over cells with latin-property forcing.
Rat lambda_indicator(const LatinSquare& L, const PartitionTriple& t,
                     std::uint64_t node_budget = 200'000'000);

// gamma0 = n^{trank} Lambda(c,c,c); gamma = n^{trank} Lambda(P_A c, ...)
// with A the (common) support. gamma requires a partition system.
Rat gamma0(const LatinSquare& L, const PartitionTriple& t);
Rat gamma(const LatinSquare& L, const PartitionTriple& t);

}  // namespace qls
