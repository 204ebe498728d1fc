#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qls/partition.hpp"

namespace qls {

/// 3-partite 3-uniform triple system; latin when every vertex pair is in at
/// most one triple. Triples carry per-class vertex indices.
struct TripleSystem {
  std::array<int, 3> class_sizes{0, 0, 0};
  std::vector<std::array<int, 3>> triples;  // sorted, no duplicates

  int v() const { return class_sizes[0] + class_sizes[1] + class_sizes[2]; }
  int e() const { return static_cast<int>(triples.size()); }
  void validate_latin() const;  // throws NotLatin
};

// The 18-vertex, 12-triple system of closed 6-step chain configurations
// (chain endpoints identified).
TripleSystem build_h1();

struct VertexPartitionTriple {
  Partition px = Partition(std::vector<int>{});
  Partition py = Partition(std::vector<int>{});
  Partition pz = Partition(std::vector<int>{});
  std::string key() const;  // concatenated RGS, canonical
};

// Least partition triple containing all merges (class, u, v) and closed
// under: two triples agreeing in two merged coordinates force the third.
VertexPartitionTriple closure_of_merges(const TripleSystem& base,
                                        const std::vector<std::array<int, 3>>& merges);
bool is_closed(const TripleSystem& base, const VertexPartitionTriple& pt);

TripleSystem quotient_system(const TripleSystem& base,
                             const VertexPartitionTriple& pt);  // NotClosed

// Canonical encoding under within-class relabelings, via backtracking
// individualization-refinement on the vertex/triple incidence structure;
// with allow_role_swap the minimum is also taken over class-role
// permutations. Equal strings iff isomorphic.
std::string canonical_form(const TripleSystem& H, bool allow_role_swap);

using VertexSet = std::uint32_t;  // bit per vertex, classes laid out consecutively

// closure under "two vertices of a triple force the third"
VertexSet vertex_closure(const TripleSystem& H, VertexSet s);

// minimum number of triples whose incident vertices close to all of H
int d_value(const TripleSystem& H);

// max over nonempty subsystems F of d(F) - v(F) + e(F), with d(F) computed
// with respect to F's own triples
int stability_margin(const TripleSystem& H);

struct DegenRecord {
  int id = 0;  // 1-based; id 1 is the discrete triple (H1 itself)
  VertexPartitionTriple pt;
  TripleSystem quotient;
  int v = 0, e = 0;
  std::vector<std::array<int, 3>> witness;  // merges reaching pt from discrete
};

// BFS from the discrete partition triple over single-pair merges followed
// by closure; returns every reachable (= every) closed triple exactly once.
// reversed_order flips the neighbor expansion order (result set must not
// change, only discovery ids).
std::vector<DegenRecord> enumerate_degenerations(bool reversed_order = false);

struct DegenClass {
  std::string canon;
  int v = 0, e = 0;
  int members = 0;
  int margin = 0;    // stability margin
  int quantity = 0;  // v - e + margin
  std::vector<std::array<int, 3>> witness;
};

struct DegenReport {
  int k = 0;
  int class_count_fixed = 0;
  int class_count_swapped = 0;
  std::map<std::pair<int, int>, int> ve_histogram;  // over all k quotients
  std::vector<DegenClass> classes_fixed;
  std::vector<DegenClass> classes_swapped;
};

DegenReport degeneration_report(int threads = 2);

}  // namespace qls
