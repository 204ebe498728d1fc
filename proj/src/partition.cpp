#include "qls/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qls {

Partition::Partition(std::vector<int> rgs) : rgs_(std::move(rgs)) {
  int next = 0;
  for (size_t i = 0; i < rgs_.size(); ++i) {
    if (rgs_[i] < 0 || rgs_[i] > next)
      fail("BadRGS", "not a restricted-growth string at position " + std::to_string(i));
    if (rgs_[i] == next) ++next;
  }
  cells_.resize(next);
  for (size_t i = 0; i < rgs_.size(); ++i) cells_[rgs_[i]].push_back(static_cast<int>(i));
}

Partition Partition::discrete(int m) {
  std::vector<int> rgs(m);
  std::iota(rgs.begin(), rgs.end(), 0);
  return Partition(std::move(rgs));
}

Partition Partition::indiscrete(int m) { return Partition(std::vector<int>(m, 0)); }

Partition Partition::from_cells(int m, const std::vector<std::vector<int>>& cells) {
  std::vector<int> owner(m, -1);
  for (size_t c = 0; c < cells.size(); ++c)
    for (int i : cells[c]) {
      if (i < 0 || i >= m || owner[i] != -1) fail("BadRGS", "cells do not partition the ground set");
      owner[i] = static_cast<int>(c);
    }
  for (int i = 0; i < m; ++i)
    if (owner[i] == -1) fail("BadRGS", "cells do not cover the ground set");
  // renumber by first occurrence to get an RGS
  std::vector<int> relabel(cells.size(), -1);
  std::vector<int> rgs(m);
  int next = 0;
  for (int i = 0; i < m; ++i) {
    if (relabel[owner[i]] == -1) relabel[owner[i]] = next++;
    rgs[i] = relabel[owner[i]];
  }
  return Partition(std::move(rgs));
}

Int Partition::mobius() const {
  Int out = (rank() % 2 == 0) ? 1 : -1;
  for (const auto& cell : cells_) out *= factorial(cell.size() - 1);
  return out;
}

std::vector<int> Partition::support() const {
  std::vector<int> out;
  for (const auto& cell : cells_)
    if (cell.size() > 1) out.insert(out.end(), cell.begin(), cell.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Partition::full_support() const {
  for (const auto& cell : cells_)
    if (cell.size() == 1) return false;
  return true;
}

bool Partition::is_matching() const {
  for (const auto& cell : cells_)
    if (cell.size() != 2) return false;
  return true;
}

int Partition::r3plus() const {
  int out = 0;
  for (const auto& cell : cells_)
    if (cell.size() >= 3) ++out;
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (ground_size() != coarser.ground_size()) fail("GroundMismatch", "refines");
  for (const auto& cell : cells_) {
    const int target = coarser.cell_of(cell[0]);
    for (int i : cell)
      if (coarser.cell_of(i) != target) return false;
  }
  return true;
}

Partition Partition::restrict_to(const std::vector<int>& positions) const {
  std::vector<int> rgs;
  rgs.reserve(positions.size());
  std::map<int, int> relabel;
  for (int p : positions) {
    const int c = rgs_[p];
    auto [it, fresh] = relabel.try_emplace(c, static_cast<int>(relabel.size()));
    rgs.push_back(it->second);
  }
  return Partition(std::move(rgs));
}

Partition Partition::embed(int new_m, const std::vector<int>& positions) const {
  if (static_cast<int>(positions.size()) != ground_size())
    fail("GroundMismatch", "embed: position count != ground size");
  std::vector<std::vector<int>> cells;
  for (const auto& cell : cells_) {
    std::vector<int> mapped;
    for (int i : cell) mapped.push_back(positions[i]);
    cells.push_back(std::move(mapped));
  }
  std::vector<bool> used(new_m, false);
  for (int p : positions) used[p] = true;
  for (int i = 0; i < new_m; ++i)
    if (!used[i]) cells.push_back({i});
  return from_cells(new_m, cells);
}

Partition meet(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size()) fail("GroundMismatch", "meet");
  const int m = a.ground_size();
  std::map<std::pair<int, int>, int> relabel;
  std::vector<int> rgs(m);
  for (int i = 0; i < m; ++i) {
    const auto key = std::make_pair(a.cell_of(i), b.cell_of(i));
    auto [it, fresh] = relabel.try_emplace(key, static_cast<int>(relabel.size()));
    rgs[i] = it->second;
  }
  return Partition(std::move(rgs));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int m) : parent(m) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[std::max(x, y)] = std::min(x, y);
    return true;
  }
};

}  // namespace

Partition join(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size()) fail("GroundMismatch", "join");
  const int m = a.ground_size();
  UnionFind uf(m);
  for (const auto& part : {&a, &b})
    for (const auto& cell : part->cells())
      for (size_t i = 1; i < cell.size(); ++i) uf.unite(cell[0], cell[i]);
  std::vector<int> rgs(m);
  std::map<int, int> relabel;
  for (int i = 0; i < m; ++i) {
    auto [it, fresh] = relabel.try_emplace(uf.find(i), static_cast<int>(relabel.size()));
    rgs[i] = it->second;
  }
  return Partition(std::move(rgs));
}

namespace {

void enum_rec(int m, int max_cell, bool full_support_only, std::vector<int>& rgs,
              std::vector<int>& cell_sizes, int depth,
              const std::function<void(const Partition&)>& fn) {
  if (depth == m) {
    Partition p(rgs);
    if (!full_support_only || p.full_support()) fn(p);
    return;
  }
  const int used = static_cast<int>(cell_sizes.size());
  for (int c = 0; c <= used; ++c) {
    if (c < used) {
      if (max_cell >= 0 && cell_sizes[c] >= max_cell) continue;
      ++cell_sizes[c];
    } else {
      cell_sizes.push_back(1);
    }
    rgs[depth] = c;
    enum_rec(m, max_cell, full_support_only, rgs, cell_sizes, depth + 1, fn);
    if (c < used)
      --cell_sizes[c];
    else
      cell_sizes.pop_back();
  }
}

}  // namespace

void for_each_partition(int m, int max_cell, bool full_support_only,
                        const std::function<void(const Partition&)>& fn, int m_cap) {
  if (m < 0 || m > m_cap)
    fail("GroundTooLarge", "m = " + std::to_string(m) + " exceeds cap " + std::to_string(m_cap));
  if (m == 0) {
    fn(Partition(std::vector<int>{}));
    return;
  }
  std::vector<int> rgs(m, 0);
  std::vector<int> cell_sizes;
  enum_rec(m, max_cell, full_support_only, rgs, cell_sizes, 0, fn);
}

std::vector<Partition> enumerate_partitions(int m, int max_cell, bool full_support_only,
                                            int m_cap) {
  std::vector<Partition> out;
  for_each_partition(m, max_cell, full_support_only,
                     [&](const Partition& p) { out.push_back(p); }, m_cap);
  return out;
}

PartitionAlgebra partition_algebra(const Partition& p) {
  PartitionAlgebra out;
  out.rank = p.rank();
  out.mobius = p.mobius();
  out.support = p.support();
  out.is_matching = p.is_matching();
  return out;
}

Partition kernel(const std::vector<int>& x, const std::vector<int>& positions) {
  std::vector<int> rgs;
  rgs.reserve(positions.size());
  std::map<int, int> relabel;
  for (int p : positions) {
    auto [it, fresh] = relabel.try_emplace(x.at(p), static_cast<int>(relabel.size()));
    rgs.push_back(it->second);
  }
  return Partition(std::move(rgs));
}

Rat sigma_cell_weight(int size, const Rat& delta) {
  if (size < 1) fail("BadRGS", "cell size must be positive");
  return size == 1 ? delta : Rat(size - 1);
}

Rat sigma_weight(const Partition& p, const Rat& delta) {
  if (delta <= 0 || delta > 1) fail("DeltaOutOfRange", "need 0 < delta <= 1");
  Rat out = 1;
  for (const auto& cell : p.cells()) out *= sigma_cell_weight(static_cast<int>(cell.size()), delta);
  return out;
}

ExpFormulaResult exp_formula_check(int m, const std::vector<Rat>& x) {
  if (m < 0 || m > 9) fail("GroundTooLarge", "exp_formula_check caps at m = 9");
  if (static_cast<int>(x.size()) < m) fail("BadRGS", "need x_1..x_m");

  ExpFormulaResult out;
  out.lhs = 0;
  for_each_partition(m, -1, false, [&](const Partition& p) {
    Rat term = 1;
    for (const auto& cell : p.cells()) term *= x[cell.size() - 1];
    out.lhs += term;
  });

  // S(y) = sum_{k=1..m} x_k y^k / k!, E = exp(S) truncated at degree m via
  // the recurrence E' = S' E.
  std::vector<Rat> s(m + 1, Rat(0));
  for (int k = 1; k <= m; ++k) s[k] = x[k - 1] / Rat(factorial(k));
  std::vector<Rat> e(m + 1, Rat(0));
  e[0] = 1;
  for (int j = 1; j <= m; ++j) {
    Rat acc = 0;
    for (int i = 1; i <= j; ++i) acc += Rat(i) * s[i] * e[j - i];
    e[j] = acc / Rat(j);
  }
  out.rhs = Rat(factorial(m)) * e[m];
  out.equal = (out.lhs == out.rhs);
  return out;
}

BreakingResult breaking_check(int r, const Rat& delta, int variant) {
  if (r < 1 || r > 12) fail("GroundTooLarge", "breaking_check caps at r = 12");
  if (delta <= 0 || delta > 1) fail("DeltaOutOfRange", "need 0 < delta <= 1");
  BreakingResult out;
  out.lhs = sigma_cell_weight(r, delta);
  out.rhs = 0;
  const int r3 = (r >= 3) ? 1 : 0;
  switch (variant) {
    case 1:
      for_each_partition(r, 3, false,
                         [&](const Partition& p) { out.rhs += sigma_weight(p, delta); });
      break;
    case 2:
      for_each_partition(r, 4, false, [&](const Partition& p) {
        if (p.r3plus() == r3) out.rhs += sigma_weight(p, delta);
      });
      break;
    case 3: {
      Rat sum = 0;
      for_each_partition(r, 2, false, [&](const Partition& p) { sum += sigma_weight(p, delta); });
      out.rhs = rat_pow(delta, -r3) * sum;
      break;
    }
    default:
      fail("BadVariant", "variant must be 1, 2, or 3");
  }
  out.holds = (out.lhs <= out.rhs);
  return out;
}

}  // namespace qls
