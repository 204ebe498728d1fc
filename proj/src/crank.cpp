#include "qls/crank.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "qls/fourier.hpp"

namespace qls {

PartitionTriple::PartitionTriple(Partition a, Partition b, Partition c)
    : p1(std::move(a)), p2(std::move(b)), p3(std::move(c)) {
  if (p1.ground_size() != p2.ground_size() || p1.ground_size() != p3.ground_size())
    fail("GroundMismatch", "partition triple needs a common ground set");
}

const Partition& PartitionTriple::part(int i) const {
  switch (i) {
    case 0: return p1;
    case 1: return p2;
    default: return p3;
  }
}

bool PartitionTriple::is_system() const {
  return p1.support() == p2.support() && p2.support() == p3.support();
}

std::vector<int> PartitionTriple::support() const {
  std::vector<int> out = p1.support();
  for (const Partition* p : {&p2, &p3}) {
    std::vector<int> s = p->support();
    std::vector<int> merged;
    std::set_union(out.begin(), out.end(), s.begin(), s.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

int PartitionTriple::total_cells() const {
  return p1.cell_count() + p2.cell_count() + p3.cell_count();
}

PartitionTriple PartitionTriple::restrict_to(const std::vector<int>& positions) const {
  return {p1.restrict_to(positions), p2.restrict_to(positions), p3.restrict_to(positions)};
}

namespace {

// per-point triangle of global cell ids (p1 cells, then p2, then p3)
std::vector<std::array<int, 3>> triangles(const PartitionTriple& t) {
  const int m = t.ground_size();
  const int off2 = t.p1.cell_count();
  const int off3 = off2 + t.p2.cell_count();
  std::vector<std::array<int, 3>> out(m);
  for (int a = 0; a < m; ++a)
    out[a] = {t.p1.cell_of(a), off2 + t.p2.cell_of(a), off3 + t.p3.cell_of(a)};
  return out;
}

CellSet close_with(const std::vector<std::array<int, 3>>& tri, CellSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [c1, c2, c3] : tri) {
      const int have = ((s >> c1) & 1) + ((s >> c2) & 1) + ((s >> c3) & 1);
      if (have == 2) {
        s |= (CellSet{1} << c1) | (CellSet{1} << c2) | (CellSet{1} << c3);
        changed = true;
      }
    }
  }
  return s;
}

}  // namespace

CellSet all_cells(const PartitionTriple& t) {
  const int nc = t.total_cells();
  return nc == 64 ? ~CellSet{0} : (CellSet{1} << nc) - 1;
}

CellSet close(const PartitionTriple& t, CellSet s) {
  if (t.total_cells() > 64) fail("GroundTooLarge", "more than 64 cells");
  return close_with(triangles(t), s);
}

namespace {

// minimum size of a generating cell set for a triple whose full join is
// indiscrete (single component)
int min_generating(const PartitionTriple& t) {
  const int nc = t.total_cells();
  if (nc > 64) fail("GroundTooLarge", "more than 64 cells");
  const auto tri = triangles(t);
  const CellSet full = all_cells(t);
  if (close_with(tri, 0) == full) return 0;

  // upper bound from the crank >= trank construction: all cells of one
  // partition plus one cell of a second per join-component of the other two
  int ub = nc;
  CellSet witness = 0;
  const int offs[3] = {0, t.p1.cell_count(), t.p1.cell_count() + t.p2.cell_count()};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      const int c = 3 - a - b;
      const Partition jbc = join(t.part(b), t.part(c));
      const int size = t.part(a).cell_count() + jbc.cell_count();
      if (size < ub) {
        ub = size;
        witness = 0;
        for (int i = 0; i < t.part(a).cell_count(); ++i) witness |= CellSet{1} << (offs[a] + i);
        // one b-cell per join(b,c)-cell: pick the b-cell of the first point
        std::vector<bool> seen(jbc.cell_count(), false);
        for (int p = 0; p < t.ground_size(); ++p) {
          if (!seen[jbc.cell_of(p)]) {
            seen[jbc.cell_of(p)] = true;
            witness |= CellSet{1} << (offs[b] + t.part(b).cell_of(p));
          }
        }
      }
    }
  ub = std::popcount(witness);  // overlaps can only shrink it
  if (close_with(tri, witness) != full)
    fail("Internal", "trank witness fails to generate");

  for (int k = 1; k < ub; ++k) {
    // Gosper's hack over k-subsets of nc cells
    CellSet s = (CellSet{1} << k) - 1;
    while (s < (CellSet{1} << nc)) {
      if (close_with(tri, s) == full) return k;
      const CellSet c = s & -s;
      const CellSet r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return ub;
}

}  // namespace

int crank(const PartitionTriple& t, int ground_cap) {
  const int m = t.ground_size();
  if (m > ground_cap)
    fail("GroundTooLarge", "crank search caps at ground size " + std::to_string(ground_cap));
  const Partition comps = join(join(t.p1, t.p2), t.p3);
  int out = 0;
  for (const auto& comp : comps.cells()) {
    const PartitionTriple sub = t.restrict_to(comp);
    out += 2 * static_cast<int>(comp.size()) - min_generating(sub);
  }
  return out;
}

int trank(const PartitionTriple& t) {
  int best = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      const int c = 3 - a - b;
      best = std::max(best, t.part(a).rank() + join(t.part(b), t.part(c)).rank());
    }
  return best;
}

Rat lrank(const PartitionTriple& t) {
  const int sum = t.p1.rank() + t.p2.rank() + t.p3.rank() +
                  join(join(t.p1, t.p2), t.p3).rank();
  Rat out(sum, 2);
  out.canonicalize();
  return out;
}

int complexity(const PartitionTriple& t) {
  if (!t.is_system()) fail("NotASystem", "complexity requires equal supports");
  return trank(t) - static_cast<int>(t.support().size());
}

int crank_pi2_formula(const PartitionTriple& t) {
  for (int i = 0; i < 3; ++i)
    for (const auto& cell : t.part(i).cells())
      if (cell.size() > 2) fail("CellTooLarge", "formula needs all cells of size <= 2");
  const Partition jn = join(join(t.p1, t.p2), t.p3);
  int k = 0;
  for (const auto& comp : jn.cells()) {
    bool all_matchings = true;
    for (int i = 0; i < 3 && all_matchings; ++i)
      if (!t.part(i).restrict_to(comp).is_matching()) all_matchings = false;
    if (all_matchings) ++k;
  }
  return t.p1.rank() + t.p2.rank() + t.p3.rank() - k;
}

namespace {

struct IndicatorCounter {
  const LatinSquare& L;
  std::vector<std::array<int, 3>> tri;   // per point: global cell ids
  std::vector<std::vector<int>> points;  // per cell: incident points
  std::vector<int> val;                  // per cell: assigned value or -1
  std::vector<int> trail;                // assignment order, for undo
  int ncells;
  std::uint64_t nodes = 0, budget;
  std::uint64_t count = 0;

  IndicatorCounter(const LatinSquare& l, const PartitionTriple& t, std::uint64_t b)
      : L(l), tri(triangles(t)), budget(b) {
    ncells = t.total_cells();
    points.resize(ncells);
    val.assign(ncells, -1);
    trail.reserve(ncells);
    for (int a = 0; a < static_cast<int>(tri.size()); ++a)
      for (int c : tri[a]) points[c].push_back(a);
  }

  // assign cell := v, propagating latin-forced values; returns false on
  // contradiction (the trail records everything assigned either way)
  bool assign(int cell, int v) {
    if (++nodes > budget) fail("Infeasible", "lambda_indicator node budget exceeded");
    val[cell] = v;
    trail.push_back(cell);
    for (int a : points[cell]) {
      const auto [c1, c2, c3] = tri[a];
      const int v1 = val[c1], v2 = val[c2], v3 = val[c3];
      const int assigned = (v1 >= 0) + (v2 >= 0) + (v3 >= 0);
      if (assigned == 3) {
        if (L.sym_at(v1, v2) != v3) return false;
      } else if (assigned == 2) {
        int target, forced;
        if (v1 < 0) {
          target = c1;
          forced = L.row_of(v2, v3);
        } else if (v2 < 0) {
          target = c2;
          forced = L.col_of(v1, v3);
        } else {
          target = c3;
          forced = L.sym_at(v1, v2);
        }
        if (!assign(target, forced)) return false;
      }
    }
    return true;
  }

  void search(int from) {
    int cell = from;
    while (cell < ncells && val[cell] >= 0) ++cell;
    if (cell == ncells) {
      ++count;
      return;
    }
    const int n = L.order();
    for (int v = 0; v < n; ++v) {
      const size_t mark = trail.size();
      if (assign(cell, v)) search(cell + 1);
      while (trail.size() > mark) {
        val[trail.back()] = -1;
        trail.pop_back();
      }
    }
  }
};

}  // namespace

Rat lambda_indicator(const LatinSquare& L, const PartitionTriple& t, std::uint64_t node_budget) {
  IndicatorCounter counter(L, t, node_budget);
  counter.search(0);
  Rat out(Int(counter.count),
          int_pow(Int(L.order()), 2ul * static_cast<unsigned long>(t.ground_size())));
  out.canonicalize();
  return out;
}

Rat gamma0(const LatinSquare& L, const PartitionTriple& t) {
  return rat_pow(Rat(L.order()), trank(t)) * lambda_indicator(L, t);
}

Rat gamma(const LatinSquare& L, const PartitionTriple& t) {
  if (!t.is_system()) fail("NotASystem", "gamma requires a partition system");
  const std::vector<int> A = t.support();
  const PartitionTriple sub = t.restrict_to(A);
  const int n = L.order();
  const int ma = static_cast<int>(A.size());
  std::vector<int> full(ma);
  for (int i = 0; i < ma; ++i) full[i] = i;

  std::vector<TupleFunction> projected;
  for (int i = 0; i < 3; ++i) {
    const TupleFunction c = measurability_indicator(n, ma, sub.part(i), full);
    projected.push_back(p_project(c, full));
  }
  const Rat lam = lambda_eval(L, projected[0], projected[1], projected[2]);
  return rat_pow(Rat(n), trank(t)) * lam;
}

}  // namespace qls
