#include "qls/degen.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <future>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

namespace qls {

void TripleSystem::validate_latin() const {
  std::set<std::array<int, 3>> seen(triples.begin(), triples.end());
  if (seen.size() != triples.size()) fail("NotLatin", "duplicate triple");
  // every pair of vertices in at most one triple
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      std::set<std::pair<int, int>> pairs;
      for (const auto& t : triples)
        if (!pairs.insert({t[a], t[b]}).second)
          fail("NotLatin", "vertex pair repeated across triples");
    }
  for (const auto& t : triples)
    for (int c = 0; c < 3; ++c)
      if (t[c] < 0 || t[c] >= class_sizes[c]) fail("NotLatin", "vertex index out of range");
}

TripleSystem build_h1() {
  TripleSystem h;
  h.class_sizes = {6, 6, 6};
  for (int i = 1; i <= 6; ++i) {
    const int z = i - 1;
    h.triples.push_back({(i - 1) % 6, i % 6, z});
    h.triples.push_back({i % 6, (i - 1) % 6, z});
  }
  std::sort(h.triples.begin(), h.triples.end());
  h.validate_latin();
  return h;
}

std::string VertexPartitionTriple::key() const {
  std::string out;
  for (const Partition* p : {&px, &py, &pz}) {
    for (int c : p->rgs()) out.push_back(static_cast<char>('0' + c));
    out.push_back('|');
  }
  return out;
}

namespace {

struct ClassUF {
  std::array<std::vector<int>, 3> parent;

  explicit ClassUF(const std::array<int, 3>& sizes) {
    for (int c = 0; c < 3; ++c) {
      parent[c].resize(sizes[c]);
      std::iota(parent[c].begin(), parent[c].end(), 0);
    }
  }
  explicit ClassUF(const VertexPartitionTriple& pt)
      : ClassUF(std::array<int, 3>{pt.px.ground_size(), pt.py.ground_size(),
                                   pt.pz.ground_size()}) {
    const Partition* ps[3] = {&pt.px, &pt.py, &pt.pz};
    for (int c = 0; c < 3; ++c)
      for (const auto& cell : ps[c]->cells())
        for (size_t i = 1; i < cell.size(); ++i) unite(c, cell[0], cell[i]);
  }

  int find(int c, int x) {
    auto& p = parent[c];
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int c, int x, int y) {
    x = find(c, x);
    y = find(c, y);
    if (x == y) return false;
    parent[c][std::max(x, y)] = std::min(x, y);
    return true;
  }

  Partition extract(int c) {
    std::vector<int> rgs(parent[c].size());
    std::map<int, int> relabel;
    for (size_t i = 0; i < parent[c].size(); ++i) {
      auto [it, fresh] =
          relabel.try_emplace(find(c, static_cast<int>(i)), static_cast<int>(relabel.size()));
      rgs[i] = it->second;
    }
    return Partition(std::move(rgs));
  }

  VertexPartitionTriple extract_all() { return {extract(0), extract(1), extract(2)}; }
};

// two triples agreeing (cell-wise) in two coordinates force the third
void close_uf(const TripleSystem& base, ClassUF& uf) {
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& ts = base.triples;
    for (size_t i = 0; i < ts.size(); ++i)
      for (size_t j = i + 1; j < ts.size(); ++j) {
        int same[3];
        for (int c = 0; c < 3; ++c) same[c] = uf.find(c, ts[i][c]) == uf.find(c, ts[j][c]);
        const int agree = same[0] + same[1] + same[2];
        if (agree == 2) {
          for (int c = 0; c < 3; ++c)
            if (!same[c] && uf.unite(c, ts[i][c], ts[j][c])) changed = true;
        }
      }
  }
}

}  // namespace

VertexPartitionTriple closure_of_merges(const TripleSystem& base,
                                        const std::vector<std::array<int, 3>>& merges) {
  ClassUF uf(base.class_sizes);
  for (const auto& [c, u, v] : merges) {
    if (c < 0 || c > 2 || u < 0 || v < 0 || u >= base.class_sizes[c] || v >= base.class_sizes[c])
      fail("NotLatin", "merge outside a vertex class");
    uf.unite(c, u, v);
  }
  close_uf(base, uf);
  return uf.extract_all();
}

bool is_closed(const TripleSystem& base, const VertexPartitionTriple& pt) {
  ClassUF uf(pt);
  const auto& ts = base.triples;
  for (size_t i = 0; i < ts.size(); ++i)
    for (size_t j = i + 1; j < ts.size(); ++j) {
      int agree = 0;
      for (int c = 0; c < 3; ++c) agree += uf.find(c, ts[i][c]) == uf.find(c, ts[j][c]);
      if (agree == 2) return false;
    }
  return true;
}

TripleSystem quotient_system(const TripleSystem& base, const VertexPartitionTriple& pt) {
  if (!is_closed(base, pt)) fail("NotClosed", "partition triple is not closed");
  TripleSystem q;
  const Partition* ps[3] = {&pt.px, &pt.py, &pt.pz};
  for (int c = 0; c < 3; ++c) q.class_sizes[c] = ps[c]->cell_count();
  for (const auto& t : base.triples)
    q.triples.push_back({pt.px.cell_of(t[0]), pt.py.cell_of(t[1]), pt.pz.cell_of(t[2])});
  std::sort(q.triples.begin(), q.triples.end());
  q.triples.erase(std::unique(q.triples.begin(), q.triples.end()), q.triples.end());
  q.validate_latin();  // guaranteed by closedness
  return q;
}

std::vector<DegenRecord> enumerate_degenerations(bool reversed_order) {
  const TripleSystem h1 = build_h1();
  std::vector<DegenRecord> out;
  std::unordered_map<std::string, int> seen;
  std::deque<int> queue;

  const auto push = [&](VertexPartitionTriple pt, std::vector<std::array<int, 3>> witness) {
    std::string key = pt.key();
    if (seen.count(key)) return;
    DegenRecord rec;
    const int id = static_cast<int>(out.size()) + 1;
    rec.id = id;
    rec.pt = std::move(pt);
    rec.quotient = quotient_system(h1, rec.pt);
    rec.v = rec.quotient.v();
    rec.e = rec.quotient.e();
    rec.witness = std::move(witness);
    seen.emplace(std::move(key), id);
    out.push_back(std::move(rec));
    queue.push_back(id - 1);
  };

  push(closure_of_merges(h1, {}), {});
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    const VertexPartitionTriple pt = out[idx].pt;  // copy: out may reallocate
    const std::vector<std::array<int, 3>> witness = out[idx].witness;
    const Partition* ps[3] = {&pt.px, &pt.py, &pt.pz};
    std::vector<std::array<int, 3>> moves;
    for (int c = 0; c < 3; ++c)
      for (int u = 0; u < h1.class_sizes[c]; ++u)
        for (int v = u + 1; v < h1.class_sizes[c]; ++v) {
          if (ps[c]->cell_of(u) == ps[c]->cell_of(v)) continue;
          moves.push_back({c, u, v});
        }
    if (reversed_order) std::reverse(moves.begin(), moves.end());
    for (const auto& [c, u, v] : moves) {
      ClassUF uf(pt);
      uf.unite(c, u, v);
      close_uf(h1, uf);
      auto w = witness;
      w.push_back({c, u, v});
      push(uf.extract_all(), std::move(w));
    }
  }
  return out;
}

namespace {

// ---- canonical labeling by individualization & refinement ----------------

struct CanonInstance {
  int nv = 0, nt = 0;  // vertex nodes, triple nodes
  std::array<int, 3> sizes{};
  std::vector<std::vector<int>> adj;        // nv+nt nodes
  std::vector<std::array<int, 3>> triples;  // per-class indices

  explicit CanonInstance(const TripleSystem& h) {
    sizes = h.class_sizes;
    nv = h.v();
    nt = h.e();
    triples = h.triples;
    adj.assign(nv + nt, {});
    const int off[3] = {0, sizes[0], sizes[0] + sizes[1]};
    for (int t = 0; t < nt; ++t)
      for (int c = 0; c < 3; ++c) {
        const int g = off[c] + h.triples[t][c];
        adj[nv + t].push_back(g);
        adj[g].push_back(nv + t);
      }
  }
};

// stable 1-WL refinement; color ids are ranks of (old color, sorted neighbor
// colors) keys, so the result is relabeling-invariant
std::vector<int> refine_colors(const CanonInstance& g, std::vector<int> color) {
  const int nn = g.nv + g.nt;
  int prev_classes = -1;
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> keyed(nn);
    for (int u = 0; u < nn; ++u) {
      std::vector<int> key;
      key.push_back(color[u]);
      std::vector<int> nb;
      nb.reserve(g.adj[u].size());
      for (int w : g.adj[u]) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      key.insert(key.end(), nb.begin(), nb.end());
      keyed[u] = {std::move(key), u};
    }
    std::vector<int> order(nn);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return keyed[a].first < keyed[b].first; });
    std::vector<int> fresh(nn);
    int classes = 1;
    for (int i = 0; i < nn; ++i) {
      if (i > 0 && keyed[order[i]].first != keyed[order[i - 1]].first) ++classes;
      fresh[order[i]] = classes - 1;
    }
    color = std::move(fresh);
    // splitting is monotone, so a pass that does not grow the class count
    // has reached the stable coloring
    if (classes == prev_classes) return color;
    prev_classes = classes;
  }
}

std::vector<int> leaf_encoding(const CanonInstance& g, const std::vector<int>& color) {
  // vertex label within its class = rank by color
  const int off[3] = {0, g.sizes[0], g.sizes[0] + g.sizes[1]};
  std::vector<int> label(g.nv);
  for (int c = 0; c < 3; ++c) {
    std::vector<int> members(g.sizes[c]);
    std::iota(members.begin(), members.end(), 0);
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return color[off[c] + a] < color[off[c] + b]; });
    for (int i = 0; i < g.sizes[c]; ++i) label[off[c] + members[i]] = i;
  }
  std::vector<std::array<int, 3>> mapped;
  mapped.reserve(g.triples.size());
  for (const auto& t : g.triples)
    mapped.push_back({label[off[0] + t[0]], label[off[1] + t[1]], label[off[2] + t[2]]});
  std::sort(mapped.begin(), mapped.end());
  std::vector<int> enc = {g.sizes[0], g.sizes[1], g.sizes[2]};
  for (const auto& t : mapped) enc.insert(enc.end(), t.begin(), t.end());
  return enc;
}

void canon_search(const CanonInstance& g, std::vector<int> color, std::vector<int>& best,
                  bool& have_best) {
  color = refine_colors(g, color);
  // first color class containing >= 2 vertex nodes, in color order
  int target_color = -1, target_size = 0;
  {
    std::vector<int> count(g.nv + g.nt + 1, 0);
    for (int u = 0; u < g.nv; ++u) ++count[color[u]];
    for (int c = 0; c < static_cast<int>(count.size()); ++c)
      if (count[c] >= 2) {
        target_color = c;
        target_size = count[c];
        break;
      }
  }
  if (target_color < 0) {
    std::vector<int> enc = leaf_encoding(g, color);
    if (!have_best || enc < best) {
      best = std::move(enc);
      have_best = true;
    }
    return;
  }
  (void)target_size;
  for (int u = 0; u < g.nv; ++u) {
    if (color[u] != target_color) continue;
    std::vector<int> child(color.size());
    for (size_t w = 0; w < color.size(); ++w) child[w] = color[w] * 2 + 1;
    child[u] = color[u] * 2;  // u now precedes its old cellmates
    canon_search(g, std::move(child), best, have_best);
  }
}

TripleSystem permute_roles(const TripleSystem& h, const std::array<int, 3>& perm) {
  TripleSystem out;
  for (int c = 0; c < 3; ++c) out.class_sizes[c] = h.class_sizes[perm[c]];
  for (const auto& t : h.triples) out.triples.push_back({t[perm[0]], t[perm[1]], t[perm[2]]});
  std::sort(out.triples.begin(), out.triples.end());
  return out;
}

std::vector<int> canon_vector_fixed(const TripleSystem& h) {
  if (h.v() > 24) fail("Timeout", "canonical_form caps at 24 vertices");
  CanonInstance g(h);
  std::vector<int> init(g.nv + g.nt);
  const int off[3] = {0, g.sizes[0], g.sizes[0] + g.sizes[1]};
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < g.sizes[c]; ++i) init[off[c] + i] = c;
  for (int t = 0; t < g.nt; ++t) init[g.nv + t] = 3;
  std::vector<int> best;
  bool have = false;
  canon_search(g, std::move(init), best, have);
  return best;
}

std::string encode(const std::vector<int>& enc) {
  std::string out;
  for (size_t i = 0; i < enc.size(); ++i) {
    if (i) out.push_back(i < 3 ? ',' : (i % 3 == 0 ? ';' : ','));
    out += std::to_string(enc[i]);
  }
  return out;
}

}  // namespace

std::string canonical_form(const TripleSystem& H, bool allow_role_swap) {
  if (!allow_role_swap) return encode(canon_vector_fixed(H));
  static const std::array<int, 3> perms[6] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<int> best;
  bool have = false;
  for (const auto& p : perms) {
    std::vector<int> enc = canon_vector_fixed(permute_roles(H, p));
    if (!have || enc < best) {
      best = std::move(enc);
      have = true;
    }
  }
  return encode(best);
}

namespace {

struct MaskTables {
  int v = 0;
  std::vector<VertexSet> tmask;  // per triple: its three vertex bits

  explicit MaskTables(const TripleSystem& h) : v(h.v()) {
    const int off[3] = {0, h.class_sizes[0], h.class_sizes[0] + h.class_sizes[1]};
    for (const auto& t : h.triples)
      tmask.push_back((VertexSet{1} << (off[0] + t[0])) | (VertexSet{1} << (off[1] + t[1])) |
                      (VertexSet{1} << (off[2] + t[2])));
  }
};

VertexSet closure_masks(const std::vector<VertexSet>& triples, std::uint32_t active,
                        VertexSet s) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::uint32_t rest = active;
    while (rest) {
      const int t = std::countr_zero(rest);
      rest &= rest - 1;
      const VertexSet tm = triples[t];
      if ((tm & ~s) != 0 && std::popcount(static_cast<std::uint32_t>(tm & s)) == 2) {
        s |= tm;
        changed = true;
      }
    }
  }
  return s;
}

}  // namespace

VertexSet vertex_closure(const TripleSystem& H, VertexSet s) {
  const MaskTables mt(H);
  const std::uint32_t all = H.e() >= 32 ? ~0u : ((1u << H.e()) - 1);
  return closure_masks(mt.tmask, all, s);
}

int d_value(const TripleSystem& H) {
  const int e = H.e();
  if (e > 16) fail("BudgetExceeded", "d_value caps at 16 triples");
  const MaskTables mt(H);
  const VertexSet everything = (H.v() >= 32) ? ~VertexSet{0} : ((VertexSet{1} << H.v()) - 1);
  const std::uint32_t active = (1u << e) - 1;
  for (int k = 0; k <= e; ++k) {
    if (k == 0) {
      if (closure_masks(mt.tmask, active, 0) == everything) return 0;
      continue;
    }
    std::uint32_t f = (1u << k) - 1;
    while (f < (1u << e)) {
      VertexSet seed = 0;
      std::uint32_t rest = f;
      while (rest) {
        seed |= mt.tmask[std::countr_zero(rest)];
        rest &= rest - 1;
      }
      if (closure_masks(mt.tmask, active, seed) == everything) return k;
      const std::uint32_t c = f & -f;
      const std::uint32_t r = f + c;
      f = (((r ^ f) >> 2) / c) | r;
    }
  }
  fail("Internal", "no generating set found");
}

int stability_margin(const TripleSystem& H) {
  const int e = H.e();
  if (e > 12) fail("BudgetExceeded", "stability_margin caps at 12 triples");
  const MaskTables mt(H);
  // incident-vertex masks for all subsystems via low-bit DP
  std::vector<VertexSet> vmask(1u << e, 0);
  for (std::uint32_t f = 1; f < (1u << e); ++f)
    vmask[f] = vmask[f & (f - 1)] | mt.tmask[std::countr_zero(f)];

  int best = std::numeric_limits<int>::min();
  for (std::uint32_t f = 1; f < (1u << e); ++f) {
    const int ef = std::popcount(f);
    const int vf = std::popcount(vmask[f]);
    // d(F) by scanning subsets of F, skipping ones at least as big as the
    // best found so far
    int df = ef;  // F generates itself
    for (std::uint32_t s = (f - 1) & f; s > 0; s = (s - 1) & f) {
      const int k = std::popcount(s);
      if (k >= df) continue;
      if (closure_masks(mt.tmask, f, vmask[s]) == vmask[f]) df = k;
    }
    best = std::max(best, df - vf + ef);
  }
  return best;
}

DegenReport degeneration_report(int threads) {
  DegenReport rep;
  std::vector<DegenRecord> all = enumerate_degenerations();
  rep.k = static_cast<int>(all.size());

  struct ClassAccum {
    int v = 0, e = 0, members = 0;
    std::vector<std::array<int, 3>> witness;
    const TripleSystem* representative = nullptr;
    std::string swapped_canon;  // margin memo key, role-insensitive
  };
  std::map<std::string, ClassAccum> fixed, swapped;
  for (const auto& rec : all) {
    rep.ve_histogram[{rec.v, rec.e}]++;
    const std::string cf = canonical_form(rec.quotient, false);
    const std::string cs = canonical_form(rec.quotient, true);
    const auto account = [&](std::map<std::string, ClassAccum>& classes,
                             const std::string& canon) {
      auto& acc = classes[canon];
      ++acc.members;
      if (acc.members == 1) {
        acc.v = rec.v;
        acc.e = rec.e;
        acc.witness = rec.witness;
        acc.representative = &rec.quotient;
        acc.swapped_canon = cs;
      }
    };
    account(fixed, cf);
    account(swapped, cs);
  }
  rep.class_count_fixed = static_cast<int>(fixed.size());
  rep.class_count_swapped = static_cast<int>(swapped.size());

  // stability margins are isomorphism invariants (role permutations
  // included), so compute one per role-insensitive class, in parallel
  std::map<std::string, int> margin_memo;
  {
    std::vector<std::pair<const std::string*, const TripleSystem*>> todo;
    for (const auto& [canon, acc] : swapped) todo.push_back({&canon, acc.representative});
    std::vector<int> margins(todo.size());
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> futures;
    for (int t = 0; t < std::max(1, threads); ++t)
      futures.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= todo.size()) return;
          margins[i] = stability_margin(*todo[i].second);
        }
      }));
    for (auto& f : futures) f.get();
    for (size_t i = 0; i < todo.size(); ++i) margin_memo.emplace(*todo[i].first, margins[i]);
  }

  const auto fill = [&](const std::map<std::string, ClassAccum>& classes,
                        std::vector<DegenClass>& out) {
    for (const auto& [canon, acc] : classes) {
      DegenClass dc;
      dc.canon = canon;
      dc.v = acc.v;
      dc.e = acc.e;
      dc.members = acc.members;
      dc.margin = margin_memo.at(acc.swapped_canon);
      dc.quantity = dc.v - dc.e + dc.margin;
      dc.witness = acc.witness;
      out.push_back(std::move(dc));
    }
  };
  fill(fixed, rep.classes_fixed);
  fill(swapped, rep.classes_swapped);
  return rep;
}

}  // namespace qls
