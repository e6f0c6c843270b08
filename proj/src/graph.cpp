#include "hgc/graph.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hgc {

int RigidGraph::degree() const {
  int d = 0;
  for (int v : val) d += v - 2;
  return d;
}

int RigidGraph::n_components() const {
  if (val.empty()) return 0;
  std::vector<int> parent(val.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [t, h] : edges) parent[find(t.v)] = find(h.v);
  std::set<int> roots;
  for (size_t v = 0; v < val.size(); ++v) roots.insert(find(static_cast<int>(v)));
  return static_cast<int>(roots.size());
}

int RigidGraph::rank() const { return n_edges() - n_vertices() + n_components(); }

void RigidGraph::validate() const {
  std::map<HE, int> seen;
  for (const auto& [t, h] : edges) {
    ++seen[t];
    ++seen[h];
  }
  for (const auto& [he, lab] : hairs) ++seen[he];
  for (int v = 0; v < n_vertices(); ++v)
    for (int s = 0; s < val[v]; ++s) {
      auto it = seen.find({v, s});
      if (it == seen.end() || it->second != 1)
        throw std::logic_error("rigid graph: slot not covered exactly once");
    }
  if (static_cast<int>(seen.size()) != 2 * n_edges() + n_hairs())
    throw std::logic_error("rigid graph: stray half-edge");
}

bool RigidGraph::admissible(bool allow_bivalent) const {
  int m = allow_bivalent ? 2 : 3;
  for (int v : val)
    if (v < m) return false;
  return true;
}

GraphAuto auto_compose(const GraphAuto& a, const GraphAuto& b) {
  GraphAuto c;
  int k = static_cast<int>(a.vperm.size());
  c.vperm.resize(k);
  c.slot.resize(k);
  for (int v = 0; v < k; ++v) {
    c.vperm[v] = a.vperm[b.vperm[v]];
    c.slot[v].resize(b.slot[v].size());
    for (size_t s = 0; s < b.slot[v].size(); ++s) c.slot[v][s] = a.slot[b.vperm[v]][b.slot[v][s]];
  }
  c.sign = a.sign * b.sign;
  return c;
}

namespace {

int perm_parity(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// A complete presentation of g under a vertex bijection: canonical graph,
// encoding, slot maps, orientation sign.
struct Presentation {
  RigidGraph canon;
  std::string key;
  std::vector<std::vector<int>> slot;
  int sign = 1;
};

// Deterministic slot assignment given the vertex order; see the header notes.
// The encoding it produces is independent of the residual choices (order of
// equal hairs, of parallel edges, of coincident loops); those choices only
// move the presentation around by automorphisms.
Presentation present(const RigidGraph& g, const std::vector<int>& vperm) {
  const int k = g.n_vertices();
  std::vector<int> invperm(k);
  for (int v = 0; v < k; ++v) invperm[vperm[v]] = v;

  // slot[v][s] = canonical slot of input half-edge (v, s) at vertex vperm[v].
  std::vector<std::vector<int>> slot(k);
  for (int v = 0; v < k; ++v) slot[v].assign(g.val[v], -1);

  // Per input vertex: what sits in each slot.
  struct SlotUse {
    int kind;  // 0 hair, 1 loop, 2 edge
    int label = 0, edge = -1, end = 0;
  };
  std::vector<std::vector<SlotUse>> use(k);
  for (int v = 0; v < k; ++v) use[v].resize(g.val[v]);
  for (int e = 0; e < g.n_edges(); ++e) {
    const auto& [t, h] = g.edges[e];
    if (t.v == h.v) {
      use[t.v][t.s] = {1, 0, e, 0};
      use[h.v][h.s] = {1, 0, e, 1};
    } else {
      use[t.v][t.s] = {2, 0, e, 0};
      use[h.v][h.s] = {2, 0, e, 1};
    }
  }
  for (const auto& [he, lab] : g.hairs) use[he.v][he.s] = {0, lab, -1, 0};

  for (int cv = 0; cv < k; ++cv) {
    const int v = invperm[cv];
    int next = 0;
    // Hairs by label.
    std::vector<std::pair<int, int>> hs;  // (label, input slot)
    for (int s = 0; s < g.val[v]; ++s)
      if (use[v][s].kind == 0) hs.emplace_back(use[v][s].label, s);
    std::sort(hs.begin(), hs.end());
    for (auto& [lab, s] : hs) slot[v][s] = next++;
    // Loops, per input edge. The slot pair is assigned by input slot order so
    // that the stored direction only shows up in the flip count.
    for (int e = 0; e < g.n_edges(); ++e) {
      const auto& [t, h] = g.edges[e];
      if (t.v != v || h.v != v) continue;
      slot[v][std::min(t.s, h.s)] = next++;
      slot[v][std::max(t.s, h.s)] = next++;
    }
    // Edge ends grouped by canonical neighbour; edges to already-assigned
    // vertices align with the order chosen there, edges to later vertices use
    // input edge order.
    std::vector<std::tuple<int, int, int, int>> ends;  // (cw, align, edge, input slot)
    for (int s = 0; s < g.val[v]; ++s) {
      if (use[v][s].kind != 2) continue;
      int e = use[v][s].edge;
      const HE other = use[v][s].end == 0 ? g.edges[e].second : g.edges[e].first;
      int cw = vperm[other.v];
      int align = (cw < cv) ? slot[other.v][other.s] : e;
      ends.emplace_back(cw, align, e, s);
    }
    std::sort(ends.begin(), ends.end());
    for (auto& [cw, align, e, s] : ends) slot[v][s] = next++;
  }

  // Canonical edges with normalized directions; count flips for the sign.
  Presentation p;
  p.slot = slot;
  p.canon.val.resize(k);
  for (int v = 0; v < k; ++v) p.canon.val[vperm[v]] = g.val[v];
  int flips = 0;
  for (const auto& [t, h] : g.edges) {
    HE ct{vperm[t.v], slot[t.v][t.s]};
    HE ch{vperm[h.v], slot[h.v][h.s]};
    if (ch < ct) {
      std::swap(ct, ch);
      ++flips;
    }
    p.canon.edges.emplace_back(ct, ch);
  }
  std::sort(p.canon.edges.begin(), p.canon.edges.end());
  for (const auto& [he, lab] : g.hairs) p.canon.hairs[{vperm[he.v], slot[he.v][he.s]}] = lab;
  p.sign = perm_parity(vperm) * (flips % 2 == 0 ? 1 : -1);

  std::ostringstream os;
  os << k << ";";
  for (int v = 0; v < k; ++v) os << p.canon.val[v] << ",";
  os << ";H";
  for (const auto& [he, lab] : p.canon.hairs) os << "(" << he.v << "." << he.s << ":" << lab << ")";
  os << ";E";
  for (const auto& [t, h] : p.canon.edges)
    os << "(" << t.v << "." << t.s << "-" << h.v << "." << h.s << ")";
  p.key = os.str();
  return p;
}

// Iterated refinement colors; invariant under isomorphism.
std::vector<long> refined_colors(const RigidGraph& g) {
  const int k = g.n_vertices();
  std::vector<std::string> col(k);
  for (int v = 0; v < k; ++v) {
    std::vector<int> labs;
    int loops = 0;
    for (const auto& [he, lab] : g.hairs)
      if (he.v == v) labs.push_back(lab);
    for (const auto& [t, h] : g.edges)
      if (t.v == v && h.v == v) ++loops;
    std::sort(labs.begin(), labs.end());
    std::ostringstream os;
    os << g.val[v] << "|" << loops << "|";
    for (int l : labs) os << l << ",";
    col[v] = os.str();
  }
  std::vector<long> ids(k);
  for (int round = 0; round < k; ++round) {
    // Remap to dense ranks.
    std::vector<std::string> sorted = col;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < k; ++v)
      ids[v] = std::lower_bound(sorted.begin(), sorted.end(), col[v]) - sorted.begin();
    if (static_cast<int>(sorted.size()) == k) break;
    std::vector<std::vector<long>> nb(k);
    for (const auto& [t, h] : g.edges) {
      nb[t.v].push_back(ids[h.v]);
      nb[h.v].push_back(ids[t.v]);
    }
    std::vector<std::string> ncol(k);
    for (int v = 0; v < k; ++v) {
      std::sort(nb[v].begin(), nb[v].end());
      std::ostringstream os;
      os << ids[v] << "#";
      for (long x : nb[v]) os << x << ",";
      ncol[v] = os.str();
    }
    if (ncol == col) break;
    col = std::move(ncol);
  }
  return ids;
}

struct CanonCacheEntry {
  std::shared_ptr<const CanonInfo> info;
};

std::map<std::string, std::shared_ptr<const CanonInfo>>& canon_cache() {
  static std::map<std::string, std::shared_ptr<const CanonInfo>> cache;
  return cache;
}
std::mutex& canon_mutex() {
  static std::mutex m;
  return m;
}

// Slot-level automorphism generators of a canonical graph: swaps of equal
// hairs, swaps of parallel edges, loop flips and loop swaps.
std::vector<GraphAuto> slot_generators(const RigidGraph& g) {
  const int k = g.n_vertices();
  GraphAuto id;
  id.vperm.resize(k);
  std::iota(id.vperm.begin(), id.vperm.end(), 0);
  id.slot.resize(k);
  for (int v = 0; v < k; ++v) {
    id.slot[v].resize(g.val[v]);
    std::iota(id.slot[v].begin(), id.slot[v].end(), 0);
  }
  id.sign = 1;

  std::vector<GraphAuto> gens;
  // Equal hairs at the same vertex.
  std::map<std::pair<int, int>, std::vector<int>> hair_classes;  // (v,label) -> slots
  for (const auto& [he, lab] : g.hairs) hair_classes[{he.v, lab}].push_back(he.s);
  for (auto& [key, slots] : hair_classes)
    for (size_t i = 0; i + 1 < slots.size(); ++i) {
      GraphAuto a = id;
      std::swap(a.slot[key.first][slots[i]], a.slot[key.first][slots[i + 1]]);
      gens.push_back(std::move(a));
    }
  // Parallel non-loop edges.
  std::map<std::pair<int, int>, std::vector<int>> par;  // (v_min,v_max) -> edges
  std::vector<std::vector<int>> loops_at(k);
  for (int e = 0; e < g.n_edges(); ++e) {
    const auto& [t, h] = g.edges[e];
    if (t.v == h.v) {
      loops_at[t.v].push_back(e);
      continue;
    }
    par[{std::min(t.v, h.v), std::max(t.v, h.v)}].push_back(e);
  }
  for (auto& [vs, es] : par)
    for (size_t i = 0; i + 1 < es.size(); ++i) {
      const auto& [t1, h1] = g.edges[es[i]];
      const auto& [t2, h2] = g.edges[es[i + 1]];
      GraphAuto a = id;
      // Match tails to tails by vertex (canonical edges run min->max).
      a.slot[t1.v][t1.s] = t2.s;
      a.slot[t2.v][t2.s] = t1.s;
      a.slot[h1.v][h1.s] = h2.s;
      a.slot[h2.v][h2.s] = h1.s;
      gens.push_back(std::move(a));
    }
  for (int v = 0; v < k; ++v) {
    for (int e : loops_at[v]) {
      GraphAuto a = id;
      std::swap(a.slot[v][g.edges[e].first.s], a.slot[v][g.edges[e].second.s]);
      a.sign = -1;  // reverses the loop's direction
      gens.push_back(std::move(a));
    }
    for (size_t i = 0; i + 1 < loops_at[v].size(); ++i) {
      const auto& [t1, h1] = g.edges[loops_at[v][i]];
      const auto& [t2, h2] = g.edges[loops_at[v][i + 1]];
      GraphAuto a = id;
      a.slot[v][t1.s] = t2.s;
      a.slot[v][t2.s] = t1.s;
      a.slot[v][h1.s] = h2.s;
      a.slot[v][h2.s] = h1.s;
      gens.push_back(std::move(a));
    }
  }
  return gens;
}

// Checks that a maps g to itself (structure, directions ignored) and computes
// the induced sign relative to the stored directions.
std::optional<int> auto_sign_on(const RigidGraph& g, const GraphAuto& a) {
  std::set<std::pair<HE, HE>> undirected;
  std::map<std::pair<HE, HE>, int> dir;  // normalized pair -> +1 if stored as (t,h)
  for (const auto& [t, h] : g.edges) {
    auto key = std::minmax(t, h);
    undirected.insert({key.first, key.second});
  }
  int flips = 0;
  for (const auto& [t, h] : g.edges) {
    HE it{a.vperm[t.v], a.slot[t.v][t.s]};
    HE ih{a.vperm[h.v], a.slot[h.v][h.s]};
    auto key = std::minmax(it, ih);
    if (!undirected.count({key.first, key.second})) return std::nullopt;
    // The image must be an edge with the same normalized pair; count a flip
    // when the image orientation disagrees with some stored edge. Stored
    // canonical edges always run small->large, so a flip happens iff ih < it.
    if (ih < it) ++flips;
  }
  for (const auto& [he, lab] : g.hairs) {
    HE ihe{a.vperm[he.v], a.slot[he.v][he.s]};
    auto it = g.hairs.find(ihe);
    if (it == g.hairs.end() || it->second != lab) return std::nullopt;
  }
  return perm_parity(a.vperm) * (flips % 2 == 0 ? 1 : -1);
}

}  // namespace

CanonResult canonicalize_structure(const RigidGraph& g) {
  g.validate();
  const int k = g.n_vertices();

  if (k == 0) {
    static std::shared_ptr<const CanonInfo> empty = [] {
      auto info = std::make_shared<CanonInfo>();
      info->key = "0;;H;E";
      GraphAuto id;
      id.sign = 1;
      info->auts.push_back(id);
      return info;
    }();
    return CanonResult{empty, {}, {}, 1};
  }

  std::vector<long> colors = refined_colors(g);

  // Enumerate vertex orders compatible with colour-sorted prefixes, keeping
  // every presentation achieving the lexicographically least encoding.
  std::vector<int> vperm(k, -1);
  std::vector<bool> used(k, false);
  std::string best_key;
  std::vector<Presentation> best;
  std::vector<std::vector<int>> best_vperms;

  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      Presentation p = present(g, vperm);
      if (best_key.empty() || p.key < best_key) {
        best_key = p.key;
        best.clear();
        best_vperms.clear();
      }
      if (p.key == best_key) {
        best.push_back(std::move(p));
        best_vperms.push_back(vperm);
      }
      return;
    }
    long min_color = 0;
    bool first = true;
    for (int v = 0; v < k; ++v)
      if (!used[v] && (first || colors[v] < min_color)) {
        min_color = colors[v];
        first = false;
      }
    for (int v = 0; v < k; ++v) {
      if (used[v] || colors[v] != min_color) continue;
      used[v] = true;
      vperm[v] = pos;
      rec(pos + 1);
      used[v] = false;
      vperm[v] = -1;
    }
  };
  rec(0);

  // Automorphisms from distinct optimal vertex orders.
  const Presentation& p0 = best[0];
  std::vector<int> inv0(k);
  for (int v = 0; v < k; ++v) inv0[best_vperms[0][v]] = v;

  std::set<GraphAuto> auts;
  for (size_t i = 0; i < best.size(); ++i) {
    // A = P_i o P_0^{-1} acting on the canonical graph.
    GraphAuto a;
    a.vperm.resize(k);
    a.slot.resize(k);
    for (int cv = 0; cv < k; ++cv) {
      int v = inv0[cv];
      a.vperm[cv] = best_vperms[i][v];
      a.slot[cv].resize(g.val[v]);
      for (int s = 0; s < g.val[v]; ++s) {
        // canonical slot cs at cv corresponds to input slot s with
        // p0.slot[v][s] == cs.
        a.slot[cv][p0.slot[v][s]] = best[i].slot[v][s];
      }
    }
    a.sign = best[i].sign * p0.sign;
    auto chk = auto_sign_on(p0.canon, a);
    if (!chk) throw std::logic_error("canonicalize: inconsistent automorphism");
    a.sign = *chk;
    auts.insert(std::move(a));
  }
  for (auto& gen : slot_generators(p0.canon)) {
    auto chk = auto_sign_on(p0.canon, gen);
    if (!chk) throw std::logic_error("canonicalize: bad slot generator");
    GraphAuto a = gen;
    a.sign = *chk;
    auts.insert(std::move(a));
  }
  // Close under composition.
  std::vector<GraphAuto> group(auts.begin(), auts.end());
  for (size_t i = 0; i < group.size(); ++i) {
    for (size_t j = 0; j < group.size(); ++j) {
      GraphAuto c = auto_compose(group[i], group[j]);
      if (!auts.count(c)) {
        auto chk = auto_sign_on(p0.canon, c);
        if (!chk) throw std::logic_error("canonicalize: closure left the group");
        c.sign = *chk;
        auts.insert(c);
        group.push_back(std::move(c));
        if (group.size() > 40320) throw std::runtime_error("resource limit: automorphism group too large");
      }
    }
  }

  std::shared_ptr<const CanonInfo> info;
  {
    std::lock_guard<std::mutex> lock(canon_mutex());
    auto& cache = canon_cache();
    auto it = cache.find(best_key);
    if (it != cache.end()) {
      info = it->second;
    } else {
      auto ni = std::make_shared<CanonInfo>();
      ni->graph = p0.canon;
      ni->key = best_key;
      ni->auts.assign(group.begin(), group.end());
      std::sort(ni->auts.begin(), ni->auts.end());
      cache.emplace(best_key, ni);
      info = ni;
    }
  }

  CanonResult res;
  res.info = info;
  res.vperm = best_vperms[0];
  res.slot = p0.slot;
  res.sign = p0.sign;
  return res;
}

Contraction contract_edge_structure(const RigidGraph& g, int edge) {
  if (edge < 0 || edge >= g.n_edges()) throw std::out_of_range("contract: bad edge index");
  const auto [t, h] = g.edges[edge];
  if (t.v == h.v) throw std::invalid_argument("contract: loop edge");
  const int k = g.n_vertices();

  Contraction c;
  c.merged_tail_valence = g.val[t.v];
  c.merged_head_valence = g.val[h.v];
  c.tail_slot = t.s;
  c.head_slot = h.s;

  // New vertex order: merged vertex first, others in original order.
  c.vmap.assign(k, -1);
  c.vmap[t.v] = 0;
  c.vmap[h.v] = 0;
  int next = 1;
  for (int v = 0; v < k; ++v)
    if (v != t.v && v != h.v) c.vmap[v] = next++;

  // Sign: parity of rearranging the vertex list to (tail, head, rest).
  std::vector<int> order;
  order.push_back(t.v);
  order.push_back(h.v);
  for (int v = 0; v < k; ++v)
    if (v != t.v && v != h.v) order.push_back(v);
  // order[i] = original index at new position i; parity of that permutation.
  c.sign = perm_parity(order);

  // Slot maps into the merged vertex: tail survivors in order, then head's.
  std::vector<int> tmap(g.val[t.v], -1), hmap(g.val[h.v], -1);
  int ns = 0;
  for (int s = 0; s < g.val[t.v]; ++s)
    if (s != t.s) tmap[s] = ns++;
  for (int s = 0; s < g.val[h.v]; ++s)
    if (s != h.s) hmap[s] = ns++;

  auto map_he = [&](const HE& he) -> HE {
    if (he.v == t.v) return {0, tmap[he.s]};
    if (he.v == h.v) return {0, hmap[he.s]};
    return {c.vmap[he.v], he.s};
  };

  c.graph.val.assign(k - 1, 0);
  c.graph.val[0] = g.val[t.v] + g.val[h.v] - 2;
  for (int v = 0; v < k; ++v)
    if (v != t.v && v != h.v) c.graph.val[c.vmap[v]] = g.val[v];
  for (int e = 0; e < g.n_edges(); ++e) {
    if (e == edge) continue;
    c.graph.edges.emplace_back(map_he(g.edges[e].first), map_he(g.edges[e].second));
  }
  for (const auto& [he, lab] : g.hairs) c.graph.hairs[map_he(he)] = lab;
  return c;
}

RigidGraph core(const RigidGraph& g) {
  const int k = g.n_vertices();
  std::vector<bool> vkeep(k, true), ekeep(g.n_edges(), true);
  // Hairs never survive. Remove vertices that are univalent in the internal
  // graph (counting loops twice), repeatedly.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> deg(k, 0);
    for (int e = 0; e < g.n_edges(); ++e) {
      if (!ekeep[e]) continue;
      deg[g.edges[e].first.v] += 1;
      deg[g.edges[e].second.v] += 1;
    }
    for (int v = 0; v < k; ++v) {
      if (!vkeep[v]) continue;
      if (deg[v] <= 1) {
        vkeep[v] = false;
        for (int e = 0; e < g.n_edges(); ++e)
          if (ekeep[e] && (g.edges[e].first.v == v || g.edges[e].second.v == v)) ekeep[e] = false;
        changed = true;
      }
    }
  }
  std::vector<int> vmap(k, -1), slot_next;
  RigidGraph out;
  for (int v = 0; v < k; ++v)
    if (vkeep[v]) {
      vmap[v] = static_cast<int>(out.val.size());
      out.val.push_back(0);
    }
  slot_next.assign(out.val.size(), 0);
  std::map<HE, HE> hemap;
  for (int e = 0; e < g.n_edges(); ++e) {
    if (!ekeep[e]) continue;
    for (const HE* he : {&g.edges[e].first, &g.edges[e].second}) {
      int nv = vmap[he->v];
      hemap[*he] = {nv, slot_next[nv]++};
      ++out.val[nv];
    }
  }
  for (int e = 0; e < g.n_edges(); ++e) {
    if (!ekeep[e]) continue;
    out.edges.emplace_back(hemap.at(g.edges[e].first), hemap.at(g.edges[e].second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

// All (loops per vertex, multiplicities per vertex pair) with e edges total and
// per-vertex edge-end budget of val[v]; connected graphs only when required.
struct EdgeShape {
  std::vector<int> loops;
  std::map<std::pair<int, int>, int> mult;
};

void enumerate_edge_shapes(const std::vector<int>& val, int e, bool require_connected,
                           const std::function<void(const EdgeShape&)>& emit) {
  const int k = static_cast<int>(val.size());
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < k; ++u)
    for (int v = u; v < k; ++v) pairs.emplace_back(u, v);

  EdgeShape shape;
  shape.loops.assign(k, 0);
  std::vector<int> used(k, 0);

  std::function<void(size_t, int)> rec = [&](size_t pi, int remaining) {
    if (pi == pairs.size()) {
      if (remaining != 0) return;
      if (require_connected) {
        RigidGraph probe;
        probe.val = val;  // valences unused by n_components
        for (auto& [uv, m] : shape.mult)
          for (int i = 0; i < m; ++i) probe.edges.emplace_back(HE{uv.first, 0}, HE{uv.second, 0});
        for (int v = 0; v < k; ++v)
          for (int i = 0; i < shape.loops[v]; ++i) probe.edges.emplace_back(HE{v, 0}, HE{v, 0});
        if (probe.n_components() > 1) return;
      }
      emit(shape);
      return;
    }
    auto [u, v] = pairs[pi];
    int cap;
    if (u == v)
      cap = (val[u] - used[u]) / 2;
    else
      cap = std::min(val[u] - used[u], val[v] - used[v]);
    cap = std::min(cap, remaining);
    for (int m = 0; m <= cap; ++m) {
      if (m > 0) {
        if (u == v) {
          shape.loops[u] += 1;
          used[u] += 2;
        } else {
          shape.mult[{u, v}] += 1;
          used[u] += 1;
          used[v] += 1;
        }
      }
      rec(pi + 1, remaining - m);
    }
    if (cap > 0) {
      if (u == v) {
        shape.loops[u] -= cap;
        used[u] -= 2 * cap;
      } else {
        shape.mult.erase({u, v});
        used[u] -= cap;
        used[v] -= cap;
      }
    }
  };
  rec(0, e);
}

// Valence vectors: nonincreasing, each >= minval, summing to total.
void enumerate_valences(int k, int total, int minval, std::vector<int>& cur,
                        const std::function<void()>& emit) {
  if (static_cast<int>(cur.size()) == k) {
    if (total == 0) emit();
    return;
  }
  int hi = cur.empty() ? total : cur.back();
  int slots_left = k - static_cast<int>(cur.size());
  for (int v = std::min(hi, total - minval * (slots_left - 1)); v >= minval; --v) {
    cur.push_back(v);
    enumerate_valences(k, total - v, minval, cur, emit);
    cur.pop_back();
  }
}

// Builds rigid graphs from an edge shape: slots assigned in a fixed scheme,
// then hairs filled with labels.
RigidGraph build_rigid(const std::vector<int>& val, const EdgeShape& shape) {
  const int k = static_cast<int>(val.size());
  RigidGraph g;
  g.val = val;
  std::vector<int> next(k, 0);
  for (int v = 0; v < k; ++v)
    for (int i = 0; i < shape.loops[v]; ++i) {
      int a = next[v]++, b = next[v]++;
      g.edges.emplace_back(HE{v, a}, HE{v, b});
    }
  for (const auto& [uv, m] : shape.mult)
    for (int i = 0; i < m; ++i) {
      int a = next[uv.first]++, b = next[uv.second]++;
      g.edges.emplace_back(HE{uv.first, a}, HE{uv.second, b});
    }
  return g;  // hairs to be filled by caller using next[] as the first free slot
}

std::vector<int> free_slot_counts(const RigidGraph& g) {
  std::vector<int> used(g.n_vertices(), 0);
  for (const auto& [t, h] : g.edges) {
    used[t.v]++;
    used[h.v]++;
  }
  std::vector<int> free(g.n_vertices());
  for (int v = 0; v < g.n_vertices(); ++v) free[v] = g.val[v] - used[v];
  return free;
}

// Fills hair slots of each vertex with nondecreasing label sequences drawn
// from `alphabet`, or with distributions of a fixed multiset.
void fill_hairs(const RigidGraph& base, const std::vector<int>& free,
                const std::vector<int>& alphabet,
                const std::optional<std::vector<int>>& fixed_multiset,
                const std::function<void(const RigidGraph&)>& emit) {
  const int k = base.n_vertices();
  std::vector<std::vector<int>> chosen(k);

  std::function<void(int)> rec_vertex = [&](int v) {
    if (v == k) {
      if (fixed_multiset) {
        std::vector<int> all;
        for (auto& ch : chosen) all.insert(all.end(), ch.begin(), ch.end());
        std::sort(all.begin(), all.end());
        std::vector<int> want = *fixed_multiset;
        std::sort(want.begin(), want.end());
        if (all != want) return;
      }
      RigidGraph g = base;
      std::vector<int> next = free_slot_counts(base);
      std::vector<int> start(k);
      for (int u = 0; u < k; ++u) start[u] = base.val[u] - next[u];
      for (int u = 0; u < k; ++u)
        for (size_t i = 0; i < chosen[u].size(); ++i) g.hairs[{u, start[u] + static_cast<int>(i)}] = chosen[u][i];
      emit(g);
      return;
    }
    // nondecreasing sequences of length free[v] over the alphabet
    std::function<void(int, int)> rec_fill = [&](int pos, int min_idx) {
      if (pos == free[v]) {
        rec_vertex(v + 1);
        return;
      }
      for (size_t a = min_idx; a < alphabet.size(); ++a) {
        chosen[v].push_back(alphabet[a]);
        rec_fill(pos + 1, static_cast<int>(a));
        chosen[v].pop_back();
      }
    };
    rec_fill(0, 0);
  };
  rec_vertex(0);
}

}  // namespace

std::vector<RigidGraph> enumerate_connected(int k, int d, int r, const std::vector<int>& alphabet,
                                            bool allow_bivalent,
                                            const std::optional<std::vector<int>>& fixed_labels,
                                            long max_structures) {
  if (k < 1) return {};
  const int e = r + k - 1;
  if (e < 0) return {};
  const int s = d - 2 * r + 2;
  if (s < 0) return {};
  const int total_val = 2 * e + s;
  const int minval = allow_bivalent ? 2 : 3;
  if (total_val < minval * k) return {};

  std::vector<int> label_alphabet = alphabet;
  if (fixed_labels) {
    label_alphabet.assign(fixed_labels->begin(), fixed_labels->end());
    std::sort(label_alphabet.begin(), label_alphabet.end());
    label_alphabet.erase(std::unique(label_alphabet.begin(), label_alphabet.end()),
                         label_alphabet.end());
  }
  if (s > 0 && label_alphabet.empty())
    throw std::invalid_argument("enumerate: hairs requested but no labels provided");

  std::map<std::string, RigidGraph> found;
  long produced = 0;
  std::vector<int> val;
  enumerate_valences(k, total_val, minval, val, [&]() {
    enumerate_edge_shapes(val, e, true, [&](const EdgeShape& shape) {
      RigidGraph base = build_rigid(val, shape);
      fill_hairs(base, free_slot_counts(base), label_alphabet, fixed_labels,
                 [&](const RigidGraph& g) {
                   if (++produced > max_structures)
                     throw std::runtime_error("resource limit: enumeration too large");
                   CanonResult c = canonicalize_structure(g);
                   found.emplace(c.info->key, c.info->graph);
                 });
    });
  });

  std::vector<RigidGraph> out;
  out.reserve(found.size());
  for (auto& [key, g] : found) out.push_back(g);
  return out;
}

std::vector<RigidGraph> enumerate_bo_trees(int c, int l, const std::vector<int>& vlabels,
                                           long max_structures) {
  if (c < 1 || l < 2) throw std::invalid_argument("enumerate_bo_trees: need c >= 1, l >= 2");
  const int e = c - 1;
  const int m = static_cast<int>(vlabels.size());
  const int total_val = 2 * e + l + m;
  if (total_val < 3 * c) return {};

  // All hair labels: numbered slots plus the fixed multiset.
  std::vector<int> fixed;
  for (int i = 0; i < l; ++i) fixed.push_back(numbered_label(i));
  fixed.insert(fixed.end(), vlabels.begin(), vlabels.end());

  std::map<std::string, RigidGraph> found;
  long produced = 0;
  std::vector<int> val;
  enumerate_valences(c, total_val, 3, val, [&]() {
    enumerate_edge_shapes(val, e, true, [&](const EdgeShape& shape) {
      if (std::accumulate(shape.loops.begin(), shape.loops.end(), 0) > 0)
        return;  // trees have no loops
      RigidGraph base = build_rigid(val, shape);
      std::vector<int> alphabet = fixed;
      std::sort(alphabet.begin(), alphabet.end());
      alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
      fill_hairs(base, free_slot_counts(base), alphabet, fixed, [&](const RigidGraph& g) {
        // All numbered hairs must sit at a single vertex.
        int distinguished = -1;
        for (const auto& [he, lab] : g.hairs) {
          if (!is_numbered(lab)) continue;
          if (distinguished < 0) distinguished = he.v;
          else if (distinguished != he.v) return;
        }
        if (++produced > max_structures)
          throw std::runtime_error("resource limit: enumeration too large");
        CanonResult cr = canonicalize_structure(g);
        found.emplace(cr.info->key, cr.info->graph);
      });
    });
  });

  std::vector<RigidGraph> out;
  out.reserve(found.size());
  for (auto& [key, g] : found) out.push_back(g);
  return out;
}

std::string graph_debug_string(const RigidGraph& g) {
  std::ostringstream os;
  os << "vertices " << g.n_vertices() << " [";
  for (int v : g.val) os << v << " ";
  os << "] edges";
  for (const auto& [t, h] : g.edges)
    os << " " << t.v << "." << t.s << "->" << h.v << "." << h.s;
  os << " hairs";
  for (const auto& [he, lab] : g.hairs) os << " " << he.v << "." << he.s << ":" << lab;
  return os.str();
}

}  // namespace hgc
