#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgc/rational.hpp"

namespace hgc {

// Half-edge: slot s of internal vertex v.
struct HE {
  int v = 0, s = 0;
  auto operator<=>(const HE&) const = default;
};

// Hair labels: values >= 0 are V-basis labels, values < 0 encode the numbered
// leaves of the rooted-tree operad generators (slot x stored as ~x).
inline int numbered_label(int slot) { return ~slot; }
inline bool is_numbered(int label) { return label < 0; }
inline int numbered_slot(int label) { return ~label; }

// The underlying structure of a colored hairy graph: internal vertices with
// slotted valences, directed internal edges between half-edges, and labeled
// hairs on the remaining half-edges. Orientation data is the vertex order of
// the list plus the stored edge directions; colors live elsewhere.
struct RigidGraph {
  std::vector<int> val;
  std::vector<std::pair<HE, HE>> edges;  // (tail, head)
  std::map<HE, int> hairs;

  int n_vertices() const { return static_cast<int>(val.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_hairs() const { return static_cast<int>(hairs.size()); }
  int degree() const;
  int n_components() const;
  int rank() const;  // first Betti number: e - v + components
  bool connected() const { return n_components() <= 1; }
  bool is_loop(int edge) const { return edges[edge].first.v == edges[edge].second.v; }

  // Every slot is used exactly once by an edge end or a hair; throws otherwise.
  void validate() const;

  // True if every internal vertex has valence >= 3 (or >= 2 when bivalent
  // vertices are permitted).
  bool admissible(bool allow_bivalent = false) const;
};

// A structure automorphism with its orientation sign and the slot relabeling
// it induces at every vertex (which is what acts on the colors).
struct GraphAuto {
  std::vector<int> vperm;               // vertex v -> vperm[v]
  std::vector<std::vector<int>> slot;   // slot[v][s] = image slot at vperm[v]
  int sign = 1;

  bool operator<(const GraphAuto& o) const {
    return std::tie(vperm, slot) < std::tie(o.vperm, o.slot);
  }
  bool operator==(const GraphAuto& o) const {
    return vperm == o.vperm && slot == o.slot;
  }
};

GraphAuto auto_compose(const GraphAuto& a, const GraphAuto& b);  // a after b

// A canonical structure together with its full automorphism group.
struct CanonInfo {
  RigidGraph graph;
  std::string key;
  std::vector<GraphAuto> auts;  // full group, identity included
};

// Transition from an input presentation to the canonical one.
struct CanonResult {
  std::shared_ptr<const CanonInfo> info;
  std::vector<int> vperm;              // input vertex -> canonical vertex
  std::vector<std::vector<int>> slot;  // input (v,s) -> canonical slot
  int sign = 1;
};

// Canonical labeling with orientation sign, exact automorphism group, and a
// process-wide cache keyed by the canonical encoding.
CanonResult canonicalize_structure(const RigidGraph& g);

// Structure part of edge contraction: merges the tail vertex into the head
// along a non-loop edge. The merged vertex goes to position 0; the sign is the
// parity of moving (tail, head) to the front, other vertices keeping their
// order. Slots of the merged vertex are the tail's surviving slots in order,
// then the head's. Throws on loop edges.
struct Contraction {
  RigidGraph graph;
  int sign = 1;
  int merged_tail_valence = 0;   // valence the tail had (color arity)
  int merged_head_valence = 0;
  int tail_slot = 0, head_slot = 0;  // the contracted slots
  std::vector<int> vmap;         // old vertex -> new vertex (merged ones -> 0)
};
Contraction contract_edge_structure(const RigidGraph& g, int edge);

// Maximal subgraph without univalent vertices (hairs dropped, colors dropped).
// Returns the core and the number of surviving vertices; empty for forests.
RigidGraph core(const RigidGraph& g);

// Enumeration of connected admissible structures with k internal vertices,
// degree d and rank r. Hair labels run over `alphabet` (V-basis labels), or
// over the fixed multiset when `fixed_labels` is given. Throws a runtime_error
// mentioning "resource limit" when more than max_structures would be produced.
std::vector<RigidGraph> enumerate_connected(int k, int d, int r, const std::vector<int>& alphabet,
                                            bool allow_bivalent = false,
                                            const std::optional<std::vector<int>>& fixed_labels = std::nullopt,
                                            long max_structures = 2000000);

// Rooted-tree operad generators: trees with c vertices (so c-1 edges), all at
// least trivalent, with numbered leaves 0..l-1 attached to a single
// distinguished vertex and the given multiset of V-labels on the other hairs.
std::vector<RigidGraph> enumerate_bo_trees(int c, int l, const std::vector<int>& vlabels,
                                           long max_structures = 2000000);

std::string graph_debug_string(const RigidGraph& g);

}  // namespace hgc
