#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hgc/algebra.hpp"
#include "hgc/graph.hpp"
#include "hgc/operad.hpp"
#include "hgc/rational.hpp"

namespace hgc {

// Vertex decorations. Colors are indices into a per-valence basis; slot
// permutations act linearly and edge contraction composes the two endpoint
// colors into a color of the merged vertex.
class ColorSystem {
 public:
  virtual ~ColorSystem() = default;
  virtual int basis_size(int valence) const = 0;
  virtual LinComb act(int valence, const std::vector<int>& perm, int color) const = 0;
  virtual LinComb compose(int val_tail, int color_tail, int slot_tail, int val_head,
                          int color_head, int slot_head) const = 0;
  virtual std::string color_name(int valence, int color) const = 0;
  // V-label content of a color (for weight-restricted slices); empty for
  // operad colors whose labels live on the hairs.
  virtual std::vector<int> color_weight(int valence, int color) const { return {}; }
  virtual int color_grading(int valence, int color) const { return 0; }
  virtual int relabel_color(int valence, int color, const std::vector<int>& perm) const {
    (void)valence;
    (void)perm;
    return color;
  }
};

// Colors = basis elements of O((valence)).
class OperadColors : public ColorSystem {
 public:
  explicit OperadColors(OperadId op) : op_(op) {}
  OperadId operad() const { return op_; }
  int basis_size(int valence) const override;
  LinComb act(int valence, const std::vector<int>& perm, int color) const override;
  LinComb compose(int vt, int ct, int st, int vh, int ch, int sh) const override;
  std::string color_name(int valence, int color) const override;

 private:
  OperadId op_;
  mutable std::map<std::tuple<int, std::vector<int>, int>, LinComb> act_cache_;
  mutable std::map<std::tuple<int, int, int, int, int, int>, LinComb> compose_cache_;
};

// Colors = basis elements of a two-slot involutive algebra (the degree-zero
// rooted-tree homology classes); used by reduced rank-one complexes. Slot
// valence is always 2; composition is the algebra product, matching slots via
// the involution where needed.
class AlgebraColors : public ColorSystem {
 public:
  explicit AlgebraColors(std::shared_ptr<const InvolutiveAlgebra> A) : A_(std::move(A)) {}
  const InvolutiveAlgebra& algebra() const { return *A_; }
  int basis_size(int valence) const override;
  LinComb act(int valence, const std::vector<int>& perm, int color) const override;
  LinComb compose(int vt, int ct, int st, int vh, int ch, int sh) const override;
  std::string color_name(int valence, int color) const override;
  std::vector<int> color_weight(int valence, int color) const override;
  int color_grading(int valence, int color) const override;
  int relabel_color(int valence, int color, const std::vector<int>& perm) const override;

 private:
  std::shared_ptr<const InvolutiveAlgebra> A_;
};

// A decorated canonical generator: canonical structure plus one basis color
// per vertex. Chains always hold automorphism-averaged representatives, so
// coefficient maps compare equal iff the chains are equal in the quotient.
struct GenKey {
  std::shared_ptr<const CanonInfo> structure;
  std::vector<int> colors;

  bool operator<(const GenKey& o) const {
    if (structure != o.structure) {
      if (structure->key != o.structure->key) return structure->key < o.structure->key;
    }
    return colors < o.colors;
  }
  bool operator==(const GenKey& o) const {
    return structure->key == o.structure->key && colors == o.colors;
  }
  std::string to_string(const ColorSystem& cs) const;
};

using Chain = std::map<GenKey, Rat>;

void chain_add(Chain& dst, const Chain& src, const Rat& c = Rat(1));
bool chain_is_zero(const Chain& c);

class ChainOps {
 public:
  explicit ChainOps(std::shared_ptr<const ColorSystem> cs) : cs_(std::move(cs)) {}
  const ColorSystem& colors() const { return *cs_; }
  std::shared_ptr<const ColorSystem> colors_ptr() const { return cs_; }

  // Normalizes coeff * (g, colors): canonicalize the structure, transport the
  // colors along the slot transition, then average over the automorphism
  // group with orientation signs. The result is the canonical representative
  // of the class of the decorated graph.
  void add_graph(Chain& out, const RigidGraph& g, const std::vector<int>& colors,
                 const Rat& coeff) const;

  // Same, starting from an already canonical structure.
  void add_canonical(Chain& out, const std::shared_ptr<const CanonInfo>& info,
                     const std::vector<int>& colors, const Rat& coeff) const;

  // Boundary: sum of contractions over non-loop internal edges.
  Chain boundary(const Chain& c) const;
  Chain boundary_generator(const GenKey& gen) const;

  // Permutes V-basis labels: hair labels and color contents.
  Chain relabel(const Chain& c, const std::vector<int>& label_perm) const;

  // Sorted multiset of all V-labels of a generator (hairs plus colors).
  std::vector<int> weight(const GenKey& gen) const;

 private:
  std::shared_ptr<const ColorSystem> cs_;
};

}  // namespace hgc
