#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hgc/rational.hpp"

namespace hgc {

enum class OperadId { Comm, Assoc, Lie };

std::string operad_name(OperadId op);
OperadId operad_from_name(const std::string& name);

// A basis element of O((s)), the s-slot space of a cyclic operad. Slots are
// labelled 0..s-1 and are on an equal footing (the output can be any slot).
//
// shape encoding:
//   Comm  — empty; the star is unique.
//   Assoc — the cyclic order of the slots, rotated so shape[0] == 0.
//   Lie   — a left comb rooted at slot 0: shape = (1, a_2, ..., a_{s-1})
//           meaning [[...[x_1, x_{a_2}], ...], x_{a_{s-1}}]. For s == 2 the
//           shape is (1) and the element is the operad identity.
struct OperadBasisElement {
  OperadId op;
  int slots = 0;
  std::vector<int> shape;

  auto operator<=>(const OperadBasisElement&) const = default;
  std::string to_string() const;  // e.g. "comm:3", "assoc:(0 1 3 2)", "lie:[[1,2],3]"
};

OperadBasisElement operad_element_from_string(const std::string& s);

// Formal Q-linear combination of basis elements sharing operad and arity.
using OperadElement = std::map<OperadBasisElement, Rat>;

OperadElement operad_single(const OperadBasisElement& b, const Rat& c = Rat(1));
void operad_add(OperadElement& dst, const OperadElement& src, const Rat& c = Rat(1));

// Deterministic basis of O((s)). Sizes: Comm 1, Assoc (s-1)!, Lie (s-2)!.
// Throws for s < 2 ("unsupported arity").
const std::vector<OperadBasisElement>& operad_basis(OperadId op, int s);
int operad_dim(OperadId op, int s);
int operad_basis_index(const OperadBasisElement& b);

// Operadic composition: plug slot out_slot of a (as output) into slot in_slot
// of b (as input). Surviving slots of a keep their increasing order first,
// then surviving slots of b, renumbered consecutively from 0.
OperadElement operad_compose(const OperadElement& a, int out_slot, const OperadElement& b,
                             int in_slot);
OperadElement operad_compose(const OperadBasisElement& a, int out_slot,
                             const OperadBasisElement& b, int in_slot);

// Action of a slot permutation: the slot labelled k becomes labelled perm[k].
OperadElement operad_symmetric_action(const std::vector<int>& perm, const OperadElement& e);
OperadElement operad_symmetric_action(const std::vector<int>& perm, const OperadBasisElement& b);

// Planar binary tree with slot-labelled leaves, rooted at the output slot 0.
// Used as the input presentation for lie_normalize.
struct LieTree {
  int leaf = -1;  // >= 0: a leaf with this slot label
  std::shared_ptr<const LieTree> left, right;

  static std::shared_ptr<const LieTree> make_leaf(int label);
  static std::shared_ptr<const LieTree> make_node(std::shared_ptr<const LieTree> l,
                                                  std::shared_ptr<const LieTree> r);
  std::string to_string() const;  // nested brackets, e.g. "[[1,2],3]"
};

std::shared_ptr<const LieTree> lie_tree_parse(const std::string& s);

// Rewrites a formal combination of planar binary trees (all with leaf set
// {1..s-1}, root = slot 0) into the comb basis, applying AS and IHX.
OperadElement lie_normalize(const std::vector<std::pair<std::shared_ptr<const LieTree>, Rat>>& trees);

// The arity-2 identity element.
OperadBasisElement operad_identity(OperadId op);

}  // namespace hgc
