#include "hgc/operad.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hgc {

std::string operad_name(OperadId op) {
  switch (op) {
    case OperadId::Comm: return "comm";
    case OperadId::Assoc: return "assoc";
    case OperadId::Lie: return "lie";
  }
  return "?";
}

OperadId operad_from_name(const std::string& name) {
  if (name == "comm") return OperadId::Comm;
  if (name == "assoc") return OperadId::Assoc;
  if (name == "lie") return OperadId::Lie;
  throw std::invalid_argument("unknown operad: " + name);
}

std::string OperadBasisElement::to_string() const {
  std::ostringstream os;
  os << operad_name(op) << ":";
  if (op == OperadId::Comm) {
    os << slots;
  } else if (op == OperadId::Assoc) {
    os << "(";
    for (size_t i = 0; i < shape.size(); ++i) os << (i ? " " : "") << shape[i];
    os << ")";
  } else {
    // Rebuild the nested-bracket string of the comb.
    std::string w = std::to_string(shape[0]);
    for (size_t i = 1; i < shape.size(); ++i)
      w = "[" + w + "," + std::to_string(shape[i]) + "]";
    os << w;
  }
  return os.str();
}

OperadElement operad_single(const OperadBasisElement& b, const Rat& c) {
  OperadElement e;
  if (c != 0) e[b] = c;
  return e;
}

void operad_add(OperadElement& dst, const OperadElement& src, const Rat& c) {
  if (c == 0) return;
  for (const auto& [b, v] : src) {
    auto it = dst.find(b);
    if (it == dst.end()) {
      Rat nv = c * v;
      if (nv != 0) dst.emplace(b, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

// ---------------------------------------------------------------------------
// Basis enumeration
// ---------------------------------------------------------------------------

namespace {

void check_arity(int s) {
  if (s < 2) throw std::invalid_argument("unsupported arity: operad slots must be >= 2");
}

std::vector<OperadBasisElement> build_basis(OperadId op, int s) {
  check_arity(s);
  std::vector<OperadBasisElement> out;
  if (op == OperadId::Comm) {
    out.push_back({op, s, {}});
  } else if (op == OperadId::Assoc) {
    // Cyclic orders = permutations of 1..s-1 appended to a leading 0.
    std::vector<int> rest(s - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
      std::vector<int> shape;
      shape.reserve(s);
      shape.push_back(0);
      shape.insert(shape.end(), rest.begin(), rest.end());
      out.push_back({op, s, std::move(shape)});
    } while (std::next_permutation(rest.begin(), rest.end()));
  } else {
    // Combs (1, a_2, ..., a_{s-1}) over permutations of {2..s-1}.
    std::vector<int> rest(s - 2);
    std::iota(rest.begin(), rest.end(), 2);
    do {
      std::vector<int> shape;
      shape.reserve(s - 1);
      shape.push_back(1);
      shape.insert(shape.end(), rest.begin(), rest.end());
      out.push_back({op, s, std::move(shape)});
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const std::vector<OperadBasisElement>& operad_basis(OperadId op, int s) {
  static std::map<std::pair<OperadId, int>, std::vector<OperadBasisElement>> cache;
  auto key = std::make_pair(op, s);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_basis(op, s)).first;
  return it->second;
}

int operad_dim(OperadId op, int s) { return static_cast<int>(operad_basis(op, s).size()); }

int operad_basis_index(const OperadBasisElement& b) {
  const auto& basis = operad_basis(b.op, b.slots);
  auto it = std::lower_bound(basis.begin(), basis.end(), b);
  if (it == basis.end() || *it != b)
    throw std::invalid_argument("not a basis element: " + b.to_string());
  return static_cast<int>(it - basis.begin());
}

OperadBasisElement operad_identity(OperadId op) {
  return operad_basis(op, 2)[0];
}

// ---------------------------------------------------------------------------
// Lie internals: unrooted planar trivalent trees and comb extraction
// ---------------------------------------------------------------------------

namespace {

// Planar trivalent tree with legs 0..legs-1. Internal nodes store their three
// neighbours in cyclic order; a neighbour entry is an internal node index or
// ~leg for a leg. The two-leg tree has no internal node (bare edge).
struct TrivTree {
  int legs = 0;
  std::vector<std::array<int, 3>> nodes;
  std::vector<int> leg_node;  // internal node holding each leg; -1 for the bare edge

  static int enc_leg(int leg) { return ~leg; }
  static bool is_leg(int ref) { return ref < 0; }
  static int dec_leg(int ref) { return ~ref; }
};

// Multilinear Lie words: map from letter sequence to integer coefficient.
using WordMap = std::map<std::vector<int>, Int>;

void word_add(WordMap& dst, const WordMap& src, const Int& c) {
  for (const auto& [w, v] : src) {
    auto it = dst.find(w);
    if (it == dst.end()) {
      Int nv = c * v;
      if (nv != 0) dst.emplace(w, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

// Associative expansion of [u, v] = uv - vu.
WordMap word_bracket(const WordMap& u, const WordMap& v) {
  WordMap out;
  for (const auto& [wu, cu] : u)
    for (const auto& [wv, cv] : v) {
      std::vector<int> uv = wu;
      uv.insert(uv.end(), wv.begin(), wv.end());
      std::vector<int> vu = wv;
      vu.insert(vu.end(), wu.begin(), wu.end());
      Int c = cu * cv;
      auto it = out.find(uv);
      if (it == out.end()) out.emplace(std::move(uv), c);
      else { it->second += c; if (it->second == 0) out.erase(it); }
      it = out.find(vu);
      if (it == out.end()) out.emplace(std::move(vu), -c);
      else { it->second -= c; if (it->second == 0) out.erase(it); }
    }
  return out;
}

// Reads the rooted binary expression at `from` entering node `node`, and
// expands it into associative words.
WordMap expand_from(const TrivTree& t, int node, int from) {
  if (TrivTree::is_leg(node)) {
    WordMap w;
    w[{TrivTree::dec_leg(node)}] = 1;
    return w;
  }
  const auto& nb = t.nodes[node];
  int p = -1;
  for (int i = 0; i < 3; ++i)
    if (nb[i] == from) p = i;
  assert(p >= 0);
  WordMap l = expand_from(t, nb[(p + 1) % 3], node);
  WordMap r = expand_from(t, nb[(p + 2) % 3], node);
  return word_bracket(l, r);
}

// Expands the whole tree rooted at leg `root`.
WordMap expand_rooted(const TrivTree& t, int root) {
  if (t.leg_node[root] == -1) {
    // Bare edge: the expression is the single other leg.
    int other = -1;
    for (int l = 0; l < t.legs; ++l)
      if (l != root && t.leg_node[l] == -1) other = l;
    assert(other >= 0);
    WordMap w;
    w[{other}] = 1;
    return w;
  }
  return expand_from(t, t.leg_node[root], TrivTree::enc_leg(root));
}

// A multilinear Lie element on letters {1..s-1} is determined by the
// coefficients of the associative words starting with letter 1, and the comb
// [[..[x_1,x_{a_2}]..],x_{a_{s-1}}] contributes exactly the word (1,a_2,...)
// with coefficient 1. Extraction is therefore a direct coordinate read.
OperadElement words_to_combs(const WordMap& words, int s) {
  OperadElement out;
  for (const auto& [w, c] : words) {
    if (w.empty() || w[0] != 1) continue;
    OperadBasisElement b{OperadId::Lie, s, w};
    out[b] = frac(c, 1);
  }
  // Drop explicit zeros (word_add already prunes, but be safe).
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

TrivTree triv_from_comb(const OperadBasisElement& b) {
  TrivTree t;
  t.legs = b.slots;
  t.leg_node.assign(t.legs, -1);
  if (b.slots == 2) return t;
  // Comb (1, a_2, ..., a_{s-1}): nodes n_0 (innermost, holding legs 1 and a_2)
  // up to n_{s-3} (outermost, attached to leg 0). Cyclic order at each node is
  // (parent, left, right).
  int k = b.slots - 2;  // number of internal nodes
  t.nodes.assign(k, {0, 0, 0});
  for (int i = 0; i < k; ++i) {
    int parent = (i == k - 1) ? TrivTree::enc_leg(0) : i + 1;
    int left = (i == 0) ? TrivTree::enc_leg(b.shape[0]) : i - 1;
    int right = TrivTree::enc_leg(b.shape[i + 1]);
    t.nodes[i] = {parent, left, right};
  }
  t.leg_node[0] = k - 1;
  t.leg_node[b.shape[0]] = 0;
  for (int i = 1; i < b.slots - 1; ++i) t.leg_node[b.shape[i]] = i - 1;
  return t;
}

TrivTree triv_relabel(const TrivTree& t, const std::vector<int>& perm) {
  TrivTree out;
  out.legs = t.legs;
  out.nodes = t.nodes;
  out.leg_node.assign(t.legs, -1);
  for (auto& node : out.nodes)
    for (auto& ref : node)
      if (TrivTree::is_leg(ref)) ref = TrivTree::enc_leg(perm[TrivTree::dec_leg(ref)]);
  for (int l = 0; l < t.legs; ++l) out.leg_node[perm[l]] = t.leg_node[l];
  return out;
}

// Grafts leg la of a to leg lb of b. Surviving legs of a keep their increasing
// order first, then surviving legs of b.
TrivTree triv_graft(const TrivTree& a, int la, const TrivTree& b, int lb) {
  std::vector<int> amap(a.legs, -1), bmap(b.legs, -1);
  int next = 0;
  for (int l = 0; l < a.legs; ++l)
    if (l != la) amap[l] = next++;
  for (int l = 0; l < b.legs; ++l)
    if (l != lb) bmap[l] = next++;

  // Bare-edge factors act as relabelings.
  if (a.leg_node[la] == -1 && a.legs == 2) {
    int other = 1 - la;
    std::vector<int> perm(b.legs);
    for (int l = 0; l < b.legs; ++l) perm[l] = (l == lb) ? amap[other] : bmap[l];
    return triv_relabel(b, perm);
  }
  if (b.leg_node[lb] == -1 && b.legs == 2) {
    int other = 1 - lb;
    std::vector<int> perm(a.legs);
    for (int l = 0; l < a.legs; ++l) perm[l] = (l == la) ? bmap[other] : amap[l];
    return triv_relabel(a, perm);
  }

  TrivTree out;
  out.legs = a.legs + b.legs - 2;
  out.leg_node.assign(out.legs, -1);
  out.nodes = a.nodes;
  int shift = static_cast<int>(a.nodes.size());
  for (const auto& node : b.nodes) {
    std::array<int, 3> nn = node;
    for (auto& ref : nn)
      if (!TrivTree::is_leg(ref)) ref += shift;
    out.nodes.push_back(nn);
  }
  // Relabel legs inside node references.
  for (size_t i = 0; i < a.nodes.size(); ++i)
    for (auto& ref : out.nodes[i])
      if (TrivTree::is_leg(ref)) {
        int l = TrivTree::dec_leg(ref);
        ref = (l == la) ? ~0x7fffffff : TrivTree::enc_leg(amap[l]);  // placeholder for the graft point
      }
  for (size_t i = a.nodes.size(); i < out.nodes.size(); ++i)
    for (auto& ref : out.nodes[i])
      if (TrivTree::is_leg(ref)) {
        int l = TrivTree::dec_leg(ref);
        ref = (l == lb) ? ~0x7ffffffe : TrivTree::enc_leg(bmap[l]);
      }
  int ua = a.leg_node[la];
  int ub = b.leg_node[lb] + shift;
  for (auto& ref : out.nodes[ua])
    if (ref == ~0x7fffffff) ref = ub;
  for (auto& ref : out.nodes[ub])
    if (ref == ~0x7ffffffe) ref = ua;
  for (int l = 0; l < a.legs; ++l)
    if (l != la) out.leg_node[amap[l]] = a.leg_node[l];
  for (int l = 0; l < b.legs; ++l)
    if (l != lb) out.leg_node[bmap[l]] = b.leg_node[l] + shift;
  return out;
}

OperadElement lie_reduce(const TrivTree& t) {
  return words_to_combs(expand_rooted(t, 0), t.legs);
}

}  // namespace

// ---------------------------------------------------------------------------
// LieTree (public rooted-tree presentation)
// ---------------------------------------------------------------------------

std::shared_ptr<const LieTree> LieTree::make_leaf(int label) {
  auto t = std::make_shared<LieTree>();
  t->leaf = label;
  return t;
}

std::shared_ptr<const LieTree> LieTree::make_node(std::shared_ptr<const LieTree> l,
                                                  std::shared_ptr<const LieTree> r) {
  auto t = std::make_shared<LieTree>();
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

std::string LieTree::to_string() const {
  if (leaf >= 0) return std::to_string(leaf);
  return "[" + left->to_string() + "," + right->to_string() + "]";
}

namespace {

std::shared_ptr<const LieTree> parse_lie_tree(const std::string& s, size_t& pos) {
  if (pos >= s.size()) throw std::invalid_argument("bad lie tree: " + s);
  if (s[pos] == '[') {
    ++pos;
    auto l = parse_lie_tree(s, pos);
    if (pos >= s.size() || s[pos] != ',') throw std::invalid_argument("bad lie tree: " + s);
    ++pos;
    auto r = parse_lie_tree(s, pos);
    if (pos >= s.size() || s[pos] != ']') throw std::invalid_argument("bad lie tree: " + s);
    ++pos;
    return LieTree::make_node(std::move(l), std::move(r));
  }
  size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw std::invalid_argument("bad lie tree: " + s);
  return LieTree::make_leaf(std::stoi(s.substr(start, pos - start)));
}

WordMap expand_lie_tree(const LieTree& t) {
  if (t.leaf >= 0) {
    WordMap w;
    w[{t.leaf}] = 1;
    return w;
  }
  return word_bracket(expand_lie_tree(*t.left), expand_lie_tree(*t.right));
}

int lie_tree_leaf_count(const LieTree& t) {
  if (t.leaf >= 0) return 1;
  return lie_tree_leaf_count(*t.left) + lie_tree_leaf_count(*t.right);
}

}  // namespace

std::shared_ptr<const LieTree> lie_tree_parse(const std::string& s) {
  size_t pos = 0;
  auto t = parse_lie_tree(s, pos);
  if (pos != s.size()) throw std::invalid_argument("bad lie tree: " + s);
  return t;
}

OperadElement lie_normalize(
    const std::vector<std::pair<std::shared_ptr<const LieTree>, Rat>>& trees) {
  OperadElement out;
  for (const auto& [tree, coeff] : trees) {
    if (coeff == 0) continue;
    int s = lie_tree_leaf_count(*tree) + 1;
    WordMap words = expand_lie_tree(*tree);
    OperadElement part = words_to_combs(words, s);
    for (auto& [b, c] : part) c *= coeff;
    operad_add(out, part);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition and symmetric action
// ---------------------------------------------------------------------------

namespace {

OperadElement compose_basis(const OperadBasisElement& a, int out_slot,
                            const OperadBasisElement& b, int in_slot) {
  if (a.op != b.op) throw std::invalid_argument("compose: mixed operads");
  if (out_slot < 0 || out_slot >= a.slots || in_slot < 0 || in_slot >= b.slots)
    throw std::out_of_range("compose: slot out of range");
  const int s = a.slots + b.slots - 2;
  check_arity(s);

  if (a.op == OperadId::Comm) return operad_single({a.op, s, {}});

  std::vector<int> amap(a.slots, -1), bmap(b.slots, -1);
  int next = 0;
  for (int l = 0; l < a.slots; ++l)
    if (l != out_slot) amap[l] = next++;
  for (int l = 0; l < b.slots; ++l)
    if (l != in_slot) bmap[l] = next++;

  if (a.op == OperadId::Assoc) {
    // Splice b's cyclic order (read from after in_slot around to before it)
    // into a's order at out_slot.
    std::vector<int> merged;
    merged.reserve(s);
    auto pos_in_b = std::find(b.shape.begin(), b.shape.end(), in_slot) - b.shape.begin();
    for (int x : a.shape) {
      if (x != out_slot) {
        merged.push_back(amap[x]);
        continue;
      }
      for (int i = 1; i < b.slots; ++i)
        merged.push_back(bmap[b.shape[(pos_in_b + i) % b.slots]]);
    }
    // Canonical rotation starting at slot 0.
    auto zero = std::find(merged.begin(), merged.end(), 0);
    std::rotate(merged.begin(), zero, merged.end());
    return operad_single({a.op, s, std::move(merged)});
  }

  TrivTree ta = triv_from_comb(a);
  TrivTree tb = triv_from_comb(b);
  return lie_reduce(triv_graft(ta, out_slot, tb, in_slot));
}

OperadElement symmetric_action_basis(const std::vector<int>& perm, const OperadBasisElement& b) {
  if (static_cast<int>(perm.size()) != b.slots)
    throw std::invalid_argument("symmetric_action: permutation size mismatch");
  {
    std::vector<int> seen(b.slots, 0);
    for (int x : perm) {
      if (x < 0 || x >= b.slots || seen[x]++)
        throw std::invalid_argument("symmetric_action: not a permutation");
    }
  }
  if (b.op == OperadId::Comm) return operad_single(b);
  if (b.op == OperadId::Assoc) {
    std::vector<int> shape(b.slots);
    for (int i = 0; i < b.slots; ++i) shape[i] = perm[b.shape[i]];
    auto zero = std::find(shape.begin(), shape.end(), 0);
    std::rotate(shape.begin(), zero, shape.end());
    return operad_single({b.op, b.slots, std::move(shape)});
  }
  return lie_reduce(triv_relabel(triv_from_comb(b), perm));
}

}  // namespace

OperadElement operad_compose(const OperadBasisElement& a, int out_slot,
                             const OperadBasisElement& b, int in_slot) {
  using Key = std::tuple<OperadBasisElement, int, OperadBasisElement, int>;
  static std::map<Key, OperadElement> cache;
  Key key{a, out_slot, b, in_slot};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compose_basis(a, out_slot, b, in_slot)).first;
  return it->second;
}

OperadElement operad_compose(const OperadElement& a, int out_slot, const OperadElement& b,
                             int in_slot) {
  OperadElement out;
  for (const auto& [ba, ca] : a)
    for (const auto& [bb, cb] : b) operad_add(out, operad_compose(ba, out_slot, bb, in_slot), ca * cb);
  return out;
}

OperadElement operad_symmetric_action(const std::vector<int>& perm, const OperadBasisElement& b) {
  using Key = std::pair<std::vector<int>, OperadBasisElement>;
  static std::map<Key, OperadElement> cache;
  Key key{perm, b};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, symmetric_action_basis(perm, b)).first;
  return it->second;
}

OperadElement operad_symmetric_action(const std::vector<int>& perm, const OperadElement& e) {
  OperadElement out;
  for (const auto& [b, c] : e) operad_add(out, operad_symmetric_action(perm, b), c);
  return out;
}

OperadBasisElement operad_element_from_string(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad operad element: " + s);
  OperadId op = operad_from_name(s.substr(0, colon));
  std::string body = s.substr(colon + 1);
  if (op == OperadId::Comm) {
    return {op, std::stoi(body), {}};
  }
  if (op == OperadId::Assoc) {
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
      throw std::invalid_argument("bad operad element: " + s);
    std::istringstream is(body.substr(1, body.size() - 2));
    std::vector<int> shape;
    int x;
    while (is >> x) shape.push_back(x);
    auto zero = std::find(shape.begin(), shape.end(), 0);
    if (zero == shape.end()) throw std::invalid_argument("bad operad element: " + s);
    std::rotate(shape.begin(), zero, shape.end());
    return {op, static_cast<int>(shape.size()), std::move(shape)};
  }
  // Lie: parse the bracket word; must already be a comb to name a basis
  // element, otherwise callers should go through lie_normalize.
  auto tree = lie_tree_parse(body);
  int arity = lie_tree_leaf_count(*tree) + 1;
  std::vector<int> shape;
  const LieTree* cur = tree.get();
  while (cur->leaf < 0) {
    if (cur->right->leaf < 0) throw std::invalid_argument("not a comb: " + s);
    shape.push_back(cur->right->leaf);
    cur = cur->left.get();
  }
  shape.push_back(cur->leaf);
  std::reverse(shape.begin(), shape.end());
  OperadBasisElement b{op, arity, std::move(shape)};
  operad_basis_index(b);  // validates
  return b;
}

}  // namespace hgc
