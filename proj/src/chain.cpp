#include "hgc/chain.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hgc {

// ---------------------------------------------------------------------------
// OperadColors
// ---------------------------------------------------------------------------

int OperadColors::basis_size(int valence) const { return operad_dim(op_, valence); }

LinComb OperadColors::act(int valence, const std::vector<int>& perm, int color) const {
  auto key = std::make_tuple(valence, perm, color);
  auto it = act_cache_.find(key);
  if (it != act_cache_.end()) return it->second;
  const auto& basis = operad_basis(op_, valence);
  OperadElement img = operad_symmetric_action(perm, basis[color]);
  LinComb out;
  for (const auto& [b, c] : img) out.emplace_back(operad_basis_index(b), c);
  act_cache_.emplace(key, out);
  return out;
}

LinComb OperadColors::compose(int vt, int ct, int st, int vh, int ch, int sh) const {
  auto key = std::make_tuple(vt, ct, st, vh, ch, sh);
  auto it = compose_cache_.find(key);
  if (it != compose_cache_.end()) return it->second;
  const auto& bt = operad_basis(op_, vt);
  const auto& bh = operad_basis(op_, vh);
  // The tail color feeds into the head color: tail slot is the output.
  OperadElement img = operad_compose(bt[ct], st, bh[ch], sh);
  LinComb out;
  for (const auto& [b, c] : img) out.emplace_back(operad_basis_index(b), c);
  compose_cache_.emplace(key, out);
  return out;
}

std::string OperadColors::color_name(int valence, int color) const {
  return operad_basis(op_, valence)[color].to_string();
}

// ---------------------------------------------------------------------------
// AlgebraColors
// ---------------------------------------------------------------------------

int AlgebraColors::basis_size(int valence) const {
  if (valence != 2) return 0;
  return A_->dim();
}

LinComb AlgebraColors::act(int valence, const std::vector<int>& perm, int color) const {
  if (valence != 2) throw std::invalid_argument("algebra colors need bivalent vertices");
  if (perm[0] == 0) return {{color, Rat(1)}};
  return A_->sigma(color);
}

LinComb AlgebraColors::compose(int vt, int ct, int st, int vh, int ch, int sh) const {
  if (vt != 2 || vh != 2) throw std::invalid_argument("algebra colors need bivalent vertices");
  // Slots 0/1 are the two legs of the two-slot class; gluing the tail's slot
  // st to the head's slot sh. Products with a leg-0 or leg-1 mismatch insert
  // the involution so that the merged legs read (tail survivor, head
  // survivor) in order.
  auto mul = [&](const LinComb& x, const LinComb& y) {
    LinComb out;
    for (const auto& [i, c] : x)
      for (const auto& [j, d] : y)
        for (const auto& [k, e] : A_->product(i, j)) {
          bool found = false;
          for (auto& [kk, vv] : out)
            if (kk == k) {
              vv += c * d * e;
              found = true;
            }
          if (!found) out.emplace_back(k, c * d * e);
        }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
              out.end());
    return out;
  };
  auto bar = [&](const LinComb& x) {
    LinComb out;
    for (const auto& [i, c] : x)
      for (const auto& [j, d] : A_->sigma(i)) {
        bool found = false;
        for (auto& [kk, vv] : out)
          if (kk == j) {
            vv += c * d;
            found = true;
          }
        if (!found) out.emplace_back(j, c * d);
      }
    return out;
  };
  LinComb a{{ct, Rat(1)}}, b{{ch, Rat(1)}};
  if (st == 1 && sh == 0) return mul(a, b);
  if (st == 0 && sh == 1) return bar(mul(b, a));
  if (st == 0 && sh == 0) return mul(bar(a), b);
  return mul(a, bar(b));  // st == 1 && sh == 1
}

std::string AlgebraColors::color_name(int valence, int color) const {
  (void)valence;
  return A_->name[color];
}

std::vector<int> AlgebraColors::color_weight(int valence, int color) const {
  (void)valence;
  return A_->weight[color];
}

int AlgebraColors::color_grading(int valence, int color) const {
  (void)valence;
  return A_->grading[color];
}

int AlgebraColors::relabel_color(int valence, int color, const std::vector<int>& perm) const {
  (void)valence;
  return A_->relabel(color, perm);
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

std::string GenKey::to_string(const ColorSystem& cs) const {
  std::ostringstream os;
  os << structure->key << " @";
  const auto& g = structure->graph;
  for (int v = 0; v < g.n_vertices(); ++v) os << " " << cs.color_name(g.val[v], colors[v]);
  return os.str();
}

void chain_add(Chain& dst, const Chain& src, const Rat& c) {
  if (c == 0) return;
  for (const auto& [k, v] : src) {
    auto it = dst.find(k);
    if (it == dst.end()) {
      Rat nv = c * v;
      if (nv != 0) dst.emplace(k, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

bool chain_is_zero(const Chain& c) { return c.empty(); }

namespace {

// Expands the product over vertices of per-vertex linear combinations.
void expand_product(const std::vector<LinComb>& factors, std::vector<int>& cur, size_t pos,
                    const Rat& coeff, const std::function<void(const std::vector<int>&, const Rat&)>& emit) {
  if (coeff == 0) return;
  if (pos == factors.size()) {
    emit(cur, coeff);
    return;
  }
  for (const auto& [color, c] : factors[pos]) {
    cur[pos] = color;
    expand_product(factors, cur, pos + 1, coeff * c, emit);
  }
}

}  // namespace

void ChainOps::add_canonical(Chain& out, const std::shared_ptr<const CanonInfo>& info,
                             const std::vector<int>& colors, const Rat& coeff) const {
  const RigidGraph& g = info->graph;
  const int k = g.n_vertices();
  const Rat scale = coeff / static_cast<long>(info->auts.size());
  for (const auto& a : info->auts) {
    // sigma moves the color at v to vertex a.vperm[v], transformed by the
    // slot relabeling.
    std::vector<LinComb> factors(k);
    for (int v = 0; v < k; ++v) factors[a.vperm[v]] = cs_->act(g.val[v], a.slot[v], colors[v]);
    std::vector<int> cur(k);
    expand_product(factors, cur, 0, scale * a.sign, [&](const std::vector<int>& cv, const Rat& c) {
      GenKey key{info, cv};
      auto it = out.find(key);
      if (it == out.end()) {
        if (c != 0) out.emplace(std::move(key), c);
      } else {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    });
  }
}

void ChainOps::add_graph(Chain& out, const RigidGraph& g, const std::vector<int>& colors,
                         const Rat& coeff) const {
  if (coeff == 0) return;
  if (static_cast<int>(colors.size()) != g.n_vertices())
    throw std::invalid_argument("add_graph: one color per vertex required");
  CanonResult cr = canonicalize_structure(g);
  const int k = g.n_vertices();
  std::vector<LinComb> factors(k);
  for (int v = 0; v < k; ++v) factors[cr.vperm[v]] = cs_->act(g.val[v], cr.slot[v], colors[v]);
  std::vector<int> cur(k);
  expand_product(factors, cur, 0, coeff * cr.sign, [&](const std::vector<int>& cv, const Rat& c) {
    add_canonical(out, cr.info, cv, c);
  });
}

Chain ChainOps::boundary_generator(const GenKey& gen) const {
  Chain out;
  const RigidGraph& g = gen.structure->graph;
  for (int e = 0; e < g.n_edges(); ++e) {
    if (g.is_loop(e)) continue;
    Contraction ct = contract_edge_structure(g, e);
    const auto [t, h] = g.edges[e];
    LinComb merged = cs_->compose(g.val[t.v], gen.colors[t.v], t.s, g.val[h.v],
                                  gen.colors[h.v], h.s);
    for (const auto& [mc, c] : merged) {
      std::vector<int> colors(ct.graph.n_vertices());
      colors[0] = mc;
      for (int v = 0; v < g.n_vertices(); ++v)
        if (v != t.v && v != h.v) colors[ct.vmap[v]] = gen.colors[v];
      add_graph(out, ct.graph, colors, c * ct.sign);
    }
  }
  return out;
}

Chain ChainOps::boundary(const Chain& c) const {
  Chain out;
  for (const auto& [gen, coeff] : c) chain_add(out, boundary_generator(gen), coeff);
  return out;
}

Chain ChainOps::relabel(const Chain& c, const std::vector<int>& label_perm) const {
  Chain out;
  for (const auto& [gen, coeff] : c) {
    RigidGraph g = gen.structure->graph;
    for (auto& [he, lab] : g.hairs)
      if (!is_numbered(lab)) lab = label_perm[lab];
    std::vector<int> colors(gen.colors.size());
    for (size_t v = 0; v < colors.size(); ++v)
      colors[v] = cs_->relabel_color(g.val[v], gen.colors[v], label_perm);
    add_graph(out, g, colors, coeff);
  }
  return out;
}

std::vector<int> ChainOps::weight(const GenKey& gen) const {
  std::vector<int> w;
  const RigidGraph& g = gen.structure->graph;
  for (const auto& [he, lab] : g.hairs)
    if (!is_numbered(lab)) w.push_back(lab);
  for (int v = 0; v < g.n_vertices(); ++v) {
    auto cw = cs_->color_weight(g.val[v], gen.colors[v]);
    w.insert(w.end(), cw.begin(), cw.end());
  }
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace hgc
