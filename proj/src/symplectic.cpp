#include "hgc/symplectic.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hgc {

std::string label_name(const SymplecticSpace& V, int label) {
  if (label < 0 || label >= V.dim()) throw std::out_of_range("unknown basis label");
  if (label < V.n) return "p" + std::to_string(label + 1);
  return "q" + std::to_string(label - V.n + 1);
}

int label_from_name(const SymplecticSpace& V, const std::string& s) {
  if (s.size() < 2 || (s[0] != 'p' && s[0] != 'q'))
    throw std::invalid_argument("unknown basis label: " + s);
  int i = std::stoi(s.substr(1));
  if (i < 1 || i > V.n) throw std::invalid_argument("unknown basis label: " + s);
  return (s[0] == 'p') ? i - 1 : V.n + i - 1;
}

Rat pairing(const SymplecticSpace& V, int x, int y) {
  if (x < 0 || x >= V.dim() || y < 0 || y >= V.dim())
    throw std::out_of_range("unknown basis label");
  if (y == x + V.n) return Rat(1);
  if (x == y + V.n) return Rat(-1);
  return Rat(0);
}

std::pair<int, int> star(const SymplecticSpace& V, int x) {
  if (x < 0 || x >= V.dim()) throw std::out_of_range("unknown basis label");
  if (x < V.n) return {x + V.n, 1};
  return {x - V.n, -1};
}

void Tensor::add(const std::vector<int>& key, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Tensor tensor_unit(const SymplecticSpace& V) {
  Tensor t{V, 0, {}};
  t.terms[{}] = Rat(1);
  return t;
}

Tensor tensor_basis(const SymplecticSpace& V, const std::vector<int>& labels) {
  for (int l : labels)
    if (l < 0 || l >= V.dim()) throw std::out_of_range("unknown basis label");
  Tensor t{V, static_cast<int>(labels.size()), {}};
  t.terms[labels] = Rat(1);
  return t;
}

Tensor contract(const Tensor& t, int i, int j) {
  if (!(1 <= i && i < j && j <= t.arity))
    throw std::out_of_range("contract: position out of range");
  Tensor out{t.space, t.arity - 2, {}};
  for (const auto& [key, c] : t.terms) {
    Rat p = pairing(t.space, key[i - 1], key[j - 1]);
    if (p == 0) continue;
    std::vector<int> rest;
    rest.reserve(t.arity - 2);
    for (int k = 0; k < t.arity; ++k)
      if (k != i - 1 && k != j - 1) rest.push_back(key[k]);
    out.add(rest, c * p);
  }
  return out;
}

Tensor insert_omega(const Tensor& t, int i, int j) {
  const int l = t.arity + 2;
  if (!(1 <= i && i < j && j <= l))
    throw std::out_of_range("insert: position out of range");
  Tensor out{t.space, l, {}};
  const Rat w = frac(1, t.space.dim());
  for (const auto& [key, c] : t.terms) {
    for (int x = 0; x < t.space.dim(); ++x) {
      auto [xs, sgn] = star(t.space, x);
      std::vector<int> nk(l);
      int src = 0;
      for (int k = 0; k < l; ++k) {
        if (k == i - 1) nk[k] = x;
        else if (k == j - 1) nk[k] = xs;
        else nk[k] = key[src++];
      }
      out.add(nk, c * w * sgn);
    }
  }
  return out;
}

namespace {

// Dense indexing of basis tuples of V^{otimes l}.
long tuple_rank(const SymplecticSpace& V, const std::vector<int>& key) {
  long r = 0;
  for (int x : key) r = r * V.dim() + x;
  return r;
}

std::vector<std::pair<int, int>> all_pairs(int l) {
  std::vector<std::pair<int, int>> ps;
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) ps.emplace_back(i, j);
  return ps;
}

// Stacked contraction image of a tensor, as one sparse vector.
SparseVec stacked_contractions(const Tensor& t) {
  const int l = t.arity;
  const auto ps = all_pairs(l);
  long block = 1;
  for (int k = 0; k < l - 2; ++k) block *= t.space.dim();
  SparseVec v;
  for (size_t pi = 0; pi < ps.size(); ++pi) {
    Tensor c = contract(t, ps[pi].first, ps[pi].second);
    for (const auto& [key, val] : c.terms) {
      long idx = static_cast<long>(pi) * block + tuple_rank(t.space, key);
      v[static_cast<int>(idx)] += val;
      if (v[static_cast<int>(idx)] == 0) v.erase(static_cast<int>(idx));
    }
  }
  return v;
}

// Psi_I for a set of pairwise disjoint pairs of final positions: every pair
// (i, j) receives (x, x*) summed over the basis with weight 1/2n, and the
// entries of t fill the remaining positions in order.
Tensor psi_multi(const Tensor& t, const std::vector<std::pair<int, int>>& pairs, int l) {
  const int r = static_cast<int>(pairs.size());
  if (t.arity + 2 * r != l) throw std::invalid_argument("psi_multi: arity mismatch");
  Tensor out{t.space, l, {}};
  Rat w = Rat(1);
  for (int k = 0; k < r; ++k) w /= t.space.dim();
  for (const auto& [key, c] : t.terms) {
    std::vector<int> choice(r, 0);
    while (true) {
      std::vector<int> nk(l, -1);
      int sgn = 1;
      for (int k = 0; k < r; ++k) {
        auto [xs, s] = star(t.space, choice[k]);
        nk[pairs[k].first - 1] = choice[k];
        nk[pairs[k].second - 1] = xs;
        sgn *= s;
      }
      int src = 0;
      for (int k = 0; k < l; ++k)
        if (nk[k] < 0) nk[k] = key[src++];
      out.add(nk, c * w * sgn);
      int k = r - 1;
      while (k >= 0 && choice[k] == t.space.dim() - 1) choice[k--] = 0;
      if (k < 0) break;
      ++choice[k];
    }
  }
  return out;
}

void iterate_tuples(const SymplecticSpace& V, int l,
                    const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> key(l, 0);
  while (true) {
    f(key);
    int k = l - 1;
    while (k >= 0 && key[k] == V.dim() - 1) key[k--] = 0;
    if (k < 0) return;
    ++key[k];
  }
}

// Solver data for one (n, l): echelon of the stacked-contraction images of
// the Psi_ij(u) spanning set, with combination tracking, plus the generators.
struct HarmonicSolver {
  std::vector<Tensor> gens;
  Echelon ech{true};
};

const HarmonicSolver& harmonic_solver(const SymplecticSpace& V, int l) {
  static std::map<std::pair<int, int>, HarmonicSolver> cache;
  auto key = std::make_pair(V.n, l);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  HarmonicSolver hs;
  for (auto [i, j] : all_pairs(l)) {
    iterate_tuples(V, l - 2, [&](const std::vector<int>& tup) {
      Tensor g = insert_omega(tensor_basis(V, tup), i, j);
      SparseVec img = stacked_contractions(g);
      // Generator indices must match the echelon's insert ids, so every
      // generator is kept even when its image is dependent.
      hs.ech.insert(img);
      hs.gens.push_back(std::move(g));
    });
  }
  return cache.emplace(key, std::move(hs)).first->second;
}

}  // namespace

Tensor harmonic_project(const Tensor& t, int max_arity) {
  if (t.arity > max_arity)
    throw std::invalid_argument("harmonic_project: arity bound exceeded");
  if (t.arity < 2) return t;
  const auto& hs = harmonic_solver(t.space, t.arity);
  SparseVec rhs = stacked_contractions(t);
  SparseVec combo;
  SparseVec res = hs.ech.reduce(rhs, &combo);
  if (!res.empty())
    throw std::logic_error("harmonic_project: decomposition failed (not in Psi-span)");
  Tensor out = t;
  for (const auto& [gi, c] : combo) {
    for (const auto& [key, val] : hs.gens[gi].terms) out.add(key, -c * val);
  }
  return out;
}

long harmonic_dim(const SymplecticSpace& V, int l) {
  if (l < 2) {
    long d = 1;
    for (int k = 0; k < l; ++k) d *= V.dim();
    return d;
  }
  const auto ps = all_pairs(l);
  long rows = 1;
  for (int k = 0; k < l - 2; ++k) rows *= V.dim();
  rows *= static_cast<long>(ps.size());
  long cols = 1;
  for (int k = 0; k < l; ++k) cols *= V.dim();
  SparseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  iterate_tuples(V, l, [&](const std::vector<int>& tup) {
    Tensor t = tensor_basis(V, tup);
    SparseVec img = stacked_contractions(t);
    long col = tuple_rank(V, tup);
    for (const auto& [r, v] : img) m.add(r, static_cast<int>(col), v);
  });
  return cols - rank(m);
}

long classical_summand_dim(const SymplecticSpace& V, int l, int r) {
  if (r == 0) return harmonic_dim(V, l);
  // Enumerate r-element sets of pairwise disjoint position pairs.
  std::vector<std::vector<std::pair<int, int>>> sets;
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int min_i) {
    if (static_cast<int>(cur.size()) == r) {
      sets.push_back(cur);
      return;
    }
    for (int i = min_i; i <= l; ++i) {
      bool used_i = false;
      for (auto& [a, b] : cur) used_i |= (a == i || b == i);
      if (used_i) continue;
      for (int j = i + 1; j <= l; ++j) {
        bool used_j = false;
        for (auto& [a, b] : cur) used_j |= (a == j || b == j);
        if (used_j) continue;
        cur.emplace_back(i, j);
        rec(i + 1);
        cur.pop_back();
      }
    }
  };
  rec(1);

  // Span of Psi_I applied to a basis of the harmonic part in arity l - 2r.
  const int inner = l - 2 * r;
  if (inner < 0) return 0;

  // Harmonic basis of V^<inner>: kernel vectors of the stacked contractions.
  std::vector<Tensor> harm;
  if (inner < 2) {
    iterate_tuples(V, inner, [&](const std::vector<int>& tup) {
      harm.push_back(tensor_basis(V, tup));
    });
  } else {
    long cols = 1;
    for (int k = 0; k < inner; ++k) cols *= V.dim();
    std::vector<std::vector<int>> tuples;
    iterate_tuples(V, inner, [&](const std::vector<int>& tup) { tuples.push_back(tup); });
    SparseMatrix m(0, 0);
    {
      const auto ps = all_pairs(inner);
      long rows = 1;
      for (int k = 0; k < inner - 2; ++k) rows *= V.dim();
      rows *= static_cast<long>(ps.size());
      m = SparseMatrix(static_cast<int>(rows), static_cast<int>(cols));
      for (auto& tup : tuples) {
        SparseVec img = stacked_contractions(tensor_basis(V, tup));
        long col = tuple_rank(V, tup);
        for (const auto& [rr, v] : img) m.add(rr, static_cast<int>(col), v);
      }
    }
    for (auto& k : kernel_basis(m)) {
      Tensor t{V, inner, {}};
      for (const auto& [ci, v] : k) t.add(tuples[ci], v);
      harm.push_back(std::move(t));
    }
  }

  Echelon ech;
  for (const auto& I : sets) {
    for (const auto& h : harm) {
      Tensor t = psi_multi(h, I, l);
      SparseVec v;
      for (const auto& [key, val] : t.terms) v[static_cast<int>(tuple_rank(V, key))] = val;
      ech.insert(v);
    }
  }
  return ech.rank();
}

}  // namespace hgc
