#pragma once

#include <map>
#include <string>
#include <vector>

#include "hgc/linalg.hpp"
#include "hgc/rational.hpp"

namespace hgc {

// V = k^{2n} with symplectic basis p_1..p_n, q_1..q_n. Basis labels are
// integers: 0..n-1 are p_1..p_n and n..2n-1 are q_1..q_n.
struct SymplecticSpace {
  int n = 1;
  int dim() const { return 2 * n; }
};

std::string label_name(const SymplecticSpace& V, int label);     // "p1".."qn"
int label_from_name(const SymplecticSpace& V, const std::string& s);

// <p_i, q_i> = 1, <q_i, p_i> = -1, all other basis pairings 0.
Rat pairing(const SymplecticSpace& V, int x, int y);

// The involution p_i* = q_i, q_i* = -p_i; returns (label, sign).
std::pair<int, int> star(const SymplecticSpace& V, int x);

// Element of V^{otimes arity} as a sparse combination of basis tuples.
struct Tensor {
  SymplecticSpace space;
  int arity = 0;
  std::map<std::vector<int>, Rat> terms;

  void add(const std::vector<int>& key, const Rat& c);
  bool is_zero() const { return terms.empty(); }
};

Tensor tensor_unit(const SymplecticSpace& V);  // arity 0, coefficient 1
Tensor tensor_basis(const SymplecticSpace& V, const std::vector<int>& labels);

// Phi_ij, 1-based positions, i < j <= arity.
Tensor contract(const Tensor& t, int i, int j);

// Psi_ij: inserts the symplectic element omega = (1/2n) sum_x x (x) x* so
// that the inserted factors land at positions i < j of the result
// (arity(t) + 2).
Tensor insert_omega(const Tensor& t, int i, int j);

// Projection onto the harmonic part V^<l> = intersection of ker Phi_ij, along
// the span of all Psi_ij images. Computed by solving the linear decomposition
// of the classical splitting of V^{otimes l}.
Tensor harmonic_project(const Tensor& t, int max_arity = 6);

// dim V^<l> (kernel of all contractions), by explicit kernel computation.
long harmonic_dim(const SymplecticSpace& V, int l);

// dim of the summand V^<l>_{l-2r} = span of Psi_I images of V^<l-2r> over
// r-element sets I of pairwise disjoint position pairs.
long classical_summand_dim(const SymplecticSpace& V, int l, int r);

}  // namespace hgc
