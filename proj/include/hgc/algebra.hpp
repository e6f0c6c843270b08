#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hgc/rational.hpp"
#include "hgc/symplectic.hpp"

namespace hgc {

using LinComb = std::vector<std::pair<int, Rat>>;

// Graded associative algebra with anti-involution, given by structure
// constants. Basis elements are indexed globally; each carries a grading
// (hair-degree) and a V-label multiset used for weight-restricted slices.
// The product of basis elements adds gradings; the involution preserves them.
struct InvolutiveAlgebra {
  SymplecticSpace space;
  bool unital = false;  // if true, element 0 is the unit in grading 0
  int max_grading = 0;

  std::vector<int> grading;                  // per basis element
  std::vector<std::vector<int>> weight;      // sorted V-label multiset per element
  std::vector<std::string> name;             // printable names
  std::map<std::pair<int, int>, LinComb> mult;  // (i, j) -> product (absent = 0)
  std::vector<LinComb> involution;           // sigma per basis element

  int dim() const { return static_cast<int>(grading.size()); }
  std::vector<int> elements_of_grading(int g) const;
  LinComb product(int i, int j) const;
  const LinComb& sigma(int i) const { return involution[i]; }

  // Relabels the V-content of a basis element by a permutation of basis
  // labels; all three paper algebras have monomial relabeling.
  std::function<int(int, const std::vector<int>&)> relabel_fn;
  int relabel(int i, const std::vector<int>& label_perm) const;

  // Checks associativity on all triples with total grading <= max_grading and
  // that the involution is an anti-automorphism of order <= 2.
  void validate() const;
};

// I Comm_V: one generator per basis vector of V in grading 1, zero
// multiplication, identity involution.
InvolutiveAlgebra algebra_comm(const SymplecticSpace& V);

// I Assoc_V = V (+) V (+) (V (x) V): the two V summands sit in grading 1, the
// V (x) V summand in grading 2. The product of an a-type and a b-type
// generator is the c-type generator with the a-label in the first tensor
// factor; all other products vanish. The involution swaps the two V summands
// and transposes V (x) V.
InvolutiveAlgebra algebra_assoc(const SymplecticSpace& V);

// I Lie_V: monomials of S(V) of degree 1..max_grading; the involution is
// (-1)^grading. algebra_lie_unital additionally includes the unit monomial.
InvolutiveAlgebra algebra_lie(const SymplecticSpace& V, int max_grading);
InvolutiveAlgebra algebra_lie_unital(const SymplecticSpace& V, int max_grading);

// k (+) I with (r,v)(s,w) = (rs, rw + sv + vw); the unit is (1,0).
InvolutiveAlgebra unitalize(const InvolutiveAlgebra& I);

}  // namespace hgc
