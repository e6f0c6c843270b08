#include <doctest.h>

#include <functional>
#include <random>

#include "hgc/symplectic.hpp"

using namespace hgc;

namespace {

Tensor random_tensor(std::mt19937& rng, const SymplecticSpace& V, int arity, int terms) {
  Tensor t{V, arity, {}};
  std::uniform_int_distribution<int> lab(0, V.dim() - 1), num(-3, 3);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> key(arity);
    for (auto& x : key) x = lab(rng);
    t.add(key, frac(num(rng), 1 + i % 2));
  }
  return t;
}

}  // namespace

TEST_CASE("pairing and star") {
  SymplecticSpace V{2};
  int p1 = 0, p2 = 1, q1 = 2, q2 = 3;
  CHECK(pairing(V, p1, q1) == Rat(1));
  CHECK(pairing(V, q1, p1) == Rat(-1));
  CHECK(pairing(V, p1, p2) == Rat(0));
  CHECK(pairing(V, p1, q2) == Rat(0));
  CHECK(pairing(V, q1, q2) == Rat(0));
  CHECK(star(V, p1) == std::make_pair(q1, 1));
  CHECK(star(V, q2) == std::make_pair(p2, -1));
  CHECK_THROWS_AS(pairing(V, 0, 4), std::out_of_range);
  CHECK(label_name(V, p2) == "p2");
  CHECK(label_from_name(V, "q1") == q1);
}

TEST_CASE("contract: displayed formula") {
  SymplecticSpace V{2};
  int p1 = 0, p2 = 1, q1 = 2;
  // Phi_12(p1 (x) q1 (x) p2) = <p1,q1> p2 = p2.
  Tensor t = tensor_basis(V, {p1, q1, p2});
  Tensor c = contract(t, 1, 2);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({p2}) == Rat(1));

  // Phi_12(p1 (x) p2 (x) q1) = 0.
  CHECK(contract(tensor_basis(V, {p1, p2, q1}), 1, 2).is_zero());

  // Phi_13(p1 (x) v (x) q1) = v.
  Tensor d = contract(tensor_basis(V, {p1, p2, q1}), 1, 3);
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms.at({p2}) == Rat(1));

  CHECK_THROWS_AS(contract(t, 2, 2), std::out_of_range);
  CHECK_THROWS_AS(contract(t, 1, 4), std::out_of_range);
}

TEST_CASE("insert: omega expansion, n=1") {
  SymplecticSpace V{1};
  int p1 = 0, q1 = 1;
  // Psi_12(v) = omega (x) v = (1/2)(p1 (x) q1 - q1 (x) p1) (x) v.
  Tensor t = insert_omega(tensor_basis(V, {p1}), 1, 2);
  CHECK(t.terms.size() == 2);
  CHECK(t.terms.at({p1, q1, p1}) == frac(1, 2));
  CHECK(t.terms.at({q1, p1, p1}) == frac(-1, 2));

  // Psi_13(v) = (1/2)(p1 (x) v (x) q1 - q1 (x) v (x) p1).
  Tensor u = insert_omega(tensor_basis(V, {p1}), 1, 3);
  CHECK(u.terms.at({p1, p1, q1}) == frac(1, 2));
  CHECK(u.terms.at({q1, p1, p1}) == frac(-1, 2));

  // Phi_12(Psi_12(v)) = v: <x, x*> = 1 for all 2n basis vectors.
  Tensor back = contract(t, 1, 2);
  REQUIRE(back.terms.size() == 1);
  CHECK(back.terms.at({p1}) == Rat(1));
}

TEST_CASE("harmonic projection") {
  SUBCASE("pi kills Psi images (Lemma about one red edge)") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 2; ++n) {
      SymplecticSpace V{n};
      for (int l = 2; l <= 4; ++l) {
        for (int trial = 0; trial < 4; ++trial) {
          Tensor u = random_tensor(rng, V, l - 2, 3);
          for (int i = 1; i <= l; ++i)
            for (int j = i + 1; j <= l; ++j) {
              Tensor h = harmonic_project(insert_omega(u, i, j));
              CHECK(h.is_zero());
            }
        }
      }
    }
  }
  SUBCASE("projection fixes harmonic tensors and is idempotent") {
    std::mt19937 rng(6);
    SymplecticSpace V{2};
    for (int l = 2; l <= 4; ++l) {
      Tensor t = random_tensor(rng, V, l, 4);
      Tensor h = harmonic_project(t);
      // h is in the kernel of every contraction.
      for (int i = 1; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j) CHECK(contract(h, i, j).is_zero());
      Tensor hh = harmonic_project(h);
      CHECK(hh.terms == h.terms);
    }
  }
  SUBCASE("harmonic_project(p1 (x) q1) at n=1 is p1 (x) q1 - omega") {
    SymplecticSpace V{1};
    int p1 = 0, q1 = 1;
    Tensor h = harmonic_project(tensor_basis(V, {p1, q1}));
    // p1 q1 - (1/2)(p1 q1 - q1 p1) = (1/2)(p1 q1 + q1 p1).
    CHECK(h.terms.at({p1, q1}) == frac(1, 2));
    CHECK(h.terms.at({q1, p1}) == frac(1, 2));
    CHECK(h.terms.size() == 2);
  }
  SUBCASE("Sym-equivariance") {
    std::mt19937 rng(7);
    SymplecticSpace V{2};
    for (int trial = 0; trial < 6; ++trial) {
      int l = 3;
      Tensor t = random_tensor(rng, V, l, 4);
      std::vector<int> perm{1, 2, 0};
      auto permute = [&](const Tensor& x) {
        Tensor out{x.space, x.arity, {}};
        for (const auto& [key, c] : x.terms) {
          std::vector<int> nk(key.size());
          for (size_t i = 0; i < key.size(); ++i) nk[perm[i]] = key[i];
          out.add(nk, c);
        }
        return out;
      };
      Tensor lhs = harmonic_project(permute(t));
      Tensor rhs = permute(harmonic_project(t));
      CHECK(lhs.terms == rhs.terms);
    }
  }
  SUBCASE("arity bound") {
    SymplecticSpace V{1};
    Tensor t{V, 7, {}};
    CHECK_THROWS_AS(harmonic_project(t), std::invalid_argument);
  }
}

TEST_CASE("harmonic dimensions") {
  // dim V^<2> = (2n)^2 - 1 for n = 1, 2, 3.
  for (int n = 1; n <= 3; ++n) {
    SymplecticSpace V{n};
    CHECK(harmonic_dim(V, 2) == 4L * n * n - 1);
  }
}

TEST_CASE("classical decomposition: summand dimensions add up (Weyl lemma)") {
  // For l <= 4 and n >= l the dimensions of V^<l>_{l-2r} sum to (2n)^l.
  for (int l = 2; l <= 4; ++l) {
    SymplecticSpace V{l};
    long total = 0;
    for (int r = 0; 2 * r <= l; ++r) total += classical_summand_dim(V, l, r);
    long full = 1;
    for (int k = 0; k < l; ++k) full *= V.dim();
    CHECK(total == full);
  }
  // Also at a smaller n where the summands are not independent in the naive
  // sense; the lemma still holds for n >= l.
  {
    SymplecticSpace V{3};
    long total = 0;
    for (int r = 0; 2 * r <= 3; ++r) total += classical_summand_dim(V, 3, r);
    CHECK(total == 216);
  }
}
