#include "hgc/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace hgc {

namespace {

void lin_add(LinComb& dst, int i, const Rat& c) {
  for (auto& [j, v] : dst)
    if (j == i) {
      v += c;
      if (v == 0) dst.erase(std::find_if(dst.begin(), dst.end(),
                                         [&](const auto& p) { return p.first == i; }));
      return;
    }
  if (c != 0) dst.emplace_back(i, c);
}

LinComb lin_apply(const InvolutiveAlgebra& A, const LinComb& x,
                  const std::function<LinComb(int)>& f) {
  LinComb out;
  for (const auto& [i, c] : x) {
    for (const auto& [j, d] : f(i)) lin_add(out, j, c * d);
  }
  (void)A;
  return out;
}

}  // namespace

std::vector<int> InvolutiveAlgebra::elements_of_grading(int g) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (grading[i] == g) out.push_back(i);
  return out;
}

LinComb InvolutiveAlgebra::product(int i, int j) const {
  auto it = mult.find({i, j});
  return it == mult.end() ? LinComb{} : it->second;
}

int InvolutiveAlgebra::relabel(int i, const std::vector<int>& label_perm) const {
  if (!relabel_fn) throw std::logic_error("relabel: not available for this algebra");
  return relabel_fn(i, label_perm);
}

void InvolutiveAlgebra::validate() const {
  // Multiplication adds gradings; involution preserves them.
  for (const auto& [ij, prod] : mult) {
    int g = grading[ij.first] + grading[ij.second];
    for (const auto& [k, c] : prod)
      if (grading[k] != g) throw std::logic_error("algebra: grading not additive");
  }
  for (int i = 0; i < dim(); ++i)
    for (const auto& [j, c] : involution[i])
      if (grading[j] != grading[i]) throw std::logic_error("algebra: involution grades");

  auto mul = [&](const LinComb& x, const LinComb& y) {
    LinComb out;
    for (const auto& [i, c] : x)
      for (const auto& [j, d] : y)
        for (const auto& [k, e] : product(i, j)) lin_add(out, k, c * d * e);
    return out;
  };
  auto inv = [&](const LinComb& x) {
    return lin_apply(*this, x, [&](int i) { return involution[i]; });
  };
  auto single = [&](int i) { return LinComb{{i, Rat(1)}}; };

  for (int i = 0; i < dim(); ++i) {
    // sigma^2 = id
    LinComb twice = inv(inv(single(i)));
    if (!(twice.size() == 1 && twice[0].first == i && twice[0].second == 1))
      throw std::logic_error("algebra: involution not of order <= 2");
    for (int j = 0; j < dim(); ++j) {
      if (grading[i] + grading[j] > max_grading) continue;
      // sigma(ab) = sigma(b) sigma(a)
      LinComb lhs = inv(mul(single(i), single(j)));
      LinComb rhs = mul(inv(single(j)), inv(single(i)));
      auto norm = [](LinComb x) {
        std::sort(x.begin(), x.end());
        return x;
      };
      if (norm(lhs) != norm(rhs)) throw std::logic_error("algebra: not an anti-automorphism");
      for (int k = 0; k < dim(); ++k) {
        if (grading[i] + grading[j] + grading[k] > max_grading) continue;
        LinComb a = mul(mul(single(i), single(j)), single(k));
        LinComb b = mul(single(i), mul(single(j), single(k)));
        if (norm(a) != norm(b)) throw std::logic_error("algebra: not associative");
      }
    }
    if (unital) {
      LinComb l = mul(single(0), single(i)), r = mul(single(i), single(0));
      auto want = LinComb{{i, Rat(1)}};
      auto norm = [](LinComb x) {
        std::sort(x.begin(), x.end());
        return x;
      };
      if (norm(l) != want || norm(r) != want) throw std::logic_error("algebra: unit fails");
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string weight_name(const SymplecticSpace& V, const std::vector<int>& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << label_name(V, w[i]);
  return os.str();
}

}  // namespace

InvolutiveAlgebra algebra_comm(const SymplecticSpace& V) {
  InvolutiveAlgebra A;
  A.space = V;
  A.max_grading = 1;
  for (int x = 0; x < V.dim(); ++x) {
    A.grading.push_back(1);
    A.weight.push_back({x});
    A.name.push_back(label_name(V, x));
    A.involution.push_back({{x, Rat(1)}});
  }
  // all products zero
  A.relabel_fn = [](int i, const std::vector<int>& perm) { return perm[i]; };
  return A;
}

InvolutiveAlgebra algebra_assoc(const SymplecticSpace& V) {
  InvolutiveAlgebra A;
  A.space = V;
  A.max_grading = 2;
  const int n2 = V.dim();
  for (int x = 0; x < n2; ++x) {
    A.grading.push_back(1);
    A.weight.push_back({x});
    A.name.push_back("a(" + label_name(V, x) + ")");
  }
  for (int x = 0; x < n2; ++x) {
    A.grading.push_back(1);
    A.weight.push_back({x});
    A.name.push_back("b(" + label_name(V, x) + ")");
  }
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      A.grading.push_back(2);
      std::vector<int> w{x, y};
      std::sort(w.begin(), w.end());
      A.weight.push_back(w);
      A.name.push_back("c(" + label_name(V, x) + "," + label_name(V, y) + ")");
    }
  auto a_id = [&](int x) { return x; };
  auto b_id = [&](int x) { return n2 + x; };
  auto c_id = [&](int x, int y) { return 2 * n2 + x * n2 + y; };
  // a(x) b(y) = b(y) a(x) = c(x, y): the a-label rides in the first factor.
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      A.mult[{a_id(x), b_id(y)}] = {{c_id(x, y), Rat(1)}};
      A.mult[{b_id(y), a_id(x)}] = {{c_id(x, y), Rat(1)}};
    }
  // involution: a <-> b, c transposes.
  A.involution.resize(A.dim());
  for (int x = 0; x < n2; ++x) {
    A.involution[a_id(x)] = {{b_id(x), Rat(1)}};
    A.involution[b_id(x)] = {{a_id(x), Rat(1)}};
  }
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) A.involution[c_id(x, y)] = {{c_id(y, x), Rat(1)}};
  A.relabel_fn = [n2](int i, const std::vector<int>& perm) {
    if (i < n2) return perm[i];
    if (i < 2 * n2) return n2 + perm[i - n2];
    int x = (i - 2 * n2) / n2, y = (i - 2 * n2) % n2;
    return 2 * n2 + perm[x] * n2 + perm[y];
  };
  return A;
}

namespace {

InvolutiveAlgebra algebra_lie_impl(const SymplecticSpace& V, int max_grading, bool with_unit) {
  InvolutiveAlgebra A;
  A.space = V;
  A.max_grading = max_grading;
  A.unital = with_unit;
  auto expo = std::make_shared<std::vector<std::vector<int>>>();
  auto index = std::make_shared<std::map<std::vector<int>, int>>();
  // Enumerate exponent vectors by total degree (unit first when present).
  std::function<void(int, int, std::vector<int>&)> gen = [&](int pos, int left,
                                                             std::vector<int>& e) {
    if (pos == V.dim()) {
      if (left == 0) {
        index->emplace(e, A.dim());
        expo->push_back(e);
        int g = 0;
        std::vector<int> w;
        for (int x = 0; x < V.dim(); ++x)
          for (int k = 0; k < e[x]; ++k) {
            ++g;
            w.push_back(x);
          }
        A.grading.push_back(g);
        A.weight.push_back(w);
        A.name.push_back(g == 0 ? "1" : weight_name(V, w));
        A.involution.push_back({});
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      gen(pos + 1, left - k, e);
      e[pos] = 0;
    }
  };
  for (int d = with_unit ? 0 : 1; d <= max_grading; ++d) {
    std::vector<int> e(V.dim(), 0);
    gen(0, d, e);
  }
  // Products: add exponent vectors, truncating above max_grading.
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      if (A.grading[i] + A.grading[j] > max_grading) continue;
      std::vector<int> e = (*expo)[i];
      for (size_t x = 0; x < e.size(); ++x) e[x] += (*expo)[j][x];
      A.mult[{i, j}] = {{index->at(e), Rat(1)}};
    }
  // Involution: (-1)^grading.
  for (int i = 0; i < A.dim(); ++i)
    A.involution[i] = {{i, A.grading[i] % 2 == 0 ? Rat(1) : Rat(-1)}};
  A.relabel_fn = [expo, index](int i, const std::vector<int>& perm) {
    std::vector<int> e((*expo)[i].size(), 0);
    for (size_t x = 0; x < e.size(); ++x) e[perm[x]] = (*expo)[i][x];
    return index->at(e);
  };
  return A;
}

}  // namespace

InvolutiveAlgebra algebra_lie(const SymplecticSpace& V, int max_grading) {
  return algebra_lie_impl(V, max_grading, false);
}

InvolutiveAlgebra algebra_lie_unital(const SymplecticSpace& V, int max_grading) {
  return algebra_lie_impl(V, max_grading, true);
}

InvolutiveAlgebra unitalize(const InvolutiveAlgebra& I) {
  InvolutiveAlgebra A;
  A.space = I.space;
  A.unital = true;
  A.max_grading = I.max_grading;
  A.grading.push_back(0);
  A.weight.push_back({});
  A.name.push_back("1");
  A.involution.push_back({{0, Rat(1)}});
  for (int i = 0; i < I.dim(); ++i) {
    A.grading.push_back(I.grading[i]);
    A.weight.push_back(I.weight[i]);
    A.name.push_back(I.name[i]);
    LinComb s;
    for (const auto& [j, c] : I.involution[i]) s.emplace_back(j + 1, c);
    A.involution.push_back(s);
  }
  for (int i = 0; i < A.dim(); ++i) {
    if (i == 0) {
      for (int j = 0; j < A.dim(); ++j) {
        A.mult[{0, j}] = {{j, Rat(1)}};
        A.mult[{j, 0}] = {{j, Rat(1)}};
      }
      continue;
    }
    for (int j = 1; j < A.dim(); ++j) {
      LinComb p = I.product(i - 1, j - 1);
      if (p.empty()) continue;
      LinComb q;
      for (const auto& [k, c] : p) q.emplace_back(k + 1, c);
      A.mult[{i, j}] = q;
    }
  }
  if (I.relabel_fn) {
    auto inner = I.relabel_fn;
    A.relabel_fn = [inner](int i, const std::vector<int>& perm) {
      return i == 0 ? 0 : inner(i - 1, perm) + 1;
    };
  }
  return A;
}

}  // namespace hgc
