#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hgc {

// Exact rational scalar. mpq_class keeps values in lowest terms with positive
// denominator as long as every fraction is canonicalized on construction;
// frac() and rat_parse() below are the only sanctioned ways to build one from
// a numerator/denominator pair.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat frac(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Accepts "p" or "p/q".
inline Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline const Int& numerator(const Rat& r) { return r.get_num(); }
inline const Int& denominator(const Rat& r) { return r.get_den(); }

}  // namespace hgc
