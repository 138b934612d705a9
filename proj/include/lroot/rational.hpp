#pragma once

// Exact scalars. GMP's mpq_class keeps values canonical after every
// arithmetic operation.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace lroot {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string numerator_string(const BigRational& q) { return q.get_num().get_str(); }
inline std::string denominator_string(const BigRational& q) { return q.get_den().get_str(); }

/// "num/den", or just "num" for integers.
inline std::string to_string(const BigRational& q) { return q.get_str(); }

/// Sum by pairwise reduction; much cheaper than a running total when the
/// terms have many distinct denominators. Consumes its argument.
inline BigRational sum_pairwise(std::vector<BigRational> terms) {
  if (terms.empty()) return BigRational(0);
  while (terms.size() > 1) {
    std::size_t w = 0;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) terms[w++] = terms[i] + terms[i + 1];
    if (terms.size() % 2) terms[w++] = terms.back();
    terms.resize(w);
  }
  return terms.front();
}

}  // namespace lroot
