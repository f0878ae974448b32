#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace typeident {

// All verdict-relevant arithmetic is exact. Floating point is confined to
// Monte Carlo reporting (singular-value statistics, distance summaries).
using Rational = mpq_class;

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "3/4", "-3/4", "2", "0". Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& text);

// Canonical form "num/den", or just "num" when den == 1.
std::string rational_to_string(const Rational& q);

double rational_to_double(const Rational& q);

std::string vector_to_string(const RatVector& v);

}  // namespace typeident
