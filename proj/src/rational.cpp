#include "typeident/rational.hpp"

#include <stdexcept>

namespace typeident {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

double rational_to_double(const Rational& q) { return q.get_d(); }

std::string vector_to_string(const RatVector& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rational_to_string(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace typeident
