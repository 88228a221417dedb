#include "secretary/place_vector.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "secretary/types.hpp"

namespace secretary {

LexOrder lex_compare(const PlaceVector& p, const PlaceVector& q, double tolerance) {
  if (p.size() != q.size()) {
    throw InvalidParameters("lex_compare: length mismatch (" + std::to_string(p.size()) + " vs " +
                            std::to_string(q.size()) + ")");
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (std::abs(p[j] - q[j]) <= tolerance) continue;
    return p[j] < q[j] ? LexOrder::Less : LexOrder::Greater;
  }
  return LexOrder::Equal;
}

double sum(const PlaceVector& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

std::string to_string(const PlaceVector& p) {
  std::ostringstream out;
  out.precision(12);
  out << "(";
  for (std::size_t j = 0; j < p.size(); ++j) out << (j ? ", " : "") << p[j];
  out << ")";
  return out.str();
}

}  // namespace secretary
