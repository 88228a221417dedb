#pragma once

#include <string>
#include <vector>

namespace secretary {

/// p[j] is the probability of winning place j + 1.
using PlaceVector = std::vector<double>;

inline constexpr double kLexTolerance = 1e-12;

enum class LexOrder { Less, Equal, Greater };

/// Lexicographic comparison; coordinates within `tolerance` count as equal.
/// Throws InvalidParameters on length mismatch.
LexOrder lex_compare(const PlaceVector& p, const PlaceVector& q, double tolerance = kLexTolerance);

double sum(const PlaceVector& p);
std::string to_string(const PlaceVector& p);

}  // namespace secretary
