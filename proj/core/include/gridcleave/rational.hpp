#ifndef GRIDCLEAVE_RATIONAL_HPP
#define GRIDCLEAVE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace gridcleave {

// All supply/demand values, embedding coordinates and sweep keys are exact
// rationals. Nothing in the library ever rounds.
using Int = mpz_class;
using Rat = mpq_class;

// Renders "num/den", or just "num" when the denominator is 1.
std::string rat_to_string(const Rat& q);

// Accepts "num", "num/den" and signs; throws ParseError on anything else
// (including a zero denominator).
Rat rat_from_string(const std::string& text);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

} // namespace gridcleave

#endif
