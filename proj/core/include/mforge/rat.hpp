#pragma once

#include <gmpxx.h>

#include <string>

namespace mforge {

// Exact rational scalar; nothing in the library ever rounds.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Canonical rendering: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_str(const Rat& r);

// Accepts an optional sign, digits, and an optional "/digits" tail.
// Throws std::invalid_argument on anything else (including zero denominators).
Rat parse_rat(const std::string& text);

// base^e for integer e; negative e requires base != 0.
Rat rat_pow(const Rat& base, long e);

}  // namespace mforge
