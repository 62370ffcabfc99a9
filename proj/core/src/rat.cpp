#include "mforge/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace mforge {

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& text) {
  const auto bad = [&] {
    return std::invalid_argument("bad rational '" + text + "'");
  };
  size_t i = 0;
  const size_t n = text.size();
  auto digits = [&] {
    size_t start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return i > start;
  };
  size_t num_start = 0;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '+') num_start = 1;
    ++i;
  }
  if (!digits()) throw bad();
  if (i < n && text[i] == '/') {
    ++i;
    if (!digits()) throw bad();
  }
  if (i != n) throw bad();

  Rat r;
  if (r.set_str(text.substr(num_start), 10) != 0) throw bad();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
    return Rat(0);
  }
  Rat b = base;
  unsigned long k;
  if (e < 0) {
    b = Rat(1) / b;
    k = static_cast<unsigned long>(-(e + 1)) + 1;
  } else {
    k = static_cast<unsigned long>(e);
  }
  Rat acc(1);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

}  // namespace mforge
