#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mforge {

// Grading group B: the trivial group {0} or Z_p for a prime p. Degrees are
// canonical representatives 0..p-1 and double as ring elements of B.
enum class GradingKind { Trivial, Mod };

bool is_prime(int p);

struct GradingGroup {
  GradingKind kind = GradingKind::Trivial;
  int p = 2;  // modulus when kind == Mod

  int size() const { return kind == GradingKind::Trivial ? 1 : p; }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int b = 0; b < size(); ++b) out.push_back(b);
    return out;
  }
  int canon(int a) const {
    if (kind == GradingKind::Trivial) return 0;
    int r = a % p;
    return r < 0 ? r + p : r;
  }
  int add(int a, int b) const { return canon(a + b); }
  int neg(int a) const { return canon(-a); }
  int mul(int a, int b) const {
    return kind == GradingKind::Trivial ? 0 : canon(a * b);
  }
  // additive order of b: 1 for the identity, p otherwise
  int order(int b) const { return canon(b) == 0 ? 1 : p; }
  // epsilon(b) = (-1)^order(b); note epsilon(0) = -1, and for Z2 epsilon(1) = +1
  int epsilon(int b) const { return order(b) % 2 == 0 ? 1 : -1; }
  // sign s with xy = s * yx for homogeneous x, y of the given degrees
  int commute_sign(int da, int db) const { return epsilon(mul(da, db)); }

  std::string name() const;
  bool operator==(const GradingGroup&) const = default;
};

inline GradingGroup trivial_grading() { return GradingGroup{}; }

inline GradingGroup mod_grading(int p) {
  if (!is_prime(p)) throw std::invalid_argument("grading modulus must be prime, got " + std::to_string(p));
  return GradingGroup{GradingKind::Mod, p};
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::string GradingGroup::name() const {
  if (kind == GradingKind::Trivial) return "trivial";
  if (p == 2) return "Z2";
  return "Zp:" + std::to_string(p);
}

}  // namespace mforge
