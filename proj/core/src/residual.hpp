#pragma once

#include <array>

#include "mforge/identities.hpp"

namespace mforge::detail {

inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

// Identity residuals over any element type. Ctx supplies:
//   using E; E mul(a,b); E add(a,b); E sub(a,b); E sgn(a, s) for s in {-1,1};
//   int comm_sign(da, db)  — the B-convention sign for b-commutativity.
// Degrees are integer representatives; super signs use (-1)^(product).
template <class Ctx>
typename Ctx::E identity_residual_at(const Ctx& c, IdentityName id,
                                     const std::array<typename Ctx::E, 4>& a,
                                     const std::array<long, 4>& d) {
  using E = typename Ctx::E;
  const E& x = a[0];
  const E& y = a[1];
  const E& z = a[2];
  const E& t = a[3];
  auto jac = [&](const E& u, const E& v, const E& w) {
    return c.add(c.add(c.mul(c.mul(u, v), w), c.mul(c.mul(w, u), v)),
                 c.mul(c.mul(v, w), u));
  };
  switch (id) {
    case IdentityName::BCommutativity:
      return c.sub(c.mul(x, y), c.sgn(c.mul(y, x), c.comm_sign(d[0], d[1])));
    case IdentityName::Jacobi:
      return jac(x, y, z);
    case IdentityName::SuperJacobi: {
      E r = c.sgn(c.mul(c.mul(x, y), z), parity_sign(d[0] * d[2]));
      r = c.add(std::move(r), c.sgn(c.mul(c.mul(z, x), y), parity_sign(d[2] * d[1])));
      return c.add(std::move(r), c.sgn(c.mul(c.mul(y, z), x), parity_sign(d[1] * d[0])));
    }
    case IdentityName::Sagle: {
      E r = c.mul(c.mul(c.mul(x, y), z), t);
      r = c.add(std::move(r), c.mul(c.mul(c.mul(y, z), t), x));
      r = c.add(std::move(r), c.mul(c.mul(c.mul(z, t), x), y));
      r = c.add(std::move(r), c.mul(c.mul(c.mul(t, x), y), z));
      return c.sub(std::move(r), c.mul(c.mul(x, z), c.mul(y, t)));
    }
    case IdentityName::SuperSagle: {
      const int sa = parity_sign(d[0] * (d[1] + d[2] + d[3]));
      const int sb = parity_sign((d[0] + d[1]) * (d[2] + d[3]));
      const int sc = parity_sign(d[3] * (d[0] + d[1] + d[2]));
      const int sd = parity_sign(d[1] * d[2]);
      E r = c.mul(c.mul(c.mul(x, y), z), t);
      r = c.add(std::move(r), c.sgn(c.mul(c.mul(c.mul(y, z), t), x), sa));
      r = c.add(std::move(r), c.sgn(c.mul(c.mul(c.mul(z, t), x), y), sb));
      r = c.add(std::move(r), c.sgn(c.mul(c.mul(c.mul(t, x), y), z), sc));
      return c.sub(std::move(r), c.sgn(c.mul(c.mul(x, z), c.mul(y, t)), sd));
    }
    case IdentityName::MalcevOriginal:
      return c.sub(jac(x, y, c.mul(x, z)), c.mul(jac(x, y, z), x));
    case IdentityName::BinaryLie:
      return jac(c.mul(x, y), x, y);
    case IdentityName::SagleExtended:
      return jac(x, y, c.mul(x, y));
  }
  return typename Ctx::E{};
}

// true when the identity's statement involves degree signs
inline bool identity_uses_signs(IdentityName id) {
  return id == IdentityName::BCommutativity || id == IdentityName::SuperJacobi ||
         id == IdentityName::SuperSagle;
}

}  // namespace mforge::detail
