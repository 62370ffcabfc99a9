#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mforge/algebra.hpp"
#include "mforge/report.hpp"

namespace mforge {

enum class IdentityName {
  BCommutativity,
  Jacobi,
  SuperJacobi,
  Sagle,
  SuperSagle,
  MalcevOriginal,
  BinaryLie,
  SagleExtended,
};

struct IdentityInfo {
  IdentityName id;
  const char* name;  // CLI spelling
  int arity;
  bool multilinear;  // basis-exhaustive checking is exact iff true
};

const std::vector<IdentityInfo>& all_identities();
const IdentityInfo& identity_info(IdentityName id);
std::optional<IdentityName> identity_by_name(std::string_view name);

// J(x,y,z) = (xy)z + (zx)y + (yz)x
Elem jacobian(const StructureAlgebra& alg, const Elem& x, const Elem& y, const Elem& z);
// Signed variant; requires homogeneous arguments (throws otherwise). Sign
// exponents multiply integer degree representatives.
Elem super_jacobian(const StructureAlgebra& alg, const Elem& x, const Elem& y, const Elem& z);

// Residual of one identity at basis arguments (exact, homogeneous).
Elem identity_residual_basis(const StructureAlgebra& alg, IdentityName id,
                             const std::vector<size_t>& idx);
// Residual at arbitrary elements. Identities whose statement carries degree
// signs are evaluated by splitting the arguments into homogeneous parts.
Elem identity_residual(const StructureAlgebra& alg, IdentityName id,
                       const std::vector<Elem>& args);

enum class CheckMode { Exhaustive, Sampled };

struct SampleParams {
  uint64_t seed = 0;
  int count = 200;
  long coeff_lo = -2;
  long coeff_hi = 2;
};

// Exhaustive mode (multilinear identities only): scans all basis tuples and
// reports the lexicographically first failure; the verdict is exact for the
// whole algebra. Sampled mode: deterministic per-trial seeds; a failure is
// certain, a pass is probabilistic. Reports are identical for any `threads`.
CheckItem check_identity(const StructureAlgebra& alg, IdentityName id,
                         CheckMode mode, const SampleParams& sp = {},
                         int threads = 1);

// Form checks: invariance, b-symmetry, b-gradedness, nondegeneracy.
CheckReport check_form(const StructureAlgebra& alg, int threads = 1);

}  // namespace mforge
