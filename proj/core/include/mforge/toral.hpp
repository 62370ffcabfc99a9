#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mforge/algebra.hpp"
#include "mforge/report.hpp"

namespace mforge {

// A root is the tuple of eigenvalues on the toral basis, in basis order.
struct Root {
  Vec values;
  bool zero() const {
    for (const auto& v : values)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const Root& a, const Root& b) { return a.values == b.values; }
  friend bool operator<(const Root& a, const Root& b) { return a.values < b.values; }
};
Root negate_root(Root r);
std::string root_str(const Root& r);  // "(2)" or "(0, -1/2)"

struct ToralPair {
  StructureAlgebra alg;
  std::vector<Elem> h;  // basis of H: nonzero, independent, degree 0
};

// Validates the pair: h nonzero/independent/degree-0 and H*H inside span(H).
// Throws std::invalid_argument on violation.
ToralPair make_toral_pair(StructureAlgebra alg, std::vector<Elem> h);
// Same, taking H from alg.toral_rows (throws when the block is missing).
ToralPair toral_pair_from_rows(StructureAlgebra alg);

struct RootSpace {
  Root root;
  std::vector<Elem> basis;                  // canonical, homogeneous vectors
  std::map<int, std::vector<Elem>> by_degree;
};

struct RootDatum {
  ToralPair pair;
  std::vector<RootSpace> spaces;  // sorted by root, lexicographic
  const RootSpace* space(const Root& r) const;
  std::vector<Root> roots() const;
  size_t root_index(const Root& r) const;  // throws when absent
};

struct DecomposeError : std::runtime_error {
  enum class Kind { NotSplit, NotToral };
  Kind kind;
  DecomposeError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Joint eigenspace decomposition of the left multiplications by the toral
// basis. Starts from the degree subspaces so that every root-space basis
// remains homogeneous, then refines by each operator's rational eigenspaces.
// NotSplit: some operator has an irreducible nonlinear factor over Q.
// NotToral: eigenspaces do not fill the algebra (operator not semisimple, or
// the family does not commute enough to share a full eigenbasis).
RootDatum decompose(const ToralPair& pair);

// (a) H*H = 0, (b) eigen equations for every stored vector, (c) A^0 closed
// under multiplication, (d) dimension completeness.
CheckReport verify_toral(const RootDatum& datum);

// roots alpha with A^alpha_b != 0
std::vector<Root> root_support(const RootDatum& datum, int degree);
// R_b = -R_b for every degree b
CheckItem check_root_symmetry(const RootDatum& datum);

// A^a A^b in A^{a+b} for a != b and A^a A^a in A^{2a} + A^{-a}, cell by cell.
// The hypothesis (a Sagle-type identity) is established first: exhaustively
// when the quadruple count is small, by sampling otherwise; if it cannot be
// established the report is flagged conditional rather than failed.
CheckReport check_partial_grading(const RootDatum& datum, int threads = 1);

}  // namespace mforge
