#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mforge/algebra.hpp"
#include "mforge/identities.hpp"
#include "mforge/linalg.hpp"
#include "mforge/report.hpp"
#include "mforge/toral.hpp"

namespace mforge {

// exponent vector of a Laurent monomial t^sigma, sigma in Z^nu
using GVec = std::vector<long>;

std::string gvec_str(const GVec& s);  // "(1)" or "(0,-1)"

// symmetric bicharacter twist: lambda(sigma, tau) = prod q[i][j]^(sigma_i tau_j)
struct Cocycle {
  size_t nu = 1;
  Mat q;
};

Cocycle make_cocycle(Mat q);        // square, symmetric, nonzero entries
Cocycle ones_cocycle(size_t nu);    // untwisted
Rat cocycle_lambda(const Cocycle& c, const GVec& sigma, const GVec& tau);

enum class LoopFlavor { Plain, Tilde, Hat };
std::string flavor_name(LoopFlavor f);

// Sparse element of an affinization: tensors x_i (x) t^sigma, central basis
// c_m (present for Tilde and Hat), degree derivations d_m (Hat only).
struct LoopElem {
  std::map<std::pair<size_t, GVec>, Rat> tensor;
  std::map<size_t, Rat> v;
  std::map<size_t, Rat> d;

  bool zero() const { return tensor.empty() && v.empty() && d.empty(); }
  bool operator==(const LoopElem&) const = default;
};

LoopElem tensor_elem(size_t base_index, GVec sigma, Rat coeff = Rat(1));

struct LoopAlgebra {
  StructureAlgebra base;
  Cocycle cocycle;
  LoopFlavor flavor = LoopFlavor::Tilde;
};

// Validates the base algebra; Tilde/Hat additionally require a form on the
// base (it feeds the central term and the extended form).
LoopAlgebra make_loop(StructureAlgebra base, Cocycle cocycle, LoopFlavor flavor);

LoopElem l_scale(LoopElem a, const Rat& c);
LoopElem l_add(LoopElem a, const LoopElem& b);
LoopElem l_sub(LoopElem a, const LoopElem& b);

// (x (x) t^s)(y (x) t^t) = lambda(s,t) (xy (x) t^(s+t) + [s+t=0] (x,y) sum s_i c_i);
// d_m acts by the t-degree: d_m (x (x) t^s) = s_m x (x) t^s, and skew on the right.
// The central part appears for Tilde/Hat; derivations act for Hat only.
LoopElem loop_mul(const LoopAlgebra& la, const LoopElem& a, const LoopElem& b);

// extended form: (x (x) t^s, y (x) t^t) = [s+t=0] lambda(s,t) (x,y);
// (c_m, d_m) = (d_m, c_m) = 1; every other pairing vanishes.
Rat loop_form(const LoopAlgebra& la, const LoopElem& a, const LoopElem& b);

// B-degree when homogeneous (c, d count as degree 0); zero element -> degree 0.
std::optional<int> loop_degree(const LoopAlgebra& la, const LoopElem& e);

std::string render_loop_elem(const LoopAlgebra& la, const LoopElem& e);

struct LoopAtom {
  LoopElem elem;
  int degree = 0;
  std::string name;
};

// lexicographic box points, each coordinate in [-k, k]
std::vector<GVec> box_points(size_t nu, int k);

// deterministic order: for each base element, t^sigma over the box in lex
// order; then c_1..c_nu (Tilde/Hat); then d_1..d_nu (Hat).
std::vector<LoopAtom> truncated_basis(const LoopAlgebra& la, int k);

// Exhaustive identity scan over truncated-basis tuples. Products are computed
// exactly (they may leave the box); by multilinearity a zero residual on all
// atom tuples decides the identity for the whole span of the truncation.
// Domains above 10^6 tuples are noted, above 10^8 refused.
CheckReport check_loop_identity(const LoopAlgebra& la, IdentityName id, int box_k,
                                int threads = 1);

// The four base-algebra conditions controlling which affinizations stay
// Malcev: skew Jacobian, Jacobian on degree-0 first slot, Jacobian-form
// pairing (polarized), and the same pairing restricted to balanced (y,z).
// Requires a form and B-commutativity (refused otherwise). The predictions
// item records the verdicts the conditions imply for Tilde and Hat.
CheckReport malcev_obstruction(const StructureAlgebra& alg, int threads = 1);

// Root space of the affinization at (alpha, sigma): A^alpha (x) t^sigma, plus
// the central/derivation lines at (0, 0). Every returned vector is verified
// against the eigen-equations for H (x) 1 and (Hat) the derivations.
std::vector<LoopElem> loop_root_space(const LoopAlgebra& la, const RootDatum& datum,
                                      const Root& alpha, const GVec& sigma);

// Instance verification that the affinization satisfies the extended-algebra
// axioms on every box window: test pairs per (root, window), the structural
// root-pairing equality with the base value set, and graded form blocks.
CheckReport check_eaa_loop(const LoopAlgebra& la, int box_k, int budget = 500,
                           uint64_t seed = 0);

}  // namespace mforge
