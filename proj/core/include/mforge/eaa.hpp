#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mforge/report.hpp"
#include "mforge/toral.hpp"

namespace mforge {

// Toral pair plus the form, with the form's structural verdicts cached.
// Construction requires a form that is B-symmetric and B-graded; the
// invariance verdict is recorded but not required (checks that depend on it
// say so in their reports).
struct QuadraticToralPair {
  RootDatum datum;
  Mat h_gram;           // form restricted to the toral basis
  bool h_nondegenerate; // h_gram invertible
  bool form_invariant;  // recorded verdict of the invariance scan
};

QuadraticToralPair make_quadratic_pair(RootDatum datum);

struct DegenerateOnH : std::runtime_error {
  DegenerateOnH() : std::runtime_error("form is degenerate on H") {}
};

// t_alpha: the element of H with (t_alpha, h_i) = alpha(h_i) for all i.
Elem nu_inverse(const QuadraticToralPair& q, const Root& alpha);
// (alpha, beta) := (t_alpha, t_beta)
Rat root_pairing(const QuadraticToralPair& q, const Root& alpha, const Root& beta);
// coordinates of e in span(H), or nullopt when e escapes it
std::optional<Vec> h_coordinates(const QuadraticToralPair& q, const Elem& e);

struct TestPairWitness {
  Root root;
  int degree = 0;
  Elem x_plus, x_minus;
  Elem product;  // = x_plus * x_minus, nonzero, in span(H)
  Rat pairing;   // (x_plus, x_minus)
  bool block = false;  // pairing == 1
};

struct FindPairOutcome {
  std::optional<TestPairWitness> witness;
  bool structural_fail = false;  // opposite root space missing
  std::string note;
};

// Search order: form-guided basis pairs, all basis pairs, then seeded random
// combinations (budget trials, coefficients in [-3,3]). Every candidate is
// verified directly: product nonzero and inside span(H). Exhausting the
// budget is reported as inconclusive, never as nonexistence.
FindPairOutcome find_test_pair(const QuadraticToralPair& q, const Root& alpha,
                               int degree, int budget, uint64_t seed);

// x_plus * x_minus = (x_plus, x_minus) * t_alpha
CheckItem check_block_identity(const QuadraticToralPair& q, const TestPairWitness& w);

// E1: a test pair for every (b, alpha) with alpha in R_b \ {0}. A missing
// opposite root is a structural failure; an exhausted search is inconclusive.
CheckReport check_E1(const QuadraticToralPair& q, int budget = 500, uint64_t seed = 0);

// E2': the value set {(alpha,beta)} over all roots (finite for finite R).
CheckItem check_E2prime(const QuadraticToralPair& q);

// E2 fallback when the form is degenerate on H: sampled block test pairs,
// observed value set of beta(x_plus x_minus); explicitly partial.
CheckItem check_E2_sampled(const QuadraticToralPair& q, int budget = 500, uint64_t seed = 0);

// E3: rank of the full gram and of the H block.
CheckReport check_E3(const QuadraticToralPair& q);

struct RootClassification {
  std::vector<Root> nonisotropic;  // R^x
  std::vector<Root> isotropic;     // R^0
  bool exact = true;  // false when decided by budgeted test-pair search
};
RootClassification classify_roots(const QuadraticToralPair& q, int budget = 500,
                                  uint64_t seed = 0);

struct CoreResult {
  RootClassification classification;
  std::vector<Elem> core_basis;  // canonical basis of the generated subalgebra
  std::vector<Elem> hc_basis;    // H intersected with the core
};
// Span-closure of the root spaces of non-isotropic roots.
CoreResult compute_core(const QuadraticToralPair& q, int budget = 500, uint64_t seed = 0);

// Rebuilds (core, H_c) as a fresh pair and re-runs decompose, verify_toral,
// E1 and E2'/E2 on it. Zero core passes vacuously.
CheckReport verify_core_pair(const QuadraticToralPair& q, int budget = 500,
                             uint64_t seed = 0);

}  // namespace mforge
