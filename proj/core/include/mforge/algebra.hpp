#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mforge/grading.hpp"
#include "mforge/linalg.hpp"

namespace mforge {

// Element in basis coordinates; zero coefficients are never stored.
using Elem = std::map<size_t, Rat>;

// Finite-dimensional algebra over Q given by structure constants on a named
// basis, graded by B, optionally carrying a bilinear form and a declared
// toral subspace (basis rows of H).
struct StructureAlgebra {
  GradingGroup grading;
  std::vector<std::string> names;
  std::vector<int> degrees;  // canonical representatives, one per basis element
  bool bcommutative = false;  // xy = epsilon(|x||y|) yx declared and enforced
  std::vector<std::vector<Elem>> table;  // table[i][j] = e_i e_j
  std::optional<Mat> gram;               // gram[i][j] = (e_i, e_j)
  std::vector<Vec> toral_rows;           // declared H basis; may be empty
  std::string description;

  size_t dim() const { return names.size(); }
  size_t index_of(const std::string& name) const;  // throws on unknown name

  bool operator==(const StructureAlgebra&) const = default;

  // Throws std::invalid_argument on structural defects: shape mismatches,
  // duplicate names, degree-violating products, broken declared
  // b-commutativity, malformed gram or toral rows.
  void validate() const;
};

Elem basis_elem(size_t i);
bool is_zero(const Elem& e);
Elem add(Elem a, const Elem& b);
Elem sub(Elem a, const Elem& b);
Elem scale(Elem a, const Rat& c);
Elem negate(Elem a);
Vec to_vec(const Elem& e, size_t dim);
Elem from_vec(const Vec& v);

Elem mul(const StructureAlgebra& alg, const Elem& a, const Elem& b);
// (a, b) under the stored form; throws when no form is present
Rat form_value(const StructureAlgebra& alg, const Elem& a, const Elem& b);

// "2*e2 - 1/2*e5"; "0" for the zero element
std::string render_elem(const StructureAlgebra& alg, const Elem& e);

// Degree when e is homogeneous (0 for the zero element), else nullopt.
std::optional<int> homogeneous_degree(const StructureAlgebra& alg, const Elem& e);
// Split into homogeneous parts, ascending degree; zero parts omitted.
std::vector<std::pair<int, Elem>> degree_parts(const StructureAlgebra& alg, const Elem& e);

}  // namespace mforge
