#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mforge/algebra.hpp"

namespace mforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Line-oriented description: header keys (format, field, grading,
// bcommutative, description), then sections [basis], [products], [form],
// [toral]. Full grammar in docs/format.md. The result is validated; when
// bcommutative, missing mirror products are completed by the sign convention.
StructureAlgebra parse_algebra(const std::string& text);

// Canonical, byte-stable rendering: fixed key order, basis order, row-major
// nonzero products (upper triangle when bcommutative), LF newlines.
std::string serialize_algebra(const StructureAlgebra& alg);

const std::vector<std::string>& builtin_names();
// Catalog algebra by name; throws std::invalid_argument for unknown names.
StructureAlgebra builtin(const std::string& name);

}  // namespace mforge
