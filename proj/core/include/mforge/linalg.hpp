#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mforge/rat.hpp"

namespace mforge {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major, rectangular

Mat identity_mat(size_t n);
Mat zero_mat(size_t rows, size_t cols);
Vec zero_vec(size_t n);
bool is_zero_vec(const Vec& v);
Vec add_vec(Vec a, const Vec& b);
Vec sub_vec(Vec a, const Vec& b);
Vec scale_vec(Vec a, const Rat& c);
Vec mat_vec(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);

struct Rref {
  Mat m;
  std::vector<size_t> pivots;  // pivot column of each nonzero row
  size_t rank = 0;
};
// Reduced row echelon form with deterministic first-nonzero pivoting.
Rref rref(Mat m);
size_t rank(Mat m);
Rat det(Mat m);  // square input

// One solution of A x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero, so the result is deterministic.
std::optional<Vec> solve(const Mat& a, const Vec& b);
// Canonical null-space basis: one vector per free column, ascending.
std::vector<Vec> kernel(const Mat& a);

// Row space held in reduced echelon form; supports incremental closures.
class RowSpan {
 public:
  explicit RowSpan(size_t width) : width_(width) {}
  size_t width() const { return width_; }
  size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  bool contains(const Vec& v) const;
  bool insert(Vec v);  // true when v enlarged the span
 private:
  Vec reduce(Vec v) const;
  size_t width_;
  std::vector<Vec> rows_;  // pivot columns strictly increasing
  std::vector<size_t> pivots_;
};

// Canonical (reduced) basis of the intersection of two row spans.
std::vector<Vec> intersect_spans(const std::vector<Vec>& a,
                                 const std::vector<Vec>& b, size_t width);

// Characteristic polynomial by the Faddeev-LeVerrier recurrence; coefficients
// ascending by degree, monic.
std::vector<Rat> char_poly(const Mat& m);

struct EigenvalueSplit {
  std::vector<std::pair<Rat, size_t>> roots;  // (value, multiplicity), ascending
  bool split = true;     // false when a nonlinear factor remains over Q
  std::string leftover;  // printable residual factor when !split
};
// Rational eigenvalues with algebraic multiplicities, via the rational root
// theorem after clearing denominators; no numerical approximation anywhere.
EigenvalueSplit rational_eigenvalues(const Mat& m);

std::string poly_str(const std::vector<Rat>& coeffs, const std::string& var);

}  // namespace mforge
