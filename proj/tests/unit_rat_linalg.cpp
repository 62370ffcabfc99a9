#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mforge/linalg.hpp"
#include "mforge/rat.hpp"
#include "support/m7_table.hpp"

using namespace mforge;

namespace {

Mat mat_from(std::vector<std::vector<long>> rows) {
  Mat m;
  for (const auto& r : rows) {
    Vec v;
    for (long x : r) v.push_back(Rat(x));
    m.push_back(std::move(v));
  }
  return m;
}

Vec vec_from(std::vector<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

}  // namespace

TEST_CASE("rational rendering is canonical") {
  CHECK(rat_str(rat(4, 2)) == "2");
  CHECK(rat_str(rat(-1, 2)) == "-1/2");
  CHECK(rat_str(rat(3, -6)) == "-1/2");
  CHECK(rat_str(rat(0, 5)) == "0");
  CHECK(rat_str(Rat(0)) == "0");
}

TEST_CASE("parse_rat accepts sign/digits/slash and nothing else") {
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("-3/4") == rat(-3, 4));
  CHECK(parse_rat("+5/10") == rat(1, 2));
  CHECK(parse_rat("2/4") == rat(1, 2));
  CHECK(parse_rat("007") == Rat(7));
  CHECK(parse_rat("-0") == Rat(0));

  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/ 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("2/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("--2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("2 "), std::invalid_argument);
}

TEST_CASE("parse/render round trip on canonical strings") {
  for (const char* s : {"0", "1", "-1", "2/3", "-7/2", "123456789/7"}) {
    CHECK(rat_str(parse_rat(s)) == s);
  }
}

TEST_CASE("rat_pow handles positive, zero, and negative exponents") {
  CHECK(rat_pow(rat(2, 3), 3) == rat(8, 27));
  CHECK(rat_pow(rat(2, 3), 0) == Rat(1));
  CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
  CHECK(rat_pow(Rat(-2), -3) == rat(-1, 8));
  CHECK(rat_pow(Rat(0), 0) == Rat(1));
  CHECK(rat_pow(Rat(0), 5) == Rat(0));
  CHECK(rat_pow(Rat(2), 62) == Rat("4611686018427387904"));
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);
}

TEST_CASE("vector helpers") {
  const Vec a = vec_from({1, 2, 3});
  const Vec b = vec_from({4, 5, 6});
  CHECK(add_vec(a, b) == vec_from({5, 7, 9}));
  CHECK(sub_vec(b, a) == vec_from({3, 3, 3}));
  CHECK(scale_vec(a, Rat(-2)) == vec_from({-2, -4, -6}));
  CHECK(is_zero_vec(zero_vec(3)));
  CHECK_FALSE(is_zero_vec(a));
  CHECK(mat_vec(identity_mat(3), a) == a);
}

TEST_CASE("rref reduces deterministically") {
  const Rref r = rref(mat_from({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}}));
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<size_t>{0, 1});
  CHECK(r.m[0] == vec_from({1, 0, -1}));
  CHECK(r.m[1] == vec_from({0, 1, 2}));
  CHECK(is_zero_vec(r.m[2]));
}

TEST_CASE("rank and determinant") {
  CHECK(rank(mat_from({{1, 2}, {2, 4}})) == 1);
  CHECK(det(mat_from({{2, 0}, {0, 3}})) == Rat(6));
  CHECK(det(mat_from({{1, 2}, {2, 4}})) == Rat(0));
  CHECK(det(mat_from({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == Rat(-3));

  // determinant of the catalog gram with (e1,e1) = 2, from the direct table
  const auto g = testsupport::m7_gram(2);
  Mat gm = zero_mat(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) gm[i][j] = Rat(static_cast<long>(g[i][j]));
  CHECK(det(gm) == Rat(-2));
  CHECK(rank(gm) == 7);
}

TEST_CASE("solve returns the free-variables-zero solution or nullopt") {
  const auto x = solve(mat_from({{1, 1}}), vec_from({3}));
  REQUIRE(x.has_value());
  CHECK(*x == vec_from({3, 0}));

  CHECK_FALSE(solve(mat_from({{1}, {1}}), vec_from({1, 2})).has_value());

  const Mat a = mat_from({{2, 1}, {1, 3}});
  const Vec b = vec_from({5, 10});
  const auto y = solve(a, b);
  REQUIRE(y.has_value());
  CHECK(mat_vec(a, *y) == b);
}

TEST_CASE("kernel produces one canonical vector per free column") {
  const Mat a = mat_from({{1, 1, 0}});
  const auto k = kernel(a);
  REQUIRE(k.size() == 2);
  CHECK(k[0] == vec_from({-1, 1, 0}));
  CHECK(k[1] == vec_from({0, 0, 1}));
  for (const auto& v : k) CHECK(is_zero_vec(mat_vec(a, v)));
}

TEST_CASE("rank plus nullity equals the column count") {
  const std::vector<Mat> mats = {
      mat_from({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}}),
      mat_from({{0, 0}, {0, 0}}),
      mat_from({{1, 0, 2, 0}, {0, 1, 0, 3}}),
      mat_from({{5}}),
  };
  for (const auto& m : mats) {
    CHECK(rank(m) + kernel(m).size() == m[0].size());
  }
}

TEST_CASE("RowSpan grows only on genuinely new rows") {
  RowSpan span(3);
  CHECK(span.insert(vec_from({1, 2, 3})));
  CHECK_FALSE(span.insert(vec_from({2, 4, 6})));
  CHECK(span.dim() == 1);
  CHECK(span.contains(vec_from({3, 6, 9})));
  CHECK_FALSE(span.contains(vec_from({1, 0, 0})));
  CHECK(span.insert(vec_from({0, 1, 1})));
  CHECK(span.dim() == 2);
  CHECK_FALSE(span.insert(vec_from({1, 3, 4})));
}

TEST_CASE("intersect_spans returns the canonical common subspace") {
  const std::vector<Vec> a = {vec_from({1, 0, 0}), vec_from({0, 1, 0})};
  const std::vector<Vec> b = {vec_from({0, 1, 0}), vec_from({0, 0, 1})};
  const auto meet = intersect_spans(a, b, 3);
  REQUIRE(meet.size() == 1);
  CHECK(meet[0] == vec_from({0, 1, 0}));

  const auto disjoint =
      intersect_spans({vec_from({1, 0, 0})}, {vec_from({0, 0, 1})}, 3);
  CHECK(disjoint.empty());
}

TEST_CASE("char_poly is monic with ascending coefficients") {
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
  const auto p = char_poly(mat_from({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
  CHECK(p == std::vector<Rat>{Rat(-6), Rat(11), Rat(-6), Rat(1)});

  const auto q = char_poly(mat_from({{0, -1}, {1, 0}}));
  CHECK(q == std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
  CHECK(poly_str(q, "x") == "x^2 + 1");
  CHECK(poly_str(p, "x") == "x^3 - 6*x^2 + 11*x - 6");
}

TEST_CASE("rational_eigenvalues splits rational spectra exactly") {
  Mat m = zero_mat(3, 3);
  m[0][0] = rat(1, 2);
  m[1][1] = rat(1, 2);
  m[2][2] = Rat(-3);
  const auto ev = rational_eigenvalues(m);
  CHECK(ev.split);
  REQUIRE(ev.roots.size() == 2);
  CHECK(ev.roots[0].first == Rat(-3));
  CHECK(ev.roots[0].second == 1);
  CHECK(ev.roots[1].first == rat(1, 2));
  CHECK(ev.roots[1].second == 2);
}

TEST_CASE("rational_eigenvalues reports irreducible leftovers") {
  const auto ev = rational_eigenvalues(mat_from({{0, -1}, {1, 0}}));
  CHECK_FALSE(ev.split);
  CHECK(ev.roots.empty());
  CHECK(ev.leftover == "t^2 + 1");
}

TEST_CASE("ad(e1) spectrum of the catalog table matches the root values") {
  // Left multiplication by e1 from the direct table: eigenvalues 0, 2, -2
  // with multiplicities 1, 3, 3.
  const auto& c = testsupport::m7_table();
  Mat ad = zero_mat(7, 7);
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) ad[k][j] = Rat(static_cast<long>(c[0][j][k]));
  const auto ev = rational_eigenvalues(ad);
  CHECK(ev.split);
  REQUIRE(ev.roots.size() == 3);
  CHECK(ev.roots[0] == std::pair<Rat, size_t>{Rat(-2), 3});
  CHECK(ev.roots[1] == std::pair<Rat, size_t>{Rat(0), 1});
  CHECK(ev.roots[2] == std::pair<Rat, size_t>{Rat(2), 3});
}
