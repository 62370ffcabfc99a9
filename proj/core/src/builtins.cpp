#include "mforge/iolib.hpp"

namespace mforge {

namespace {

using Cell = std::vector<std::pair<size_t, long>>;  // (basis index, integer coeff)

StructureAlgebra from_cells(GradingGroup grading, std::vector<std::string> names,
                            std::vector<int> degrees,
                            const std::vector<std::vector<Cell>>& cells) {
  StructureAlgebra alg;
  alg.grading = std::move(grading);
  alg.names = std::move(names);
  alg.degrees = std::move(degrees);
  alg.bcommutative = true;
  const size_t n = alg.names.size();
  alg.table.assign(n, std::vector<Elem>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : cells[i][j]) alg.table[i][j][k] = Rat(c);
  return alg;
}

// Seven-dimensional anticommutative algebra on e1..e7; H = span{e1}.
StructureAlgebra make_m7(long e11, std::string description) {
  const Cell z;
  // rows list e_i * e_j for j > i; the lower triangle is the negative mirror
  std::vector<std::vector<Cell>> cells(7, std::vector<Cell>(7));
  auto set = [&](size_t i, size_t j, Cell c) {
    cells[i][j] = c;
    for (auto& [k, v] : c) v = -v;
    cells[j][i] = std::move(c);
  };
  set(0, 1, {{1, 2}});
  set(0, 2, {{2, 2}});
  set(0, 3, {{3, 2}});
  set(0, 4, {{4, -2}});
  set(0, 5, {{5, -2}});
  set(0, 6, {{6, -2}});
  set(1, 2, {{6, 2}});
  set(1, 3, {{5, -2}});
  set(1, 4, {{0, 1}});
  set(2, 3, {{4, 2}});
  set(2, 5, {{0, 1}});
  set(3, 6, {{0, 1}});
  set(4, 5, {{3, -2}});
  set(4, 6, {{2, 2}});
  set(5, 6, {{1, -2}});
  (void)z;
  StructureAlgebra alg =
      from_cells(trivial_grading(), {"e1", "e2", "e3", "e4", "e5", "e6", "e7"},
                 std::vector<int>(7, 0), cells);
  Mat g = zero_mat(7, 7);
  g[0][0] = Rat(e11);
  g[1][4] = g[4][1] = Rat(1);
  g[2][5] = g[5][2] = Rat(1);
  g[3][6] = g[6][3] = Rat(1);
  alg.gram = std::move(g);
  Vec h(7, Rat(0));
  h[0] = 1;
  alg.toral_rows = {h};
  alg.description = std::move(description);
  return alg;
}

StructureAlgebra make_sl2() {
  std::vector<std::vector<Cell>> cells(3, std::vector<Cell>(3));
  auto set = [&](size_t i, size_t j, Cell c) {
    cells[i][j] = c;
    for (auto& [k, v] : c) v = -v;
    cells[j][i] = std::move(c);
  };
  set(0, 1, {{1, 2}});   // he = 2e
  set(0, 2, {{2, -2}});  // hf = -2f
  set(1, 2, {{0, 1}});   // ef = h
  StructureAlgebra alg = from_cells(trivial_grading(), {"h", "e", "f"}, {0, 0, 0}, cells);
  Mat g = zero_mat(3, 3);
  g[0][0] = Rat(2);
  g[1][2] = g[2][1] = Rat(1);
  alg.gram = std::move(g);
  alg.toral_rows = {{Rat(1), Rat(0), Rat(0)}};
  alg.description = "3-dimensional simple Lie algebra; trace form scaled to (h,h) = 2";
  return alg;
}

StructureAlgebra make_osp12() {
  std::vector<std::vector<Cell>> cells(5, std::vector<Cell>(5));
  auto skew = [&](size_t i, size_t j, Cell c) {
    cells[i][j] = c;
    for (auto& [k, v] : c) v = -v;
    cells[j][i] = std::move(c);
  };
  auto sym = [&](size_t i, size_t j, const Cell& c) {
    cells[i][j] = c;
    cells[j][i] = c;
  };
  skew(0, 1, {{1, 2}});   // he = 2e
  skew(0, 2, {{2, -2}});  // hf = -2f
  skew(1, 2, {{0, 1}});   // ef = h
  skew(0, 3, {{3, 1}});   // hx = x
  skew(0, 4, {{4, -1}});  // hy = -y
  skew(1, 4, {{3, 1}});   // ey = x
  skew(2, 3, {{4, 1}});   // fx = y
  cells[3][3] = {{1, -2}};  // xx = -2e
  cells[4][4] = {{2, 2}};   // yy = 2f
  sym(3, 4, {{0, 1}});      // xy = yx = h
  StructureAlgebra alg = from_cells(mod_grading(2), {"h", "e", "f", "x", "y"},
                                    {0, 0, 0, 1, 1}, cells);
  Mat g = zero_mat(5, 5);
  g[0][0] = Rat(2);
  g[1][2] = g[2][1] = Rat(1);
  g[3][4] = Rat(2);
  g[4][3] = Rat(-2);
  alg.gram = std::move(g);
  alg.toral_rows = {{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}};
  alg.description = "5-dimensional Lie superalgebra: even part sl2, odd part the "
                    "2-dimensional natural module";
  return alg;
}

StructureAlgebra make_abelian2() {
  StructureAlgebra alg;
  alg.grading = trivial_grading();
  alg.names = {"e1", "e2"};
  alg.degrees = {0, 0};
  alg.bcommutative = true;
  alg.table.assign(2, std::vector<Elem>(2));
  alg.gram = zero_mat(2, 2);
  alg.toral_rows = {{Rat(1), Rat(0)}};
  alg.description = "2-dimensional algebra with zero multiplication and zero form";
  return alg;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"m7-paper", "m7", "sl2", "osp12",
                                                 "abelian2"};
  return names;
}

StructureAlgebra builtin(const std::string& name) {
  StructureAlgebra alg;
  if (name == "m7-paper") {
    alg = make_m7(1,
                  "7-dimensional non-Lie Malcev algebra with the uncorrected pairing "
                  "matrix ((e1,e1) = 1); the form fails invariance");
  } else if (name == "m7") {
    alg = make_m7(2,
                  "7-dimensional non-Lie Malcev algebra; (e1,e1) = 2 is the unique "
                  "rescaling of that entry making the form invariant given "
                  "(e2,e5) = 1");
  } else if (name == "sl2") {
    alg = make_sl2();
  } else if (name == "osp12") {
    alg = make_osp12();
  } else if (name == "abelian2") {
    alg = make_abelian2();
  } else {
    throw std::invalid_argument("unknown builtin '" + name + "'");
  }
  alg.validate();
  return alg;
}

}  // namespace mforge
