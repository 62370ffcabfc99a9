#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mforge/eaa.hpp"
#include "mforge/iolib.hpp"

using namespace mforge;

namespace {

Root root1(long v) {
  Root r;
  r.values = {Rat(v)};
  return r;
}

QuadraticToralPair qpair(const std::string& name) {
  return make_quadratic_pair(decompose(toral_pair_from_rows(builtin(name))));
}

// h, x with h*x = x: the root (1) has no opposite root.
StructureAlgebra one_sided() {
  StructureAlgebra alg;
  alg.grading = trivial_grading();
  alg.names = {"h", "x"};
  alg.degrees = {0, 0};
  alg.bcommutative = true;
  alg.table.assign(2, std::vector<Elem>(2));
  alg.table[0][1] = basis_elem(1);
  alg.table[1][0] = negate(basis_elem(1));
  alg.gram = Mat{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}};
  alg.toral_rows = {Vec{Rat(1), Rat(0)}};
  alg.validate();
  return alg;
}

// h, x, y with h*x = x, h*y = -y, x*y = 0: roots +-1 are nonisotropic but the
// generated core has no toral part.
StructureAlgebra hollow_core() {
  StructureAlgebra alg;
  alg.grading = trivial_grading();
  alg.names = {"h", "x", "y"};
  alg.degrees = {0, 0, 0};
  alg.bcommutative = true;
  alg.table.assign(3, std::vector<Elem>(3));
  alg.table[0][1] = basis_elem(1);
  alg.table[1][0] = negate(basis_elem(1));
  alg.table[0][2] = negate(basis_elem(2));
  alg.table[2][0] = basis_elem(2);
  alg.gram = Mat{{Rat(1), Rat(0), Rat(0)},
                 {Rat(0), Rat(0), Rat(1)},
                 {Rat(0), Rat(1), Rat(0)}};
  alg.toral_rows = {Vec{Rat(1), Rat(0), Rat(0)}};
  alg.validate();
  return alg;
}

}  // namespace

TEST_CASE("quadratic pairs record the H gram and the invariance verdict") {
  const QuadraticToralPair m7 = qpair("m7");
  CHECK(m7.h_gram == Mat{{Rat(2)}});
  CHECK(m7.h_nondegenerate);
  CHECK(m7.form_invariant);

  const QuadraticToralPair p = qpair("m7-paper");
  CHECK(p.h_gram == Mat{{Rat(1)}});
  CHECK(p.h_nondegenerate);
  CHECK_FALSE(p.form_invariant);

  const QuadraticToralPair ab = qpair("abelian2");
  CHECK(ab.h_gram == Mat{{Rat(0)}});
  CHECK_FALSE(ab.h_nondegenerate);
}

TEST_CASE("construction requires a form with the graded symmetries") {
  StructureAlgebra noform = builtin("m7");
  noform.gram.reset();
  CHECK_THROWS_AS(make_quadratic_pair(decompose(toral_pair_from_rows(noform))),
                  std::invalid_argument);

  StructureAlgebra skew = builtin("m7");
  (*skew.gram)[0][1] = Rat(1);  // (e1,e2) = 1 but (e2,e1) = 0
  CHECK_THROWS_AS(make_quadratic_pair(decompose(toral_pair_from_rows(skew))),
                  std::invalid_argument);

  StructureAlgebra ungraded = builtin("osp12");
  (*ungraded.gram)[0][3] = Rat(1);  // (h,x) couples degrees 0 and 1
  (*ungraded.gram)[3][0] = Rat(-1);
  CHECK_THROWS_AS(make_quadratic_pair(decompose(toral_pair_from_rows(ungraded))),
                  std::invalid_argument);
}

TEST_CASE("nu_inverse solves (t_alpha, h) = alpha(h)") {
  const QuadraticToralPair m7 = qpair("m7");
  CHECK(nu_inverse(m7, root1(2)) == basis_elem(0));
  CHECK(nu_inverse(m7, root1(-2)) == negate(basis_elem(0)));
  CHECK(nu_inverse(m7, root1(0)).empty());

  const QuadraticToralPair p = qpair("m7-paper");
  CHECK(nu_inverse(p, root1(2)) == scale(basis_elem(0), Rat(2)));

  const QuadraticToralPair ab = qpair("abelian2");
  CHECK_THROWS_AS(nu_inverse(ab, root1(1)), DegenerateOnH);
}

TEST_CASE("root pairing values") {
  const QuadraticToralPair m7 = qpair("m7");
  CHECK(root_pairing(m7, root1(2), root1(2)) == Rat(2));
  CHECK(root_pairing(m7, root1(2), root1(-2)) == Rat(-2));
  CHECK(root_pairing(m7, root1(0), root1(2)) == Rat(0));

  const QuadraticToralPair p = qpair("m7-paper");
  CHECK(root_pairing(p, root1(2), root1(2)) == Rat(4));
}

TEST_CASE("h_coordinates accepts span(H) and rejects everything else") {
  const QuadraticToralPair m7 = qpair("m7");
  const auto inside = h_coordinates(m7, scale(basis_elem(0), Rat(-3)));
  REQUIRE(inside.has_value());
  CHECK(*inside == Vec{Rat(-3)});
  CHECK(h_coordinates(m7, Elem{}) == Vec{Rat(0)});
  CHECK_FALSE(h_coordinates(m7, basis_elem(1)).has_value());
  CHECK_FALSE(h_coordinates(m7, add(basis_elem(0), basis_elem(1))).has_value());
}

TEST_CASE("find_test_pair is form-guided and verified") {
  const QuadraticToralPair m7 = qpair("m7");
  const auto out = find_test_pair(m7, root1(2), 0, 500, 0);
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->x_plus == basis_elem(1));   // e2
  CHECK(out.witness->x_minus == basis_elem(4));  // e5
  CHECK(out.witness->product == basis_elem(0));  // e1
  CHECK(out.witness->pairing == Rat(1));
  CHECK(out.witness->block);

  const auto opp = find_test_pair(m7, root1(-2), 0, 500, 0);
  REQUIRE(opp.witness.has_value());
  CHECK(opp.witness->x_plus == basis_elem(4));
  CHECK(opp.witness->x_minus == basis_elem(1));
  CHECK(opp.witness->product == negate(basis_elem(0)));

  CHECK_THROWS_AS(find_test_pair(m7, root1(3), 0, 500, 0), std::invalid_argument);
  CHECK_THROWS_AS(find_test_pair(m7, root1(0), 0, 500, 0), std::invalid_argument);
}

TEST_CASE("a missing opposite root space is a structural failure") {
  const QuadraticToralPair q =
      make_quadratic_pair(decompose(toral_pair_from_rows(one_sided())));
  const auto out = find_test_pair(q, root1(1), 0, 50, 0);
  CHECK(out.structural_fail);
  CHECK_FALSE(out.witness.has_value());

  const CheckReport e1 = check_E1(q, 50, 0);
  REQUIRE(e1.items.size() == 1);
  CHECK(e1.items[0].status == Status::Fail);
  CHECK(e1.items[0].name == "E1 root (1) degree 0");
}

TEST_CASE("the block identity separates m7 from m7-paper") {
  const QuadraticToralPair m7 = qpair("m7");
  const auto w = find_test_pair(m7, root1(2), 0, 500, 0);
  REQUIRE(w.witness.has_value());
  const CheckItem good = check_block_identity(m7, *w.witness);
  CHECK(good.status == Status::Pass);
  CHECK(good.name == "block_identity root (2)");

  const QuadraticToralPair p = qpair("m7-paper");
  const auto wp = find_test_pair(p, root1(2), 0, 500, 0);
  REQUIRE(wp.witness.has_value());
  CHECK(wp.witness->x_plus == basis_elem(1));
  CHECK(wp.witness->x_minus == basis_elem(4));
  const CheckItem bad = check_block_identity(p, *wp.witness);
  CHECK(bad.status == Status::Fail);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->value == "x+x- = e1, (x+,x-)*t_alpha = 2*e1");
}

TEST_CASE("E1 passes on m7 with the expected items") {
  const CheckReport e1 = check_E1(qpair("m7"), 500, 0);
  REQUIRE(e1.items.size() == 2);
  CHECK(e1.items[0].name == "E1 root (-2) degree 0");
  CHECK(e1.items[1].name == "E1 root (2) degree 0");
  for (const auto& item : e1.items) CHECK(item.status == Status::Pass);
  CHECK(e1.overall() == Status::Pass);
}

TEST_CASE("E1 handles graded root spaces (osp12)") {
  const CheckReport e1 = check_E1(qpair("osp12"), 500, 0);
  // roots +-2 in degree 0 and +-1 in degree 1
  REQUIRE(e1.items.size() == 4);
  CHECK(e1.items[0].name == "E1 root (-2) degree 0");
  CHECK(e1.items[1].name == "E1 root (2) degree 0");
  CHECK(e1.items[2].name == "E1 root (-1) degree 1");
  CHECK(e1.items[3].name == "E1 root (1) degree 1");
  for (const auto& item : e1.items) CHECK(item.status == Status::Pass);
}

TEST_CASE("E2prime value sets") {
  const CheckItem m7 = check_E2prime(qpair("m7"));
  CHECK(m7.status == Status::Pass);
  CHECK(m7.count == 9);
  CHECK(m7.data["values"] == nlohmann::ordered_json::array({"-2", "0", "2"}));

  const CheckItem p = check_E2prime(qpair("m7-paper"));
  CHECK(p.data["values"] == nlohmann::ordered_json::array({"-4", "0", "4"}));

  const CheckItem osp = check_E2prime(qpair("osp12"));
  CHECK(osp.data["values"] ==
        nlohmann::ordered_json::array({"-2", "-1", "-1/2", "0", "1/2", "1", "2"}));

  CHECK_THROWS_AS(check_E2prime(qpair("abelian2")), DegenerateOnH);
}

TEST_CASE("the sampled E2 fallback reports observed values or inconclusive") {
  const CheckItem ab = check_E2_sampled(qpair("abelian2"), 50, 0);
  CHECK(ab.status == Status::Inconclusive);
  CHECK(ab.data["block_pairs_sampled"] == 0);

  // one_sided has a degenerate H too, and no opposite pairs at all
  const CheckItem os = check_E2_sampled(
      make_quadratic_pair(decompose(toral_pair_from_rows(one_sided()))), 50, 0);
  CHECK(os.status == Status::Inconclusive);
}

TEST_CASE("E3 measures both radicals exactly") {
  const CheckReport m7 = check_E3(qpair("m7"));
  REQUIRE(m7.items.size() == 2);
  CHECK(m7.items[0].name == "E3_form_on_A");
  CHECK(m7.items[0].status == Status::Pass);
  CHECK(m7.items[0].data["rank"] == 7);
  CHECK(m7.items[0].data["det"] == "-2");
  CHECK(m7.items[1].name == "E3_form_on_H");
  CHECK(m7.items[1].status == Status::Pass);
  CHECK(m7.items[1].data["rank"] == 1);

  const CheckReport ab = check_E3(qpair("abelian2"));
  CHECK(ab.items[0].status == Status::Fail);
  REQUIRE(ab.items[0].witness.has_value());
  CHECK(ab.items[0].witness->inputs == std::vector<std::string>{"e1"});
  CHECK(ab.items[1].status == Status::Fail);
  CHECK(ab.overall() == Status::Fail);
}

TEST_CASE("root classification by the exact pairing") {
  const RootClassification m7 = classify_roots(qpair("m7"));
  CHECK(m7.exact);
  CHECK(m7.nonisotropic == std::vector<Root>{root1(-2), root1(2)});
  CHECK(m7.isotropic == std::vector<Root>{root1(0)});

  const RootClassification osp = classify_roots(qpair("osp12"));
  CHECK(osp.exact);
  CHECK(osp.nonisotropic ==
        std::vector<Root>{root1(-2), root1(-1), root1(1), root1(2)});
  CHECK(osp.isotropic == std::vector<Root>{root1(0)});

  const RootClassification ab = classify_roots(qpair("abelian2"));
  CHECK_FALSE(ab.exact);  // degenerate H: budgeted, as-observed
  CHECK(ab.nonisotropic.empty());
}

TEST_CASE("the m7 core is the whole algebra with H_c = span(e1)") {
  const CoreResult core = compute_core(qpair("m7"));
  REQUIRE(core.core_basis.size() == 7);
  for (size_t i = 0; i < 7; ++i) CHECK(core.core_basis[i] == basis_elem(i));
  REQUIRE(core.hc_basis.size() == 1);
  CHECK(core.hc_basis[0] == basis_elem(0));
}

TEST_CASE("core closure: products of core elements stay inside the core span") {
  for (const char* name : {"m7", "sl2", "osp12"}) {
    const QuadraticToralPair q = qpair(name);
    const CoreResult core = compute_core(q);
    const size_t n = q.datum.pair.alg.dim();
    RowSpan span(n);
    for (const auto& e : core.core_basis) span.insert(to_vec(e, n));
    for (const auto& a : core.core_basis)
      for (const auto& b : core.core_basis) {
        INFO(name);
        CHECK(span.contains(to_vec(mul(q.datum.pair.alg, a, b), n)));
      }
  }
}

TEST_CASE("an isotropic-only algebra has the zero core") {
  const CoreResult core = compute_core(qpair("abelian2"));
  CHECK(core.core_basis.empty());
  CHECK(core.hc_basis.empty());

  const CheckReport verify = verify_core_pair(qpair("abelian2"));
  REQUIRE(verify.items.size() == 1);
  CHECK(verify.items[0].name == "core_empty");
  CHECK(verify.items[0].status == Status::Pass);
}

TEST_CASE("verify_core_pair re-runs the axioms on the core of m7") {
  const CheckReport report = verify_core_pair(qpair("m7"));
  REQUIRE(!report.items.empty());
  CHECK(report.items[0].name == "core_pair");
  bool saw_e1 = false, saw_e2 = false;
  for (const auto& item : report.items) {
    INFO(item.name);
    CHECK(item.status == Status::Pass);
    if (item.name.rfind("core_E1 root", 0) == 0) saw_e1 = true;
    if (item.name == "core_E2prime_value_set") saw_e2 = true;
  }
  CHECK(saw_e1);
  CHECK(saw_e2);
  CHECK(report.overall() == Status::Pass);
}

TEST_CASE("a core that misses H is reported, not repaired") {
  const QuadraticToralPair q =
      make_quadratic_pair(decompose(toral_pair_from_rows(hollow_core())));
  const RootClassification cls = classify_roots(q);
  CHECK(cls.exact);
  CHECK(cls.nonisotropic == std::vector<Root>{root1(-1), root1(1)});

  const CoreResult core = compute_core(q);
  CHECK(core.core_basis.size() == 2);  // span(x, y): products vanish
  CHECK(core.hc_basis.empty());

  const CheckReport verify = verify_core_pair(q);
  REQUIRE(verify.items.size() == 1);
  CHECK(verify.items[0].name == "core_toral_part");
  CHECK(verify.items[0].status == Status::Fail);
}
