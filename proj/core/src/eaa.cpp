#include "mforge/eaa.hpp"

#include <algorithm>
#include <set>

#include "mforge/identities.hpp"
#include "mforge/prng.hpp"

namespace mforge {

namespace {

Mat h_column_matrix(const StructureAlgebra& alg, const std::vector<Elem>& h) {
  const size_t n = alg.dim();
  Mat m = zero_mat(n, h.size());
  for (size_t j = 0; j < h.size(); ++j)
    for (const auto& [r, c] : h[j]) m[r][j] = c;
  return m;
}

}  // namespace

std::optional<Vec> h_coordinates(const QuadraticToralPair& q, const Elem& e) {
  const auto& alg = q.datum.pair.alg;
  const Mat cols = h_column_matrix(alg, q.datum.pair.h);
  const auto x = solve(cols, to_vec(e, alg.dim()));
  if (!x) return std::nullopt;
  // solve() ignores inconsistent overdetermined rows only when rref finds a
  // pivot in the rhs column; re-verify to be safe
  Elem rebuilt;
  for (size_t j = 0; j < q.datum.pair.h.size(); ++j)
    rebuilt = add(std::move(rebuilt), scale(q.datum.pair.h[j], (*x)[j]));
  if (rebuilt != e) return std::nullopt;
  return x;
}

namespace {

Rat root_apply(const Root& alpha, const Vec& h_coeffs) {
  Rat out(0);
  for (size_t i = 0; i < h_coeffs.size(); ++i)
    if (h_coeffs[i] != 0) out += alpha.values[i] * h_coeffs[i];
  return out;
}

}  // namespace

QuadraticToralPair make_quadratic_pair(RootDatum datum) {
  const StructureAlgebra& alg = datum.pair.alg;
  if (!alg.gram) throw std::invalid_argument("quadratic pair requires a form");
  const CheckReport form = check_form(alg, 1);
  // items: invariant, b_symmetric, b_graded, nondegenerate
  if (form.items[1].status != Status::Pass)
    throw std::invalid_argument("form is not B-symmetric; witness (" +
                                form.items[1].witness->inputs[0] + ", " +
                                form.items[1].witness->inputs[1] + ")");
  if (form.items[2].status != Status::Pass)
    throw std::invalid_argument("form is not B-graded; witness (" +
                                form.items[2].witness->inputs[0] + ", " +
                                form.items[2].witness->inputs[1] + ")");
  QuadraticToralPair q{std::move(datum), {}, false, form.items[0].status == Status::Pass};
  const auto& h = q.datum.pair.h;
  q.h_gram = zero_mat(h.size(), h.size());
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = 0; j < h.size(); ++j)
      q.h_gram[i][j] = form_value(q.datum.pair.alg, h[i], h[j]);
  q.h_nondegenerate = rank(q.h_gram) == h.size();
  return q;
}

Elem nu_inverse(const QuadraticToralPair& q, const Root& alpha) {
  if (alpha.zero()) return {};
  if (!q.h_nondegenerate) throw DegenerateOnH();
  // t = sum c_j h_j with sum_j c_j (h_j, h_i) = alpha(h_i)
  const auto c = solve(transpose(q.h_gram), alpha.values);
  if (!c) throw DegenerateOnH();
  Elem t;
  for (size_t j = 0; j < q.datum.pair.h.size(); ++j)
    t = add(std::move(t), scale(q.datum.pair.h[j], (*c)[j]));
  return t;
}

Rat root_pairing(const QuadraticToralPair& q, const Root& alpha, const Root& beta) {
  return form_value(q.datum.pair.alg, nu_inverse(q, alpha), nu_inverse(q, beta));
}

FindPairOutcome find_test_pair(const QuadraticToralPair& q, const Root& alpha,
                               int degree, int budget, uint64_t seed) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  if (alpha.zero()) throw std::invalid_argument("find_test_pair: alpha must be nonzero");
  const RootSpace* plus = q.datum.space(alpha);
  if (plus == nullptr || !plus->by_degree.count(degree))
    throw std::invalid_argument("find_test_pair: alpha not in R_b");

  FindPairOutcome out;
  const int nb = alg.grading.neg(degree);
  const RootSpace* minus = q.datum.space(negate_root(alpha));
  if (minus == nullptr || !minus->by_degree.count(nb)) {
    out.structural_fail = true;
    out.note = "opposite root space A^" + root_str(negate_root(alpha)) + "_" +
               std::to_string(nb) + " is missing";
    return out;
  }
  const auto& P = plus->by_degree.at(degree);
  const auto& M = minus->by_degree.at(nb);

  auto verify = [&](const Elem& x, const Elem& y) -> std::optional<TestPairWitness> {
    const Elem p = mul(alg, x, y);
    if (is_zero(p)) return std::nullopt;
    const auto coords = h_coordinates(q, p);
    if (!coords) return std::nullopt;
    TestPairWitness w;
    w.root = alpha;
    w.degree = degree;
    w.x_plus = x;
    w.x_minus = y;
    w.product = p;
    w.pairing = form_value(alg, x, y);
    w.block = (w.pairing == 1);
    return w;
  };

  // form-guided pass: nonzero pairing entries first
  for (const auto& u : P)
    for (const auto& v : M)
      if (form_value(alg, u, v) != 0)
        if (auto w = verify(u, v)) {
          out.witness = std::move(w);
          return out;
        }
  // all basis pairs
  for (const auto& u : P)
    for (const auto& v : M)
      if (auto w = verify(u, v)) {
        out.witness = std::move(w);
        return out;
      }
  // seeded random combinations
  for (int trial = 0; trial < budget; ++trial) {
    SplitMix64 rng(mix_seed(seed, static_cast<uint64_t>(trial)));
    Elem x, y;
    for (const auto& u : P) x = add(std::move(x), scale(u, Rat(rng.range(-3, 3))));
    for (const auto& v : M) y = add(std::move(y), scale(v, Rat(rng.range(-3, 3))));
    if (is_zero(x) || is_zero(y)) continue;
    if (auto w = verify(x, y)) {
      out.witness = std::move(w);
      return out;
    }
  }
  out.note = "no test pair found (basis pairs + " + std::to_string(budget) +
             " random combinations)";
  return out;
}

CheckItem check_block_identity(const QuadraticToralPair& q, const TestPairWitness& w) {
  if (!q.h_nondegenerate) throw DegenerateOnH();
  const StructureAlgebra& alg = q.datum.pair.alg;
  CheckItem item;
  item.name = "block_identity root " + root_str(w.root);
  const Elem lhs = mul(alg, w.x_plus, w.x_minus);
  const Elem rhs = scale(nu_inverse(q, w.root), w.pairing);
  if (lhs != rhs) {
    item.status = Status::Fail;
    item.witness = Witness{{render_elem(alg, w.x_plus), render_elem(alg, w.x_minus)},
                           "x+x- = " + render_elem(alg, lhs) + ", (x+,x-)*t_alpha = " +
                               render_elem(alg, rhs)};
  } else {
    item.details = "x+x- = " + render_elem(alg, lhs) + " = (x+,x-)*t_alpha";
  }
  return item;
}

CheckReport check_E1(const QuadraticToralPair& q, int budget, uint64_t seed) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  CheckReport report;
  report.seed = seed;
  for (int b : alg.grading.elements()) {
    for (const Root& alpha : root_support(q.datum, b)) {
      if (alpha.zero()) continue;
      CheckItem item;
      item.name = "E1 root " + root_str(alpha) + " degree " + std::to_string(b);
      const uint64_t root_seed = seed ^ static_cast<uint64_t>(q.datum.root_index(alpha));
      const auto outcome = find_test_pair(q, alpha, b, budget, root_seed);
      if (outcome.witness) {
        const auto& w = *outcome.witness;
        item.witness = Witness{{render_elem(alg, w.x_plus), render_elem(alg, w.x_minus)},
                               "product = " + render_elem(alg, w.product) +
                                   ", pairing = " + rat_str(w.pairing)};
      } else if (outcome.structural_fail) {
        item.status = Status::Fail;
        item.witness = Witness{{root_str(alpha), "degree " + std::to_string(b)}, outcome.note};
      } else {
        item.status = Status::Inconclusive;
        item.details = outcome.note;
      }
      report.items.push_back(std::move(item));
    }
  }
  if (report.items.empty())
    report.items.push_back(pass_item("E1", 0, "no nonzero roots; vacuous"));
  return report;
}

CheckItem check_E2prime(const QuadraticToralPair& q) {
  if (!q.h_nondegenerate) throw DegenerateOnH();
  CheckItem item;
  item.name = "E2prime_value_set";
  std::set<Rat> values;
  const auto roots = q.datum.roots();
  for (const auto& a : roots)
    for (const auto& b : roots) values.insert(root_pairing(q, a, b));
  item.count = static_cast<uint64_t>(roots.size()) * roots.size();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : values) arr.push_back(rat_str(v));
  item.data["values"] = std::move(arr);
  item.details = "value set of (alpha,beta) over all root pairs; finite with " +
                 std::to_string(values.size()) + " values";
  return item;
}

CheckItem check_E2_sampled(const QuadraticToralPair& q, int budget, uint64_t seed) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  CheckItem item;
  item.name = "E2_sampled_observed_set";
  item.count = static_cast<uint64_t>(budget);
  std::set<Rat> observed;
  uint64_t pairs_used = 0;
  for (const auto& space : q.datum.spaces) {
    if (space.root.zero()) continue;
    const RootSpace* minus = q.datum.space(negate_root(space.root));
    if (minus == nullptr) continue;
    const uint64_t root_seed = seed ^ static_cast<uint64_t>(q.datum.root_index(space.root));
    for (int trial = 0; trial < budget; ++trial) {
      SplitMix64 rng(mix_seed(root_seed, static_cast<uint64_t>(trial)));
      Elem x, y;
      for (const auto& u : space.basis) x = add(std::move(x), scale(u, Rat(rng.range(-3, 3))));
      for (const auto& v : minus->basis) y = add(std::move(y), scale(v, Rat(rng.range(-3, 3))));
      const Rat pairing = is_zero(x) || is_zero(y) ? Rat(0) : form_value(alg, x, y);
      if (pairing == 0) continue;
      y = scale(std::move(y), Rat(1) / pairing);  // block pair: (x, y) = 1
      const Elem p = mul(alg, x, y);
      const auto coords = h_coordinates(q, p);
      if (!coords) continue;  // product escaped H; E1-type anomaly, not E2 data
      ++pairs_used;
      for (const auto& beta : q.datum.roots()) observed.insert(root_apply(beta, *coords));
    }
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : observed) arr.push_back(rat_str(v));
  item.data["observed_values"] = std::move(arr);
  item.data["block_pairs_sampled"] = pairs_used;
  if (pairs_used == 0) {
    item.status = Status::Inconclusive;
    item.details = "no block test pairs found within budget";
  } else {
    item.details = "observed beta(x+x-) values over sampled block pairs; partial by "
                   "nature (the axiom quantifies over all pairs)";
  }
  return item;
}

CheckReport check_E3(const QuadraticToralPair& q) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  const size_t n = alg.dim();
  CheckReport report;
  {
    CheckItem item;
    item.name = "E3_form_on_A";
    const size_t r = rank(*alg.gram);
    item.data["rank"] = r;
    item.data["dim"] = n;
    item.data["det"] = rat_str(det(*alg.gram));
    if (r != n) {
      item.status = Status::Fail;
      const auto ker = kernel(transpose(*alg.gram));
      item.witness = Witness{{render_elem(alg, from_vec(ker.front()))}, "radical vector"};
    }
    report.items.push_back(std::move(item));
  }
  {
    CheckItem item;
    item.name = "E3_form_on_H";
    const size_t hr = rank(q.h_gram);
    item.data["rank"] = hr;
    item.data["dim"] = q.datum.pair.h.size();
    if (hr != q.datum.pair.h.size()) {
      item.status = Status::Fail;
      const auto ker = kernel(transpose(q.h_gram));
      Elem bad;
      for (size_t j = 0; j < q.datum.pair.h.size(); ++j)
        bad = add(std::move(bad), scale(q.datum.pair.h[j], ker.front()[j]));
      item.witness = Witness{{render_elem(alg, bad)}, "H-radical vector"};
    }
    report.items.push_back(std::move(item));
  }
  return report;
}

RootClassification classify_roots(const QuadraticToralPair& q, int budget, uint64_t seed) {
  RootClassification out;
  const auto roots = q.datum.roots();
  std::vector<bool> noniso(roots.size(), false);

  if (q.h_nondegenerate) {
    for (size_t i = 0; i < roots.size(); ++i)
      for (const auto& b : roots)
        if (root_pairing(q, roots[i], b) != 0) {
          noniso[i] = true;
          break;
        }
  } else {
    out.exact = false;  // budgeted search; absence of evidence stays partial
    for (int b : q.datum.pair.alg.grading.elements()) {
      for (const Root& beta : root_support(q.datum, b)) {
        if (beta.zero()) continue;
        const uint64_t root_seed = seed ^ static_cast<uint64_t>(q.datum.root_index(beta));
        const auto outcome = find_test_pair(q, beta, b, budget, root_seed);
        if (!outcome.witness) continue;
        const auto coords = h_coordinates(q, outcome.witness->product);
        if (!coords) continue;
        for (size_t i = 0; i < roots.size(); ++i)
          if (root_apply(roots[i], *coords) != 0) noniso[i] = true;
      }
    }
  }
  for (size_t i = 0; i < roots.size(); ++i)
    (noniso[i] ? out.nonisotropic : out.isotropic).push_back(roots[i]);
  return out;
}

CoreResult compute_core(const QuadraticToralPair& q, int budget, uint64_t seed) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  const size_t n = alg.dim();
  CoreResult out;
  out.classification = classify_roots(q, budget, seed);

  std::map<int, RowSpan> by_degree;  // homogeneous spans, keyed by degree
  std::vector<Elem> worklist;
  auto try_insert = [&](const Elem& e) {
    if (is_zero(e)) return false;
    const int deg = *homogeneous_degree(alg, e);
    auto it = by_degree.find(deg);
    if (it == by_degree.end()) it = by_degree.emplace(deg, RowSpan(n)).first;
    if (!it->second.insert(to_vec(e, n))) return false;
    worklist.push_back(e);
    return true;
  };

  for (const auto& alpha : out.classification.nonisotropic) {
    const RootSpace* space = q.datum.space(alpha);
    for (const auto& v : space->basis) try_insert(v);
  }
  for (size_t i = 0; i < worklist.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      try_insert(mul(alg, worklist[i], worklist[j]));
      try_insert(mul(alg, worklist[j], worklist[i]));
    }

  std::vector<Vec> core_rows;
  for (const auto& [deg, span] : by_degree)
    for (const auto& row : span.rows()) {
      out.core_basis.push_back(from_vec(row));
      core_rows.push_back(row);
    }

  std::vector<Vec> h_rows;
  for (const auto& h : q.datum.pair.h) h_rows.push_back(to_vec(h, n));
  for (const auto& row : intersect_spans(h_rows, core_rows, n))
    out.hc_basis.push_back(from_vec(row));
  return out;
}

namespace {

// the core as a standalone algebra, in the core basis coordinates
StructureAlgebra restrict_to_core(const StructureAlgebra& alg,
                                  const std::vector<Elem>& rows) {
  const size_t n = alg.dim();
  const size_t m = rows.size();
  Mat cols = zero_mat(n, m);
  for (size_t j = 0; j < m; ++j)
    for (const auto& [r, c] : rows[j]) cols[r][j] = c;

  StructureAlgebra core;
  core.grading = alg.grading;
  core.bcommutative = alg.bcommutative;
  core.description = "core subalgebra";
  std::set<std::string> taken;
  for (size_t j = 0; j < m; ++j) {
    std::string name;
    if (rows[j].size() == 1 && rows[j].begin()->second == 1) {
      name = alg.names[rows[j].begin()->first];
    } else {
      name = "w" + std::to_string(j + 1);
      while (std::find(alg.names.begin(), alg.names.end(), name) != alg.names.end() ||
             taken.count(name))
        name += "c";
    }
    taken.insert(name);
    core.names.push_back(name);
    core.degrees.push_back(*homogeneous_degree(alg, rows[j]));
  }
  core.table.assign(m, std::vector<Elem>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      const Elem p = mul(alg, rows[i], rows[j]);
      const auto coords = solve(cols, to_vec(p, n));
      if (!coords) throw std::logic_error("core closure violated");
      core.table[i][j] = from_vec(*coords);
    }
  Mat gram = zero_mat(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) gram[i][j] = form_value(alg, rows[i], rows[j]);
  core.gram = std::move(gram);
  return core;
}

}  // namespace

CheckReport verify_core_pair(const QuadraticToralPair& q, int budget, uint64_t seed) {
  const StructureAlgebra& alg = q.datum.pair.alg;
  const size_t n = alg.dim();
  CheckReport report;
  report.seed = seed;
  const CoreResult core = compute_core(q, budget, seed);

  if (core.core_basis.empty()) {
    report.items.push_back(pass_item("core_empty", 0,
                                     "core is zero; the extended-pair claim is vacuous"));
    return report;
  }
  if (core.hc_basis.empty()) {
    CheckItem item;
    item.name = "core_toral_part";
    item.status = Status::Fail;
    item.details = "core is nonzero but H intersect core is zero; no toral pair to verify";
    report.items.push_back(std::move(item));
    return report;
  }

  StructureAlgebra core_alg = restrict_to_core(alg, core.core_basis);
  Mat cols = zero_mat(n, core.core_basis.size());
  for (size_t j = 0; j < core.core_basis.size(); ++j)
    for (const auto& [r, c] : core.core_basis[j]) cols[r][j] = c;
  std::vector<Elem> hc;
  for (const auto& h : core.hc_basis) {
    const auto coords = solve(cols, to_vec(h, n));
    if (!coords) throw std::logic_error("H_c escaped the core span");
    hc.push_back(from_vec(*coords));
  }
  core_alg.toral_rows.clear();
  for (const auto& e : hc) core_alg.toral_rows.push_back(to_vec(e, core.core_basis.size()));

  report.items.push_back(pass_item(
      "core_pair", 0,
      "core dimension " + std::to_string(core.core_basis.size()) + ", H_c dimension " +
          std::to_string(hc.size())));

  try {
    const ToralPair pair = make_toral_pair(core_alg, hc);
    const RootDatum datum = decompose(pair);
    CheckReport toral = verify_toral(datum);
    for (auto& item : toral.items) {
      item.name = "core_" + item.name;
      report.items.push_back(std::move(item));
    }
    QuadraticToralPair qc = make_quadratic_pair(datum);
    CheckReport e1 = check_E1(qc, budget, seed);
    for (auto& item : e1.items) {
      item.name = "core_" + item.name;
      report.items.push_back(std::move(item));
    }
    if (qc.h_nondegenerate) {
      CheckItem e2 = check_E2prime(qc);
      e2.name = "core_" + e2.name;
      report.items.push_back(std::move(e2));
    } else {
      CheckItem e2 = check_E2_sampled(qc, budget, seed);
      e2.name = "core_" + e2.name;
      report.items.push_back(std::move(e2));
    }
  } catch (const DecomposeError& e) {
    CheckItem item;
    item.name = "core_decompose";
    item.status = Status::Fail;
    item.details = e.what();
    report.items.push_back(std::move(item));
  } catch (const std::invalid_argument& e) {
    CheckItem item;
    item.name = "core_pair_structure";
    item.status = Status::Fail;
    item.details = e.what();
    report.items.push_back(std::move(item));
  }
  return report;
}

}  // namespace mforge
