#include "mforge/loop.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "mforge/eaa.hpp"
#include "residual.hpp"
#include "scan.hpp"

namespace mforge {

std::string gvec_str(const GVec& s) {
  std::string out = "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Cocycle make_cocycle(Mat q) {
  if (q.empty()) throw std::invalid_argument("cocycle matrix must be nonempty");
  const size_t nu = q.size();
  for (const auto& row : q)
    if (row.size() != nu) throw std::invalid_argument("cocycle matrix must be square");
  for (size_t i = 0; i < nu; ++i)
    for (size_t j = 0; j < nu; ++j) {
      if (q[i][j] == 0) throw std::invalid_argument("cocycle entries must be nonzero");
      if (q[i][j] != q[j][i])
        throw std::invalid_argument("cocycle matrix must be symmetric");
    }
  return Cocycle{nu, std::move(q)};
}

Cocycle ones_cocycle(size_t nu) {
  Mat q(nu, Vec(nu, Rat(1)));
  return Cocycle{nu, std::move(q)};
}

Rat cocycle_lambda(const Cocycle& c, const GVec& sigma, const GVec& tau) {
  Rat out(1);
  for (size_t i = 0; i < c.nu; ++i) {
    if (sigma[i] == 0) continue;
    for (size_t j = 0; j < c.nu; ++j) {
      if (tau[j] == 0 || c.q[i][j] == 1) continue;
      out *= rat_pow(c.q[i][j], sigma[i] * tau[j]);
    }
  }
  return out;
}

std::string flavor_name(LoopFlavor f) {
  switch (f) {
    case LoopFlavor::Plain: return "plain";
    case LoopFlavor::Tilde: return "tilde";
    case LoopFlavor::Hat: return "hat";
  }
  return "?";
}

LoopElem tensor_elem(size_t base_index, GVec sigma, Rat coeff) {
  LoopElem e;
  if (coeff != 0) e.tensor[{base_index, std::move(sigma)}] = std::move(coeff);
  return e;
}

LoopAlgebra make_loop(StructureAlgebra base, Cocycle cocycle, LoopFlavor flavor) {
  base.validate();
  if (flavor != LoopFlavor::Plain && !base.gram)
    throw std::invalid_argument(
        "central extensions need a form on the base algebra");
  return LoopAlgebra{std::move(base), std::move(cocycle), flavor};
}

namespace {

template <class K>
void acc(std::map<K, Rat>& m, const K& k, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

}  // namespace

LoopElem l_scale(LoopElem a, const Rat& c) {
  if (c == 0) return {};
  for (auto& [k, v] : a.tensor) v *= c;
  for (auto& [k, v] : a.v) v *= c;
  for (auto& [k, v] : a.d) v *= c;
  return a;
}

LoopElem l_add(LoopElem a, const LoopElem& b) {
  for (const auto& [k, c] : b.tensor) acc(a.tensor, k, c);
  for (const auto& [k, c] : b.v) acc(a.v, k, c);
  for (const auto& [k, c] : b.d) acc(a.d, k, c);
  return a;
}

LoopElem l_sub(LoopElem a, const LoopElem& b) {
  for (const auto& [k, c] : b.tensor) acc(a.tensor, k, Rat(-c));
  for (const auto& [k, c] : b.v) acc(a.v, k, Rat(-c));
  for (const auto& [k, c] : b.d) acc(a.d, k, Rat(-c));
  return a;
}

LoopElem loop_mul(const LoopAlgebra& la, const LoopElem& a, const LoopElem& b) {
  LoopElem out;
  const size_t nu = la.cocycle.nu;
  for (const auto& [ka, ca] : a.tensor) {
    const auto& [i, sig] = ka;
    for (const auto& [kb, cb] : b.tensor) {
      const auto& [j, tau] = kb;
      const Rat co = ca * cb * cocycle_lambda(la.cocycle, sig, tau);
      if (co == 0) continue;
      GVec st(nu);
      bool sum_zero = true;
      for (size_t m = 0; m < nu; ++m) {
        st[m] = sig[m] + tau[m];
        if (st[m] != 0) sum_zero = false;
      }
      for (const auto& [r, c] : la.base.table[i][j])
        acc(out.tensor, std::make_pair(r, st), co * c);
      if (la.flavor != LoopFlavor::Plain && sum_zero) {
        const Rat g = (*la.base.gram)[i][j];
        if (g != 0)
          for (size_t m = 0; m < nu; ++m)
            if (sig[m] != 0) acc(out.v, m, co * g * Rat(sig[m]));
      }
    }
  }
  if (la.flavor == LoopFlavor::Hat) {
    for (const auto& [m, cd] : a.d)
      for (const auto& [kb, cb] : b.tensor) {
        const auto& [j, tau] = kb;
        if (tau[m] != 0) acc(out.tensor, kb, cd * cb * Rat(tau[m]));
      }
    for (const auto& [ka, ca] : a.tensor) {
      const auto& [i, sig] = ka;
      for (const auto& [m, cd] : b.d)
        if (sig[m] != 0) acc(out.tensor, ka, Rat(-1) * ca * cd * Rat(sig[m]));
    }
  }
  return out;
}

Rat loop_form(const LoopAlgebra& la, const LoopElem& a, const LoopElem& b) {
  Rat out(0);
  if (la.flavor != LoopFlavor::Plain || la.base.gram) {
    const Mat& g = *la.base.gram;
    for (const auto& [ka, ca] : a.tensor) {
      const auto& [i, sig] = ka;
      for (const auto& [kb, cb] : b.tensor) {
        const auto& [j, tau] = kb;
        if (g[i][j] == 0) continue;
        bool opposite = true;
        for (size_t m = 0; m < la.cocycle.nu; ++m)
          if (sig[m] + tau[m] != 0) {
            opposite = false;
            break;
          }
        if (opposite) out += ca * cb * cocycle_lambda(la.cocycle, sig, tau) * g[i][j];
      }
    }
  }
  for (const auto& [m, cv] : a.v) {
    auto it = b.d.find(m);
    if (it != b.d.end()) out += cv * it->second;
  }
  for (const auto& [m, cd] : a.d) {
    auto it = b.v.find(m);
    if (it != b.v.end()) out += cd * it->second;
  }
  return out;
}

std::optional<int> loop_degree(const LoopAlgebra& la, const LoopElem& e) {
  std::optional<int> deg;
  auto merge = [&](int d) {
    d = la.base.grading.canon(d);
    if (!deg) {
      deg = d;
      return true;
    }
    return *deg == d;
  };
  for (const auto& [k, c] : e.tensor) {
    (void)c;
    if (!merge(la.base.degrees[k.first])) return std::nullopt;
  }
  if ((!e.v.empty() || !e.d.empty()) && !merge(0)) return std::nullopt;
  return deg.value_or(0);
}

std::string render_loop_elem(const LoopAlgebra& la, const LoopElem& e) {
  if (e.zero()) return "0";
  std::string out;
  auto push = [&](const Rat& c, const std::string& name) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    std::string piece = (a == 1) ? name : rat_str(a) + "*" + name;
    if (out.empty()) {
      out = neg ? "-" + piece : piece;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  };
  for (const auto& [k, c] : e.tensor)
    push(c, la.base.names[k.first] + "@t" + gvec_str(k.second));
  for (const auto& [m, c] : e.v) push(c, "c" + std::to_string(m + 1));
  for (const auto& [m, c] : e.d) push(c, "d" + std::to_string(m + 1));
  return out;
}

std::vector<GVec> box_points(size_t nu, int k) {
  if (k < 0) throw std::invalid_argument("box radius must be nonnegative");
  std::vector<GVec> out;
  GVec cur(nu, -static_cast<long>(k));
  while (true) {
    out.push_back(cur);
    size_t pos = nu;
    while (pos > 0) {
      --pos;
      if (cur[pos] < k) {
        ++cur[pos];
        for (size_t z = pos + 1; z < nu; ++z) cur[z] = -static_cast<long>(k);
        break;
      }
      if (pos == 0) return out;
    }
  }
}

std::vector<LoopAtom> truncated_basis(const LoopAlgebra& la, int k) {
  const auto box = box_points(la.cocycle.nu, k);
  std::vector<LoopAtom> atoms;
  for (size_t i = 0; i < la.base.dim(); ++i)
    for (const auto& s : box)
      atoms.push_back(LoopAtom{tensor_elem(i, s), la.base.grading.canon(la.base.degrees[i]),
                               la.base.names[i] + "@t" + gvec_str(s)});
  if (la.flavor != LoopFlavor::Plain)
    for (size_t m = 0; m < la.cocycle.nu; ++m) {
      LoopElem e;
      e.v[m] = 1;
      atoms.push_back(LoopAtom{std::move(e), 0, "c" + std::to_string(m + 1)});
    }
  if (la.flavor == LoopFlavor::Hat)
    for (size_t m = 0; m < la.cocycle.nu; ++m) {
      LoopElem e;
      e.d[m] = 1;
      atoms.push_back(LoopAtom{std::move(e), 0, "d" + std::to_string(m + 1)});
    }
  return atoms;
}

namespace {

struct LoopCtx {
  using E = LoopElem;
  const LoopAlgebra& la;
  E mul(const E& a, const E& b) const { return loop_mul(la, a, b); }
  E add(E a, const E& b) const { return l_add(std::move(a), b); }
  E sub(E a, const E& b) const { return l_sub(std::move(a), b); }
  E sgn(E a, int s) const { return s == 1 ? a : l_scale(std::move(a), Rat(-1)); }
  int comm_sign(long da, long db) const {
    return la.base.grading.commute_sign(static_cast<int>(da), static_cast<int>(db));
  }
};

}  // namespace

CheckReport check_loop_identity(const LoopAlgebra& la, IdentityName id, int box_k,
                                int threads) {
  const IdentityInfo& info = identity_info(id);
  if (!info.multilinear)
    throw std::invalid_argument("identity '" + std::string(info.name) +
                                "' is not multilinear; affinization checks require "
                                "multilinearity");
  const auto atoms = truncated_basis(la, box_k);
  const size_t n = atoms.size();
  uint64_t domain = 1;
  for (int a = 0; a < info.arity; ++a) domain *= n;

  CheckReport report;
  CheckItem item;
  item.name = info.name;
  item.count = domain;
  item.data["atoms"] = n;
  item.data["box"] = box_k;
  item.data["flavor"] = flavor_name(la.flavor);
  if (domain > 100'000'000ull) {
    item.status = Status::Refused;
    item.details = "domain of " + std::to_string(domain) +
                   " truncated-basis tuples exceeds the 10^8 cap; shrink the box";
    report.items.push_back(std::move(item));
    return report;
  }

  const LoopCtx ctx{la};
  auto residual_at = [&](const std::vector<size_t>& t) {
    std::array<LoopElem, 4> args{};
    std::array<long, 4> degs{};
    for (int a = 0; a < info.arity; ++a) {
      args[a] = atoms[t[a]].elem;
      degs[a] = atoms[t[a]].degree;
    }
    return detail::identity_residual_at(ctx, id, args, degs);
  };
  const auto result = detail::scan_tuples(n, info.arity, threads, [&](const std::vector<size_t>& t) {
    return residual_at(t).zero();
  });
  if (result.first_fail) {
    item.status = Status::Fail;
    Witness w;
    for (size_t idx : *result.first_fail) w.inputs.push_back(atoms[idx].name);
    w.value = render_loop_elem(la, residual_at(*result.first_fail));
    item.witness = std::move(w);
  } else {
    item.details = "exhaustive over truncated-basis tuples; exact for the span of "
                   "the truncation";
    if (domain > 1'000'000ull)
      item.details += " (large domain: " + std::to_string(domain) + " tuples)";
  }
  report.items.push_back(std::move(item));
  return report;
}

CheckReport malcev_obstruction(const StructureAlgebra& alg, int threads) {
  if (!alg.gram)
    throw std::invalid_argument("obstruction analysis requires a form");
  CheckReport report;

  CheckItem bc = check_identity(alg, IdentityName::BCommutativity,
                                CheckMode::Exhaustive, {}, threads);
  if (bc.status != Status::Pass) {
    CheckItem item;
    item.name = "hypothesis_b_commutative";
    item.status = Status::Refused;
    item.witness = bc.witness;
    item.details = "the algebra is not B-commutative; the affinization "
                   "predictions assume it";
    report.items.push_back(std::move(item));
    return report;
  }
  report.items.push_back(pass_item("hypothesis_b_commutative", bc.count,
                                   "B-commutativity verified exhaustively"));

  const size_t n = alg.dim();
  std::vector<Elem> basis(n);
  for (size_t i = 0; i < n; ++i) basis[i] = basis_elem(i);
  // all n^3 signed Jacobians, indexed [x][y][z]
  std::vector<std::vector<std::vector<Elem>>> jb(
      n, std::vector<std::vector<Elem>>(n, std::vector<Elem>(n)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        jb[i][j][k] = super_jacobian(alg, basis[i], basis[j], basis[k]);

  bool skew_ok = true, even_ok = true, pairing_ok = true, balanced_ok = true;
  {
    CheckItem item;
    item.name = "skew_jacobian";
    item.count = static_cast<uint64_t>(n) * n * n;
    item.details = "J(x,y,z) + J(z,y,x) = 0 over basis triples (polarized form of "
                   "J(x,y,x) = 0)";
    for (size_t i = 0; i < n && skew_ok; ++i)
      for (size_t j = 0; j < n && skew_ok; ++j)
        for (size_t k = 0; k < n && skew_ok; ++k) {
          const Elem r = add(jb[i][j][k], jb[k][j][i]);
          if (!is_zero(r)) {
            skew_ok = false;
            item.status = Status::Fail;
            item.witness = Witness{{alg.names[i], alg.names[j], alg.names[k]},
                                   render_elem(alg, r)};
          }
        }
    report.items.push_back(std::move(item));
  }
  {
    CheckItem item;
    item.name = "degree0_jacobian";
    uint64_t count = 0;
    for (size_t i = 0; i < n; ++i)
      if (alg.grading.canon(alg.degrees[i]) == 0) count += static_cast<uint64_t>(n) * n;
    item.count = count;
    item.details = "J(x,y,z) = 0 whenever x has degree 0";
    for (size_t i = 0; i < n && even_ok; ++i) {
      if (alg.grading.canon(alg.degrees[i]) != 0) continue;
      for (size_t j = 0; j < n && even_ok; ++j)
        for (size_t k = 0; k < n && even_ok; ++k)
          if (!is_zero(jb[i][j][k])) {
            even_ok = false;
            item.status = Status::Fail;
            item.witness = Witness{{alg.names[i], alg.names[j], alg.names[k]},
                                   render_elem(alg, jb[i][j][k])};
          }
    }
    report.items.push_back(std::move(item));
  }
  auto pairing_scan = [&](bool balanced) {
    CheckItem item;
    item.name = balanced ? "jacobian_form_pairing_balanced" : "jacobian_form_pairing";
    item.details = std::string("(J(x,y,z), w) + (J(w,y,z), x) = 0 over basis "
                               "quadruples, plus the diagonal (J(x,y,z), x) = 0") +
                   (balanced ? ", restricted to degree(y) + degree(z) = 0" : "");
    bool ok = true;
    auto allowed = [&](size_t j, size_t k) {
      if (!balanced) return true;
      return alg.grading.canon(alg.grading.add(alg.degrees[j], alg.degrees[k])) == 0;
    };
    uint64_t allowed_pairs = 0;
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (allowed(j, k)) ++allowed_pairs;
    item.count = (static_cast<uint64_t>(n) * n + n) * allowed_pairs;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        for (size_t k = 0; k < n && ok; ++k) {
          if (!allowed(j, k)) continue;
          for (size_t w = 0; w < n && ok; ++w) {
            const Rat val = form_value(alg, jb[i][j][k], basis[w]) +
                            form_value(alg, jb[w][j][k], basis[i]);
            if (val != 0) {
              ok = false;
              item.status = Status::Fail;
              item.witness = Witness{
                  {alg.names[i], alg.names[j], alg.names[k], alg.names[w]},
                  rat_str(val)};
            }
          }
        }
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = 0; j < n && ok; ++j)
        for (size_t k = 0; k < n && ok; ++k) {
          if (!allowed(j, k)) continue;
          const Rat val = form_value(alg, jb[i][j][k], basis[i]);
          if (val != 0) {
            ok = false;
            item.status = Status::Fail;
            item.witness =
                Witness{{alg.names[i], alg.names[j], alg.names[k]}, rat_str(val)};
          }
        }
    (balanced ? balanced_ok : pairing_ok) = ok;
    report.items.push_back(std::move(item));
  };
  pairing_scan(false);
  pairing_scan(true);

  const bool hat = skew_ok && even_ok && pairing_ok;
  CheckItem pred;
  pred.name = "predictions";
  pred.data["tilde_malcev"] = balanced_ok;
  pred.data["hat_malcev"] = hat;
  pred.details = "tilde affinization predicted Malcev iff the balanced pairing "
                 "condition holds; hat iff all three unrestricted conditions hold "
                 "(equivalently, the base is a Lie superalgebra)";
  report.items.push_back(std::move(pred));
  return report;
}

std::vector<LoopElem> loop_root_space(const LoopAlgebra& la, const RootDatum& datum,
                                      const Root& alpha, const GVec& sigma) {
  if (sigma.size() != la.cocycle.nu)
    throw std::invalid_argument("window exponent has the wrong rank");
  const RootSpace* space = datum.space(alpha);
  if (space == nullptr) throw std::invalid_argument("root not in the support");

  std::vector<LoopElem> out;
  auto lift = [&](const Elem& e) {
    LoopElem x;
    for (const auto& [i, c] : e) x.tensor[{i, sigma}] = c;
    return x;
  };
  for (const auto& e : space->basis) out.push_back(lift(e));
  const bool zero_window =
      alpha.zero() && std::all_of(sigma.begin(), sigma.end(), [](long s) { return s == 0; });
  if (zero_window && la.flavor != LoopFlavor::Plain)
    for (size_t m = 0; m < la.cocycle.nu; ++m) {
      LoopElem e;
      e.v[m] = 1;
      out.push_back(std::move(e));
    }
  if (zero_window && la.flavor == LoopFlavor::Hat)
    for (size_t m = 0; m < la.cocycle.nu; ++m) {
      LoopElem e;
      e.d[m] = 1;
      out.push_back(std::move(e));
    }

  // eigen-equation audit against the lifted toral elements
  GVec zero(la.cocycle.nu, 0);
  for (size_t hi = 0; hi < datum.pair.h.size(); ++hi) {
    LoopElem h;
    for (const auto& [i, c] : datum.pair.h[hi]) h.tensor[{i, zero}] = c;
    for (const auto& x : out)
      if (loop_mul(la, h, x) != l_scale(x, alpha.values[hi]))
        throw std::logic_error("eigen-equation failed for a toral tensor");
  }
  if (la.flavor == LoopFlavor::Hat)
    for (size_t m = 0; m < la.cocycle.nu; ++m) {
      LoopElem dm;
      dm.d[m] = 1;
      for (const auto& x : out)
        if (loop_mul(la, dm, x) != l_scale(x, Rat(sigma[m])))
          throw std::logic_error("eigen-equation failed for a degree derivation");
    }
  return out;
}

namespace {

// product lies in the lifted toral subalgebra: tensor part at t^0 with base
// part in span(H); central part free (Tilde/Hat); no derivation part.
bool in_lifted_h(const LoopAlgebra& la, const QuadraticToralPair& qp,
                 const LoopElem& p) {
  Elem base_part;
  for (const auto& [k, c] : p.tensor) {
    for (long s : k.second)
      if (s != 0) return false;
    base_part[k.first] = c;
  }
  if (!p.d.empty()) return false;
  if (la.flavor == LoopFlavor::Plain && !p.v.empty()) return false;
  return base_part.empty() || h_coordinates(qp, base_part).has_value();
}

}  // namespace

CheckReport check_eaa_loop(const LoopAlgebra& la, int box_k, int budget, uint64_t seed) {
  CheckReport report;
  report.seed = seed;
  auto refuse = [&](std::string name, std::string why) {
    CheckItem item;
    item.name = std::move(name);
    item.status = Status::Refused;
    item.details = std::move(why);
    report.items.push_back(std::move(item));
  };

  if (la.base.toral_rows.empty()) {
    refuse("base_toral_data", "the base algebra declares no toral rows");
    return report;
  }
  std::optional<RootDatum> datum;
  std::optional<QuadraticToralPair> qp;
  try {
    std::vector<Elem> h;
    for (const auto& row : la.base.toral_rows) h.push_back(from_vec(row));
    datum = decompose(make_toral_pair(la.base, h));
    qp = make_quadratic_pair(*datum);
  } catch (const DecomposeError& e) {
    refuse("base_decomposition", e.what());
    return report;
  } catch (const std::invalid_argument& e) {
    refuse("base_pair", e.what());
    return report;
  }

  // gates: the affinization claims assume the base axioms
  {
    const CheckReport e1 = check_E1(*qp, budget, seed);
    if (e1.overall() != Status::Pass) {
      refuse("base_E1", "the base pair does not verify E1; nothing to lift");
      return report;
    }
    report.items.push_back(pass_item("base_E1", 0, "base test pairs verified"));
  }
  if (!qp->h_nondegenerate) {
    refuse("base_E2prime", "form degenerate on H; base root pairing undefined");
    return report;
  }
  CheckItem base_e2 = check_E2prime(*qp);
  base_e2.name = "base_E2prime";
  const nlohmann::ordered_json base_values = base_e2.data["values"];
  report.items.push_back(std::move(base_e2));

  const bool hat = la.flavor == LoopFlavor::Hat;
  if (hat) {
    const CheckReport e3 = check_E3(*qp);
    if (e3.overall() != Status::Pass) {
      refuse("base_E3", "the base form is degenerate; the hat construction "
                        "requires nondegeneracy");
      return report;
    }
    report.items.push_back(pass_item("base_E3", 0, "base form nondegenerate on A and H"));

    // hypothesis: the degree-0 part of the zero root space equals H
    Root zero_root;
    zero_root.values.assign(datum->pair.h.size(), Rat(0));
    const RootSpace* zspace = datum->space(zero_root);
    const size_t n = la.base.dim();
    RowSpan hspan(n);
    for (const auto& h : datum->pair.h) hspan.insert(to_vec(h, n));
    bool zero_equals_h = true;
    if (zspace != nullptr) {
      auto it = zspace->by_degree.find(0);
      if (it != zspace->by_degree.end()) {
        RowSpan zspan(n);
        for (const auto& e : it->second) zspan.insert(to_vec(e, n));
        zero_equals_h = zspan.dim() == hspan.dim();
        for (const auto& e : it->second)
          if (!hspan.contains(to_vec(e, n))) zero_equals_h = false;
      } else {
        zero_equals_h = hspan.dim() == 0;
      }
    } else {
      zero_equals_h = hspan.dim() == 0;
    }
    if (!zero_equals_h) {
      refuse("hat_hypothesis_zero_space",
             "the degree-0 part of the zero root space is not H; the hat "
             "construction is only claimed under that hypothesis");
      return report;
    }
    report.items.push_back(
        pass_item("hat_hypothesis_zero_space", 0, "degree-0 zero root space equals H"));

    if (zspace != nullptr) {
      Mat g0 = zero_mat(zspace->basis.size(), zspace->basis.size());
      for (size_t i = 0; i < zspace->basis.size(); ++i)
        for (size_t j = 0; j < zspace->basis.size(); ++j)
          g0[i][j] = form_value(la.base, zspace->basis[i], zspace->basis[j]);
      if (rank(g0) != zspace->basis.size()) {
        refuse("hat_hypothesis_zero_form",
               "the form is degenerate on the zero root space; the hat "
               "construction is only claimed under nondegeneracy there");
        return report;
      }
      report.items.push_back(pass_item("hat_hypothesis_zero_form", 0,
                                       "form nondegenerate on the zero root space"));
    }
  }

  const auto box = box_points(la.cocycle.nu, box_k);
  GVec zero_vec(la.cocycle.nu, 0);
  auto negated = [](const GVec& s) {
    GVec out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = -s[i];
    return out;
  };
  auto lift = [&](const Elem& e, const GVec& s) {
    LoopElem x;
    for (const auto& [i, c] : e) x.tensor[{i, s}] = c;
    return x;
  };

  // E1 per (root, degree, window)
  for (int b : la.base.grading.elements()) {
    for (const Root& alpha : root_support(*datum, b)) {
      if (alpha.zero()) continue;
      const uint64_t root_seed = seed ^ static_cast<uint64_t>(datum->root_index(alpha));
      const auto outcome = find_test_pair(*qp, alpha, b, budget, root_seed);
      for (const auto& s : box) {
        CheckItem item;
        item.name = "E1 root " + root_str(alpha) + " degree " + std::to_string(b) +
                    " window t^" + gvec_str(s);
        if (!outcome.witness) {
          item.status = Status::Inconclusive;
          item.details = outcome.note;
          report.items.push_back(std::move(item));
          continue;
        }
        const LoopElem xp = lift(outcome.witness->x_plus, s);
        const LoopElem xm = lift(outcome.witness->x_minus, negated(s));
        const LoopElem p = loop_mul(la, xp, xm);
        if (p.zero() || !in_lifted_h(la, *qp, p)) {
          item.status = Status::Fail;
          item.witness = Witness{{render_loop_elem(la, xp), render_loop_elem(la, xm)},
                                 "product = " + render_loop_elem(la, p) +
                                     (p.zero() ? " (zero)" : " (escapes the toral span)")};
        } else {
          item.witness = Witness{{render_loop_elem(la, xp), render_loop_elem(la, xm)},
                                 "product = " + render_loop_elem(la, p)};
        }
        report.items.push_back(std::move(item));
      }
    }
  }
  if (hat) {
    // zero root, nonzero window: pairs inside the zero root space with
    // nonzero form value feed the central term
    Root zero_root;
    zero_root.values.assign(datum->pair.h.size(), Rat(0));
    const RootSpace* zspace = datum->space(zero_root);
    for (const auto& s : box) {
      if (s == zero_vec) continue;
      CheckItem item;
      item.name = "E1 root " + root_str(zero_root) + " window t^" + gvec_str(s);
      bool done = false;
      if (zspace != nullptr) {
        for (int b : la.base.grading.elements()) {
          if (done) break;
          auto itp = zspace->by_degree.find(b);
          auto itm = zspace->by_degree.find(la.base.grading.neg(b));
          if (itp == zspace->by_degree.end() || itm == zspace->by_degree.end()) continue;
          for (const auto& u : itp->second) {
            if (done) break;
            for (const auto& v : itm->second) {
              if (form_value(la.base, u, v) == 0) continue;
              const LoopElem xp = lift(u, s);
              const LoopElem xm = lift(v, negated(s));
              const LoopElem p = loop_mul(la, xp, xm);
              if (p.zero() || !in_lifted_h(la, *qp, p)) continue;
              item.witness =
                  Witness{{render_loop_elem(la, xp), render_loop_elem(la, xm)},
                          "product = " + render_loop_elem(la, p)};
              done = true;
              break;
            }
          }
        }
      }
      if (!done) {
        if (zspace == nullptr) {
          item.status = Status::Inconclusive;
          item.details = "zero root space is empty; the window carries no test pair";
        } else {
          item.status = Status::Fail;
          item.details = "no zero-root basis pair with nonzero form value yields a "
                         "toral product";
        }
      }
      report.items.push_back(std::move(item));
    }
  }

  // structural root pairing: lifted roots pair exactly like base roots
  {
    CheckItem item;
    item.name = "E2prime_structural";
    const auto roots = datum->roots();
    bool ok = true;
    uint64_t count = 0;
    for (const auto& a : roots) {
      if (!ok) break;
      const Elem ta = nu_inverse(*qp, a);
      for (const auto& b2 : roots) {
        if (!ok) break;
        const Elem tb = nu_inverse(*qp, b2);
        const Rat base_val = form_value(la.base, ta, tb);
        for (const auto& s : box) {
          if (!ok) break;
          for (const auto& t : box) {
            ++count;
            LoopElem ta_hat = lift(ta, zero_vec);
            LoopElem tb_hat = lift(tb, zero_vec);
            if (la.flavor != LoopFlavor::Plain) {
              for (size_t m = 0; m < la.cocycle.nu; ++m) {
                if (s[m] != 0) acc(ta_hat.v, m, Rat(s[m]));
                if (t[m] != 0) acc(tb_hat.v, m, Rat(t[m]));
              }
            }
            const Rat lifted = loop_form(la, ta_hat, tb_hat);
            if (lifted != base_val) {
              ok = false;
              item.status = Status::Fail;
              item.witness = Witness{{root_str(a) + "+t^" + gvec_str(s),
                                      root_str(b2) + "+t^" + gvec_str(t)},
                                     "lifted pairing " + rat_str(lifted) +
                                         " != base pairing " + rat_str(base_val)};
              break;
            }
          }
        }
      }
    }
    item.count = count;
    if (ok) {
      item.details = "pairing of lifted roots equals the base pairing on every box "
                     "window pair; the extended value set equals the base set";
      item.data["values"] = base_values;
    }
    report.items.push_back(std::move(item));
  }

  // graded form blocks
  {
    const auto roots = datum->roots();
    for (const auto& alpha : roots) {
      CheckItem item;
      item.name = "E3_block root " + root_str(alpha);
      const RootSpace* plus = datum->space(alpha);
      const RootSpace* minus = datum->space(negate_root(alpha));
      bool ok = true;
      uint64_t blocks = 0;
      if (minus == nullptr) {
        ok = false;
        item.status = Status::Fail;
        item.details = "opposite root space missing; the block pairing cannot be "
                       "nondegenerate";
      } else {
        for (const auto& [b, ubasis] : plus->by_degree) {
          if (!ok) break;
          const int nb = la.base.grading.neg(b);
          auto itm = minus->by_degree.find(nb);
          if (itm == minus->by_degree.end()) {
            ok = false;
            item.status = Status::Fail;
            item.details = "degree " + std::to_string(b) +
                           " has no opposite block at degree " + std::to_string(nb);
            break;
          }
          const auto& vbasis = itm->second;
          for (const auto& s : box) {
            ++blocks;
            if (ubasis.size() != vbasis.size()) {
              ok = false;
              item.status = Status::Fail;
              item.details = "block dimensions differ (" + std::to_string(ubasis.size()) +
                             " vs " + std::to_string(vbasis.size()) + ")";
              break;
            }
            Mat block = zero_mat(ubasis.size(), vbasis.size());
            for (size_t i = 0; i < ubasis.size(); ++i)
              for (size_t j = 0; j < vbasis.size(); ++j)
                block[i][j] = loop_form(la, lift(ubasis[i], s), lift(vbasis[j], negated(s)));
            if (rank(block) != ubasis.size()) {
              ok = false;
              item.status = Status::Fail;
              item.details = "window t^" + gvec_str(s) + " degree " + std::to_string(b) +
                             " block is singular";
              break;
            }
          }
        }
      }
      if (ok) {
        item.count = blocks;
        item.details = "every (degree, window) block pairs nondegenerately with its "
                       "opposite";
        if (la.flavor == LoopFlavor::Tilde)
          item.details += "; tensor blocks only — the central line is radical for "
                          "the truncated form";
      }
      report.items.push_back(std::move(item));
    }
    if (hat) {
      CheckItem item;
      item.name = "E3_block central";
      bool ok = true;
      for (size_t i = 0; i < la.cocycle.nu && ok; ++i)
        for (size_t j = 0; j < la.cocycle.nu && ok; ++j) {
          LoopElem ci, dj;
          ci.v[i] = 1;
          dj.d[j] = 1;
          const Rat val = loop_form(la, ci, dj);
          if (val != (i == j ? Rat(1) : Rat(0))) {
            ok = false;
            item.status = Status::Fail;
            item.witness = Witness{{"c" + std::to_string(i + 1), "d" + std::to_string(j + 1)},
                                   rat_str(val)};
          }
        }
      if (ok)
        item.details = "central and derivation lines pair by the identity block";
      report.items.push_back(std::move(item));
    }
  }
  return report;
}

}  // namespace mforge
