#include "mforge/identities.hpp"

#include <stdexcept>

#include "mforge/prng.hpp"
#include "residual.hpp"
#include "scan.hpp"

namespace mforge {

namespace {

struct BaseCtx {
  using E = Elem;
  const StructureAlgebra& alg;
  E mul(const E& a, const E& b) const { return mforge::mul(alg, a, b); }
  E add(E a, const E& b) const { return mforge::add(std::move(a), b); }
  E sub(E a, const E& b) const { return mforge::sub(std::move(a), b); }
  E sgn(E a, int s) const { return s < 0 ? negate(std::move(a)) : std::move(a); }
  int comm_sign(long da, long db) const {
    return alg.grading.commute_sign(static_cast<int>(da), static_cast<int>(db));
  }
};

std::array<long, 4> basis_degrees(const StructureAlgebra& alg,
                                  const std::vector<size_t>& idx) {
  std::array<long, 4> d{0, 0, 0, 0};
  for (size_t k = 0; k < idx.size(); ++k) d[k] = alg.degrees[idx[k]];
  return d;
}

}  // namespace

const std::vector<IdentityInfo>& all_identities() {
  static const std::vector<IdentityInfo> table = {
      {IdentityName::BCommutativity, "b_commutativity", 2, true},
      {IdentityName::Jacobi, "jacobi", 3, true},
      {IdentityName::SuperJacobi, "super_jacobi", 3, true},
      {IdentityName::Sagle, "sagle", 4, true},
      {IdentityName::SuperSagle, "super_sagle", 4, true},
      {IdentityName::MalcevOriginal, "malcev_original", 3, false},
      {IdentityName::BinaryLie, "binary_lie", 2, false},
      {IdentityName::SagleExtended, "sagle_extended", 2, false},
  };
  return table;
}

const IdentityInfo& identity_info(IdentityName id) {
  for (const auto& info : all_identities())
    if (info.id == id) return info;
  throw std::logic_error("unregistered identity");
}

std::optional<IdentityName> identity_by_name(std::string_view name) {
  for (const auto& info : all_identities())
    if (name == info.name) return info.id;
  return std::nullopt;
}

Elem jacobian(const StructureAlgebra& alg, const Elem& x, const Elem& y, const Elem& z) {
  Elem r = mul(alg, mul(alg, x, y), z);
  r = add(std::move(r), mul(alg, mul(alg, z, x), y));
  return add(std::move(r), mul(alg, mul(alg, y, z), x));
}

Elem super_jacobian(const StructureAlgebra& alg, const Elem& x, const Elem& y, const Elem& z) {
  std::array<long, 4> d{0, 0, 0, 0};
  const Elem* args[3] = {&x, &y, &z};
  for (int k = 0; k < 3; ++k) {
    const auto deg = homogeneous_degree(alg, *args[k]);
    if (!deg) throw std::invalid_argument("super_jacobian requires homogeneous arguments");
    d[k] = *deg;
  }
  return detail::identity_residual_at(BaseCtx{alg}, IdentityName::SuperJacobi,
                                      {x, y, z, Elem{}}, d);
}

Elem identity_residual_basis(const StructureAlgebra& alg, IdentityName id,
                             const std::vector<size_t>& idx) {
  std::array<Elem, 4> args;
  for (size_t k = 0; k < idx.size(); ++k) args[k] = basis_elem(idx[k]);
  return detail::identity_residual_at(BaseCtx{alg}, id, args, basis_degrees(alg, idx));
}

Elem identity_residual(const StructureAlgebra& alg, IdentityName id,
                       const std::vector<Elem>& args) {
  const int arity = identity_info(id).arity;
  if (static_cast<int>(args.size()) != arity)
    throw std::invalid_argument("wrong argument count for identity");
  const BaseCtx ctx{alg};

  if (!detail::identity_uses_signs(id)) {
    std::array<Elem, 4> a;
    for (int k = 0; k < arity; ++k) a[k] = args[k];
    return detail::identity_residual_at(ctx, id, a, {0, 0, 0, 0});
  }

  // sign-carrying identity: split arguments into homogeneous parts and sum the
  // residual over every combination (each identity is linear in each slot)
  std::vector<std::vector<std::pair<int, Elem>>> parts;
  for (int k = 0; k < arity; ++k) parts.push_back(degree_parts(alg, args[k]));
  for (const auto& p : parts)
    if (p.empty()) return {};  // a zero argument kills every term

  Elem acc;
  std::vector<size_t> pick(arity, 0);
  while (true) {
    std::array<Elem, 4> a;
    std::array<long, 4> d{0, 0, 0, 0};
    for (int k = 0; k < arity; ++k) {
      d[k] = parts[k][pick[k]].first;
      a[k] = parts[k][pick[k]].second;
    }
    acc = add(std::move(acc), detail::identity_residual_at(ctx, id, a, d));
    int pos = arity - 1;
    while (pos >= 0) {
      if (++pick[pos] < parts[pos].size()) break;
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return acc;
}

CheckItem check_identity(const StructureAlgebra& alg, IdentityName id,
                         CheckMode mode, const SampleParams& sp, int threads) {
  const IdentityInfo& info = identity_info(id);
  const size_t n = alg.dim();
  CheckItem item;
  item.name = info.name;

  if (mode == CheckMode::Exhaustive) {
    if (!info.multilinear)
      throw std::invalid_argument(std::string("identity '") + info.name +
                                  "' is not multilinear; exhaustive basis checking "
                                  "is only exact for multilinear identities");
    auto ok = [&](const std::vector<size_t>& idx) {
      return is_zero(identity_residual_basis(alg, id, idx));
    };
    const auto scan = detail::scan_tuples(n, info.arity, threads, ok);
    item.count = scan.domain;
    item.details = "exhaustive over basis tuples";
    if (scan.first_fail) {
      item.status = Status::Fail;
      Witness w;
      for (size_t i : *scan.first_fail) w.inputs.push_back(alg.names[i]);
      w.value = render_elem(alg, identity_residual_basis(alg, id, *scan.first_fail));
      item.witness = std::move(w);
    }
    return item;
  }

  item.count = static_cast<uint64_t>(sp.count);
  item.details = "sampled with integer coefficients in [" +
                 std::to_string(sp.coeff_lo) + "," + std::to_string(sp.coeff_hi) +
                 "]; a pass is probabilistic, a failure is exact";
  item.data["seed"] = sp.seed;
  item.data["count"] = sp.count;
  for (int trial = 0; trial < sp.count; ++trial) {
    SplitMix64 rng(mix_seed(sp.seed, static_cast<uint64_t>(trial)));
    std::vector<Elem> args;
    for (int k = 0; k < info.arity; ++k) {
      Elem e;
      for (size_t i = 0; i < n; ++i) {
        const long c = rng.range(sp.coeff_lo, sp.coeff_hi);
        if (c != 0) e.emplace(i, Rat(c));
      }
      args.push_back(std::move(e));
    }
    const Elem r = identity_residual(alg, id, args);
    if (!is_zero(r) && item.status == Status::Pass) {
      item.status = Status::Fail;
      Witness w;
      for (const auto& a : args) w.inputs.push_back(render_elem(alg, a));
      w.value = render_elem(alg, r);
      item.witness = std::move(w);
      item.data["failing_trial"] = trial;
    }
  }
  return item;
}

CheckReport check_form(const StructureAlgebra& alg, int threads) {
  if (!alg.gram) throw std::invalid_argument("algebra has no form");
  const size_t n = alg.dim();
  const Mat& g = *alg.gram;
  CheckReport report;

  {
    CheckItem item;
    item.name = "form_invariant";
    auto ok = [&](const std::vector<size_t>& t) {
      const Elem left = mul(alg, basis_elem(t[0]), basis_elem(t[1]));
      const Elem right = mul(alg, basis_elem(t[1]), basis_elem(t[2]));
      return form_value(alg, left, basis_elem(t[2])) ==
             form_value(alg, basis_elem(t[0]), right);
    };
    const auto scan = detail::scan_tuples(n, 3, threads, ok);
    item.count = scan.domain;
    if (scan.first_fail) {
      const auto& t = *scan.first_fail;
      const Elem left = mul(alg, basis_elem(t[0]), basis_elem(t[1]));
      const Elem right = mul(alg, basis_elem(t[1]), basis_elem(t[2]));
      item.status = Status::Fail;
      Witness w;
      for (size_t i : t) w.inputs.push_back(alg.names[i]);
      w.value = "(xy,z) = " + rat_str(form_value(alg, left, basis_elem(t[2]))) +
                ", (x,yz) = " + rat_str(form_value(alg, basis_elem(t[0]), right));
      item.witness = std::move(w);
    }
    report.items.push_back(std::move(item));
  }

  {
    CheckItem item;
    item.name = "form_b_symmetric";
    auto ok = [&](const std::vector<size_t>& t) {
      const int s = alg.grading.commute_sign(alg.degrees[t[0]], alg.degrees[t[1]]);
      return g[t[0]][t[1]] + Rat(s) * g[t[1]][t[0]] == 0;
    };
    const auto scan = detail::scan_tuples(n, 2, threads, ok);
    item.count = scan.domain;
    if (scan.first_fail) {
      const auto& t = *scan.first_fail;
      const int s = alg.grading.commute_sign(alg.degrees[t[0]], alg.degrees[t[1]]);
      item.status = Status::Fail;
      Witness w;
      w.inputs = {alg.names[t[0]], alg.names[t[1]]};
      w.value = "(x,y) = " + rat_str(g[t[0]][t[1]]) + ", required -eps*(y,x) = " +
                rat_str(Rat(-s) * g[t[1]][t[0]]);
      item.witness = std::move(w);
    }
    report.items.push_back(std::move(item));
  }

  {
    CheckItem item;
    item.name = "form_b_graded";
    auto ok = [&](const std::vector<size_t>& t) {
      if (alg.grading.add(alg.degrees[t[0]], alg.degrees[t[1]]) == 0) return true;
      return g[t[0]][t[1]] == 0;
    };
    const auto scan = detail::scan_tuples(n, 2, threads, ok);
    item.count = scan.domain;
    if (scan.first_fail) {
      const auto& t = *scan.first_fail;
      item.status = Status::Fail;
      Witness w;
      w.inputs = {alg.names[t[0]], alg.names[t[1]]};
      w.value = "(x,y) = " + rat_str(g[t[0]][t[1]]) + " across degrees " +
                std::to_string(alg.degrees[t[0]]) + "," + std::to_string(alg.degrees[t[1]]);
      item.witness = std::move(w);
    }
    report.items.push_back(std::move(item));
  }

  {
    CheckItem item;
    item.name = "form_nondegenerate";
    const size_t r = rank(g);
    item.data["rank"] = r;
    item.data["dim"] = n;
    item.data["det"] = rat_str(det(g));
    if (r != n) {
      item.status = Status::Fail;
      Witness w;
      const auto ker = kernel(transpose(g));  // left radical: v with (v, .) = 0
      w.inputs = {render_elem(alg, from_vec(ker.front()))};
      w.value = "radical vector";
      item.witness = std::move(w);
      item.details = "rank " + std::to_string(r) + " of " + std::to_string(n);
    }
    report.items.push_back(std::move(item));
  }

  return report;
}

}  // namespace mforge
