#include "mforge/algebra.hpp"

#include <set>
#include <stdexcept>

namespace mforge {

size_t StructureAlgebra::index_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown basis name '" + name + "'");
}

void StructureAlgebra::validate() const {
  const size_t n = dim();
  if (degrees.size() != n) throw std::invalid_argument("degrees/basis size mismatch");
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty() || name.find_first_of(" \t=+*#[]") != std::string::npos ||
        name.front() == '-' || (name.front() >= '0' && name.front() <= '9'))
      throw std::invalid_argument("bad basis name '" + name + "'");
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate basis name '" + name + "'");
  }
  for (int d : degrees)
    if (d != grading.canon(d))
      throw std::invalid_argument("degree out of range: " + std::to_string(d));
  if (table.size() != n) throw std::invalid_argument("product table has wrong shape");
  for (size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw std::invalid_argument("product table has wrong shape");
    for (size_t j = 0; j < n; ++j) {
      const int want = grading.add(degrees[i], degrees[j]);
      for (const auto& [k, c] : table[i][j]) {
        if (k >= n) throw std::invalid_argument("product coefficient out of range");
        if (c == 0) throw std::invalid_argument("stored zero coefficient in table");
        if (degrees[k] != want)
          throw std::invalid_argument("grading violation: " + names[i] + "*" + names[j] +
                                      " hits " + names[k] + " of degree " +
                                      std::to_string(degrees[k]) + ", expected " +
                                      std::to_string(want));
      }
    }
  }
  if (bcommutative) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const int s = grading.commute_sign(degrees[i], degrees[j]);
        Elem mirror = scale(table[i][j], Rat(s));
        if (mirror != table[j][i])
          throw std::invalid_argument("declared b-commutativity violated at (" +
                                      names[i] + ", " + names[j] + ")");
      }
  }
  if (gram) {
    if (gram->size() != n) throw std::invalid_argument("gram has wrong shape");
    for (const auto& row : *gram)
      if (row.size() != n) throw std::invalid_argument("gram has wrong shape");
  }
  for (const auto& row : toral_rows)
    if (row.size() != n) throw std::invalid_argument("toral row has wrong width");
}

Elem basis_elem(size_t i) { return Elem{{i, Rat(1)}}; }

bool is_zero(const Elem& e) { return e.empty(); }

Elem add(Elem a, const Elem& b) {
  for (const auto& [k, c] : b) {
    auto it = a.find(k);
    if (it == a.end()) {
      a.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) a.erase(it);
    }
  }
  return a;
}

Elem sub(Elem a, const Elem& b) {
  for (const auto& [k, c] : b) {
    auto it = a.find(k);
    if (it == a.end()) {
      a.emplace(k, -c);
    } else {
      it->second -= c;
      if (it->second == 0) a.erase(it);
    }
  }
  return a;
}

Elem scale(Elem a, const Rat& c) {
  if (c == 0) return {};
  for (auto& [k, v] : a) v *= c;
  return a;
}

Elem negate(Elem a) {
  for (auto& [k, v] : a) v = -v;
  return a;
}

Vec to_vec(const Elem& e, size_t dim) {
  Vec v = zero_vec(dim);
  for (const auto& [k, c] : e) v[k] = c;
  return v;
}

Elem from_vec(const Vec& v) {
  Elem e;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) e.emplace(i, v[i]);
  return e;
}

Elem mul(const StructureAlgebra& alg, const Elem& a, const Elem& b) {
  Elem out;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) {
      const Rat co = ca * cb;
      for (const auto& [k, c] : alg.table[i][j]) {
        auto it = out.find(k);
        if (it == out.end()) {
          out.emplace(k, co * c);
        } else {
          it->second += co * c;
          if (it->second == 0) out.erase(it);
        }
      }
    }
  return out;
}

Rat form_value(const StructureAlgebra& alg, const Elem& a, const Elem& b) {
  if (!alg.gram) throw std::invalid_argument("algebra has no form");
  Rat out(0);
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b)
      if ((*alg.gram)[i][j] != 0) out += ca * cb * (*alg.gram)[i][j];
  return out;
}

std::string render_elem(const StructureAlgebra& alg, const Elem& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : e) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    std::string piece = (a == 1) ? alg.names[k] : rat_str(a) + "*" + alg.names[k];
    if (out.empty()) {
      out = neg ? "-" + piece : piece;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

std::optional<int> homogeneous_degree(const StructureAlgebra& alg, const Elem& e) {
  std::optional<int> deg;
  for (const auto& [k, c] : e) {
    (void)c;
    if (!deg) {
      deg = alg.degrees[k];
    } else if (*deg != alg.degrees[k]) {
      return std::nullopt;
    }
  }
  return deg ? deg : std::optional<int>(0);
}

std::vector<std::pair<int, Elem>> degree_parts(const StructureAlgebra& alg, const Elem& e) {
  std::map<int, Elem> parts;
  for (const auto& [k, c] : e) parts[alg.degrees[k]].emplace(k, c);
  return {parts.begin(), parts.end()};
}

}  // namespace mforge
