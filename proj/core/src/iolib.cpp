#include "mforge/iolib.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace mforge {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

long parse_int(const std::string& s, size_t line, const std::string& what) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad " + what + " '" + s + "'");
  }
}

Rat parse_rat_at(const std::string& s, size_t line) {
  try {
    return parse_rat(s);
  } catch (const std::exception& e) {
    throw ParseError(line, std::string(e.what()));
  }
}

std::string grading_token(const GradingGroup& g) {
  if (g.kind == GradingKind::Trivial) return "trivial";
  if (g.p == 2) return "Z2";
  return "Zp:" + std::to_string(g.p);
}

GradingGroup parse_grading(const std::string& tok, size_t line) {
  if (tok == "trivial") return trivial_grading();
  if (tok == "Z2") return mod_grading(2);
  if (tok.rfind("Zp:", 0) == 0) {
    const long p = parse_int(tok.substr(3), line, "grading modulus");
    try {
      return mod_grading(static_cast<int>(p));
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  throw ParseError(line, "unknown grading '" + tok + "' (expected trivial, Z2, or Zp:<p>)");
}

// signed sum of terms: "0" | term (("+"|"-") term)*, term = [-]coeff*name | [-]name
Elem parse_sum(const std::vector<std::string>& toks, const StructureAlgebra& alg,
               size_t line) {
  if (toks.empty()) throw ParseError(line, "empty product value");
  if (toks.size() == 1 && toks[0] == "0") return {};
  Elem out;
  bool expect_term = true;
  Rat sign(1);
  for (const auto& tok : toks) {
    if (!expect_term) {
      if (tok == "+") {
        sign = 1;
      } else if (tok == "-") {
        sign = -1;
      } else {
        throw ParseError(line, "expected + or - before '" + tok + "'");
      }
      expect_term = true;
      continue;
    }
    std::string term = tok;
    Rat s = sign;
    if (!term.empty() && term.front() == '-') {
      s = -s;
      term = term.substr(1);
    }
    if (term.empty()) throw ParseError(line, "dangling sign");
    Rat coeff(1);
    std::string name = term;
    const size_t star = term.find('*');
    if (star != std::string::npos) {
      coeff = parse_rat_at(term.substr(0, star), line);
      name = term.substr(star + 1);
    }
    size_t idx = 0;
    try {
      idx = alg.index_of(name);
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
    const Rat c = s * coeff;
    if (c != 0) {
      out[idx] += c;
      if (out[idx] == 0) out.erase(idx);
    }
    expect_term = false;
  }
  if (expect_term) throw ParseError(line, "trailing sign without a term");
  return out;
}

}  // namespace

StructureAlgebra parse_algebra(const std::string& text) {
  std::vector<std::pair<size_t, std::string>> lines;  // (1-based number, content)
  {
    std::istringstream in(text);
    std::string raw;
    size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      const std::string t = trim(raw);
      if (t.empty() || t.front() == '#') continue;
      lines.emplace_back(no, t);
    }
  }

  StructureAlgebra alg;
  std::map<std::string, std::string> header;
  std::map<std::string, size_t> header_line;
  std::string section;
  std::set<std::string> seen_sections;
  std::vector<std::pair<size_t, std::string>> basis_lines, product_lines, form_lines,
      toral_lines;

  for (const auto& [no, line] : lines) {
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(no, "malformed section header");
      section = line.substr(1, line.size() - 2);
      if (section != "basis" && section != "products" && section != "form" &&
          section != "toral")
        throw ParseError(no, "unknown section [" + section + "]");
      if (!seen_sections.insert(section).second)
        throw ParseError(no, "duplicate section [" + section + "]");
      continue;
    }
    if (section.empty()) {
      const size_t sp = line.find_first_of(" \t");
      const std::string key = sp == std::string::npos ? line : line.substr(0, sp);
      const std::string value = sp == std::string::npos ? "" : trim(line.substr(sp));
      if (key != "format" && key != "field" && key != "grading" &&
          key != "bcommutative" && key != "description")
        throw ParseError(no, "unknown header key '" + key + "'");
      if (!header.emplace(key, value).second)
        throw ParseError(no, "duplicate header key '" + key + "'");
      header_line[key] = no;
      continue;
    }
    if (section == "basis") basis_lines.emplace_back(no, line);
    if (section == "products") product_lines.emplace_back(no, line);
    if (section == "form") form_lines.emplace_back(no, line);
    if (section == "toral") toral_lines.emplace_back(no, line);
  }

  const size_t tail = lines.empty() ? 1 : lines.back().first;
  auto require = [&](const std::string& key) -> std::string {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(tail, "missing header key '" + key + "'");
    return it->second;
  };
  if (require("format") != "1")
    throw ParseError(header_line["format"], "unsupported format '" + header["format"] + "'");
  if (require("field") != "Q")
    throw ParseError(header_line["field"], "unsupported field '" + header["field"] + "'");
  alg.grading = parse_grading(require("grading"), header_line["grading"]);
  {
    const std::string b = require("bcommutative");
    if (b == "true") {
      alg.bcommutative = true;
    } else if (b == "false") {
      alg.bcommutative = false;
    } else {
      throw ParseError(header_line["bcommutative"], "bcommutative must be true or false");
    }
  }
  if (header.count("description")) alg.description = header["description"];

  if (!seen_sections.count("basis")) throw ParseError(tail, "missing [basis] section");
  if (!seen_sections.count("products"))
    throw ParseError(tail, "missing [products] section");
  for (const auto& [no, line] : basis_lines) {
    const auto toks = tokens(line);
    if (toks.size() != 2) throw ParseError(no, "basis line must be '<name> <degree>'");
    alg.names.push_back(toks[0]);
    alg.degrees.push_back(alg.grading.canon(
        static_cast<int>(parse_int(toks[1], no, "degree"))));
  }
  const size_t n = alg.names.size();
  if (n == 0) throw ParseError(tail, "empty basis");
  {
    std::set<std::string> seen;
    for (size_t i = 0; i < n; ++i)
      if (!seen.insert(alg.names[i]).second)
        throw ParseError(basis_lines[i].first, "duplicate basis name '" + alg.names[i] + "'");
  }

  alg.table.assign(n, std::vector<Elem>(n));
  std::set<std::pair<size_t, size_t>> given;
  for (const auto& [no, line] : product_lines) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(no, "product line needs '='");
    const auto lhs = tokens(line.substr(0, eq));
    if (lhs.size() != 2)
      throw ParseError(no, "product line must be '<name> <name> = <sum>'");
    size_t i = 0, j = 0;
    try {
      i = alg.index_of(lhs[0]);
      j = alg.index_of(lhs[1]);
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
    if (given.count({i, j})) throw ParseError(no, "duplicate product " + lhs[0] + " " + lhs[1]);
    if (alg.bcommutative && i != j && given.count({j, i}))
      throw ParseError(no, "both orientations of " + lhs[0] + "/" + lhs[1] +
                               " given; a B-commutative document lists one");
    given.insert({i, j});
    alg.table[i][j] = parse_sum(tokens(trim(line.substr(eq + 1))), alg, no);
  }
  if (alg.bcommutative)
    for (const auto& [i, j] : given)
      if (i != j && !given.count({j, i}))
        alg.table[j][i] = scale(alg.table[i][j],
                                Rat(alg.grading.commute_sign(alg.degrees[i], alg.degrees[j])));

  if (seen_sections.count("form")) {
    if (form_lines.size() != n)
      throw ParseError(form_lines.empty() ? tail : form_lines.back().first,
                       "[form] must have exactly " + std::to_string(n) + " rows");
    Mat g = zero_mat(n, n);
    for (size_t r = 0; r < n; ++r) {
      const auto toks = tokens(form_lines[r].second);
      if (toks.size() != n)
        throw ParseError(form_lines[r].first,
                         "form row must have " + std::to_string(n) + " entries");
      for (size_t c = 0; c < n; ++c) g[r][c] = parse_rat_at(toks[c], form_lines[r].first);
    }
    alg.gram = std::move(g);
  }
  if (seen_sections.count("toral")) {
    for (const auto& [no, line] : toral_lines) {
      const auto toks = tokens(line);
      if (toks.size() != n)
        throw ParseError(no, "toral row must have " + std::to_string(n) + " entries");
      Vec row(n);
      for (size_t c = 0; c < n; ++c) row[c] = parse_rat_at(toks[c], no);
      alg.toral_rows.push_back(std::move(row));
    }
  }

  alg.validate();
  return alg;
}

std::string serialize_algebra(const StructureAlgebra& alg) {
  std::string out;
  out += "format 1\n";
  out += "field Q\n";
  out += "grading " + grading_token(alg.grading) + "\n";
  out += std::string("bcommutative ") + (alg.bcommutative ? "true" : "false") + "\n";
  if (!alg.description.empty()) out += "description " + alg.description + "\n";
  out += "\n[basis]\n";
  const size_t n = alg.dim();
  for (size_t i = 0; i < n; ++i)
    out += alg.names[i] + " " + std::to_string(alg.grading.canon(alg.degrees[i])) + "\n";
  out += "\n[products]\n";
  for (size_t i = 0; i < n; ++i)
    for (size_t j = alg.bcommutative ? i : 0; j < n; ++j)
      if (!is_zero(alg.table[i][j]))
        out += alg.names[i] + " " + alg.names[j] + " = " +
               render_elem(alg, alg.table[i][j]) + "\n";
  if (alg.gram) {
    out += "\n[form]\n";
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c)
        out += rat_str((*alg.gram)[r][c]) + (c + 1 < n ? " " : "");
      out += "\n";
    }
  }
  if (!alg.toral_rows.empty()) {
    out += "\n[toral]\n";
    for (const auto& row : alg.toral_rows) {
      for (size_t c = 0; c < row.size(); ++c)
        out += rat_str(row[c]) + (c + 1 < row.size() ? " " : "");
      out += "\n";
    }
  }
  return out;
}

}  // namespace mforge
