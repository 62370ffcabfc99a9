#include "mforge/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mforge/prng.hpp"

namespace mforge {

Mat identity_mat(size_t n) {
  Mat m(n, zero_vec(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat zero_mat(size_t rows, size_t cols) { return Mat(rows, zero_vec(cols)); }

Vec zero_vec(size_t n) { return Vec(n, Rat(0)); }

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec add_vec(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec sub_vec(Vec a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec scale_vec(Vec a, const Rat& c) {
  for (auto& x : a) x *= c;
  return a;
}

Vec mat_vec(const Mat& m, const Vec& x) {
  Vec out(m.size(), Rat(0));
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c)
      if (m[r][c] != 0 && x[c] != 0) out[r] += m[r][c] * x[c];
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const size_t rows = a.size();
  const size_t inner = b.size();
  const size_t cols = inner ? b[0].size() : 0;
  Mat out = zero_mat(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t k = 0; k < inner; ++k)
      if (a[r][k] != 0)
        for (size_t c = 0; c < cols; ++c)
          if (b[k][c] != 0) out[r][c] += a[r][k] * b[k][c];
  return out;
}

Mat transpose(const Mat& m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  Mat out = zero_mat(cols, rows);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) out[c][r] = m[r][c];
  return out;
}

Rref rref(Mat m) {
  Rref out;
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = rows;
    for (size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    const Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.m = std::move(m);
  return out;
}

size_t rank(Mat m) { return rref(std::move(m)).rank; }

Rat det(Mat m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det: matrix not square");
  Rat sign(1);
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = n;
    for (size_t r = c; r < n; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot == n) return Rat(0);
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      sign = -sign;
    }
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rat f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  Rat d = sign;
  for (size_t i = 0; i < n; ++i) d *= m[i][i];
  return d;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  const size_t rows = a.size();
  if (rows != b.size()) throw std::invalid_argument("solve: size mismatch");
  const size_t cols = rows ? a[0].size() : 0;
  Mat aug = a;
  for (size_t r = 0; r < rows; ++r) aug[r].push_back(b[r]);
  if (rows == 0) return zero_vec(cols);
  Rref rr = rref(std::move(aug));
  Vec x = zero_vec(cols);
  for (size_t r = 0; r < rr.rank; ++r) {
    if (rr.pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
    x[rr.pivots[r]] = rr.m[r][cols];
  }
  return x;
}

std::vector<Vec> kernel(const Mat& a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  Rref rr = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(cols);
    v[f] = 1;
    for (size_t r = 0; r < rr.rank; ++r) v[rr.pivots[r]] = -rr.m[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

Vec RowSpan::reduce(Vec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rat c = v[pivots_[i]];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j)
      if (rows_[i][j] != 0) v[j] -= c * rows_[i][j];
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool RowSpan::insert(Vec v) {
  v = reduce(std::move(v));
  size_t p = width_;
  for (size_t j = 0; j < width_; ++j)
    if (v[j] != 0) {
      p = j;
      break;
    }
  if (p == width_) return false;
  const Rat inv = Rat(1) / v[p];
  for (auto& x : v) x *= inv;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Rat c = rows_[i][p];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j)
      if (v[j] != 0) rows_[i][j] -= c * v[j];
  }
  const auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

std::vector<Vec> intersect_spans(const std::vector<Vec>& a,
                                 const std::vector<Vec>& b, size_t width) {
  if (a.empty() || b.empty()) return {};
  const size_t ka = a.size(), kb = b.size();
  Mat m = zero_mat(width, ka + kb);
  for (size_t i = 0; i < ka; ++i)
    for (size_t r = 0; r < width; ++r) m[r][i] = a[i][r];
  for (size_t j = 0; j < kb; ++j)
    for (size_t r = 0; r < width; ++r) m[r][ka + j] = -b[j][r];
  RowSpan span(width);
  for (const Vec& z : kernel(m)) {
    Vec v = zero_vec(width);
    for (size_t i = 0; i < ka; ++i)
      if (z[i] != 0) v = add_vec(std::move(v), scale_vec(a[i], z[i]));
    span.insert(std::move(v));
  }
  return span.rows();
}

std::vector<Rat> char_poly(const Mat& m) {
  const size_t n = m.size();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  if (n == 0) return c;
  auto trace = [&](const Mat& x) {
    Rat t(0);
    for (size_t i = 0; i < n; ++i) t += x[i][i];
    return t;
  };
  Mat b = m;
  c[n - 1] = -trace(b);
  for (size_t k = 2; k <= n; ++k) {
    for (size_t i = 0; i < n; ++i) b[i][i] += c[n - k + 1];
    b = mat_mul(m, b);
    c[n - k] = -trace(b) / Rat(static_cast<long>(k));
  }
  return c;
}

namespace {

mpz_class abs_z(mpz_class x) { return x < 0 ? mpz_class(-x) : x; }

mpz_class pollard_rho(const mpz_class& n, SplitMix64& rng) {
  if (n % 2 == 0) return 2;
  while (true) {
    mpz_class x = mpz_class(static_cast<unsigned long>(rng.next() % 1000003)) % n;
    mpz_class c = mpz_class(static_cast<unsigned long>(rng.next() % 1000003)) % n + 1;
    mpz_class y = x, d = 1;
    auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      mpz_class diff = abs_z(x - y);
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n && d != 1) return d;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out, SplitMix64& rng) {
  if (n <= 1) return;
  for (long d = 2; d < 100000 && mpz_class(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
    while (n % d == 0) {
      ++out[mpz_class(d)];
      n /= d;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  const mpz_class d = pollard_rho(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

// all positive divisors, ascending; empty when the count would exceed the cap
std::vector<mpz_class> divisors(const mpz_class& n, size_t cap) {
  std::map<mpz_class, unsigned> f;
  SplitMix64 rng(0x5eedbea7u);
  factor_into(abs_z(n), f, rng);
  std::vector<mpz_class> out{1};
  for (const auto& [prime, exp] : f) {
    const size_t base = out.size();
    if (base * (exp + 1) > cap) return {};
    mpz_class pk = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      pk *= prime;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// divide poly (ascending coeffs) by (t - r); remainder must be zero
std::vector<Rat> deflate(const std::vector<Rat>& poly, const Rat& r) {
  const size_t deg = poly.size() - 1;
  std::vector<Rat> q(deg, Rat(0));
  Rat carry = poly[deg];
  for (size_t k = deg; k-- > 0;) {
    q[k] = carry;
    carry = poly[k] + r * carry;
  }
  if (carry != 0) throw std::logic_error("deflate: nonzero remainder");
  return q;
}

Rat eval_poly(const std::vector<Rat>& poly, const Rat& x) {
  Rat acc(0);
  for (size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
  return acc;
}

// clear denominators: integer-coefficient multiple with the same roots
std::vector<mpz_class> clear_denoms(const std::vector<Rat>& poly) {
  mpz_class lcm = 1;
  for (const auto& c : poly) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    lcm = lcm / g * c.get_den();
  }
  std::vector<mpz_class> out;
  for (const auto& c : poly) out.push_back(c.get_num() * (lcm / c.get_den()));
  return out;
}

}  // namespace

EigenvalueSplit rational_eigenvalues(const Mat& m) {
  EigenvalueSplit out;
  std::vector<Rat> poly = char_poly(m);
  std::map<Rat, size_t> roots;

  size_t zero_mult = 0;
  while (poly.size() > 1 && poly[0] == 0) {
    poly.erase(poly.begin());
    ++zero_mult;
  }
  if (zero_mult) roots[Rat(0)] = zero_mult;

  while (poly.size() > 1) {
    const std::vector<mpz_class> zc = clear_denoms(poly);
    const std::vector<mpz_class> nums = divisors(zc.front(), 1 << 16);
    const std::vector<mpz_class> dens = divisors(zc.back(), 1 << 16);
    if (nums.empty() || dens.empty() ||
        nums.size() * dens.size() > (size_t{1} << 21)) {
      out.split = false;
      out.leftover = poly_str(poly, "t") + " (root candidate set too large)";
      return out;
    }
    bool found = false;
    for (const auto& den : dens) {
      for (const auto& num : nums) {
        for (int sign : {1, -1}) {
          Rat cand(sign * num, den);
          cand.canonicalize();
          if (eval_poly(poly, cand) == 0) {
            ++roots[cand];
            poly = deflate(poly, cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) {
      out.split = false;
      std::vector<Rat> print;
      for (const auto& c : clear_denoms(poly)) print.push_back(Rat(c));
      out.leftover = poly_str(print, "t");
      break;
    }
  }
  for (const auto& [value, mult] : roots) out.roots.emplace_back(value, mult);
  return out;
}

std::string poly_str(const std::vector<Rat>& coeffs, const std::string& var) {
  std::string out;
  for (size_t k = coeffs.size(); k-- > 0;) {
    const Rat& c = coeffs[k];
    if (c == 0) continue;
    const Rat a = c < 0 ? Rat(-c) : c;
    if (out.empty()) {
      out += (c < 0) ? "-" : "";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    const bool unit = (a == 1) && k > 0;
    if (!unit) out += rat_str(a);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mforge
