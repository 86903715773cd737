#include <ainv/linalg.hpp>

#include <cassert>
#include <utility>

namespace ainv::linalg {

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit(std::size_t n, std::size_t j) {
  Vector v = zeros(n);
  v[j] = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Rational dot(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(const Vector& a, const Rational& s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vector axpy(const Vector& a, const Rational& s, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a);
  if (s == 0) return r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) r[i] += s * b[i];
  return r;
}

Vector apply(const Matrix& m, const Vector& v) {
  Vector r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

std::vector<std::size_t> rref(Matrix& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t next = 0;
  for (std::size_t col = 0; col < ncols && next < rows.size(); ++col) {
    std::size_t sel = next;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[next], rows[sel]);
    const Rational inv = 1 / rows[next][col];
    for (auto& x : rows[next]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = col; c < ncols; ++c)
        if (rows[next][c] != 0) rows[r][c] -= f * rows[next][c];
    }
    pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  return pivots;
}

std::size_t rank(Matrix rows) { return rref(rows).size(); }

Matrix nullspace(const Matrix& rows, std::size_t ncols) {
  Matrix r = rows;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = unit(ncols, free);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  rref(basis);
  return basis;
}

std::vector<Integer> clear_denominators(const Vector& row) {
  Integer l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& x : row) {
    Integer v = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (g == 0) return out;
  bool negate = false;
  for (const auto& v : out)
    if (v != 0) {
      negate = v < 0;
      break;
    }
  for (auto& v : out) {
    v /= g;
    if (negate) v = -v;
  }
  return out;
}

} // namespace ainv::linalg
