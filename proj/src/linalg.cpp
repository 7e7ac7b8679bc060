#include "reluvol/linalg.hpp"

#include <utility>

namespace reluvol {

namespace {

// g = s*a + t*b with g = gcd(a, b) >= 0.
void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

using RatMat = std::vector<RatVec>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].sign() == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = Rational(1) / m[row][col];
    for (auto& e : m[row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].sign() == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const BigInt> b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

void make_primitive(IntVec& v) {
  BigInt g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g > 1)
    for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
}

std::size_t rank(IntMat m) {
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  std::size_t row = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      for (std::size_t c = col + 1; c < ncols; ++c) {
        m[r][c] = m[row][col] * m[r][c] - m[r][col] * m[row][c];
        mpz_divexact(m[r][c].get_mpz_t(), m[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return row;
}

BigInt determinant(IntMat m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k] == 0) ++sel;
      if (sel == n) return 0;
      std::swap(m[k], m[sel]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign > 0 ? BigInt(m[n - 1][n - 1]) : BigInt(-m[n - 1][n - 1]);
}

IntMat nullspace(const IntMat& rows, std::size_t ncols) {
  RatMat m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    RatVec rr;
    rr.reserve(ncols);
    for (const auto& e : r) rr.emplace_back(e);
    m.push_back(std::move(rr));
  }
  const auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;

  IntMat basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(ncols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    BigInt l = 1;
    for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.den().get_mpz_t());
    IntVec iv;
    iv.reserve(ncols);
    for (const auto& e : v) iv.push_back(e.num() * (l / e.den()));
    make_primitive(iv);
    basis.push_back(std::move(iv));
  }
  return basis;
}

IntMat integer_kernel(const IntMat& rows, std::size_t ncols) {
  // Column operations M*U = [H | 0] with U unimodular; the trailing columns
  // of U span the integer kernel.
  IntMat m = rows;
  IntMat u(ncols, IntVec(ncols, 0));
  for (std::size_t i = 0; i < ncols; ++i) u[i][i] = 1;

  auto col_combine = [&](std::size_t c, std::size_t j, const BigInt& s, const BigInt& t,
                         const BigInt& p, const BigInt& q) {
    // col_c <- s*col_c + t*col_j ; col_j <- p*col_c + q*col_j
    for (auto* mat : {&m, &u}) {
      for (auto& r : *mat) {
        BigInt a = r[c], b = r[j];
        r[c] = s * a + t * b;
        r[j] = p * a + q * b;
      }
    }
  };

  std::size_t piv = 0;
  for (std::size_t i = 0; i < m.size() && piv < ncols; ++i) {
    for (std::size_t j = piv + 1; j < ncols; ++j) {
      if (m[i][j] == 0) continue;
      BigInt g, s, t;
      const BigInt a = m[i][piv], b = m[i][j];
      ext_gcd(a, b, g, s, t);
      col_combine(piv, j, s, t, BigInt(-b / g), BigInt(a / g));
    }
    if (m[i][piv] != 0) ++piv;
  }
  IntMat kernel;
  for (std::size_t c = piv; c < ncols; ++c) {
    IntVec v(ncols);
    for (std::size_t r = 0; r < ncols; ++r) v[r] = u[r][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

IntMat row_hnf(IntMat m) {
  if (m.empty()) return m;
  const std::size_t ncols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      BigInt g, s, t;
      const BigInt a = m[row][col], b = m[r][col];
      ext_gcd(a, b, g, s, t);
      const BigInt p = -b / g, q = a / g;
      for (std::size_t c = 0; c < ncols; ++c) {
        BigInt x = m[row][c], y = m[r][c];
        m[row][c] = s * x + t * y;
        m[r][c] = p * x + q * y;
      }
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (auto& e : m[row]) e = -e;
    for (std::size_t r = 0; r < row; ++r) {
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
      if (f == 0) continue;
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

bool solve_in_row_space(const IntMat& rows, std::span<const BigInt> target, RatVec& y) {
  // Columns of the augmented system are the basis rows; unknowns are y.
  const std::size_t k = rows.size();
  const std::size_t n = target.size();
  RatMat m(n, RatVec(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = Rational(rows[j][i]);
    m[i][k] = Rational(target[i]);
  }
  const auto pivots = rref(m, k + 1);
  if (!pivots.empty() && pivots.back() == k) return false;
  if (pivots.size() != k) throw InternalError("solve_in_row_space: dependent basis");
  y.assign(k, Rational());
  for (std::size_t i = 0; i < k; ++i) y[pivots[i]] = m[i][k];
  return true;
}

}  // namespace reluvol
