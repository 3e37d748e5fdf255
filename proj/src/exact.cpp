#include "qmix/exact.hpp"

#include <numeric>
#include <stdexcept>

namespace qmix {

IntVector multiply(const IntMatrix& m, const IntVector& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
  IntVector out(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    BigInt acc = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero() && !v[c].is_zero()) acc += m(r, c) * v[c];
    }
    out[r] = std::move(acc);
  }
  return out;
}

IntVector primitive(IntVector v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs(x));
  if (g.is_zero()) return v;
  bool flip = false;
  for (const auto& x : v) {
    if (!x.is_zero()) {
      flip = x < 0;
      break;
    }
  }
  for (auto& x : v) {
    x /= g;
    if (flip) x = -x;
  }
  return v;
}

namespace {

void reduce_row(IntMatrix& m, int r) {
  BigInt g = 0;
  for (int c = 0; c < m.cols(); ++c) g = boost::multiprecision::gcd(g, abs(m(r, c)));
  if (g > 1) {
    for (int c = 0; c < m.cols(); ++c) m(r, c) /= g;
  }
}

}  // namespace

std::vector<IntVector> integer_nullspace(IntMatrix m, std::span<const int> column_order) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<int> order(column_order.begin(), column_order.end());
  if (order.empty()) {
    order.resize(cols);
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != cols) throw std::invalid_argument("integer_nullspace: bad column order");

  // Row r of the reduced matrix has its pivot in column pivot_col[r].
  std::vector<int> pivot_col;
  std::vector<char> is_pivot(cols, 0);
  int r = 0;
  for (int c : order) {
    if (r == rows) break;
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int k = 0; k < cols; ++k) std::swap(m(p, k), m(r, k));
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const BigInt a = m(r, c);
      const BigInt b = m(i, c);
      for (int k = 0; k < cols; ++k) m(i, k) = a * m(i, k) - b * m(r, k);
      reduce_row(m, i);
    }
    reduce_row(m, r);
    pivot_col.push_back(c);
    is_pivot[c] = 1;
    ++r;
  }

  std::vector<IntVector> basis;
  for (int f : order) {
    if (is_pivot[f]) continue;
    // x_f = L, x_{pivot(i)} = -L * m(i, f) / m(i, pivot(i)) with L the lcm of pivots.
    BigInt lcm = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) {
      if (m(i, f).is_zero()) continue;
      const BigInt p = abs(m(i, pivot_col[i]));
      lcm = lcm / boost::multiprecision::gcd(lcm, p) * p;
    }
    IntVector x(cols, 0);
    x[f] = lcm;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) {
      if (m(i, f).is_zero()) continue;
      x[pivot_col[i]] = -lcm * m(i, f) / m(i, pivot_col[i]);
    }
    x = primitive(std::move(x));
    if (x[f] < 0) {
      for (auto& e : x) e = -e;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

bool is_perfect_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  const BigInt s = boost::multiprecision::sqrt(n);
  if (root) *root = s;
  return s * s == n;
}

std::int64_t squarefree_part(std::int64_t n, std::int64_t* square_root_part) {
  if (n < 1) throw std::invalid_argument("squarefree_part: n must be positive");
  std::int64_t free = 1;
  std::int64_t root = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) free *= p;
  }
  free *= n;
  if (square_root_part) *square_root_part = root;
  return free;
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace qmix
