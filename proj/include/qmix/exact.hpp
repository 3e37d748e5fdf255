#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmix {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<BigInt>;

// Dense row-major matrix of unbounded integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const BigInt& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

IntVector multiply(const IntMatrix& m, const IntVector& v);

// Divides by the content and makes the first nonzero entry positive.
IntVector primitive(IntVector v);

// Basis of the rational nullspace as primitive integer vectors, computed by
// fraction-free Gauss-Jordan elimination. Columns are eliminated in
// `column_order` (identity when empty); the free columns of that order index
// the basis vectors, each having a positive entry at its free column.
std::vector<IntVector> integer_nullspace(IntMatrix m, std::span<const int> column_order = {});

bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

// n = square_part^2 * squarefree, for n >= 1.
std::int64_t squarefree_part(std::int64_t n, std::int64_t* square_root_part = nullptr);

std::string to_string(const Rational& q);

}  // namespace qmix
