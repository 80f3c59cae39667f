#pragma once

// Exact rational and integer matrices backed by GMP.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zp {

using Int = mpz_class;

/// Rational number kept in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& num, const Int& den);

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  const mpq_class& value() const { return v_; }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  /// "a" for integers, "a/b" otherwise.
  std::string to_string() const;
  static Rat parse(std::string_view text);

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

 private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

/// Dense row-major matrix of Rat.
class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const std::vector<Rat>& d);
  static RatMatrix from_ints(std::size_t rows, std::size_t cols, const std::vector<long>& entries);

  /// Parses the text format `a/b,c;d,e` (rows by ';', entries by ',').
  static RatMatrix parse(std::string_view text);
  std::string to_string() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Rat>& entries() const { return data_; }

  bool is_integral() const;
  RatMatrix transpose() const;
  Rat determinant() const;
  /// Throws RankDeficient for singular input.
  RatMatrix inverse() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rat& s, const RatMatrix& m);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rat> data_;
};

/// Max lowest-terms denominator over all entries.
Int denom(const RatMatrix& m);

/// Max over entries of max(|numerator|, denominator). The zero matrix has height 1.
Int height(const RatMatrix& m);

/// gcd of all entries of an integral matrix (0 for the zero matrix).
Int content(const RatMatrix& m);

struct SnfResult {
  RatMatrix U;
  RatMatrix D;
  RatMatrix V;
};

/// U·M·V = D with D diagonal, d_1 | d_2 | ... nonnegative, U and V unimodular.
SnfResult smith_normal_form(const RatMatrix& m);

/// Row-style Hermite normal form of an integral full-row-rank matrix.
RatMatrix hermite_normal_form(const RatMatrix& m);

}  // namespace zp
