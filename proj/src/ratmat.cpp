#include "zp/ratmat.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "zp/error.hpp"

namespace zp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int parse_int(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw Error(ErrorCode::ParseError, "empty integer");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Int(digits, 10);
}

// Integer working matrix for the normal form routines.
struct IntMat {
  std::size_t rows, cols;
  std::vector<Int> a;

  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMat from(const RatMatrix& m) {
    IntMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).num();
    return out;
  }
  RatMatrix to_rat() const {
    std::vector<Rat> e;
    e.reserve(a.size());
    for (const auto& v : a) e.emplace_back(v);
    return RatMatrix(rows, cols, std::move(e));
  }

  Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < rows; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  // row_i += f * row_k
  void add_row(std::size_t i, std::size_t k, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) += f * (*this)(k, j);
  }
  // col_j += f * col_k
  void add_col(std::size_t j, std::size_t k, const Int& f) {
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) += f * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = -(*this)(i, j);
  }
};

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void require_integral(const RatMatrix& m, const char* what) {
  if (!m.is_integral()) throw Error(ErrorCode::NonIntegral, std::string(what) + " requires an integral matrix");
}

}  // namespace

Rat::Rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::Precondition, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw Error(ErrorCode::Precondition, "division by zero");
  return Rat(mpq_class(a.v_ / b.v_));
}

std::string Rat::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionMismatch, "matrix must be at least 1x1");
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionMismatch, "matrix must be at least 1x1");
  if (data_.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(const std::vector<Rat>& d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RatMatrix RatMatrix::from_ints(std::size_t rows, std::size_t cols, const std::vector<long>& entries) {
  std::vector<Rat> e(entries.begin(), entries.end());
  return RatMatrix(rows, cols, std::move(e));
}

RatMatrix RatMatrix::parse(std::string_view text) {
  std::vector<std::vector<Rat>> rows;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(';', start);
    auto row_text = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    std::vector<Rat> row;
    std::size_t s = 0;
    while (true) {
      auto e = row_text.find(',', s);
      auto cell = row_text.substr(s, e == std::string_view::npos ? std::string_view::npos : e - s);
      row.push_back(Rat::parse(cell));
      if (e == std::string_view::npos) break;
      s = e + 1;
    }
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw Error(ErrorCode::ParseError, "ragged rows in matrix text");
    }
    rows.push_back(std::move(row));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  std::vector<Rat> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return RatMatrix(rows.size(), rows.front().size(), std::move(flat));
}

std::string RatMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ',';
      out += (*this)(i, j).to_string();
    }
  }
  return out;
}

bool RatMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& r) { return r.is_integer(); });
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rat RatMatrix::determinant() const {
  if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  RatMatrix a = *this;
  const std::size_t n = rows_;
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = rows_;
  RatMatrix a = *this;
  RatMatrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::RankDeficient, "singular matrix has no inverse");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) / piv;
      inv(c, j) = inv(c, j) / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "product shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "sum shape mismatch");
  RatMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "difference shape mismatch");
  RatMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

RatMatrix operator*(const Rat& s, const RatMatrix& m) {
  RatMatrix c = m;
  for (auto& e : c.data_) e *= s;
  return c;
}

Int denom(const RatMatrix& m) {
  Int best = 1;
  for (const auto& e : m.entries()) best = std::max(best, e.den());
  return best;
}

Int height(const RatMatrix& m) {
  Int best = 1;
  for (const auto& e : m.entries()) {
    Int n = abs(e.num());
    best = std::max({best, n, e.den()});
  }
  return best;
}

Int content(const RatMatrix& m) {
  require_integral(m, "content");
  Int g = 0;
  for (const auto& e : m.entries()) g = gcd(g, e.num());
  return g;
}

SnfResult smith_normal_form(const RatMatrix& m) {
  require_integral(m, "smith_normal_form");
  IntMat a = IntMat::from(m);
  IntMat u = IntMat::identity(a.rows);
  IntMat v = IntMat::identity(a.cols);
  const std::size_t k = std::min(a.rows, a.cols);

  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Smallest nonzero |entry| in the trailing block, ties by (row, col).
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < a.rows; ++i) {
        for (std::size_t j = t; j < a.cols; ++j) {
          if (a(i, j) == 0) continue;
          Int v_abs = abs(a(i, j));
          if (!found || v_abs < best) {
            found = true;
            best = v_abs;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) goto done;
      if (pi != t) {
        a.swap_rows(pi, t);
        u.swap_rows(pi, t);
      }
      if (pj != t) {
        a.swap_cols(pj, t);
        v.swap_cols(pj, t);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = tdiv(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = tdiv(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows && divides; ++i) {
        for (std::size_t j = t + 1; j < a.cols; ++j) {
          Int r;
          mpz_tdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), a(t, t).get_mpz_t());
          if (r != 0) {
            a.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
done:
  return SnfResult{u.to_rat(), a.to_rat(), v.to_rat()};
}

RatMatrix hermite_normal_form(const RatMatrix& m) {
  require_integral(m, "hermite_normal_form");
  if (m.rows() > m.cols()) throw Error(ErrorCode::RankDeficient, "more rows than columns");
  IntMat a = IntMat::from(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    while (true) {
      std::size_t best = a.rows;
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < a.rows; ++i) {
        if (a(i, c) == 0) continue;
        ++nonzero;
        if (best == a.rows || abs(a(i, c)) < abs(a(best, c))) best = i;
      }
      if (nonzero == 0) break;
      if (best != r) a.swap_rows(best, r);
      if (nonzero == 1) break;
      for (std::size_t i = r + 1; i < a.rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -tdiv(a(i, c), a(r, c)));
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv(a(i, c), a(r, c));
      if (q != 0) a.add_row(i, r, -q);
    }
    ++r;
  }
  if (r < a.rows) throw Error(ErrorCode::RankDeficient, "hermite_normal_form requires full row rank");
  return a.to_rat();
}

}  // namespace zp
