#pragma once

// Exact scalars in cyclotomic fields Q(zeta_M) and dense linear algebra over them.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfgauge/errors.hpp"

namespace hg {

using Rational = mpq_class;

/// The cyclotomic field Q(zeta_M), interned per conductor.
class CyclotomicField {
 public:
  static const CyclotomicField& get(int conductor);

  int conductor() const { return m_; }
  int degree() const { return d_; }
  /// Coefficients of Phi_M, lowest degree first.
  const std::vector<long>& minimal_polynomial() const { return phi_; }
  /// Power-basis coordinates of zeta^k for 0 <= k < 2d - 1.
  const std::vector<Rational>& reduced_power(int k) const { return powers_[k]; }

  /// Order of the group of roots of unity in the field (2M for odd M).
  int root_order() const { return m_ % 2 == 0 ? m_ : 2 * m_; }
  bool has_root_of_order(int n) const { return n > 0 && root_order() % n == 0; }

 private:
  explicit CyclotomicField(int conductor);

  int m_;
  int d_;
  std::vector<long> phi_;
  std::vector<std::vector<Rational>> powers_;
};

/// Element of Q(zeta_M) in the power basis.  Zero carries no coefficients and
/// rationals carry one, so they mix freely with any field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v);  // NOLINT(google-explicit-constructor)

  /// zeta_M^k.
  static Scalar zeta(const CyclotomicField& f, long k);
  /// A primitive n-th root of unity raised to k; throws OrderUnavailable.
  static Scalar root_of_unity(const CyclotomicField& f, int n, long k);
  static Scalar from_coeffs(const CyclotomicField* f, std::vector<Rational> c);

  const CyclotomicField* field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_value() const;  // requires is_rational()

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(long e) const;
  /// this += a * b without temporaries for the common rational case.
  void add_product(const Scalar& a, const Scalar& b);

  /// d strings "p/q", padded with zeros to the degree of f.
  std::vector<std::string> to_strings(const CyclotomicField* f) const;
  /// Human readable, e.g. "1/2 + -1*z^1".
  std::string to_string() const;

  /// Accepts "p/q", "p", "zeta^k", "p/q*zeta^k", and sums joined by '+'.
  static Scalar parse(const std::string& text, const CyclotomicField* f);

 private:
  void normalize();
  static const CyclotomicField* common_field(const Scalar& a, const Scalar& b);

  const CyclotomicField* field_ = nullptr;
  std::vector<Rational> c_;
};

/// Some root y with y^n = x inside the field of x (or f), if one exists.
std::optional<Scalar> nth_root(const Scalar& x, int n, const CyclotomicField* f);

using Vec = std::vector<Scalar>;

bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& v);
void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a x
Vec unit_vector(std::size_t n, std::size_t i);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, const Vec& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Incrementally maintained reduced row echelon form of a row space.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}
  /// Adds v to the spanned space; returns false if it was already in it.
  bool add(Vec v);
  /// Reduces v against the current rows (in place).
  void reduce(Vec& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// Rows ordered by pivot column.
  std::vector<Vec> rows() const;
  std::vector<std::size_t> pivots() const;

 private:
  std::size_t cols_;
  std::vector<std::pair<std::size_t, Vec>> rows_;  // sorted by pivot
};

struct RrefResult {
  Matrix rref;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);

/// A subspace held as the canonical RREF basis.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient) {}
  static SubspaceBasis span(std::size_t ambient, const std::vector<Vec>& vectors);
  static SubspaceBasis from_echelon(const RowEchelon& e);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const Vec& vector(std::size_t i) const { return rows_[i]; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Matrix basis_rows() const { return Matrix::from_rows(ambient_, rows_); }

  bool contains(const Vec& v) const;
  /// Coordinates of v (read at pivots); nullopt if v is not in the span.
  std::optional<Vec> coordinates(const Vec& v) const;
  Vec embed(const Vec& coords) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis kernel(const Matrix& m);
/// Kernel of the matrix whose rows are supplied one by one.
SubspaceBasis kernel_of_rows(std::size_t cols, const std::vector<Vec>& rows);

std::optional<Vec> solve_linear(const Matrix& m, const Vec& rhs);
/// Solves m X = rhs column by column; nullopt if any column is inconsistent.
std::optional<Matrix> solve_many(const Matrix& m, const Matrix& rhs);
std::optional<Matrix> inverse(const Matrix& m);

/// V / R realised by the non-pivot coordinates of the canonical relation basis.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(std::size_t ambient, SubspaceBasis relations);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return free_.size(); }
  const SubspaceBasis& relations() const { return relations_; }
  bool trivial() const { return relations_.dim() == 0; }

  Vec project(const Vec& v) const;
  Vec lift(const Vec& q) const;
  Matrix projection() const;
  Matrix section() const;

 private:
  std::size_t ambient_ = 0;
  SubspaceBasis relations_;
  std::vector<std::size_t> free_;
};

QuotientSpace quotient_space(std::size_t ambient, const std::vector<Vec>& relations);

}  // namespace hg
