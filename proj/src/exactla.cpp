#include "hopfgauge/exactla.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace hg {

namespace {

using IntPoly = std::vector<long>;

IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  // den is monic
  std::size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    long c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return q;
}

IntPoly cyclotomic_poly(int m) {
  static std::map<int, IntPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
  }
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  memo[m] = p;
  return p;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder and quotient of a by b (b nonzero, trimmed).
std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::string rat_str(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<mpz_class> exact_root(const mpz_class& v, int n) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), n) == 0) return std::nullopt;
  return r;
}

std::optional<Rational> rational_root(const Rational& y, int n) {
  if (y == 0) return Rational(0);
  bool neg = y < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(y.get_num());
  auto a = exact_root(num, n);
  auto b = exact_root(y.get_den(), n);
  if (!a || !b) return std::nullopt;
  Rational r(neg ? mpz_class(-*a) : *a, *b);
  r.canonicalize();
  return r;
}

}  // namespace

// ---------------------------------------------------------------- field

CyclotomicField::CyclotomicField(int conductor) : m_(conductor) {
  if (conductor < 1) throw std::invalid_argument("conductor must be positive");
  phi_ = cyclotomic_poly(conductor);
  d_ = static_cast<int>(phi_.size()) - 1;
  powers_.resize(2 * d_ - 1);
  std::vector<Rational> cur(d_, 0);
  cur[0] = 1;
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    powers_[k] = cur;
    // multiply by x and reduce
    Rational top = cur[d_ - 1];
    for (int i = d_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < d_; ++i) cur[i] -= top * phi_[i];
  }
}

const CyclotomicField& CyclotomicField::get(int conductor) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[conductor];
  if (!slot) slot.reset(new CyclotomicField(conductor));
  return *slot;
}

// ---------------------------------------------------------------- scalar

Scalar::Scalar(long v) {
  if (v != 0) c_.emplace_back(v);
}

// mpq_class(p, q) is not reduced on construction, and GMP arithmetic assumes it is.
Scalar::Scalar(const Rational& v) {
  if (v != 0) {
    c_.push_back(v);
    c_.back().canonicalize();
  }
}

Scalar Scalar::from_coeffs(const CyclotomicField* f, std::vector<Rational> c) {
  for (auto& x : c) x.canonicalize();
  Scalar s;
  s.field_ = f;
  if (f && static_cast<int>(c.size()) > f->degree()) {
    // reduce higher powers
    std::vector<Rational> r(f->degree(), 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      if (static_cast<int>(k) < f->degree()) {
        r[k] += c[k];
      } else {
        Scalar p = zeta(*f, static_cast<long>(k));
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += c[k] * p.c_[i];
      }
    }
    c = std::move(r);
  }
  s.c_ = std::move(c);
  for (auto& x : s.c_) x.canonicalize();
  s.normalize();
  return s;
}

Scalar Scalar::zeta(const CyclotomicField& f, long k) {
  int m = f.conductor();
  long e = ((k % m) + m) % m;
  Scalar s;
  s.field_ = &f;
  if (f.degree() == 1) {
    if (m != 2 || e % 2 == 0) s.c_.emplace_back(1);
    else s.c_.emplace_back(-1);
    return s;
  }
  if (e < 2 * f.degree() - 1) {
    s.c_ = f.reduced_power(static_cast<int>(e));
    s.normalize();
    return s;
  }
  s.c_ = f.reduced_power(1);
  return s.pow(e);
}

Scalar Scalar::root_of_unity(const CyclotomicField& f, int n, long k) {
  if (!f.has_root_of_order(n))
    throw OrderUnavailable("no primitive " + std::to_string(n) + "-th root of unity in Q(zeta_" +
                           std::to_string(f.conductor()) + ")");
  int m = f.conductor();
  long r = f.root_order();
  long e = ((k % n) + n) % n * (r / n);
  if (m % 2 == 0) return zeta(f, e);
  // odd conductor: the primitive 2m-th root is -zeta^{(m+1)/2}
  Scalar base = -zeta(f, (m + 1) / 2);
  Scalar out = base.pow(e);
  out.field_ = &f;
  return out;
}

void Scalar::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Scalar::rational_value() const {
  if (c_.size() > 1) throw std::logic_error("scalar is not rational: " + to_string());
  return c_.empty() ? Rational(0) : c_[0];
}

const CyclotomicField* Scalar::common_field(const Scalar& a, const Scalar& b) {
  if (a.field_ == b.field_ || !b.field_) return a.field_;
  if (!a.field_) return b.field_;
  if (a.is_rational()) return b.field_;
  if (b.is_rational()) return a.field_;
  throw FieldMismatch("scalars from Q(zeta_" + std::to_string(a.field_->conductor()) +
                      ") and Q(zeta_" + std::to_string(b.field_->conductor()) + ") combined");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.c_.empty()) return *this;
  field_ = common_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.c_.empty()) return *this;
  field_ = common_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.field_ = Scalar::common_field(a, b);
  if (a.c_.empty() || b.c_.empty()) return r;
  if (a.c_.size() == 1) {
    r.c_ = b.c_;
    for (auto& x : r.c_) x *= a.c_[0];
    return r;
  }
  if (b.c_.size() == 1) {
    r.c_ = a.c_;
    for (auto& x : r.c_) x *= b.c_[0];
    return r;
  }
  const CyclotomicField& f = *r.field_;
  int d = f.degree();
  std::vector<Rational> conv(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) conv[i + j] += a.c_[i] * b.c_[j];
  }
  r.c_.assign(d, 0);
  for (std::size_t k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    if (static_cast<int>(k) < d) {
      r.c_[k] += conv[k];
    } else {
      const auto& p = f.reduced_power(static_cast<int>(k));
      for (int i = 0; i < d; ++i)
        if (p[i] != 0) r.c_[i] += conv[k] * p[i];
    }
  }
  r.normalize();
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  if (a.c_.empty() || b.c_.empty()) return;
  if (a.c_.size() == 1 && b.c_.size() == 1) {
    if (!field_) field_ = a.field_ ? a.field_ : b.field_;
    if (c_.empty()) c_.emplace_back(0);
    c_[0] += a.c_[0] * b.c_[0];
    normalize();
    return;
  }
  *this += a * b;
}

Scalar Scalar::inverse() const {
  if (c_.empty()) throw DivisionByZero("inverse of zero");
  if (c_.size() == 1) {
    Scalar r;
    r.field_ = field_;
    r.c_.push_back(1 / c_[0]);
    return r;
  }
  const CyclotomicField& f = *field_;
  QPoly r0(f.minimal_polynomial().begin(), f.minimal_polynomial().end());
  QPoly r1 = c_;
  QPoly s0, s1{Rational(1)};
  trim(r0);
  while (r1.size() > 1) {
    auto [q, rem] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw DivisionByZero("element is not invertible");
  Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return from_coeffs(field_, s1);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  result.field_ = field_;
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::vector<std::string> Scalar::to_strings(const CyclotomicField* f) const {
  const CyclotomicField* use = f ? f : field_;
  std::size_t d = use ? static_cast<std::size_t>(use->degree()) : 1;
  if (c_.size() > d) throw FieldMismatch("scalar does not fit field of degree " + std::to_string(d));
  std::vector<std::string> out;
  out.reserve(d);
  for (std::size_t i = 0; i < d; ++i) out.push_back(i < c_.size() ? rat_str(c_[i]) : "0/1");
  return out;
}

std::string Scalar::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i > 0) os << "*z^" << i;
  }
  return os.str();
}

Scalar Scalar::parse(const std::string& text, const CyclotomicField* f) {
  static const std::regex term_re(
      R"(^\s*([+-]?\d+(?:/\d+)?)?\s*\*?\s*(zeta|z)?(?:\^\s*([+-]?\d+))?\s*$)");
  Scalar total;
  total.field_ = f;
  std::string rest = text;
  if (rest.find_first_not_of(" \t") == std::string::npos)
    throw std::invalid_argument("empty scalar");
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t plus = rest.find('+', start + 1);
    // do not split the sign at the very start of a term
    std::string term = rest.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
    std::smatch m;
    if (!std::regex_match(term, m, term_re) || (!m[1].matched && !m[2].matched))
      throw std::invalid_argument("malformed scalar '" + text + "'");
    if (m[3].matched && !m[2].matched) throw std::invalid_argument("malformed scalar '" + text + "'");
    Scalar coef(1);
    if (m[1].matched) {
      Rational r;
      if (r.set_str(m[1].str(), 10) != 0) throw std::invalid_argument("malformed rational in '" + text + "'");
      if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
      r.canonicalize();
      coef = Scalar(r);
    }
    if (m[2].matched) {
      if (!f) throw std::invalid_argument("zeta used without a field in '" + text + "'");
      long k = m[3].matched ? std::stol(m[3].str()) : 1;
      coef *= zeta(*f, k);
    }
    total += coef;
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  total.field_ = f ? f : total.field_;
  return total;
}

std::optional<Scalar> nth_root(const Scalar& x, int n, const CyclotomicField* f) {
  if (n <= 0) throw std::invalid_argument("root degree must be positive");
  if (x.is_zero()) return Scalar(0);
  const CyclotomicField* F = x.field() ? x.field() : f;
  int order = F ? F->root_order() : 2;
  std::vector<Scalar> roots;
  roots.reserve(order);
  for (int j = 0; j < order; ++j)
    roots.push_back(F ? Scalar::root_of_unity(*F, order, j) : Scalar(j == 0 ? 1 : -1));
  for (int j = 0; j < order; ++j) {
    Scalar y = x / roots[j];
    if (!y.is_rational()) continue;
    auto rho = rational_root(y.rational_value(), n);
    if (!rho) continue;
    for (int i = 0; i < order; ++i) {
      if ((static_cast<long>(i) * n - j) % order != 0) continue;
      Scalar out = Scalar(*rho) * roots[i];
      return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- vectors

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeMismatch("vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) r[i] -= b[i];
  return r;
}

Vec scale(const Scalar& s, const Vec& v) {
  Vec r(v.size());
  if (s.is_zero()) return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = s * v[i];
  return r;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i].add_product(a, x[i]);
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = Scalar(1);
  return v;
}

// ---------------------------------------------------------------- matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeMismatch("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw ShapeMismatch("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) r(i, j).add_product(x, y);
      }
    }
  return r;
}

Vec operator*(const Matrix& a, const Vec& v) {
  if (a.cols_ != v.size()) throw ShapeMismatch("matrix-vector shape mismatch");
  Vec r(a.rows_);
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const Scalar& x = a(i, k);
      if (!x.is_zero()) r[i].add_product(x, v[k]);
    }
  }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix sum shape mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeMismatch("matrix difference shape mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix r = a;
  for (auto& x : r.data_)
    if (!x.is_zero()) x = s * x;
  return r;
}

// ---------------------------------------------------------------- echelon

void RowEchelon::reduce(Vec& v) const {
  for (const auto& [p, row] : rows_) {
    if (v[p].is_zero()) continue;
    Scalar c = -v[p];
    axpy(v, c, row);
  }
}

bool RowEchelon::add(Vec v) {
  if (v.size() != cols_) throw ShapeMismatch("row length mismatch in echelon");
  reduce(v);
  std::size_t q = 0;
  while (q < v.size() && v[q].is_zero()) ++q;
  if (q == v.size()) return false;
  Scalar inv = v[q].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  for (auto& [p, row] : rows_) {
    if (row[q].is_zero()) continue;
    Scalar c = -row[q];
    axpy(row, c, v);
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), q,
                             [](const auto& e, std::size_t key) { return e.first < key; });
  rows_.insert(it, {q, std::move(v)});
  return true;
}

std::vector<Vec> RowEchelon::rows() const {
  std::vector<Vec> out;
  out.reserve(rows_.size());
  for (const auto& e : rows_) out.push_back(e.second);
  return out;
}

std::vector<std::size_t> RowEchelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& e : rows_) out.push_back(e.first);
  return out;
}

RrefResult rref(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.add(m.row(r));
  RrefResult res{Matrix(m.rows(), m.cols()), e.pivots()};
  auto rows = e.rows();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) res.rref(r, c) = rows[r][c];
  return res;
}

std::size_t rank(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.add(m.row(r));
  return e.rank();
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
  std::size_t n = m.rows();
  Matrix a = m;
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      Scalar f = -(a(r, c) * inv);
      for (std::size_t j = c; j < n; ++j)
        if (!a(c, j).is_zero()) a(r, j).add_product(f, a(c, j));
    }
  }
  return det;
}

// ---------------------------------------------------------------- subspaces

SubspaceBasis SubspaceBasis::from_echelon(const RowEchelon& e) {
  SubspaceBasis s(e.cols());
  s.rows_ = e.rows();
  s.pivots_ = e.pivots();
  return s;
}

SubspaceBasis SubspaceBasis::span(std::size_t ambient, const std::vector<Vec>& vectors) {
  RowEchelon e(ambient);
  for (const auto& v : vectors) e.add(v);
  return from_echelon(e);
}

bool SubspaceBasis::contains(const Vec& v) const { return coordinates(v).has_value(); }

std::optional<Vec> SubspaceBasis::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw ShapeMismatch("vector not in ambient space");
  Vec coords(rows_.size());
  Vec rest = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    coords[i] = v[pivots_[i]];
    if (!coords[i].is_zero()) axpy(rest, -coords[i], rows_[i]);
  }
  if (!is_zero_vec(rest)) return std::nullopt;
  return coords;
}

Vec SubspaceBasis::embed(const Vec& coords) const {
  if (coords.size() != rows_.size()) throw ShapeMismatch("coordinate count mismatch");
  Vec v(ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy(v, coords[i], rows_[i]);
  return v;
}

namespace {

SubspaceBasis kernel_from_echelon(const RowEchelon& e) {
  std::size_t n = e.cols();
  auto rows = e.rows();
  auto piv = e.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i][f].is_zero()) v[piv[i]] = -rows[i][f];
    vecs.push_back(std::move(v));
  }
  return SubspaceBasis::span(n, vecs);
}

}  // namespace

SubspaceBasis kernel(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.add(m.row(r));
  return kernel_from_echelon(e);
}

SubspaceBasis kernel_of_rows(std::size_t cols, const std::vector<Vec>& rows) {
  RowEchelon e(cols);
  for (const auto& r : rows) e.add(r);
  return kernel_from_echelon(e);
}

std::optional<Matrix> solve_many(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows()) throw ShapeMismatch("rhs row count mismatch");
  std::size_t n = m.cols(), k = rhs.cols();
  RowEchelon e(n + k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vec row = m.row(r);
    row.reserve(n + k);
    for (std::size_t j = 0; j < k; ++j) row.push_back(rhs(r, j));
    e.add(std::move(row));
  }
  auto rows = e.rows();
  auto piv = e.pivots();
  Matrix x(n, k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (piv[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(piv[i], j) = rows[i][n + j];
  }
  return x;
}

std::optional<Vec> solve_linear(const Matrix& m, const Vec& rhs) {
  Matrix b(rhs.size(), 1);
  b.set_column(0, rhs);
  auto x = solve_many(m, b);
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_many(m, Matrix::identity(m.rows()));
}

// ---------------------------------------------------------------- quotients

QuotientSpace::QuotientSpace(std::size_t ambient, SubspaceBasis relations)
    : ambient_(ambient), relations_(std::move(relations)) {
  std::vector<bool> pivot(ambient, false);
  for (auto p : relations_.pivots()) pivot[p] = true;
  for (std::size_t i = 0; i < ambient; ++i)
    if (!pivot[i]) free_.push_back(i);
}

Vec QuotientSpace::project(const Vec& v) const {
  if (v.size() != ambient_) throw ShapeMismatch("vector not in quotient ambient");
  if (relations_.dim() == 0) return v;
  Vec rest = v;
  const auto& piv = relations_.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (!rest[piv[i]].is_zero()) {
      Scalar c = -rest[piv[i]];
      axpy(rest, c, relations_.vector(i));
    }
  Vec q(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) q[i] = rest[free_[i]];
  return q;
}

Vec QuotientSpace::lift(const Vec& q) const {
  if (q.size() != free_.size()) throw ShapeMismatch("quotient coordinate count mismatch");
  Vec v(ambient_);
  for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = q[i];
  return v;
}

Matrix QuotientSpace::projection() const {
  Matrix p(dim(), ambient_);
  for (std::size_t c = 0; c < ambient_; ++c) p.set_column(c, project(unit_vector(ambient_, c)));
  return p;
}

Matrix QuotientSpace::section() const {
  Matrix s(ambient_, dim());
  for (std::size_t i = 0; i < free_.size(); ++i) s(free_[i], i) = Scalar(1);
  return s;
}

QuotientSpace quotient_space(std::size_t ambient, const std::vector<Vec>& relations) {
  return QuotientSpace(ambient, SubspaceBasis::span(ambient, relations));
}

}  // namespace hg
