#include "hopfgauge/hopf.hpp"

#include <numeric>
#include <sstream>

namespace hg {

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

// ---------------------------------------------------------------- groups

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  order_ = 1;
  for (int n : factors_) {
    if (n < 1) throw std::invalid_argument("group factors must be positive");
    order_ *= static_cast<std::size_t>(n);
  }
}

std::vector<int> FiniteAbelianGroup::element(std::size_t idx) const {
  std::vector<int> e(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e[i] = static_cast<int>(idx % factors_[i]);
    idx /= factors_[i];
  }
  return e;
}

std::size_t FiniteAbelianGroup::index(const std::vector<int>& e) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    int n = factors_[i];
    idx = idx * n + static_cast<std::size_t>(((e[i] % n) + n) % n);
  }
  return idx;
}

std::size_t FiniteAbelianGroup::multiply(std::size_t a, std::size_t b) const {
  auto x = element(a), y = element(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return index(x);
}

std::size_t FiniteAbelianGroup::inverse(std::size_t a) const {
  auto x = element(a);
  for (auto& v : x) v = -v;
  return index(x);
}

std::size_t FiniteAbelianGroup::generator(std::size_t i) const {
  std::vector<int> e(factors_.size(), 0);
  e[i] = 1;
  return index(e);
}

std::size_t FiniteAbelianGroup::power(std::size_t a, long k) const {
  auto x = element(a);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<int>((x[i] * k) % factors_[i]);
  return index(x);
}

std::string FiniteAbelianGroup::label(std::size_t idx) const {
  auto e = element(idx);
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    out += static_cast<char>('a' + i);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "e" : out;
}

int FiniteAbelianGroup::exponent() const {
  int e = 1;
  for (int n : factors_) e = std::lcm(e, n);
  return e;
}

// ---------------------------------------------------------------- algebras

FinDimAlgebra::FinDimAlgebra(std::vector<std::string> labels, std::vector<Vec> products, Vec unit)
    : labels_(std::move(labels)), mult_(std::move(products)), unit_(std::move(unit)) {
  std::size_t n = labels_.size();
  if (mult_.size() != n * n) throw ShapeMismatch("multiplication table must have n^2 entries");
  if (unit_.size() != n) throw ShapeMismatch("unit has wrong length");
  sparse_.reserve(mult_.size());
  for (const auto& p : mult_) {
    if (p.size() != n) throw ShapeMismatch("product vector has wrong length");
    sparse_.push_back(to_sparse(p));
  }
}

std::size_t FinDimAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::out_of_range("no basis element labelled " + label);
}

Vec FinDimAlgebra::multiply(const Vec& a, const Vec& b) const {
  std::size_t n = dim();
  Vec r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      for (const auto& [k, v] : sparse_product(i, j)) r[k].add_product(c, v);
    }
  }
  return r;
}

Matrix FinDimAlgebra::left_multiplication(const Vec& a) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(a, basis_vector(j)));
  return m;
}

Matrix FinDimAlgebra::right_multiplication(const Vec& a) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(basis_vector(j), a));
  return m;
}

const FinDimAlgebra& ground_algebra() {
  static const FinDimAlgebra k({"1"}, {Vec{Scalar(1)}}, Vec{Scalar(1)});
  return k;
}

FinDimAlgebra diagonal_algebra(std::size_t k) {
  std::vector<std::string> labels;
  std::vector<Vec> products(k * k, Vec(k));
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back("p" + std::to_string(i));
    products[i * k + i][i] = Scalar(1);
  }
  return FinDimAlgebra(labels, std::move(products), Vec(k, Scalar(1)));
}

FinDimAlgebra matrix_algebra(std::size_t k) {
  std::size_t n = k * k;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) labels.push_back("e" + std::to_string(i) + std::to_string(j));
  std::vector<Vec> products(n * n, Vec(n));
  // e_ij e_jl = e_il
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) products[(i * k + j) * n + j * k + l][i * k + l] = Scalar(1);
  Vec unit(n);
  for (std::size_t i = 0; i < k; ++i) unit[i * k + i] = Scalar(1);
  return FinDimAlgebra(labels, std::move(products), std::move(unit));
}

FinDimAlgebra tensor_algebra(const FinDimAlgebra& x, const FinDimAlgebra& y) {
  std::size_t nx = x.dim(), ny = y.dim(), n = nx * ny;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) labels.push_back(x.labels()[i] + "*" + y.labels()[j]);
  std::vector<Vec> products(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      products[a * n + b] = tensor_multiply(x, y, unit_vector(n, a), unit_vector(n, b));
  Vec unit(n);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (!x.unit()[i].is_zero() && !y.unit()[j].is_zero()) unit[i * ny + j] = x.unit()[i] * y.unit()[j];
  return FinDimAlgebra(labels, std::move(products), unit);
}

Vec tensor_multiply(const FinDimAlgebra& x, const FinDimAlgebra& y, const Vec& u, const Vec& v) {
  std::size_t nx = x.dim(), ny = y.dim();
  Vec r(nx * ny);
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a].is_zero()) continue;
    std::size_t i1 = a / ny, j1 = a % ny;
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (v[b].is_zero()) continue;
      std::size_t i2 = b / ny, j2 = b % ny;
      Scalar c = u[a] * v[b];
      const auto& px = x.sparse_product(i1, i2);
      const auto& py = y.sparse_product(j1, j2);
      for (const auto& [k, s] : px) {
        Scalar cs = c * s;
        for (const auto& [l, t] : py) r[k * ny + l].add_product(cs, t);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- hopf

Vec FinDimHopf::coproduct(const Vec& v) const {
  std::size_t n = dim();
  Vec r(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& t : comult[i]) r[t.left * n + t.right].add_product(v[i], t.coeff);
  }
  return r;
}

Scalar FinDimHopf::apply_counit(const Vec& v) const {
  Scalar s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.add_product(v[i], counit[i]);
  return s;
}

FinDimHopf make_hopf(FinDimAlgebra algebra, std::vector<TermList> comult, Vec counit, Matrix antipode) {
  std::size_t n = algebra.dim();
  if (comult.size() != n || counit.size() != n || antipode.rows() != n || antipode.cols() != n)
    throw ShapeMismatch("Hopf structure maps do not match the algebra dimension");
  for (const auto& tl : comult)
    for (const auto& t : tl)
      if (t.left >= n || t.right >= n) throw ShapeMismatch("coproduct index out of range");
  FinDimHopf h;
  h.algebra = std::move(algebra);
  h.comult = std::move(comult);
  h.counit = std::move(counit);
  h.antipode = std::move(antipode);
  h.antipode_inverse = inverse(h.antipode);
  return h;
}

namespace {

std::string triple(const FinDimAlgebra& a, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + a.labels()[i] + ", " + a.labels()[j] + ", " + a.labels()[k] + ")";
}

TermList terms_of(const Vec& dense, std::size_t n) {
  TermList out;
  for (std::size_t idx = 0; idx < dense.size(); ++idx)
    if (!dense[idx].is_zero()) out.push_back({dense[idx], idx / n, idx % n});
  return out;
}

}  // namespace

Report verify_algebra(const FinDimAlgebra& a) {
  Report rep;
  std::size_t n = a.dim();
  std::string assoc_witness;
  for (std::size_t i = 0; i < n && assoc_witness.empty(); ++i)
    for (std::size_t j = 0; j < n && assoc_witness.empty(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs(n), rhs(n);
        for (const auto& [p, c] : a.sparse_product(i, j))
          for (const auto& [r, d] : a.sparse_product(p, k)) lhs[r].add_product(c, d);
        for (const auto& [p, c] : a.sparse_product(j, k))
          for (const auto& [r, d] : a.sparse_product(i, p)) rhs[r].add_product(c, d);
        if (lhs != rhs) {
          assoc_witness = "associativity fails on " + triple(a, i, j, k);
          break;
        }
      }
  rep.add("associativity", assoc_witness.empty(), assoc_witness);

  std::string unit_witness;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = a.basis_vector(i);
    if (a.multiply(a.unit(), e) != e || a.multiply(e, a.unit()) != e) {
      unit_witness = "unit fails on " + a.labels()[i];
      break;
    }
  }
  rep.add("unit", unit_witness.empty(), unit_witness);
  return rep;
}

Report verify_hopf(const FinDimHopf& h) {
  Report rep;
  rep.merge(verify_algebra(h.algebra), "algebra");
  const auto& A = h.algebra;
  std::size_t n = h.dim();
  const auto& L = A.labels();

  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec lhs(n * n * n), rhs(n * n * n);
    for (const auto& t : h.comult[i]) {
      for (const auto& u : h.comult[t.left]) lhs[(u.left * n + u.right) * n + t.right].add_product(t.coeff, u.coeff);
      for (const auto& u : h.comult[t.right]) rhs[(t.left * n + u.left) * n + u.right].add_product(t.coeff, u.coeff);
    }
    if (lhs != rhs) w = "coassociativity fails on " + L[i];
  }
  rep.add("coassociativity", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec left(n), right(n);
    for (const auto& t : h.comult[i]) {
      left[t.right].add_product(t.coeff, h.counit[t.left]);
      right[t.left].add_product(t.coeff, h.counit[t.right]);
    }
    Vec e = A.basis_vector(i);
    if (left != e || right != e) w = "counit axiom fails on " + L[i];
  }
  rep.add("counit", w.empty(), w);

  w.clear();
  std::vector<Vec> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = h.coproduct(A.basis_vector(i));
  Vec unit_unit(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!A.unit()[i].is_zero() && !A.unit()[j].is_zero()) unit_unit[i * n + j] = A.unit()[i] * A.unit()[j];
  if (h.coproduct(A.unit()) != unit_unit) w = "coproduct is not unital";
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (h.coproduct(A.product(i, j)) != tensor_multiply(A, A, delta[i], delta[j])) {
        w = "coproduct not multiplicative on (" + L[i] + ", " + L[j] + ")";
        break;
      }
    }
  rep.add("coproduct_algebra_map", w.empty(), w);

  w.clear();
  if (h.apply_counit(A.unit()) != Scalar(1)) w = "counit is not unital";
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (h.apply_counit(A.product(i, j)) != h.counit[i] * h.counit[j]) {
        w = "counit not multiplicative on (" + L[i] + ", " + L[j] + ")";
        break;
      }
  rep.add("counit_algebra_map", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec left(n), right(n);
    for (const auto& t : h.comult[i]) {
      Vec s1 = h.antipode.column(t.left), s2 = h.antipode.column(t.right);
      axpy(left, t.coeff, A.multiply(s1, A.basis_vector(t.right)));
      axpy(right, t.coeff, A.multiply(A.basis_vector(t.left), s2));
    }
    Vec expect = scale(h.counit[i], A.unit());
    if (left != expect) w = "m(S (x) id)Delta differs from eta epsilon on " + L[i];
    else if (right != expect) w = "m(id (x) S)Delta differs from eta epsilon on " + L[i];
  }
  rep.add("antipode", w.empty(), w);
  return rep;
}

bool is_cocommutative(const FinDimHopf& h) {
  std::size_t n = h.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec d = h.coproduct(h.algebra.basis_vector(i));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (d[a * n + b] != d[b * n + a]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- convolution

Matrix convolution(const Matrix& f, const Matrix& g, const FinDimHopf& from, const FinDimAlgebra& to) {
  std::size_t n = from.dim(), m = to.dim();
  if (f.rows() != m || g.rows() != m || f.cols() != n || g.cols() != n)
    throw ShapeMismatch("convolution operands have the wrong shape");
  Matrix r(m, n);
  std::vector<Vec> fc(n), gc(n);
  for (std::size_t i = 0; i < n; ++i) {
    fc[i] = f.column(i);
    gc[i] = g.column(i);
  }
  for (std::size_t c = 0; c < n; ++c) {
    Vec acc(m);
    for (const auto& t : from.comult[c]) axpy(acc, t.coeff, to.multiply(fc[t.left], gc[t.right]));
    r.set_column(c, acc);
  }
  return r;
}

Matrix convolution_unit(const FinDimHopf& from, const FinDimAlgebra& to) {
  Matrix r(to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) r.set_column(c, scale(from.counit[c], to.unit()));
  return r;
}

std::optional<Matrix> convolution_inverse(const Matrix& f, const FinDimHopf& from, const FinDimAlgebra& to) {
  std::size_t n = from.dim(), m = to.dim();
  if (f.rows() != m || f.cols() != n) throw ShapeMismatch("convolution_inverse operand has the wrong shape");
  std::size_t unknowns = m * n;  // g(k, j) at k * n + j
  // fk[i][k] = f(e_i) e_k, kf[j][k] = e_k f(e_j)
  std::vector<std::vector<Vec>> fk(n, std::vector<Vec>(m)), kf(n, std::vector<Vec>(m));
  for (std::size_t i = 0; i < n; ++i) {
    Vec fi = f.column(i);
    for (std::size_t k = 0; k < m; ++k) {
      fk[i][k] = to.multiply(fi, to.basis_vector(k));
      kf[i][k] = to.multiply(to.basis_vector(k), fi);
    }
  }
  Matrix unit = convolution_unit(from, to);
  std::vector<Vec> rows;
  Vec rhs;
  for (int side = 0; side < 2; ++side)
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<Vec> eq(m, Vec(unknowns));
      for (const auto& t : from.comult[c]) {
        // side 0: f(c1) g(c2); side 1: g(c1) f(c2)
        std::size_t gj = side == 0 ? t.right : t.left;
        std::size_t fi = side == 0 ? t.left : t.right;
        for (std::size_t k = 0; k < m; ++k) {
          const Vec& prod = side == 0 ? fk[fi][k] : kf[fi][k];
          for (std::size_t r = 0; r < m; ++r)
            if (!prod[r].is_zero()) eq[r][k * n + gj].add_product(t.coeff, prod[r]);
        }
      }
      for (std::size_t r = 0; r < m; ++r) {
        rows.push_back(std::move(eq[r]));
        rhs.push_back(unit(r, c));
      }
    }
  auto sol = solve_linear(Matrix::from_rows(unknowns, rows), rhs);
  if (!sol) return std::nullopt;
  Matrix g(m, n);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < n; ++j) g(k, j) = (*sol)[k * n + j];
  return g;
}

// ---------------------------------------------------------------- builders

std::string taft_label(int i, int j, const char* x, const char* g) {
  std::string out;
  if (i > 0) out += std::string(x) + (i > 1 ? "^" + std::to_string(i) : "");
  if (j > 0) out += std::string(g) + (j > 1 ? "^" + std::to_string(j) : "");
  return out.empty() ? "1" : out;
}

FinDimHopf build_taft(const CyclotomicField& field, int n, int q_index) {
  if (n < 2) throw std::invalid_argument("Taft algebra needs N >= 2");
  if (std::gcd(q_index, n) != 1)
    throw std::invalid_argument("q_index must be coprime to N for q to be primitive");
  Scalar q = Scalar::root_of_unity(field, n, q_index);
  std::size_t dim = static_cast<std::size_t>(n) * n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels.push_back(taft_label(i, j));
  // g^j x^k = q^{-jk} x^k g^j since x g = q g x
  std::vector<Scalar> qinv_pow(n);
  for (int e = 0; e < n; ++e) qinv_pow[e] = q.pow(-e);
  std::vector<Vec> products(dim * dim, Vec(dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (i + k >= n) continue;
          std::size_t a = i * n + j, b = k * n + l;
          products[a * dim + b][(i + k) * n + (j + l) % n] = qinv_pow[(j * k) % n];
        }
  FinDimAlgebra alg(labels, std::move(products), unit_vector(dim, 0));

  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  Vec dg(dim * dim), dx(dim * dim);
  dg[idx(0, 1) * dim + idx(0, 1)] = Scalar(1);
  dx[idx(0, 0) * dim + idx(1, 0)] = Scalar(1);
  dx[idx(1, 0) * dim + idx(0, 1)] = Scalar(1);
  std::vector<Vec> dgp(n), dxp(n);
  dgp[0] = dxp[0] = unit_vector(dim * dim, 0);
  for (int e = 1; e < n; ++e) {
    dgp[e] = tensor_multiply(alg, alg, dg, dgp[e - 1]);
    dxp[e] = tensor_multiply(alg, alg, dx, dxp[e - 1]);
  }
  std::vector<TermList> comult(dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) comult[idx(i, j)] = terms_of(tensor_multiply(alg, alg, dxp[i], dgp[j]), dim);

  Vec counit(dim);
  for (int j = 0; j < n; ++j) counit[idx(0, j)] = Scalar(1);

  Vec sg = alg.basis_vector(idx(0, n - 1));
  // Delta(x) = 1 (x) x + x (x) g forces S(x) = -x g^{-1} (= -q^{-1} g^{-1} x)
  Vec sx = scale(Scalar(-1), alg.multiply(alg.basis_vector(idx(1, 0)), sg));
  Matrix antipode(dim, dim);
  Vec sgj = alg.unit();
  for (int j = 0; j < n; ++j) {
    Vec v = sgj;
    for (int i = 0; i < n; ++i) {
      antipode.set_column(idx(i, j), v);
      v = alg.multiply(v, sx);
    }
    sgj = alg.multiply(sgj, sg);
  }
  FinDimHopf h = make_hopf(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
  h.family = HopfFamily::taft;
  h.taft_n = n;
  h.taft_q_index = q_index;
  h.field = &field;
  return h;
}

FinDimHopf build_group_algebra(const std::vector<int>& invariant_factors) {
  FiniteAbelianGroup g(invariant_factors);
  std::size_t n = g.order();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(g.label(i));
  std::vector<Vec> products(n * n, Vec(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) products[a * n + b][g.multiply(a, b)] = Scalar(1);
  FinDimAlgebra alg(labels, std::move(products), unit_vector(n, g.identity()));
  std::vector<TermList> comult(n);
  Vec counit(n, Scalar(1));
  Matrix antipode(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    comult[a].push_back({Scalar(1), a, a});
    antipode(g.inverse(a), a) = Scalar(1);
  }
  FinDimHopf h = make_hopf(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
  h.family = HopfFamily::group;
  h.group = g;
  return h;
}

}  // namespace hg
