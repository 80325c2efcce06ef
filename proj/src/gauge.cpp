#include "hopfgauge/gauge.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hopfgauge/errors.hpp"

namespace hg {

namespace {

// B in coordinates, as a subalgebra of A
struct BaseAlgebra {
  const ComoduleAlgebra& c;
  Matrix inc;
  Vec one;
  explicit BaseAlgebra(const ComoduleAlgebra& cm) : c(cm), inc(cm.base_inclusion()), one(cm.base_coordinates(cm.algebra.unit())) {}
  std::size_t dim() const { return inc.cols(); }
  Vec mul(const Vec& x, const Vec& y) const { return c.base_coordinates(c.algebra.multiply(inc * x, inc * y)); }
  Vec e(std::size_t i) const { return unit_vector(dim(), i); }
};

void require_centre(const Bialgebroid& b, const char* what) {
  if (!b.ext.base.b_in_centre) throw CentreRequired(std::string(what) + " needs B in the centre of A");
}

std::string bname(std::size_t i) { return "b" + std::to_string(i); }
std::string cname(std::size_t i) { return "c" + std::to_string(i); }

bool is_aut_of_base(const Matrix& m, const BaseAlgebra& B, std::string& w) {
  if (!inverse(m)) {
    w = "not invertible on B";
    return false;
  }
  if (m * B.one != B.one) {
    w = "not unital on B";
    return false;
  }
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      if (m * B.mul(B.e(i), B.e(j)) != B.mul(m * B.e(i), m * B.e(j))) {
        w = "not multiplicative on (" + bname(i) + ", " + bname(j) + ")";
        return false;
      }
  return true;
}

// Sum over the terms a (x) a~ of basis element k of C of f(a, a~) in A.
template <class Fn>
Vec sum_terms(const Bialgebroid& b, std::size_t k, Fn f) {
  std::size_t n = b.ext.dim();
  Vec out(n);
  for (const auto& [ij, cf] : b.basis_terms[k]) axpy(out, cf, f(ij / n, ij % n));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- gauge maps

bool GaugeMap::valid() const {
  if (extended) return unital && equivariant && invertible && b_multiplicative && restricts_to_aut_B;
  return unital && equivariant && algebra_map && invertible && restricts_to_aut_B;
}

GaugeMap verify_gauge(const Matrix& F, const GaloisExtension& ext, bool extended) {
  const auto& c = ext.base;
  const auto& A = c.algebra;
  std::size_t n = c.dim(), m = c.hopf.dim();
  if (F.rows() != n || F.cols() != n) throw ShapeMismatch("gauge map must be dim A x dim A");
  GaugeMap g;
  g.F = {F, A.labels(), A.labels()};
  g.extended = extended;
  Report& r = g.report;
  std::string w;

  g.unital = F * A.unit() == A.unit();
  r.add("unital", g.unital, "F(1) != 1");

  Matrix delta = coaction_matrix(c.coaction, m);
  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec lhs = delta * F.column(i);
    Vec d = delta.column(i), rhs(n * m);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t h = 0; h < m; ++h) {
        const Scalar& x = d[v * m + h];
        if (x.is_zero()) continue;
        for (std::size_t u = 0; u < n; ++u)
          if (!F(u, v).is_zero()) rhs[u * m + h].add_product(x, F(u, v));
      }
    if (lhs != rhs) w = A.labels()[i];
  }
  g.equivariant = w.empty();
  r.add("equivariant", g.equivariant, w.empty() ? "" : "delta(F(" + w + ")) != (F (x) id) delta(" + w + ")");

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (F * A.product(i, j) != A.multiply(F.column(i), F.column(j))) {
        w = "(" + A.labels()[i] + ", " + A.labels()[j] + ")";
        break;
      }
  g.algebra_map = w.empty();
  r.add("algebra_map", g.algebra_map, w);

  g.invertible = inverse(F).has_value();
  r.add("invertible", g.invertible, "singular");

  BaseAlgebra B(c);
  std::size_t bd = B.dim();
  w.clear();
  Matrix restricted(bd, bd);
  for (std::size_t k = 0; k < bd && w.empty(); ++k) {
    Vec img = F * B.inc.column(k);
    if (!c.coinvariants.contains(img)) w = "F(" + bname(k) + ") is not in B";
    else restricted.set_column(k, c.base_coordinates(img));
  }
  if (w.empty()) is_aut_of_base(restricted, B, w);
  g.restricts_to_aut_B = w.empty();
  r.add("restricts_to_aut_B", g.restricts_to_aut_B, w);
  g.vertical = g.restricts_to_aut_B && restricted == Matrix::identity(bd);
  r.add("vertical", g.vertical, "F|_B != id");

  w.clear();
  for (std::size_t k = 0; k < bd && w.empty(); ++k) {
    Vec fb = F * B.inc.column(k);
    for (std::size_t j = 0; j < n; ++j)
      if (F * A.multiply(B.inc.column(k), A.basis_vector(j)) != A.multiply(fb, F.column(j))) {
        w = "(" + bname(k) + ", " + A.labels()[j] + ")";
        break;
      }
  }
  g.b_multiplicative = w.empty();
  r.add("b_multiplicative", g.b_multiplicative, w);
  return g;
}

Matrix gauge_product(const Matrix& F, const Matrix& G) { return G * F; }

GaugeMap gauge_inverse(const GaugeMap& F, const Bialgebroid& b) {
  require_centre(b, "gauge_inverse");
  if (F.extended || !F.valid()) throw CheckFailure("gauge_inverse needs a strict gauge map");
  const auto& c = b.ext.base;
  const auto& A = c.algebra;
  const Matrix& f = F.F.matrix;
  std::size_t n = c.dim(), d = b.dim();
  BaseAlgebra B(c);
  Matrix restricted(B.dim(), B.dim());
  for (std::size_t k = 0; k < B.dim(); ++k) restricted.set_column(k, c.base_coordinates(f * B.inc.column(k)));
  Matrix rinv = *inverse(restricted);
  // (F|_B)^{-1}(a F(a~)) for each basis element a (x) a~ of C
  std::vector<Vec> lead(d);
  for (std::size_t u = 0; u < d; ++u) {
    Vec v = sum_terms(b, u, [&](std::size_t i, std::size_t j) { return A.multiply(A.basis_vector(i), f.column(j)); });
    if (!c.coinvariants.contains(v)) throw ClosureFailure("a F(a~) is not in B");
    lead[u] = B.inc * (rinv * c.base_coordinates(v));
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec img(n);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& y = b.split(u * n + k, i);
        if (!y.is_zero()) axpy(img, y, A.multiply(lead[u], A.basis_vector(k)));
      }
    out.set_column(i, img);
  }
  return verify_gauge(out, b.ext, false);
}

// ---------------------------------------------------------------- bisections

bool Bisection::valid() const {
  if (extended) return unital && t_section && s_aut && b_linear && invertible;
  return unital && algebra_map && t_section && s_aut;
}

Matrix unit_bisection(const Bialgebroid& b) { return b.counit; }

Matrix bisection_product(const Matrix& s1, const Matrix& s2, const Bialgebroid& b) {
  require_centre(b, "bisection_product");
  BaseAlgebra B(b.ext.base);
  std::size_t d = b.dim();
  Matrix s2s = s2 * b.source;
  Matrix out(B.dim(), d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec D = b.apply_coproduct(unit_vector(d, k));
    Vec acc(B.dim());
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t v = 0; v < d; ++v) {
        const Scalar& y = D[u * d + v];
        if (y.is_zero()) continue;
        axpy(acc, y, B.mul(s2s * s1.column(u), s2.column(v)));
      }
    out.set_column(k, acc);
  }
  return out;
}

Matrix beta(const Matrix& sigma, const Bialgebroid& b) {
  require_centre(b, "beta");
  const auto& A = b.ext.base.algebra;
  BaseAlgebra B(b.ext.base);
  std::size_t n = A.dim(), d = b.dim();
  std::vector<Vec> sv(d);
  for (std::size_t u = 0; u < d; ++u) sv[u] = B.inc * sigma.column(u);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec img(n);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& y = b.split(u * n + k, i);
        if (!y.is_zero()) axpy(img, y, A.multiply(sv[u], A.basis_vector(k)));
      }
    out.set_column(i, img);
  }
  return out;
}

Matrix alpha(const Matrix& F, const Bialgebroid& b) {
  require_centre(b, "alpha");
  const auto& c = b.ext.base;
  const auto& A = c.algebra;
  std::size_t d = b.dim();
  Matrix out(c.base_dim(), d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec v = sum_terms(b, k, [&](std::size_t i, std::size_t j) { return A.multiply(F.column(i), A.basis_vector(j)); });
    if (!c.coinvariants.contains(v)) throw ClosureFailure("F(a) a~ is not in B");
    out.set_column(k, c.base_coordinates(v));
  }
  return out;
}

Matrix bisection_inverse(const Matrix& sigma, const Bialgebroid& b) {
  require_centre(b, "bisection_inverse");
  const auto& c = b.ext.base;
  const auto& A = c.algebra;
  auto ss = inverse(sigma * b.source);
  if (!ss) throw NotInvertible("sigma o s is not invertible");
  Matrix F = beta(sigma, b);
  std::size_t d = b.dim();
  Matrix out(c.base_dim(), d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec v = sum_terms(b, k, [&](std::size_t i, std::size_t j) { return A.multiply(A.basis_vector(i), F.column(j)); });
    if (!c.coinvariants.contains(v)) throw ClosureFailure("a F_sigma(a~) is not in B");
    out.set_column(k, *ss * c.base_coordinates(v));
  }
  return out;
}

std::optional<Matrix> product_inverse(const Matrix& sigma, const Bialgebroid& b) {
  require_centre(b, "product_inverse");
  // tau * sigma is linear in tau: solve for a left inverse, then confirm it on the right
  std::size_t bd = b.base_dim(), d = b.dim();
  Matrix eps = b.counit;
  Matrix sys(bd * d, bd * d);
  for (std::size_t p = 0; p < bd; ++p)
    for (std::size_t u = 0; u < d; ++u) {
      Matrix e(bd, d);
      e(p, u) = Scalar(1);
      Matrix img = bisection_product(e, sigma, b);
      for (std::size_t r = 0; r < bd; ++r)
        for (std::size_t k = 0; k < d; ++k) sys(r * d + k, p * d + u) = img(r, k);
    }
  Vec rhs(bd * d);
  for (std::size_t r = 0; r < bd; ++r)
    for (std::size_t k = 0; k < d; ++k) rhs[r * d + k] = eps(r, k);
  auto sol = solve_linear(sys, rhs);
  if (!sol) return std::nullopt;
  Matrix inv(bd, d);
  for (std::size_t p = 0; p < bd; ++p)
    for (std::size_t u = 0; u < d; ++u) inv(p, u) = (*sol)[p * d + u];
  if (bisection_product(sigma, inv, b) != eps) return std::nullopt;
  return inv;
}

Bisection verify_bisection(const Matrix& sigma, const Bialgebroid& b, bool extended) {
  const auto& c = b.ext.base;
  BaseAlgebra B(c);
  std::size_t bd = B.dim(), d = b.dim();
  if (sigma.rows() != bd || sigma.cols() != d) throw ShapeMismatch("bisection must be dim B x dim C");
  Bisection s;
  s.sigma = sigma;
  s.extended = extended;
  Report& r = s.report;
  std::string w;

  s.unital = sigma * b.unit == B.one;
  r.add("unital", s.unital, "sigma(1 (x) 1) != 1");

  w.clear();
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (sigma * b.product[i * d + j] != B.mul(sigma.column(i), sigma.column(j))) {
        w = "(" + cname(i) + ", " + cname(j) + ")";
        break;
      }
  s.algebra_map = w.empty();
  r.add("algebra_map", s.algebra_map, w);

  s.t_section = sigma * b.target == Matrix::identity(bd);
  r.add("t_section", s.t_section, "sigma o t != id");
  Matrix ss = sigma * b.source;
  w.clear();
  s.s_aut = is_aut_of_base(ss, B, w);
  r.add("s_aut", s.s_aut, "sigma o s " + w);
  s.vertical = ss == Matrix::identity(bd);
  r.add("vertical", s.vertical, "sigma o s != id");

  w.clear();
  for (std::size_t k = 0; k < bd && w.empty(); ++k) {
    Vec tb = b.t(B.e(k)), sb = b.s(B.e(k));
    for (std::size_t u = 0; u < d; ++u) {
      Vec cu = unit_vector(d, u);
      if (sigma * b.multiply(tb, cu) != B.mul(sigma.column(u), B.e(k))) {
        w = "sigma(" + cname(u) + " < " + bname(k) + ")";
        break;
      }
      if (sigma * b.multiply(sb, cu) != B.mul(sigma.column(u), ss * B.e(k))) {
        w = "sigma(" + bname(k) + " > " + cname(u) + ")";
        break;
      }
    }
  }
  s.b_linear = w.empty();
  r.add("b_linear", s.b_linear, w);

  if (s.unital && s.t_section && s.s_aut && s.b_linear) {
    if (!extended && s.algebra_map && c.b_in_centre) {
      Matrix inv = bisection_inverse(sigma, b);
      s.invertible = bisection_product(sigma, inv, b) == b.counit && bisection_product(inv, sigma, b) == b.counit;
      if (s.invertible) s.inverse = inv;
    } else {
      s.inverse = product_inverse(sigma, b);
      s.invertible = s.inverse.has_value();
    }
    r.add("invertible", s.invertible, "no two-sided inverse for the product");
  } else {
    r.skip("invertible", "not a candidate bisection");
  }
  return s;
}

// ---------------------------------------------------------------- characters

std::vector<Matrix> enumerate_characters(const FinDimHopf& h) {
  if (!h.field) throw UnsupportedFamily("characters need the field of H");
  const CyclotomicField& f = *h.field;
  std::vector<Matrix> out;
  if (h.family == HopfFamily::taft) {
    int N = h.taft_n;
    if (!f.has_root_of_order(N)) throw RootUnavailable("field lacks N-th roots of unity");
    for (int k = 0; k < N; ++k) {
      Matrix phi(1, h.dim());
      for (int j = 0; j < N; ++j) phi(0, j) = Scalar::root_of_unity(f, N, static_cast<long>(k) * j);
      out.push_back(std::move(phi));
    }
    return out;
  }
  if (h.family == HopfFamily::group) {
    const auto& G = h.group;
    const auto& fac = G.factors();
    for (int n : fac)
      if (!f.has_root_of_order(n)) throw RootUnavailable("field lacks roots of unity of order " + std::to_string(n));
    // the dual group indexed like G itself
    for (std::size_t k = 0; k < G.order(); ++k) {
      auto kk = G.element(k);
      Matrix chi(1, h.dim());
      for (std::size_t g = 0; g < G.order(); ++g) {
        auto gg = G.element(g);
        Scalar v(1);
        for (std::size_t i = 0; i < fac.size(); ++i) v *= Scalar::root_of_unity(f, fac[i], static_cast<long>(kk[i]) * gg[i]);
        chi(0, g) = v;
      }
      out.push_back(std::move(chi));
    }
    return out;
  }
  throw UnsupportedFamily("character enumeration covers Taft algebras and group algebras only");
}

std::vector<Bisection> enumerate_characters(const Bialgebroid& b) {
  const auto& H = b.ext.base.hopf;
  if (!b.over_ground()) throw UnsupportedFamily("character enumeration needs a Galois object");
  Matrix fwd;
  const auto& labels = b.ext.base.algebra.labels();
  bool taft_object = H.family == HopfFamily::taft &&
                     std::find(labels.begin(), labels.end(), taft_label(1, 0, "X", "G")) != labels.end();
  if (taft_object) {
    auto t = iso_taft(b);
    if (!t.iso.ok()) throw CheckFailure("C(A_s, T_N) -> T_N failed to verify");
    fwd = t.iso.forward.matrix;
  } else if (H.family == HopfFamily::group) {
    auto iso = iso_cocommutative(b);
    if (!iso.ok()) throw CheckFailure("C(A, H) -> H failed to verify");
    fwd = iso.forward.matrix;
  } else if (b.ext.dim() == H.dim()) {
    auto iso = iso_self(b);
    if (!iso.ok()) throw CheckFailure("C(H, H) -> H failed to verify");
    fwd = iso.forward.matrix;
  } else {
    throw UnsupportedFamily("no known isomorphism C(A, H) -> H for this object");
  }
  std::vector<Bisection> out;
  for (const auto& chi : enumerate_characters(H)) {
    auto s = verify_bisection(chi * fwd, b, false);
    if (!s.valid()) throw CheckFailure("a pulled-back character is not a bisection");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> group_table(const std::vector<Matrix>& elems,
                                          const std::function<Matrix(const Matrix&, const Matrix&)>& product) {
  std::size_t k = elems.size();
  std::vector<std::vector<int>> t(k, std::vector<int>(k, -1));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Matrix p = product(elems[i], elems[j]);
      for (std::size_t r = 0; r < k; ++r)
        if (elems[r] == p) {
          t[i][j] = static_cast<int>(r);
          break;
        }
    }
  return t;
}

bool is_cyclic_table(const std::vector<std::vector<int>>& t) {
  std::size_t k = t.size();
  if (k == 0) return false;
  for (const auto& row : t)
    for (int x : row)
      if (x < 0) return false;
  // identity
  int e = -1;
  for (std::size_t i = 0; i < k && e < 0; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < k; ++j) ok = ok && t[i][j] == static_cast<int>(j) && t[j][i] == static_cast<int>(j);
    if (ok) e = static_cast<int>(i);
  }
  if (e < 0) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (t[t[i][j]][l] != t[i][t[j][l]]) return false;
  for (std::size_t g = 0; g < k; ++g) {
    std::set<int> seen;
    int x = e;
    for (std::size_t p = 0; p < k; ++p) {
      seen.insert(x);
      x = t[x][g];
    }
    if (seen.size() == k) return true;
  }
  return false;
}

// ---------------------------------------------------------------- extended gauge families

Matrix AffineFamily::at(const std::vector<Scalar>& params) const {
  if (params.size() != directions.size()) throw ShapeMismatch("parameter count");
  Matrix m = particular;
  for (std::size_t k = 0; k < params.size(); ++k)
    if (!params[k].is_zero()) m = m + params[k] * directions[k];
  return m;
}

std::pair<Scalar, std::vector<Scalar>> AffineFamily::entry(std::size_t r, std::size_t c) const {
  std::vector<Scalar> coeffs;
  for (const auto& d : directions) coeffs.push_back(d(r, c));
  return {particular(r, c), coeffs};
}

bool AffineFamily::contains(const Matrix& m) const {
  Matrix diff = m - particular;
  std::size_t n = m.rows();
  std::vector<Vec> cols;
  for (const auto& d : directions) {
    Vec v(n * n);
    for (std::size_t i = 0; i < n * n; ++i) v[i] = d(i / n, i % n);
    cols.push_back(std::move(v));
  }
  Vec rhs(n * n);
  for (std::size_t i = 0; i < n * n; ++i) rhs[i] = diff(i / n, i % n);
  if (cols.empty()) return is_zero_vec(rhs);
  return solve_linear(Matrix::from_columns(n * n, cols), rhs).has_value();
}

AffineFamily solve_extended_gauge(const GaloisExtension& ext) {
  const auto& c = ext.base;
  const auto& A = c.algebra;
  std::size_t n = c.dim(), m = c.hopf.dim();
  Matrix delta = coaction_matrix(c.coaction, m);
  // unknown F(u, i) at index i * n + u
  std::size_t unknowns = n * n;
  std::vector<Vec> rows;
  Vec rhs_all;
  for (std::size_t i = 0; i < n; ++i) {
    Vec di = delta.column(i);
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t h = 0; h < m; ++h) {
        // [delta F(e_i)]_{w,h} - [(F (x) id) delta(e_i)]_{w,h} = 0
        Vec row(unknowns);
        for (std::size_t u = 0; u < n; ++u)
          if (!delta(w * m + h, u).is_zero()) row[i * n + u] += delta(w * m + h, u);
        for (std::size_t v = 0; v < n; ++v)
          if (!di[v * m + h].is_zero()) row[v * n + w] -= di[v * m + h];
        if (!is_zero_vec(row)) {
          rows.push_back(std::move(row));
          rhs_all.push_back(Scalar(0));
        }
      }
  }
  const Vec& one = A.unit();
  for (std::size_t w = 0; w < n; ++w) {
    // F(1) = 1
    Vec row(unknowns);
    for (std::size_t i = 0; i < n; ++i)
      if (!one[i].is_zero()) row[i * n + w] = one[i];
    rows.push_back(std::move(row));
    rhs_all.push_back(one[w]);
  }
  Matrix sys = Matrix::from_rows(unknowns, rows);
  auto part = solve_linear(sys, rhs_all);
  if (!part) throw CheckFailure("no unital equivariant map");
  SubspaceBasis hom = kernel(sys);

  auto to_matrix = [&](const Vec& v) {
    Matrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t u = 0; u < n; ++u) M(u, i) = v[i * n + u];
    return M;
  };
  AffineFamily fam;
  // particular solution with every parameter zero
  Vec p = *part;
  for (std::size_t k = 0; k < hom.dim(); ++k) {
    Scalar at = p[hom.pivots()[k]];
    if (!at.is_zero()) axpy(p, -at, hom.vector(k));
  }
  fam.particular = to_matrix(p);
  for (std::size_t k = 0; k < hom.dim(); ++k) {
    fam.directions.push_back(to_matrix(hom.vector(k)));
    std::size_t piv = hom.pivots()[k];
    fam.anchors.emplace_back(piv % n, piv / n);
  }

  // invertibility: sample the determinant at two generic points with one parameter switched off
  std::size_t k = fam.free_parameters();
  std::vector<std::vector<Scalar>> bases = {std::vector<Scalar>(k, Scalar(1)), {}};
  for (std::size_t i = 0; i < k; ++i) bases[1].push_back(Scalar(static_cast<long>(2 + 3 * i)));
  for (std::size_t i = 0; i < k; ++i) {
    bool always = true;
    for (auto pt : bases) {
      pt[i] = Scalar(0);
      if (!determinant(fam.at(pt)).is_zero()) always = false;
    }
    if (always) fam.must_be_nonzero.push_back(i);
  }
  return fam;
}

// ---------------------------------------------------------------- polynomial elimination

namespace {

using Mono = std::vector<int>;

struct Poly {
  std::map<Mono, Scalar> t;

  bool zero() const { return t.empty(); }
  bool constant() const { return t.empty() || (t.size() == 1 && std::all_of(t.begin()->first.begin(), t.begin()->first.end(), [](int e) { return e == 0; })); }
  void add(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }
  int degree_in(std::size_t v) const {
    int d = 0;
    for (const auto& [m, c] : t) d = std::max(d, m[v]);
    return d;
  }
};

Poly pconst(std::size_t k, const Scalar& s) {
  Poly p;
  p.add(Mono(k, 0), s);
  return p;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      Mono m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.add(m, ca * cb);
    }
  return out;
}

Poly padd(Poly a, const Poly& b, const Scalar& s = Scalar(1)) {
  for (const auto& [m, c] : b.t) a.add(m, s * c);
  return a;
}

Poly substitute(const Poly& p, std::size_t v, const Poly& q) {
  std::size_t k = q.t.empty() ? (p.t.empty() ? 0 : p.t.begin()->first.size()) : q.t.begin()->first.size();
  Poly out;
  std::vector<Poly> powers{pconst(k, Scalar(1))};
  for (const auto& [m, c] : p.t) {
    int e = m[v];
    while (static_cast<int>(powers.size()) <= e) powers.push_back(pmul(powers.back(), q));
    Mono rest = m;
    rest[v] = 0;
    Poly mono;
    mono.add(rest, c);
    out = padd(out, pmul(mono, powers[e]));
  }
  return out;
}

struct Branch {
  std::vector<Poly> eqs;
  std::vector<std::optional<Poly>> value;  // assigned variables, in terms of free ones
  std::set<std::size_t> nonzero;
};

// roots of a univariate polynomial given by coefficients (index = degree)
std::vector<Scalar> univariate_roots(std::vector<Scalar> co, const CyclotomicField& f) {
  while (!co.empty() && co.back().is_zero()) co.pop_back();
  std::vector<Scalar> roots;
  auto add_root = [&](const Scalar& r) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  };
  auto deflate = [&](const Scalar& r) {
    std::size_t deg = co.size() - 1;
    std::vector<Scalar> q(deg);
    Scalar acc(0);
    for (std::size_t i = deg + 1; i-- > 1;) {
      acc = co[i] + acc * r;
      q[i - 1] = acc;
    }
    co = std::move(q);
  };
  auto eval = [&](const Scalar& x) {
    Scalar acc(0);
    for (std::size_t i = co.size(); i-- > 0;) acc = acc * x + co[i];
    return acc;
  };
  while (co.size() > 1 && co[0].is_zero()) {
    add_root(Scalar(0));
    co.erase(co.begin());
  }
  int r = f.root_order();
  bool progress = true;
  while (co.size() > 1 && progress) {
    progress = false;
    for (int j = 0; j < r && co.size() > 1; ++j) {
      Scalar z = Scalar::root_of_unity(f, r, j);
      if (eval(z).is_zero()) {
        add_root(z);
        deflate(z);
        progress = true;
      }
    }
  }
  if (co.size() == 2) {
    add_root(-co[0] / co[1]);
  } else if (co.size() == 3) {
    Scalar disc = co[1] * co[1] - Scalar(4) * co[0] * co[2];
    auto sq = nth_root(disc, 2, &f);
    if (!sq) throw RootUnavailable("quadratic factor needs a square root outside the field");
    add_root((-co[1] + *sq) / (Scalar(2) * co[2]));
    add_root((-co[1] - *sq) / (Scalar(2) * co[2]));
  } else if (co.size() > 3) {
    throw UnsupportedFamily("univariate factor of degree > 2 without roots of unity");
  }
  return roots;
}

void assign(Branch& br, std::size_t v, const Poly& expr) {
  for (auto& e : br.eqs) e = substitute(e, v, expr);
  for (auto& val : br.value)
    if (val) *val = substitute(*val, v, expr);
  br.value[v] = expr;
}

void eliminate(Branch br, const CyclotomicField& f, std::vector<std::vector<Scalar>>& out, int depth) {
  if (depth > 200) throw UnsupportedFamily("elimination did not terminate");
  std::size_t k = br.value.size();
  for (;;) {
    std::vector<Poly> live;
    for (auto& e : br.eqs) {
      if (e.zero()) continue;
      if (e.constant()) return;  // inconsistent
      live.push_back(std::move(e));
    }
    br.eqs = std::move(live);
    for (std::size_t v : br.nonzero)
      if (br.value[v] && br.value[v]->zero()) return;
    if (br.eqs.empty()) break;

    // a variable occurring only as c * v with constant c
    bool done = false;
    std::size_t best_eq = 0, best_var = 0, best_size = SIZE_MAX;
    for (std::size_t i = 0; i < br.eqs.size(); ++i) {
      const Poly& e = br.eqs[i];
      for (std::size_t v = 0; v < k; ++v) {
        if (br.value[v]) continue;
        bool linear = false, ok = true;
        for (const auto& [m, c] : e.t) {
          if (m[v] == 0) continue;
          bool pure = m[v] == 1;
          for (std::size_t j = 0; j < k && pure; ++j)
            if (j != v && m[j]) pure = false;
          if (!pure) ok = false;
          else linear = true;
        }
        if (ok && linear && e.t.size() < best_size) {
          best_eq = i;
          best_var = v;
          best_size = e.t.size();
        }
      }
    }
    if (best_size != SIZE_MAX) {
      const Poly& e = br.eqs[best_eq];
      Mono mv(k, 0);
      mv[best_var] = 1;
      Scalar c = e.t.at(mv);
      Poly rest = e;
      rest.t.erase(mv);
      Poly expr = padd(Poly{}, rest, -(Scalar(1) / c));
      if (br.nonzero.count(best_var) && expr.zero()) return;
      // a nonzero constraint on best_var is checked on the final values
      assign(br, best_var, expr);
      done = true;
    }
    if (done) continue;

    // a variable dividing every monomial
    for (std::size_t i = 0; i < br.eqs.size() && !done; ++i) {
      Poly& e = br.eqs[i];
      for (std::size_t v = 0; v < k && !done; ++v) {
        if (br.value[v]) continue;
        bool divides = true;
        for (const auto& [m, c] : e.t) divides = divides && m[v] > 0;
        if (!divides) continue;
        Poly q;
        for (const auto& [m, c] : e.t) {
          Mono mm = m;
          --mm[v];
          q.add(mm, c);
        }
        if (br.nonzero.count(v)) {
          e = std::move(q);
        } else {
          Branch zero = br;
          assign(zero, v, Poly{});
          eliminate(std::move(zero), f, out, depth + 1);
          e = std::move(q);
          br.nonzero.insert(v);
        }
        done = true;
      }
    }
    if (done) continue;

    // a univariate equation
    for (std::size_t i = 0; i < br.eqs.size() && !done; ++i) {
      const Poly& e = br.eqs[i];
      std::set<std::size_t> vars;
      for (const auto& [m, c] : e.t)
        for (std::size_t j = 0; j < k; ++j)
          if (m[j]) vars.insert(j);
      if (vars.size() != 1) continue;
      std::size_t v = *vars.begin();
      std::vector<Scalar> co(e.degree_in(v) + 1);
      for (const auto& [m, c] : e.t) co[m[v]] += c;
      for (const auto& root : univariate_roots(co, f)) {
        if (root.is_zero() && br.nonzero.count(v)) continue;
        Branch next = br;
        assign(next, v, pconst(k, root));
        eliminate(std::move(next), f, out, depth + 1);
      }
      return;
    }
    throw UnsupportedFamily("algebra-map constraints need nonlinear elimination beyond this solver");
  }
  std::vector<Scalar> x(k);
  for (std::size_t v = 0; v < k; ++v) {
    if (!br.value[v]) throw UnsupportedFamily("algebra maps in this family form a positive-dimensional set");
    if (!br.value[v]->constant()) throw UnsupportedFamily("algebra maps in this family form a positive-dimensional set");
    x[v] = br.value[v]->zero() ? Scalar(0) : br.value[v]->t.begin()->second;
  }
  for (std::size_t v : br.nonzero)
    if (x[v].is_zero()) return;
  if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
}

}  // namespace

std::vector<Matrix> algebra_maps_in_family(const AffineFamily& fam, const GaloisExtension& ext) {
  const auto& A = ext.base.algebra;
  const CyclotomicField* f = ext.base.hopf.field;
  if (!f) throw UnsupportedFamily("no field attached to H");
  std::size_t n = A.dim(), k = fam.free_parameters();
  // entries of F as affine polynomials
  std::vector<Poly> F(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t i = 0; i < n; ++i) {
      Poly p = pconst(k, fam.particular(u, i));
      for (std::size_t j = 0; j < k; ++j) {
        Mono m(k, 0);
        m[j] = 1;
        p.add(m, fam.directions[j](u, i));
      }
      F[u * n + i] = std::move(p);
    }
  Branch br;
  br.value.assign(k, std::nullopt);
  br.nonzero.insert(fam.must_be_nonzero.begin(), fam.must_be_nonzero.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Poly> lhs(n);
      for (std::size_t u = 0; u < n; ++u) {
        if (F[u * n + i].zero()) continue;
        for (std::size_t v = 0; v < n; ++v) {
          if (F[v * n + j].zero()) continue;
          Poly uv = pmul(F[u * n + i], F[v * n + j]);
          for (const auto& [r, c] : A.sparse_product(u, v)) lhs[r] = padd(lhs[r], uv, c);
        }
      }
      for (const auto& [w, c] : A.sparse_product(i, j))
        for (std::size_t r = 0; r < n; ++r) lhs[r] = padd(lhs[r], F[r * n + w], -c);
      for (auto& e : lhs)
        if (!e.zero()) br.eqs.push_back(std::move(e));
    }
  std::vector<std::vector<Scalar>> sols;
  eliminate(std::move(br), *f, sols, 0);
  std::vector<Matrix> out;
  for (const auto& x : sols) {
    Matrix M = fam.at(x);
    if (verify_gauge(M, ext, false).valid()) out.push_back(std::move(M));
  }
  return out;
}

// ---------------------------------------------------------------- display

std::optional<std::vector<std::size_t>> display_order(int taft_n) {
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(i * taft_n + j); };
  if (taft_n == 2) return std::vector<std::size_t>{idx(0, 0), idx(1, 1), idx(0, 1), idx(1, 0)};
  if (taft_n == 3)
    return std::vector<std::size_t>{idx(0, 0), idx(1, 2), idx(2, 1), idx(0, 2), idx(1, 1),
                                    idx(2, 0), idx(0, 1), idx(1, 0), idx(2, 2)};
  return std::nullopt;
}

Matrix to_display(const Matrix& m, const std::vector<std::size_t>& order) {
  std::size_t k = order.size();
  Matrix out(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) out(r, c) = m(order[c], order[r]);
  return out;
}

}  // namespace hg
