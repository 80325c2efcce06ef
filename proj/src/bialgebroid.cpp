#include "hopfgauge/bialgebroid.hpp"

#include <map>

#include "hopfgauge/errors.hpp"

namespace hg {

namespace {

using SparseMap = std::map<std::size_t, Scalar>;

void accumulate(SparseMap& m, std::size_t k, const Scalar& v) {
  auto [it, fresh] = m.try_emplace(k, v);
  if (!fresh) it->second += v;
}

void prune(SparseMap& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

// (a (x) a~) . (a' (x) a~') = a a' (x) a~' a~ on sparse representatives
Vec aa_product(const FinDimAlgebra& A, const SparseVec& x, const SparseVec& y) {
  std::size_t n = A.dim();
  Vec out(n * n);
  for (const auto& [xi, cx] : x)
    for (const auto& [yi, cy] : y) {
      Scalar c = cx * cy;
      const auto& left = A.sparse_product(xi / n, yi / n);
      const auto& right = A.sparse_product(yi % n, xi % n);
      for (const auto& [u, wu] : left) {
        Scalar cu = c * wu;
        for (const auto& [v, wv] : right) out[u * n + v].add_product(cu, wv);
      }
    }
  return out;
}

// b (x) 1 or 1 (x) b as dense elements of A (x) A
Vec left_pure(const Vec& a, const Vec& b) {
  std::size_t n = a.size();
  Vec out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    if (!a[i].is_zero())
      for (std::size_t j = 0; j < n; ++j)
        if (!b[j].is_zero()) out[i * n + j] = a[i] * b[j];
  return out;
}

SubspaceBasis tau_form(const GaloisExtension& g) {
  const auto& c = g.base;
  const auto& A = c.algebra;
  std::size_t n = c.dim();
  const QuotientSpace& q2 = g.balanced;
  const Vec& one = A.unit();
  std::vector<Vec> cols(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v(n * n * n);
      for (const auto& t : c.coaction.terms[i])
        for (const auto& [pr, tc] : g.tau_terms[t.right]) {
          std::size_t p = pr / n, r = pr % n;
          Scalar k = t.coeff * tc;
          for (const auto& [u, w] : A.sparse_product(r, j)) v[(t.left * n + p) * n + u].add_product(k, w);
        }
      for (std::size_t u = 0; u < n; ++u)
        if (!one[u].is_zero()) v[(i * n + j) * n + u] -= one[u];
      cols[i * n + j] = project_middle(q2, v, n, 1);
    }
  return kernel(Matrix::from_columns(n * q2.dim(), cols));
}

std::optional<SubspaceBasis> equalizer_form(const ComoduleAlgebra& c) {
  const auto& H = c.hopf;
  if (!H.antipode_inverse) return std::nullopt;
  const Matrix& sinv = *H.antipode_inverse;
  std::size_t n = c.dim(), m = H.dim();
  std::vector<Vec> cols(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v(n * m * n);
      for (const auto& t : c.coaction.terms[i]) v[(t.left * m + t.right) * n + j] += t.coeff;
      for (const auto& t : c.coaction.terms[j])
        for (std::size_t u = 0; u < m; ++u)
          if (!sinv(u, t.right).is_zero()) v[(i * m + u) * n + t.left] -= t.coeff * sinv(u, t.right);
      cols[i * n + j] = std::move(v);
    }
  return kernel(Matrix::from_columns(n * m * n, cols));
}

Vec coords_or_throw(const SubspaceBasis& C, const Vec& v, const char* what) {
  auto c = C.coordinates(v);
  if (!c) throw ClosureFailure(std::string(what) + " leaves C(A, H)");
  return *c;
}

// a_(0) (x) tau(a_(1)) lies in C (x)_B A. Over the ground field the slices along the last
// factor are read off directly; otherwise solve modulo balancing in the middle.
Matrix translation_split(const Bialgebroid& b) {
  const auto& c = b.ext.base;
  std::size_t n = c.dim(), d = b.dim(), n2 = n * n;
  std::vector<Vec> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(n2 * n);
    for (const auto& t : c.coaction.terms[i])
      for (const auto& [pr, tc] : b.ext.tau_terms[t.right]) v[(t.left * n + pr / n) * n + pr % n].add_product(t.coeff, tc);
    raw[i] = std::move(v);
  }
  Matrix out(d * n, n);
  if (b.over_ground()) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec col(d * n);
      for (std::size_t k = 0; k < n; ++k) {
        Vec slice(n2);
        for (std::size_t p = 0; p < n2; ++p) slice[p] = raw[i][p * n + k];
        Vec y = coords_or_throw(b.C, slice, "a_(0) (x) tau(a_(1))");
        for (std::size_t u = 0; u < d; ++u) col[u * n + k] = y[u];
      }
      out.set_column(i, col);
    }
    return out;
  }
  const QuotientSpace& q2 = b.ext.balanced;
  std::size_t rows = n * q2.dim();
  std::vector<Vec> iota(d * n);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t k = 0; k < n; ++k) {
      Vec full(n2 * n);
      for (const auto& [p, cp] : b.basis_terms[u]) full[p * n + k] += cp;
      iota[u * n + k] = project_middle(q2, full, n, 1);
    }
  std::vector<Vec> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = project_middle(q2, raw[i], n, 1);
  auto sol = solve_many(Matrix::from_columns(rows, iota), Matrix::from_columns(rows, rhs));
  if (!sol) throw ClosureFailure("a_(0) (x) tau(a_(1)) is not in C (x)_B A");
  return *sol;
}

}  // namespace

Vec Bialgebroid::coordinates(const Vec& aa) const { return coords_or_throw(C, aa, "element"); }

Vec Bialgebroid::multiply(const Vec& x, const Vec& y) const {
  std::size_t c = dim();
  Vec out(c);
  for (std::size_t i = 0; i < c; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < c; ++j) {
      if (y[j].is_zero()) continue;
      Scalar k = x[i] * y[j];
      const Vec& p = product[i * c + j];
      for (std::size_t r = 0; r < c; ++r)
        if (!p[r].is_zero()) out[r].add_product(k, p[r]);
    }
  }
  return out;
}

Vec Bialgebroid::apply_coproduct(const Vec& x) const { return CC.lift(coproduct * x); }

Matrix coproduct_from_translation(const Bialgebroid& b, const std::vector<SparseVec>& tau, bool* in_range) {
  const auto& c = b.ext.base;
  std::size_t n = c.dim(), d = b.dim(), n2 = n * n;
  bool ok = true;
  std::vector<SparseMap> images(d);
  for (std::size_t k = 0; k < d; ++k) {
    SparseMap& D = images[k];
    for (const auto& [ij, cf] : b.basis_terms[k]) {
      std::size_t i = ij / n, j = ij % n;
      for (const auto& t : c.coaction.terms[i]) {
        Scalar k1 = cf * t.coeff;
        for (const auto& [pr, tc] : tau[t.right]) accumulate(D, (t.left * n2 + pr) * n + j, k1 * tc);
      }
    }
    prune(D);
  }

  Matrix out(b.CC.dim(), d);
  if (b.over_ground()) {
    // C has a canonical basis with pivots, so coordinates in C (x) C are read at pivot pairs
    const auto& piv = b.C.pivots();
    for (std::size_t k = 0; k < d; ++k) {
      Vec x(d * d);
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
          auto it = images[k].find(piv[u] * n2 + piv[v]);
          if (it != images[k].end()) x[u * d + v] = it->second;
        }
      SparseMap rebuilt;
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
          if (x[u * d + v].is_zero()) continue;
          for (const auto& [p, cp] : b.basis_terms[u]) {
            Scalar k1 = x[u * d + v] * cp;
            for (const auto& [r, cr] : b.basis_terms[v]) accumulate(rebuilt, p * n2 + r, k1 * cr);
          }
        }
      prune(rebuilt);
      if (rebuilt != images[k]) ok = false;
      out.set_column(k, x);
    }
  } else {
    const QuotientSpace& q2 = b.ext.balanced;
    std::size_t rows = n * q2.dim() * n;
    std::vector<Vec> iota(d * d);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t v = 0; v < d; ++v) {
        Vec full(n2 * n2);
        for (const auto& [p, cp] : b.basis_terms[u])
          for (const auto& [r, cr] : b.basis_terms[v]) full[p * n2 + r] += cp * cr;
        iota[u * d + v] = project_middle(q2, full, n, n);
      }
    Matrix im = Matrix::from_columns(rows, iota);
    std::vector<Vec> rhs(d);
    for (std::size_t k = 0; k < d; ++k) {
      Vec full(n2 * n2);
      for (const auto& [idx, v] : images[k]) full[idx] = v;
      rhs[k] = project_middle(q2, full, n, n);
    }
    auto sol = solve_many(im, Matrix::from_columns(rows, rhs));
    if (!sol) {
      ok = false;
    } else {
      for (std::size_t k = 0; k < d; ++k) out.set_column(k, b.CC.project(sol->column(k)));
    }
  }
  if (in_range) *in_range = ok;
  return out;
}

Bialgebroid build_bialgebroid(const GaloisExtension& g) {
  if (!g.is_galois) throw NotGaloisError("the bialgebroid needs a Hopf-Galois extension");
  Bialgebroid b;
  b.ext = g;
  const auto& c = g.base;
  const auto& A = c.algebra;
  std::size_t n = c.dim();

  b.C = coinvariants(diagonal_coaction(c), c.hopf);
  b.C_tau = tau_form(g);
  b.C_equalizer = equalizer_form(c);
  if (!(b.C == b.C_tau)) throw SubspaceMismatch("diagonal coinvariants differ from the translation-map form");
  if (b.C_equalizer && !(b.C == *b.C_equalizer))
    throw SubspaceMismatch("diagonal coinvariants differ from the equalizer form");
  std::size_t d = b.dim();
  for (const auto& v : b.C.basis()) b.basis_terms.push_back(to_sparse(v));

  b.product.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      b.product[i * d + j] = coords_or_throw(b.C, aa_product(A, b.basis_terms[i], b.basis_terms[j]), "product");
  b.unit = coords_or_throw(b.C, left_pure(A.unit(), A.unit()), "unit");

  std::size_t bd = c.base_dim();
  b.source = Matrix(d, bd);
  b.target = Matrix(d, bd);
  for (std::size_t k = 0; k < bd; ++k) {
    const Vec& bv = c.coinvariants.vector(k);
    b.source.set_column(k, coords_or_throw(b.C, left_pure(bv, A.unit()), "source"));
    b.target.set_column(k, coords_or_throw(b.C, left_pure(A.unit(), bv), "target"));
  }

  b.counit = Matrix(bd, d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec m(n);
    for (const auto& [ij, cf] : b.basis_terms[k])
      for (const auto& [u, w] : A.sparse_product(ij / n, ij % n)) m[u].add_product(cf, w);
    if (!c.coinvariants.contains(m)) throw ClosureFailure("counit value a a~ is not in B");
    b.counit.set_column(k, c.base_coordinates(m));
  }

  // C (x)_B C: (t(b) . x) (x) y ~ x (x) (s(b) . y)
  RowEchelon rel(d * d);
  if (!b.over_ground()) {
    for (std::size_t k = 0; k < bd; ++k) {
      Vec tb = b.target.column(k), sb = b.source.column(k);
      for (std::size_t u = 0; u < d; ++u) {
        Vec tx = b.multiply(tb, unit_vector(d, u));
        for (std::size_t v = 0; v < d; ++v) {
          Vec sy = b.multiply(sb, unit_vector(d, v));
          Vec r(d * d);
          for (std::size_t p = 0; p < d; ++p) {
            if (!tx[p].is_zero()) r[p * d + v] += tx[p];
            if (!sy[p].is_zero()) r[u * d + p] -= sy[p];
          }
          if (!is_zero_vec(r)) rel.add(std::move(r));
        }
      }
    }
  }
  b.CC = QuotientSpace(d * d, SubspaceBasis::from_echelon(rel));
  b.coproduct = coproduct_from_translation(b, g.tau_terms, &b.coproduct_in_range);
  if (!b.over_ground()) {
    // the kernel of C (x) C -> A (x) (A (x)_B A) (x) A should be exactly the balancing relations
    const QuotientSpace& q2 = g.balanced;
    std::size_t n2 = n * n;
    std::vector<Vec> iota(d * d);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t v = 0; v < d; ++v) {
        Vec full(n2 * n2);
        for (const auto& [p, cp] : b.basis_terms[u])
          for (const auto& [r, cr] : b.basis_terms[v]) full[p * n2 + r] += cp * cr;
        iota[u * d + v] = project_middle(q2, full, n, n);
      }
    b.balanced_faithful = rank(Matrix::from_columns(n * q2.dim() * n, iota)) == b.CC.dim();
  }

  b.split = translation_split(b);

  if (b.over_ground()) {
    // S(a (x) a~) = a~_(0) (x) tau1(a~_(1)) a tau2(a~_(1))
    Matrix S(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      Vec img(n * n);
      for (const auto& [ij, cf] : b.basis_terms[k]) {
        std::size_t i = ij / n, j = ij % n;
        for (const auto& t : c.coaction.terms[j])
          for (const auto& [pr, tc] : g.tau_terms[t.right]) {
            Scalar k1 = cf * t.coeff * tc;
            for (const auto& [u, w1] : A.sparse_product(pr / n, i))
              for (const auto& [v, w2] : A.sparse_product(u, pr % n)) img[t.left * n + v].add_product(k1, w1 * w2);
          }
      }
      S.set_column(k, coords_or_throw(b.C, img, "antipode"));
    }
    b.antipode = std::move(S);
  }
  return b;
}

Report verify_bialgebroid(const Bialgebroid& b) {
  Report rep;
  const auto& c = b.ext.base;
  const auto& A = c.algebra;
  std::size_t n = c.dim(), d = b.dim(), bd = b.base_dim();
  auto mul = [&](const Vec& x, const Vec& y) { return b.multiply(x, y); };
  auto e = [&](std::size_t i) { return unit_vector(d, i); };
  auto cname = [](std::size_t i) { return "c" + std::to_string(i); };
  auto bname = [](std::size_t i) { return "b" + std::to_string(i); };
  // B as a subalgebra of A, in coordinates
  auto bmul = [&](const Vec& x, const Vec& y) {
    Matrix inc = c.base_inclusion();
    return c.base_coordinates(A.multiply(inc * x, inc * y));
  };
  Vec b_one = c.base_coordinates(A.unit());
  std::string w;

  bool forms = b.C == b.C_tau && (!b.C_equalizer || b.C == *b.C_equalizer);
  rep.add("c_forms_agree", forms, forms ? "" : "descriptions of C differ",
          {{"dim_coinvariants", b.C.dim()}, {"dim_translation_form", b.C_tau.dim()}});
  if (!b.C_equalizer) rep.skip("c_equalizer_form", "antipode of H is not invertible");
  if (b.over_ground())
    rep.add("dimension", d == n, d == n ? "" : "dim C differs from dim A", {{"dim", d}});

  w.clear();
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    if (mul(b.unit, e(i)) != e(i) || mul(e(i), b.unit) != e(i)) w = "1 (x) 1 is not a unit for " + cname(i);
  rep.add("product_unit", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    for (std::size_t j = 0; j < d && w.empty(); ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (mul(b.product[i * d + j], e(k)) != mul(e(i), b.product[j * d + k])) {
          w = "(" + cname(i) + ", " + cname(j) + ", " + cname(k) + ")";
          break;
        }
  rep.add("product_associative", w.empty(), w);

  // s is an algebra map, t an anti-algebra map, with commuting ranges
  w.clear();
  if (b.s(b_one) != b.unit || b.t(b_one) != b.unit) w = "s or t is not unital";
  for (std::size_t i = 0; i < bd && w.empty(); ++i)
    for (std::size_t j = 0; j < bd && w.empty(); ++j) {
      Vec bi = unit_vector(bd, i), bj = unit_vector(bd, j);
      if (b.s(bmul(bi, bj)) != mul(b.s(bi), b.s(bj))) w = "s not multiplicative on (" + bname(i) + ", " + bname(j) + ")";
      else if (b.t(bmul(bi, bj)) != mul(b.t(bj), b.t(bi)))
        w = "t not anti-multiplicative on (" + bname(i) + ", " + bname(j) + ")";
      else if (mul(b.s(bi), b.t(bj)) != mul(b.t(bj), b.s(bi)))
        w = "s(" + bname(i) + ") and t(" + bname(j) + ") do not commute";
    }
  rep.add("source_target", w.empty(), w);

  // b > x < b' = s(b) t(b') x agrees with b a (x) a~ b' inside A (x) A
  w.clear();
  {
    Matrix inc = c.base_inclusion();
    for (std::size_t i = 0; i < bd && w.empty(); ++i)
      for (std::size_t j = 0; j < bd && w.empty(); ++j)
        for (std::size_t k = 0; k < d; ++k) {
          Vec bi = inc.column(i), bj = inc.column(j);
          Vec native(n * n);
          for (const auto& [ij, cf] : b.basis_terms[k]) {
            Vec l = A.multiply(bi, A.basis_vector(ij / n)), r = A.multiply(A.basis_vector(ij % n), bj);
            axpy(native, cf, left_pure(l, r));
          }
          Vec via = mul(mul(b.s(unit_vector(bd, i)), b.t(unit_vector(bd, j))), e(k));
          if (b.element(via) != native) {
            w = "bimodule structures differ on " + cname(k);
            break;
          }
        }
  }
  rep.add("bimodule", w.empty(), w);

  bool range = b.coproduct_in_range && b.balanced_faithful;
  rep.add("coproduct_in_range", range,
          range ? "" : (b.coproduct_in_range ? "C (x)_B C does not embed" : "Delta(c) not matched inside C (x)_B C"));

  std::vector<Vec> D(d);
  for (std::size_t k = 0; k < d; ++k) D[k] = b.apply_coproduct(e(k));
  auto cc_eq = [&](const Vec& x, const Vec& y) { return b.CC.project(x) == b.CC.project(y); };

  // Takeuchi condition
  w.clear();
  for (std::size_t i = 0; i < bd && w.empty(); ++i) {
    Vec tb = b.t(unit_vector(bd, i)), sb = b.s(unit_vector(bd, i));
    for (std::size_t k = 0; k < d; ++k) {
      Vec l(d * d), r(d * d);
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
          const Scalar& y = D[k][u * d + v];
          if (y.is_zero()) continue;
          Vec xt = mul(e(u), tb), ys = mul(e(v), sb);
          for (std::size_t p = 0; p < d; ++p) {
            if (!xt[p].is_zero()) l[p * d + v].add_product(y, xt[p]);
            if (!ys[p].is_zero()) r[u * d + p].add_product(y, ys[p]);
          }
        }
      if (!cc_eq(l, r)) {
        w = "Delta(" + cname(k) + ") fails for " + bname(i);
        break;
      }
    }
  }
  rep.add("takeuchi", w.empty(), w);

  // coassociativity in C (x)_B C (x)_B C
  w.clear();
  {
    std::size_t d3 = d * d * d;
    RowEchelon rel(d3);
    for (const auto& r : b.CC.relations().basis())
      for (std::size_t k = 0; k < d; ++k) {
        Vec x(d3), y(d3);
        for (std::size_t p = 0; p < d * d; ++p)
          if (!r[p].is_zero()) {
            x[p * d + k] = r[p];
            y[k * d * d + p] = r[p];
          }
        rel.add(std::move(x));
        rel.add(std::move(y));
      }
    QuotientSpace q3(d3, SubspaceBasis::from_echelon(rel));
    for (std::size_t k = 0; k < d && w.empty(); ++k) {
      Vec l(d3), r(d3);
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
          const Scalar& y = D[k][u * d + v];
          if (y.is_zero()) continue;
          for (std::size_t p = 0; p < d * d; ++p) {
            if (!D[u][p].is_zero()) l[p * d + v].add_product(y, D[u][p]);
            if (!D[v][p].is_zero()) r[u * d * d + p].add_product(y, D[v][p]);
          }
        }
      if (q3.project(l) != q3.project(r)) w = "fails on " + cname(k);
    }
  }
  rep.add("coassociativity", w.empty(), w);

  w.clear();
  if (!cc_eq(b.apply_coproduct(b.unit), left_pure(b.unit, b.unit))) w = "Delta(1) != 1 (x) 1";
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    for (std::size_t j = 0; j < d && w.empty(); ++j) {
      Vec lhs = b.apply_coproduct(b.product[i * d + j]);
      Vec rhs(d * d);
      for (std::size_t p = 0; p < d * d; ++p) {
        if (D[i][p].is_zero()) continue;
        for (std::size_t r = 0; r < d * d; ++r) {
          if (D[j][r].is_zero()) continue;
          Scalar k = D[i][p] * D[j][r];
          Vec x = b.product[(p / d) * d + r / d], y = b.product[(p % d) * d + r % d];
          for (std::size_t u = 0; u < d; ++u)
            if (!x[u].is_zero())
              for (std::size_t v = 0; v < d; ++v)
                if (!y[v].is_zero()) rhs[u * d + v].add_product(k, x[u] * y[v]);
        }
      }
      if (!cc_eq(lhs, rhs)) w = "Delta not multiplicative on (" + cname(i) + ", " + cname(j) + ")";
    }
  rep.add("coproduct_algebra_map", w.empty(), w);

  // coring counit: s(eps(x1)) x2 = x = t(eps(x2)) x1
  w.clear();
  for (std::size_t k = 0; k < d && w.empty(); ++k) {
    Vec l(d), r(d);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t v = 0; v < d; ++v) {
        const Scalar& y = D[k][u * d + v];
        if (y.is_zero()) continue;
        axpy(l, y, mul(b.s(b.apply_counit(e(u))), e(v)));
        axpy(r, y, mul(b.t(b.apply_counit(e(v))), e(u)));
      }
    if (l != e(k)) w = "(eps (x) id) Delta differs from id on " + cname(k);
    else if (r != e(k)) w = "(id (x) eps) Delta differs from id on " + cname(k);
  }
  rep.add("counit", w.empty(), w);

  rep.add("counit_unital", b.apply_counit(b.unit) == b_one, "eps(1) != 1");
  w.clear();
  for (std::size_t i = 0; i < bd && w.empty(); ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (b.apply_counit(mul(b.s(unit_vector(bd, i)), e(k))) != bmul(unit_vector(bd, i), b.apply_counit(e(k)))) {
        w = "eps(s(" + bname(i) + ") " + cname(k) + ") != " + bname(i) + " eps(" + cname(k) + ")";
        break;
      }
  rep.add("counit_left_linear", w.empty(), w);
  w.clear();
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec mid = b.apply_counit(b.product[i * d + j]);
      Vec viaS = b.apply_counit(mul(e(i), b.s(b.apply_counit(e(j)))));
      Vec viaT = b.apply_counit(mul(e(i), b.t(b.apply_counit(e(j)))));
      if (mid != viaS || mid != viaT) {
        w = "fails on (" + cname(i) + ", " + cname(j) + ")";
        break;
      }
    }
  rep.add("counit_associativity", w.empty(), w);

  if (!b.antipode) {
    rep.skip("antipode", "B is larger than the ground field");
  } else {
    const Matrix& S = *b.antipode;
    w.clear();
    for (std::size_t k = 0; k < d && w.empty(); ++k) {
      Vec l(d), r(d);
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
          const Scalar& y = D[k][u * d + v];
          if (y.is_zero()) continue;
          axpy(l, y, mul(S.column(u), e(v)));
          axpy(r, y, mul(e(u), S.column(v)));
        }
      Vec target = b.s(b.apply_counit(e(k)));
      if (l != target) w = "m (S (x) id) Delta differs from eta eps on " + cname(k);
      else if (r != target) w = "m (id (x) S) Delta differs from eta eps on " + cname(k);
    }
    rep.add("antipode", w.empty(), w);
  }
  return rep;
}

FinDimHopf as_hopf(const Bialgebroid& b) {
  if (!b.over_ground()) throw NotGaloisObject("C(A, H) is a Hopf algebra only for Galois objects");
  std::size_t d = b.dim();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("c" + std::to_string(i));
  FinDimAlgebra alg(labels, b.product, b.unit);
  std::vector<TermList> comult(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t p = 0; p < d * d; ++p)
      if (!b.coproduct(p, k).is_zero()) comult[k].push_back({b.coproduct(p, k), p / d, p % d});
  // eps(c) as a scalar: B is spanned by one multiple of 1_A
  const auto& base = b.ext.base;
  const Vec& b0 = base.coinvariants.vector(0);
  const Vec& one = base.algebra.unit();
  std::size_t p = 0;
  while (one[p].is_zero()) ++p;
  Scalar factor = b0[p] / one[p];
  Vec counit(d);
  for (std::size_t k = 0; k < d; ++k) counit[k] = b.counit(0, k) * factor;
  FinDimHopf h = make_hopf(std::move(alg), std::move(comult), std::move(counit), *b.antipode);
  h.field = base.hopf.field;
  return h;
}

HopfIso check_hopf_iso(const Bialgebroid& b, const FinDimHopf& h, const Matrix& forward, const Matrix& backward) {
  FinDimHopf ch = as_hopf(b);
  std::size_t d = b.dim(), m = h.dim();
  HopfIso iso;
  iso.forward = {forward, ch.labels(), h.labels()};
  iso.backward = {backward, h.labels(), ch.labels()};
  if (forward.rows() != m || forward.cols() != d || backward.rows() != d || backward.cols() != m) {
    iso.report.add("shape", false, "dimensions of C and H differ");
    return iso;
  }
  std::string w;
  if (forward * b.unit != h.algebra.unit()) w = "unit not preserved";
  for (std::size_t i = 0; i < d && w.empty(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (forward * b.product[i * d + j] != h.algebra.multiply(forward.column(i), forward.column(j))) {
        w = "not multiplicative on (c" + std::to_string(i) + ", c" + std::to_string(j) + ")";
        break;
      }
  iso.algebra_map = w.empty();
  iso.report.add("algebra_map", iso.algebra_map, w);

  w.clear();
  for (std::size_t k = 0; k < d && w.empty(); ++k) {
    Vec img(m * m);
    for (const auto& t : ch.comult[k])
      for (std::size_t u = 0; u < m; ++u) {
        if (forward(u, t.left).is_zero()) continue;
        Scalar k1 = t.coeff * forward(u, t.left);
        for (std::size_t v = 0; v < m; ++v)
          if (!forward(v, t.right).is_zero()) img[u * m + v].add_product(k1, forward(v, t.right));
      }
    if (img != h.coproduct(forward.column(k))) w = "Delta not intertwined on c" + std::to_string(k);
    else if (h.apply_counit(forward.column(k)) != ch.counit[k]) w = "counit not intertwined on c" + std::to_string(k);
  }
  iso.coalgebra_map = w.empty();
  iso.report.add("coalgebra_map", iso.coalgebra_map, w);

  iso.mutually_inverse = forward * backward == Matrix::identity(m) && backward * forward == Matrix::identity(d);
  iso.report.add("mutually_inverse", iso.mutually_inverse, iso.mutually_inverse ? "" : "maps are not inverse");
  return iso;
}

HopfIso iso_self(const Bialgebroid& b) {
  if (!b.over_ground()) throw NotGaloisObject("iso_self needs a Galois object");
  const auto& H = b.ext.base.hopf;
  std::size_t m = H.dim(), d = b.dim();
  if (b.ext.dim() != m) throw CheckFailure("iso_self: A is not H");
  Matrix fwd(m, d), bwd(d, m);
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& [ij, cf] : b.basis_terms[k]) fwd(ij / m, k) += cf * H.counit[ij % m];
  for (std::size_t h = 0; h < m; ++h) {
    Vec v(m * m);
    for (const auto& t : H.comult[h]) axpy(v, t.coeff, left_pure(unit_vector(m, t.left), H.antipode.column(t.right)));
    bwd.set_column(h, b.coordinates(v));
  }
  return check_hopf_iso(b, H, fwd, bwd);
}

HopfIso iso_cocommutative(const Bialgebroid& b) {
  const auto& c = b.ext.base;
  const auto& H = c.hopf;
  if (!is_cocommutative(H)) throw NotCocommutative("iso_cocommutative needs a cocommutative Hopf algebra");
  if (!b.over_ground()) throw NotGaloisObject("iso_cocommutative needs a Galois object");
  const auto& A = c.algebra;
  std::size_t n = c.dim(), m = H.dim(), d = b.dim();
  const Vec& one = A.unit();
  std::size_t p = 0;
  while (one[p].is_zero()) ++p;
  Matrix fwd(m, d), bwd(d, m);
  for (std::size_t k = 0; k < d; ++k) {
    // chi_L(a (x) a~) = a_(1) (x) a_(0) a~ must be h (x) 1_A
    Vec w(m * n);
    for (const auto& [ij, cf] : b.basis_terms[k])
      for (const auto& t : c.coaction.terms[ij / n])
        for (const auto& [u, x] : A.sparse_product(t.left, ij % n)) w[t.right * n + u].add_product(cf * t.coeff, x);
    Vec h(m);
    for (std::size_t v = 0; v < m; ++v) h[v] = w[v * n + p] / one[p];
    Vec check(m * n);
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t u = 0; u < n; ++u)
        if (!h[v].is_zero() && !one[u].is_zero()) check[v * n + u] = h[v] * one[u];
    if (check != w) throw CheckFailure("chi_L(c" + std::to_string(k) + ") is not of the form h (x) 1");
    fwd.set_column(k, h);
  }
  for (std::size_t h = 0; h < m; ++h) bwd.set_column(h, b.coordinates(translation_of(b.ext, H.antipode.column(h))));
  return check_hopf_iso(b, H, fwd, bwd);
}

TaftIso iso_taft(const Bialgebroid& b) {
  const auto& c = b.ext.base;
  const auto& H = c.hopf;
  if (H.family != HopfFamily::taft || !b.over_ground()) throw UnsupportedFamily("iso_taft needs A_s over T_N");
  const auto& A = c.algebra;
  int N = H.taft_n;
  std::size_t d = b.dim(), m = H.dim();
  Vec X = A.basis_vector(A.index_of(taft_label(1, 0, "X", "G")));
  Vec G = A.basis_vector(A.index_of(taft_label(0, 1, "X", "G")));
  Vec Ginv = A.basis_vector(A.index_of(taft_label(0, N - 1, "X", "G")));
  TaftIso out;
  Vec xi = left_pure(X, Ginv);
  axpy(xi, Scalar(-1), left_pure(A.unit(), A.multiply(X, Ginv)));
  out.xi = b.coordinates(xi);
  out.gamma = b.coordinates(left_pure(G, Ginv));

  auto power = [&](const Vec& v, int k) {
    Vec r = b.unit;
    for (int i = 0; i < k; ++i) r = b.multiply(r, v);
    return r;
  };
  std::vector<Vec> xp(N + 1), gp(N + 1);
  for (int i = 0; i <= N; ++i) {
    xp[i] = power(out.xi, i);
    gp[i] = power(out.gamma, i);
  }
  Matrix bwd(d, m);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) bwd.set_column(i * N + j, b.multiply(xp[i], gp[j]));
  auto fwd = inverse(bwd);
  if (fwd) {
    out.iso = check_hopf_iso(b, H, *fwd, bwd);
  } else {
    out.iso.backward = {bwd, H.labels(), {}};
    out.iso.report.add("mutually_inverse", false, "Xi^i Gamma^j do not form a basis of C");
  }

  Report& r = out.iso.report;
  r.add("xi_nilpotent", is_zero_vec(xp[N]), "Xi^N != 0");
  r.add("gamma_order", gp[N] == b.unit, "Gamma^N != 1");
  std::size_t dd = d * d;
  Vec gg(dd), dxi(dd);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      gg[u * d + v] = out.gamma[u] * out.gamma[v];
      dxi[u * d + v] = b.unit[u] * out.xi[v] + out.xi[u] * out.gamma[v];
    }
  r.add("gamma_grouplike", b.apply_coproduct(out.gamma) == gg, "Delta(Gamma) != Gamma (x) Gamma");
  r.add("xi_skew_primitive", b.apply_coproduct(out.xi) == dxi, "Delta(Xi) != 1 (x) Xi + Xi (x) Gamma");
  FinDimHopf ch = as_hopf(b);
  bool eps = ch.apply_counit(out.gamma) == Scalar(1) && ch.apply_counit(out.xi).is_zero();
  r.add("counit_values", eps, "eps(Gamma) != 1 or eps(Xi) != 0");
  if (fwd) {
    bool gens = *fwd * out.xi == H.algebra.basis_vector(H.algebra.index_of("x")) &&
                *fwd * out.gamma == H.algebra.basis_vector(H.algebra.index_of("g"));
    r.add("generators", gens, "Phi(Xi) != x or Phi(Gamma) != g");
  }

  Vec xg = b.multiply(out.xi, out.gamma), gx = b.multiply(out.gamma, out.xi);
  std::size_t p = 0;
  while (p < d && gx[p].is_zero()) ++p;
  if (p < d) {
    Scalar k = xg[p] / gx[p];
    if (scale(k, gx) == xg) out.commutation = k;
  }
  Scalar q = Scalar::root_of_unity(*H.field, N, H.taft_q_index);
  r.add("q_commutation", out.commutation && *out.commutation == q, "Xi . Gamma != q Gamma . Xi",
        {{"constant", out.commutation ? nlohmann::json(out.commutation->to_strings(H.field)) : nlohmann::json()}});
  return out;
}

}  // namespace hg
