#include "hopfgauge/galois.hpp"

namespace hg {

namespace {

// The balancing relations vanish when B is spanned by the unit.
bool base_is_scalars(const ComoduleAlgebra& c) {
  if (c.base_dim() != 1) return false;
  const Vec& b = c.coinvariants.vector(0);
  const Vec& one = c.algebra.unit();
  // b is a multiple of 1
  std::size_t p = c.coinvariants.pivots()[0];
  if (one[p].is_zero()) return false;
  return scale(one[p].inverse(), one) == b;
}

void add_product_into(Vec& out, std::size_t offset, std::size_t stride, const FinDimAlgebra& a, std::size_t i,
                      std::size_t j, const Scalar& c) {
  for (const auto& [k, v] : a.sparse_product(i, j)) out[offset + k * stride].add_product(c, v);
}

}  // namespace

QuotientSpace balanced_power(const ComoduleAlgebra& c, int k) {
  std::size_t n = c.dim();
  std::size_t ambient = 1;
  for (int i = 0; i < k; ++i) ambient *= n;
  if (k < 2 || base_is_scalars(c)) return QuotientSpace(ambient, SubspaceBasis(ambient));
  const auto& A = c.algebra;
  RowEchelon e(ambient);
  std::vector<std::size_t> stride(k);
  stride[k - 1] = 1;
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * n;
  for (const auto& b : c.coinvariants.basis()) {
    std::vector<Vec> right(n), left(n);
    for (std::size_t i = 0; i < n; ++i) {
      right[i] = A.multiply(A.basis_vector(i), b);
      left[i] = A.multiply(b, A.basis_vector(i));
    }
    for (int s = 0; s + 1 < k; ++s)
      for (std::size_t idx = 0; idx < ambient; ++idx) {
        std::size_t i = (idx / stride[s]) % n, j = (idx / stride[s + 1]) % n;
        std::size_t rest = idx - i * stride[s] - j * stride[s + 1];
        Vec v(ambient);
        for (std::size_t p = 0; p < n; ++p) {
          if (!right[i][p].is_zero()) v[rest + p * stride[s] + j * stride[s + 1]] += right[i][p];
          if (!left[j][p].is_zero()) v[rest + i * stride[s] + p * stride[s + 1]] -= left[j][p];
        }
        if (!is_zero_vec(v)) e.add(std::move(v));
      }
  }
  return QuotientSpace(ambient, SubspaceBasis::from_echelon(e));
}

Vec project_middle(const QuotientSpace& q, const Vec& v, std::size_t head, std::size_t tail) {
  if (q.trivial()) return v;
  std::size_t amb = q.ambient_dim(), d = q.dim();
  if (v.size() != head * amb * tail) throw ShapeMismatch("project_middle: wrong vector length");
  Vec out(head * d * tail);
  for (std::size_t o = 0; o < head; ++o)
    for (std::size_t t = 0; t < tail; ++t) {
      Vec slice(amb);
      bool any = false;
      for (std::size_t x = 0; x < amb; ++x) {
        slice[x] = v[(o * amb + x) * tail + t];
        any = any || !slice[x].is_zero();
      }
      if (!any) continue;
      Vec p = q.project(slice);
      for (std::size_t y = 0; y < d; ++y) out[(o * d + y) * tail + t] = p[y];
    }
  return out;
}

GaloisExtension build_galois(const ComoduleAlgebra& c) {
  GaloisExtension g;
  g.base = c;
  std::size_t n = c.dim(), m = c.hopf.dim();
  const auto& A = c.algebra;
  g.balanced = balanced_power(c, 2);

  // chi on the ambient basis: a' (x) a -> a' a_(0) (x) a_(1)
  std::vector<Vec> chi_full(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec col(n * m);
      for (const auto& t : c.coaction.terms[j]) add_product_into(col, t.right, m, A, i, t.left, t.coeff);
      chi_full[i * n + j] = std::move(col);
    }
  for (const auto& r : g.balanced.relations().basis()) {
    Vec img(n * m);
    for (std::size_t idx = 0; idx < r.size(); ++idx)
      if (!r[idx].is_zero()) axpy(img, r[idx], chi_full[idx]);
    if (!is_zero_vec(img)) g.chi_well_defined = false;
  }
  Matrix section = g.balanced.section();
  std::size_t bd = g.balanced.dim();
  g.chi = Matrix(n * m, bd);
  for (std::size_t q = 0; q < bd; ++q) {
    std::size_t amb = 0;
    while (section(amb, q).is_zero()) ++amb;
    g.chi.set_column(q, chi_full[amb]);
  }

  // rank and tau from one elimination of [chi | 1 (x) h]
  RowEchelon e(bd + m);
  const Vec& one = A.unit();
  for (std::size_t r = 0; r < n * m; ++r) {
    Vec row = g.chi.row(r);
    row.resize(bd + m);
    std::size_t i = r / m, h = r % m;
    if (!one[i].is_zero()) row[bd + h] = one[i];
    if (!is_zero_vec(row)) e.add(std::move(row));
  }
  auto piv = e.pivots();
  std::size_t rank = 0;
  for (auto p : piv)
    if (p < bd) ++rank;
  g.rank_deficit = n * m - rank;
  g.is_galois = g.chi_well_defined && bd == n * m && rank == bd;
  if (g.is_galois) {
    auto rows = e.rows();
    g.tau = Matrix(bd, m);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t h = 0; h < m; ++h) g.tau(piv[i], h) = rows[i][bd + h];
    g.tau_lift = section * g.tau;
    for (std::size_t h = 0; h < m; ++h) g.tau_terms.push_back(to_sparse(g.tau_lift.column(h)));
  }
  return g;
}

Vec translation_map(const GaloisExtension& g, std::size_t h) {
  if (!g.is_galois) throw NotGaloisError("translation map requested for a non-Galois extension");
  if (h >= g.hopf_dim()) throw std::out_of_range("Hopf basis index out of range");
  return g.tau_lift.column(h);
}

Vec translation_of(const GaloisExtension& g, const Vec& h) {
  if (!g.is_galois) throw NotGaloisError("translation map requested for a non-Galois extension");
  return g.tau_lift * h;
}

Report verify_translation_identities(const GaloisExtension& g) {
  Report rep;
  if (!g.is_galois) {
    for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6", "p7"}) rep.add(p, false, "extension is not Galois");
    return rep;
  }
  const auto& c = g.base;
  const auto& A = c.algebra;
  const auto& H = c.hopf;
  std::size_t n = c.dim(), m = H.dim();
  const auto& T = g.tau_terms;
  const auto& LA = A.labels();
  const auto& LH = H.labels();
  const auto& delta = c.coaction.terms;
  const QuotientSpace& q2 = g.balanced;
  std::string w;

  // (p4) tau1(h) (x)_B tau2(h)_(0) (x) tau2(h)_(1) = tau1(h1) (x)_B tau2(h1) (x) h2
  for (std::size_t h = 0; h < m && w.empty(); ++h) {
    Vec lhs(n * n * m), rhs(n * n * m);
    for (const auto& [pr, cf] : T[h]) {
      std::size_t p = pr / n, r = pr % n;
      for (const auto& t : delta[r]) lhs[(p * n + t.left) * m + t.right].add_product(cf, t.coeff);
    }
    for (const auto& d : H.comult[h])
      for (const auto& [pr, cf] : T[d.left]) rhs[pr * m + d.right].add_product(d.coeff, cf);
    if (project_middle(q2, lhs, 1, m) != project_middle(q2, rhs, 1, m)) w = "fails on h = " + LH[h];
  }
  rep.add("p4", w.empty(), w);

  // (p1) tau1(h)_(0) (x)_B tau2(h) (x) tau1(h)_(1) = tau1(h2) (x)_B tau2(h2) (x) S(h1)
  w.clear();
  for (std::size_t h = 0; h < m && w.empty(); ++h) {
    Vec lhs(n * n * m), rhs(n * n * m);
    for (const auto& [pr, cf] : T[h]) {
      std::size_t p = pr / n, r = pr % n;
      for (const auto& t : delta[p]) lhs[(t.left * n + r) * m + t.right].add_product(cf, t.coeff);
    }
    for (const auto& d : H.comult[h]) {
      Vec s = H.antipode.column(d.left);
      for (const auto& [pr, cf] : T[d.right]) {
        Scalar k = d.coeff * cf;
        for (std::size_t u = 0; u < m; ++u)
          if (!s[u].is_zero()) rhs[pr * m + u].add_product(k, s[u]);
      }
    }
    if (project_middle(q2, lhs, 1, m) != project_middle(q2, rhs, 1, m)) w = "fails on h = " + LH[h];
  }
  rep.add("p1", w.empty(), w);

  // (p7) tau1(h) tau2(h)_(0) (x) tau2(h)_(1) = 1 (x) h
  w.clear();
  for (std::size_t h = 0; h < m && w.empty(); ++h) {
    Vec lhs(n * m), rhs(n * m);
    for (const auto& [pr, cf] : T[h]) {
      std::size_t p = pr / n, r = pr % n;
      for (const auto& t : delta[r]) add_product_into(lhs, t.right, m, A, p, t.left, cf * t.coeff);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!A.unit()[i].is_zero()) rhs[i * m + h] = A.unit()[i];
    if (lhs != rhs) w = "fails on h = " + LH[h];
  }
  rep.add("p7", w.empty(), w);

  // (p5) tau1(h) tau2(h) = epsilon(h) 1
  w.clear();
  for (std::size_t h = 0; h < m && w.empty(); ++h) {
    Vec lhs(n);
    for (const auto& [pr, cf] : T[h]) add_product_into(lhs, 0, 1, A, pr / n, pr % n, cf);
    if (lhs != scale(H.counit[h], A.unit())) w = "fails on h = " + LH[h];
  }
  rep.add("p5", w.empty(), w);

  // (p2) tau(hk) = tau1(k) tau1(h) (x)_B tau2(h) tau2(k)
  w.clear();
  for (std::size_t h = 0; h < m && w.empty(); ++h)
    for (std::size_t k = 0; k < m; ++k) {
      Vec lhs = translation_of(g, H.algebra.product(h, k));
      Vec rhs(n * n);
      for (const auto& [pr, cf] : T[h])
        for (const auto& [pr2, cf2] : T[k]) {
          std::size_t p = pr / n, r = pr % n, p2 = pr2 / n, r2 = pr2 % n;
          Scalar cc = cf * cf2;
          for (const auto& [u, x] : A.sparse_product(p2, p)) {
            Scalar cx = cc * x;
            for (const auto& [v, y] : A.sparse_product(r, r2)) rhs[u * n + v].add_product(cx, y);
          }
        }
      if (q2.project(lhs) != q2.project(rhs)) {
        w = "fails on (h, k) = (" + LH[h] + ", " + LH[k] + ")";
        break;
      }
    }
  rep.add("p2", w.empty(), w);

  // (p6) tau1(h1) (x)_B tau2(h1) tau1(h2) (x)_B tau2(h2) = tau1(h) (x)_B 1 (x)_B tau2(h)
  w.clear();
  QuotientSpace q3 = balanced_power(c, 3);
  for (std::size_t h = 0; h < m && w.empty(); ++h) {
    Vec lhs(n * n * n), rhs(n * n * n);
    for (const auto& d : H.comult[h])
      for (const auto& [pr, cf] : T[d.left])
        for (const auto& [pr2, cf2] : T[d.right]) {
          std::size_t p = pr / n, r = pr % n, p2 = pr2 / n, r2 = pr2 % n;
          Scalar cc = d.coeff * cf * cf2;
          for (const auto& [u, x] : A.sparse_product(r, p2)) lhs[(p * n + u) * n + r2].add_product(cc, x);
        }
    for (const auto& [pr, cf] : T[h])
      for (std::size_t u = 0; u < n; ++u)
        if (!A.unit()[u].is_zero()) rhs[(pr / n * n + u) * n + pr % n].add_product(cf, A.unit()[u]);
    if (q3.project(lhs) != q3.project(rhs)) w = "fails on h = " + LH[h];
  }
  rep.add("p6", w.empty(), w);

  // (p3) a_(0) tau1(a_(1)) (x)_B tau2(a_(1)) = 1 (x)_B a
  w.clear();
  for (std::size_t a = 0; a < n && w.empty(); ++a) {
    Vec lhs(n * n), rhs(n * n);
    for (const auto& t : delta[a])
      for (const auto& [pr, cf] : T[t.right]) {
        Scalar cc = t.coeff * cf;
        for (const auto& [u, x] : A.sparse_product(t.left, pr / n)) lhs[u * n + pr % n].add_product(cc, x);
      }
    for (std::size_t u = 0; u < n; ++u)
      if (!A.unit()[u].is_zero()) rhs[u * n + a] = A.unit()[u];
    if (q2.project(lhs) != q2.project(rhs)) w = "fails on a = " + LA[a];
  }
  rep.add("p3", w.empty(), w);
  return rep;
}

// ---------------------------------------------------------------- builders

ComoduleAlgebra build_taft_galois(const CyclotomicField& field, int n, int q_index, const Scalar& s) {
  FinDimHopf T = build_taft(field, n, q_index);
  Scalar q = Scalar::root_of_unity(field, n, q_index);
  std::size_t dim = static_cast<std::size_t>(n) * n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels.push_back(taft_label(i, j, "X", "G"));
  std::vector<Scalar> qinv_pow(n);
  for (int e = 0; e < n; ++e) qinv_pow[e] = q.pow(-e);
  std::vector<Vec> products(dim * dim, Vec(dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar coeff = qinv_pow[(j * k) % n];
          int xi = i + k;
          if (xi >= n) {
            coeff *= s;
            xi -= n;
          }
          if (coeff.is_zero()) continue;
          products[(i * n + j) * dim + (k * n + l)][xi * n + (j + l) % n] = coeff;
        }
  FinDimAlgebra A(labels, std::move(products), unit_vector(dim, 0));

  // delta(X) = 1 (x) x + X (x) g, delta(G) = G (x) g, extended multiplicatively
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  Vec dX(dim * dim), dG(dim * dim);
  dX[idx(0, 0) * dim + idx(1, 0)] = Scalar(1);
  dX[idx(1, 0) * dim + idx(0, 1)] = Scalar(1);
  dG[idx(0, 1) * dim + idx(0, 1)] = Scalar(1);
  std::vector<Vec> pX(n), pG(n);
  pX[0] = pG[0] = unit_vector(dim * dim, 0);
  for (int e = 1; e < n; ++e) {
    pX[e] = tensor_multiply(A, T.algebra, dX, pX[e - 1]);
    pG[e] = tensor_multiply(A, T.algebra, dG, pG[e - 1]);
  }
  std::vector<Vec> images(dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) images[idx(i, j)] = tensor_multiply(A, T.algebra, pX[i], pG[j]);
  return attach_coaction(std::move(A), std::move(T), coaction_from_dense(images, dim));
}

ComoduleAlgebra build_graded_galois(const Cocycle& lambda) {
  Report rep = verify_cocycle(lambda);
  if (!rep.ok()) throw CocycleInvalid(rep.failures().front());
  const auto& G = lambda.group;
  std::size_t n = G.order();
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < n; ++g) labels.push_back("u_" + G.label(g));
  std::vector<Vec> products(n * n, Vec(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) products[a * n + b][G.multiply(a, b)] = lambda(a, b);
  Vec unit(n);
  unit[G.identity()] = lambda(G.identity(), G.identity()).inverse();
  FinDimAlgebra A(labels, std::move(products), unit);
  FinDimHopf H = build_group_algebra(G.factors());
  Coaction d;
  d.dim = n;
  d.terms.resize(n);
  for (std::size_t g = 0; g < n; ++g) d.terms[g].push_back({Scalar(1), g, g});
  return attach_coaction(std::move(A), std::move(H), std::move(d));
}

ComoduleAlgebra build_self_galois(const FinDimHopf& h) {
  Coaction d;
  d.dim = h.dim();
  d.terms = h.comult;
  return attach_coaction(h.algebra, h, std::move(d));
}

ComoduleAlgebra build_trivial_bundle(std::size_t k, const FinDimHopf& h) {
  return build_trivial_bundle(diagonal_algebra(k), h);
}

ComoduleAlgebra build_trivial_bundle(const FinDimAlgebra& base, const FinDimHopf& h) {
  FinDimAlgebra A = tensor_algebra(base, h.algebra);
  std::size_t k = base.dim(), m = h.dim();
  Coaction d;
  d.dim = k * m;
  d.terms.resize(d.dim);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& t : h.comult[j]) d.terms[i * m + j].push_back({t.coeff, i * m + t.left, t.right});
  return attach_coaction(std::move(A), h, std::move(d));
}

}  // namespace hg
