#include "hopfgauge/comodule.hpp"

namespace hg {

Vec apply_coaction(const Coaction& c, const Vec& v, std::size_t hdim) {
  Vec r(c.dim * hdim);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& t : c.terms[i]) r[t.left * hdim + t.right].add_product(v[i], t.coeff);
  }
  return r;
}

Matrix coaction_matrix(const Coaction& c, std::size_t hdim) {
  Matrix m(c.dim * hdim, c.dim);
  for (std::size_t i = 0; i < c.dim; ++i)
    for (const auto& t : c.terms[i]) m(t.left * hdim + t.right, i) += t.coeff;
  return m;
}

Coaction coaction_from_dense(const std::vector<Vec>& images, std::size_t hdim) {
  Coaction c;
  c.dim = images.size();
  c.terms.resize(c.dim);
  for (std::size_t i = 0; i < c.dim; ++i)
    for (std::size_t idx = 0; idx < images[i].size(); ++idx)
      if (!images[i][idx].is_zero()) c.terms[i].push_back({images[i][idx], idx / hdim, idx % hdim});
  return c;
}

Report check_comodule_axioms(const Coaction& c, const FinDimHopf& h, const FinDimAlgebra* alg) {
  Report rep;
  std::size_t n = c.dim, m = h.dim();
  auto label = [&](std::size_t i) { return alg ? alg->labels()[i] : "e" + std::to_string(i); };
  bool shape_ok = c.terms.size() == n;
  for (const auto& tl : c.terms)
    for (const auto& t : tl) shape_ok = shape_ok && t.left < n && t.right < m;
  if (!shape_ok) {
    rep.add("shape", false, "coaction indices out of range");
    return rep;
  }

  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec lhs(n * m * m), rhs(n * m * m);
    for (const auto& t : c.terms[i]) {
      for (const auto& u : c.terms[t.left]) lhs[(u.left * m + u.right) * m + t.right].add_product(t.coeff, u.coeff);
      for (const auto& u : h.comult[t.right]) rhs[(t.left * m + u.left) * m + u.right].add_product(t.coeff, u.coeff);
    }
    if (lhs != rhs) w = "coassociativity fails on " + label(i);
  }
  rep.add("coaction_coassociative", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i) {
    Vec v(n);
    for (const auto& t : c.terms[i]) v[t.left].add_product(t.coeff, h.counit[t.right]);
    if (v != unit_vector(n, i)) w = "(id (x) epsilon) delta differs from id on " + label(i);
  }
  rep.add("coaction_counital", w.empty(), w);

  if (alg) {
    w.clear();
    Vec unit_image(n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!alg->unit()[i].is_zero() && !h.algebra.unit()[j].is_zero())
          unit_image[i * m + j] = alg->unit()[i] * h.algebra.unit()[j];
    if (apply_coaction(c, alg->unit(), m) != unit_image) w = "coaction is not unital";
    std::vector<Vec> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = apply_coaction(c, unit_vector(n, i), m);
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (apply_coaction(c, alg->product(i, j), m) != tensor_multiply(*alg, h.algebra, d[i], d[j])) {
          w = "coaction not multiplicative on (" + label(i) + ", " + label(j) + ")";
          break;
        }
    rep.add("coaction_algebra_map", w.empty(), w);
  }
  return rep;
}

SubspaceBasis coinvariants(const Coaction& c, const FinDimHopf& h) {
  std::size_t n = c.dim, m = h.dim();
  const Vec& one = h.algebra.unit();
  std::vector<Vec> rows(n * m, Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : c.terms[i]) rows[t.left * m + t.right][i] += t.coeff;
    for (std::size_t k = 0; k < m; ++k)
      if (!one[k].is_zero()) rows[i * m + k][i] -= one[k];
  }
  RowEchelon e(n);
  for (auto& r : rows)
    if (!is_zero_vec(r)) e.add(std::move(r));
  std::vector<Vec> ker;
  // kernel from the echelon rows
  auto er = e.rows();
  auto piv = e.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < er.size(); ++i)
      if (!er[i][f].is_zero()) v[piv[i]] = -er[i][f];
    ker.push_back(std::move(v));
  }
  return SubspaceBasis::span(n, ker);
}

Matrix ComoduleAlgebra::base_inclusion() const { return Matrix::from_columns(dim(), coinvariants.basis()); }

Vec ComoduleAlgebra::base_coordinates(const Vec& a) const {
  auto c = coinvariants.coordinates(a);
  if (!c) throw CheckFailure("element expected in the coinvariant subalgebra is not coinvariant");
  return *c;
}

ComoduleAlgebra attach_coaction(FinDimAlgebra a, FinDimHopf h, Coaction delta) {
  if (delta.dim != a.dim() || delta.terms.size() != a.dim())
    throw ComoduleAxiomFailure("coaction dimension does not match the algebra");
  Report rep = check_comodule_axioms(delta, h, &a);
  if (!rep.ok()) throw ComoduleAxiomFailure(rep.failures().front());
  ComoduleAlgebra c;
  c.coinvariants = coinvariants(delta, h);
  c.algebra = std::move(a);
  c.hopf = std::move(h);
  c.coaction = std::move(delta);
  c.b_in_centre = true;
  for (const auto& b : c.coinvariants.basis()) {
    for (std::size_t i = 0; i < c.dim() && c.b_in_centre; ++i) {
      Vec e = c.algebra.basis_vector(i);
      if (c.algebra.multiply(b, e) != c.algebra.multiply(e, b)) c.b_in_centre = false;
    }
    if (!c.b_in_centre) break;
  }
  return c;
}

Coaction diagonal_coaction(const ComoduleAlgebra& c) {
  std::size_t n = c.dim(), m = c.hopf.dim();
  Coaction d;
  d.dim = n * n;
  d.terms.resize(n * n);
  const auto& H = c.hopf.algebra;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // keyed by ((k, l), h)
      Vec dense(n * n * m);
      for (const auto& t : c.coaction.terms[i])
        for (const auto& u : c.coaction.terms[j]) {
          Scalar cu = t.coeff * u.coeff;
          for (const auto& [p, v] : H.sparse_product(t.right, u.right))
            dense[(t.left * n + u.left) * m + p].add_product(cu, v);
        }
      for (std::size_t idx = 0; idx < dense.size(); ++idx)
        if (!dense[idx].is_zero()) d.terms[i * n + j].push_back({dense[idx], idx / m, idx % m});
    }
  return d;
}

}  // namespace hg
