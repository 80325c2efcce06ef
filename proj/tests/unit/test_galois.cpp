#include <chrono>

#include "doctest.h"
#include "hopfgauge/errors.hpp"
#include "hopfgauge/galois.hpp"

using namespace hg;

namespace {

// Dense element a (x) b of A (x) A.
Vec pure(std::size_t n, const Vec& a, const Vec& b) {
  Vec r(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!a[i].is_zero() && !b[j].is_zero()) r[i * n + j] = a[i] * b[j];
  return r;
}

// Equality in A (x)_B A.
bool same_class(const GaloisExtension& g, const Vec& u, const Vec& v) {
  return g.balanced.project(u) == g.balanced.project(v);
}

// chi on a representative in A (x) A.
Vec chi_of(const GaloisExtension& g, const Vec& v) {
  const auto& A = g.base.algebra;
  std::size_t n = g.dim(), m = g.hopf_dim();
  Vec out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& c = v[i * n + j];
      if (c.is_zero()) continue;
      for (const auto& t : g.base.coaction.terms[j])
        for (const auto& [k, w] : A.sparse_product(i, t.left)) out[k * m + t.right] += c * t.coeff * w;
    }
  return out;
}

}  // namespace

TEST_SUITE("galois") {
  TEST_CASE("A_s over T_2 is a Galois object") {
    const auto& f = CyclotomicField::get(2);
    for (long s : {0L, 1L, 2L}) {
      auto g = build_galois(build_taft_galois(f, 2, 1, Scalar(s)));
      CHECK(g.is_galois);
      CHECK(g.chi_well_defined);
      CHECK(g.balanced.dim() == 16);
      CHECK(g.balanced.trivial());
      CHECK(g.dim() == g.hopf_dim());
    }
  }

  TEST_CASE("A_s relations") {
    const auto& f = CyclotomicField::get(2);
    auto a = build_taft_galois(f, 2, 1, Scalar(1));
    const auto& A = a.algebra;
    CHECK(a.dim() == 4);
    Vec X = A.basis_vector(A.index_of("X")), G = A.basis_vector(A.index_of("G"));
    CHECK(A.multiply(X, X) == A.unit());
    CHECK(A.multiply(G, G) == A.unit());
    CHECK(A.multiply(X, G) == scale(Scalar(-1), A.multiply(G, X)));
    CHECK(verify_algebra(A).ok());

    // s = 0 reproduces T_N as a comodule algebra
    for (int n : {2, 3}) {
      const auto& fn = CyclotomicField::get(n);
      auto a0 = build_taft_galois(fn, n, 1, Scalar(0));
      auto self = build_self_galois(build_taft(fn, n, 1));
      for (std::size_t i = 0; i < a0.dim(); ++i)
        for (std::size_t j = 0; j < a0.dim(); ++j) CHECK(a0.algebra.product(i, j) == self.algebra.product(i, j));
      CHECK(coaction_matrix(a0.coaction, a0.hopf.dim()) == coaction_matrix(self.coaction, self.hopf.dim()));
    }
  }

  TEST_CASE("self Galois object: tau(h) = S(h_(1)) (x) h_(2)") {
    auto h = build_taft(CyclotomicField::get(2), 2, 1);
    auto g = build_galois(build_self_galois(h));
    REQUIRE(g.is_galois);
    std::size_t n = h.dim();
    for (std::size_t b = 0; b < n; ++b) {
      Vec expect(n * n);
      for (const auto& t : h.comult[b]) axpy(expect, t.coeff, pure(n, h.antipode.column(t.left), unit_vector(n, t.right)));
      CHECK(translation_map(g, b) == expect);
    }
  }

  TEST_CASE("translation map of A_s on generators") {
    for (int n : {2, 3, 4}) {
      const auto& f = CyclotomicField::get(n);
      for (long s : {0L, 1L, 2L}) {
        auto c = build_taft_galois(f, n, 1, Scalar(s));
        auto g = build_galois(c);
        REQUIRE(g.is_galois);
        const auto& A = c.algebra;
        std::size_t d = c.dim();
        Vec one = A.unit(), G = A.basis_vector(A.index_of("G")), X = A.basis_vector(A.index_of("X"));
        Vec Ginv = A.basis_vector(A.index_of(taft_label(0, n - 1, "X", "G")));
        CHECK(A.multiply(G, Ginv) == one);
        std::size_t hg = c.hopf.algebra.index_of("g"), hx = c.hopf.algebra.index_of("x");
        CHECK(translation_map(g, 0) == pure(d, one, one));
        CHECK(same_class(g, translation_map(g, hg), pure(d, Ginv, G)));
        Vec tx = pure(d, one, X);
        axpy(tx, Scalar(-1), pure(d, A.multiply(X, Ginv), G));
        CHECK(same_class(g, translation_map(g, hx), tx));
        // chi(tau(h)) = 1 (x) h
        for (std::size_t h = 0; h < g.hopf_dim(); ++h)
          CHECK(chi_of(g, translation_map(g, h)) == unit_vector(d * g.hopf_dim(), h));
      }
    }
  }

  TEST_CASE("seven translation identities") {
    for (int n : {2, 3}) {
      const auto& f = CyclotomicField::get(n);
      for (long s : {0L, 1L, 2L}) {
        auto g = build_galois(build_taft_galois(f, n, 1, Scalar(s)));
        Report r = verify_translation_identities(g);
        CHECK_MESSAGE(r.ok(), "N=" << n << " s=" << s << " " << (r.ok() ? "" : r.failures().front()));
        for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6", "p7"}) CHECK(r.find(p) != nullptr);
      }
    }
    auto t3 = build_taft(CyclotomicField::get(3), 3, 2);
    CHECK(verify_translation_identities(build_galois(build_self_galois(t3))).ok());
    auto graded = build_galois(build_graded_galois(bilinear_cocycle(FiniteAbelianGroup({2, 2}), 1, 0, Scalar(-1))));
    CHECK(verify_translation_identities(graded).ok());
  }

  TEST_CASE("p5 on g and p3 on G by hand") {
    const auto& f = CyclotomicField::get(3);
    auto c = build_taft_galois(f, 3, 1, Scalar(2));
    auto g = build_galois(c);
    const auto& A = c.algebra;
    std::size_t d = c.dim();
    Vec tg = translation_map(g, c.hopf.algebra.index_of("g"));
    // tau1(g) tau2(g) = epsilon(g) 1
    Vec prod(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!tg[i * d + j].is_zero()) axpy(prod, tg[i * d + j], A.product(i, j));
    CHECK(prod == A.unit());
    // G_(0) tau(G_(1)) = G tau(g) = G G^{-1} (x) G = 1 (x) G
    std::size_t G = A.index_of("G");
    Vec lhs(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!tg[i * d + j].is_zero()) axpy(lhs, tg[i * d + j], pure(d, A.product(G, i), unit_vector(d, j)));
    CHECK(same_class(g, lhs, pure(d, A.unit(), unit_vector(d, G))));
  }

  TEST_CASE("trivial coaction is not Galois") {
    auto c = build_taft_galois(CyclotomicField::get(2), 2, 1, Scalar(1));
    Coaction triv;
    triv.dim = c.dim();
    triv.terms.resize(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) triv.terms[i].push_back({Scalar(1), i, 0});
    auto t = attach_coaction(c.algebra, c.hopf, triv);
    auto g = build_galois(t);
    CHECK(!g.is_galois);
    // B = A, so A (x)_B A = A and chi has rank dim A inside A (x) H
    CHECK(g.balanced.dim() == 4);
    CHECK(g.rank_deficit == 16 - 4);
    CHECK_THROWS_AS(translation_map(g, 0), NotGaloisError);
    CHECK(!verify_translation_identities(g).ok());
  }

  TEST_CASE("chi is left A-linear") {
    auto c = build_taft_galois(CyclotomicField::get(3), 3, 1, Scalar(1));
    auto g = build_galois(c);
    const auto& A = c.algebra;
    std::size_t d = c.dim(), m = c.hopf.dim();
    for (std::size_t a = 0; a < d; a += 2)
      for (std::size_t i = 0; i < d; i += 3)
        for (std::size_t j = 0; j < d; ++j) {
          Vec left = chi_of(g, pure(d, A.product(a, i), unit_vector(d, j)));
          Vec image = chi_of(g, pure(d, unit_vector(d, i), unit_vector(d, j)));
          Vec right(d * m);
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t h = 0; h < m; ++h)
              if (!image[k * m + h].is_zero())
                for (const auto& [p, w] : A.sparse_product(a, k)) right[p * m + h] += image[k * m + h] * w;
          CHECK(left == right);
        }
  }

  TEST_CASE("graded Galois objects") {
    auto z2 = build_graded_galois(constant_cocycle(FiniteAbelianGroup({2}), Scalar(1)));
    auto cz2 = build_group_algebra({2});
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(z2.algebra.product(i, j) == cz2.algebra.product(i, j));
    CHECK(build_galois(z2).is_galois);

    Cocycle sign = bilinear_cocycle(FiniteAbelianGroup({2, 2}), 1, 0, Scalar(-1));
    auto c = build_graded_galois(sign);
    const auto& A = c.algebra;
    std::size_t a = A.index_of("u_a"), b = A.index_of("u_b");
    CHECK(A.product(a, b) == scale(Scalar(-1), A.product(b, a)));
    CHECK(!A.product(a, b).empty());
    CHECK(build_galois(c).is_galois);
    CHECK(c.base_dim() == 1);

    auto z3 = build_graded_galois(constant_cocycle(FiniteAbelianGroup({3}), Scalar(1)));
    CHECK(z3.base_dim() == 1);
    CHECK(z3.coinvariants.contains(z3.algebra.basis_vector(z3.algebra.index_of("u_e"))));
  }

  TEST_CASE("Galois extension over a non-scalar base") {
    auto h = build_group_algebra({2});
    auto c = build_trivial_bundle(2, h);
    auto g = build_galois(c);
    CHECK(!g.balanced.trivial());
    CHECK(g.balanced.dim() == 8);  // A is free of rank 2 over B = C^2
    CHECK(g.chi_well_defined);
    CHECK(g.is_galois);
    CHECK(verify_translation_identities(g).ok());

    auto t2 = build_taft(CyclotomicField::get(2), 2, 1);
    auto g2 = build_galois(build_trivial_bundle(3, t2));
    CHECK(g2.is_galois);
    CHECK(g2.balanced.dim() == 3 * 16);
    CHECK(verify_translation_identities(g2).ok());
  }

  TEST_CASE("N = 4 Galois computation is fast") {
    auto t0 = std::chrono::steady_clock::now();
    auto g = build_galois(build_taft_galois(CyclotomicField::get(4), 4, 1, Scalar(2)));
    Report r = verify_translation_identities(g);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(g.is_galois);
    CHECK(r.ok());
    MESSAGE("N=4 Galois + identities: " << secs << " s");
    CHECK(secs < 60.0);
  }
}
