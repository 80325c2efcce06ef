#include "doctest.h"
#include "hopfgauge/hopf.hpp"

using namespace hg;

namespace {

Matrix functional(const Vec& values) {
  Matrix m(1, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(0, i) = values[i];
  return m;
}

}  // namespace

TEST_SUITE("hopf") {
  TEST_CASE("Taft algebras satisfy the Hopf axioms") {
    for (int n : {2, 3, 4, 5, 6}) {
      const auto& f = CyclotomicField::get(n == 2 ? 2 : n);
      auto t = build_taft(f, n, 1);
      CHECK(t.dim() == static_cast<std::size_t>(n * n));
      Report r = verify_hopf(t);
      CHECK_MESSAGE(r.ok(), "N=" << n << " " << (r.ok() ? "" : r.failures().front()));
      CHECK(t.antipode_inverse.has_value());
      // epsilon(x^i g^j) = delta_{i,0}
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(t.counit[i * n + j] == Scalar(i == 0 ? 1 : 0));
    }
  }

  TEST_CASE("Taft T_2 structure by hand") {
    const auto& f = CyclotomicField::get(2);
    auto t = build_taft(f, 2, 1);
    const auto& A = t.algebra;
    std::size_t one = A.index_of("1"), g = A.index_of("g"), x = A.index_of("x"), xg = A.index_of("xg");
    // the antipode axiom on x forces S(x) = -x g^{-1}; for N = 2 this is -xg
    Vec sx = t.antipode.column(x);
    CHECK(sx == scale(Scalar(-1), A.multiply(A.basis_vector(x), A.basis_vector(g))));
    CHECK(sx == scale(Scalar(-1), A.basis_vector(xg)));
    // the other ordering -g^{-1} x differs by q and fails the axiom
    Vec other = scale(Scalar(-1), A.multiply(A.basis_vector(g), A.basis_vector(x)));
    CHECK(other != sx);
    FinDimHopf swapped = t;
    swapped.antipode.set_column(x, other);
    CHECK(!verify_hopf(swapped).passed("antipode"));
    // Delta(xg) = (1 (x) x + x (x) g)(g (x) g) = g (x) xg + xg (x) 1
    Vec dxg = t.coproduct(A.basis_vector(xg));
    Vec expect(16);
    expect[g * 4 + xg] = Scalar(1);
    expect[xg * 4 + one] = Scalar(1);
    CHECK(dxg == expect);
  }

  TEST_CASE("defects are detected") {
    const auto& f = CyclotomicField::get(2);
    auto t = build_taft(f, 2, 1);
    // antipode with the wrong sign on x
    FinDimHopf bad = t;
    std::size_t x = t.algebra.index_of("x");
    bad.antipode.set_column(x, scale(Scalar(-1), t.antipode.column(x)));
    Report r = verify_hopf(bad);
    CHECK(!r.passed("antipode"));
    CHECK(r.passed("coassociativity"));

    // break x g = q g x in the product table
    std::size_t n = t.dim(), g = t.algebra.index_of("g");
    std::vector<Vec> prods;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) prods.push_back(t.algebra.product(i, j));
    prods[x * n + g] = scale(Scalar(-1), prods[x * n + g]);
    FinDimAlgebra broken(t.algebra.labels(), prods, t.algebra.unit());
    Report ra = verify_algebra(broken);
    CHECK(!ra.passed("associativity"));
    CHECK(!ra.find("associativity")->witness.empty());
  }

  TEST_CASE("group algebras") {
    for (int n = 1; n <= 6; ++n) {
      auto h = build_group_algebra({n});
      CHECK(verify_hopf(h).ok());
      CHECK(is_cocommutative(h));
    }
    auto z2 = build_group_algebra({2});
    CHECK(z2.antipode == Matrix::identity(2));
    auto v4 = build_group_algebra({2, 2});
    CHECK(v4.dim() == 4);
    CHECK(verify_hopf(v4).ok());
    for (std::size_t i = 0; i < 4; ++i) {
      REQUIRE(v4.comult[i].size() == 1);
      CHECK(v4.comult[i][0].left == i);
      CHECK(v4.comult[i][0].right == i);
    }
    CHECK(!is_cocommutative(build_taft(CyclotomicField::get(2), 2, 1)));
  }

  TEST_CASE("antipode is an anti-homomorphism") {
    const auto& f = CyclotomicField::get(3);
    auto t = build_taft(f, 3, 1);
    const auto& A = t.algebra;
    for (std::size_t i = 0; i < t.dim(); ++i)
      for (std::size_t j = 0; j < t.dim(); ++j)
        CHECK(t.apply_antipode(A.product(i, j)) ==
              A.multiply(t.antipode.column(j), t.antipode.column(i)));
  }

  TEST_CASE("convolution") {
    const auto& f = CyclotomicField::get(2);
    auto t = build_taft(f, 2, 1);
    Matrix id = Matrix::identity(4);
    CHECK(convolution(id, t.antipode, t, t.algebra) == convolution_unit(t, t.algebra));
    auto z3 = build_group_algebra({3});
    Matrix u = convolution_unit(z3, z3.algebra);
    Matrix some(3, 3);
    some(0, 0) = Scalar(1);
    some(1, 2) = Scalar(5);
    some(2, 1) = Scalar(-2);
    CHECK(convolution(u, some, z3, z3.algebra) == some);
    CHECK(convolution(some, u, z3, z3.algebra) == some);

    // characters of T_2: phi(x) = 0, phi(g) = +-1
    std::size_t g = t.algebra.index_of("g"), xg = t.algebra.index_of("xg");
    Vec v(4);
    v[0] = Scalar(1);
    v[g] = Scalar(-1);
    Matrix phi = functional(v);
    Matrix trivial = convolution_unit(t, ground_algebra());
    CHECK(convolution(phi, phi, t, ground_algebra()) == trivial);

    // convolution is associative on unital maps
    Vec a{Scalar(1), Scalar(2), Scalar(3), Scalar(-1)}, b{Scalar(1), Scalar(-1), Scalar(4), Scalar(7)};
    Matrix fa = functional(a), fb = functional(b);
    auto k = ground_algebra();
    CHECK(convolution(convolution(fa, fb, t, k), phi, t, k) == convolution(fa, convolution(fb, phi, t, k), t, k));
    (void)xg;
  }

  TEST_CASE("convolution inverse of an extended character") {
    const auto& f = CyclotomicField::get(2);
    auto t = build_taft(f, 2, 1);
    const auto& A = t.algebra;
    std::size_t g = A.index_of("g"), x = A.index_of("x"), xg = A.index_of("xg");
    Scalar u(3), sx(Rational(1, 2)), sxg(-5);
    Vec v(4);
    v[0] = Scalar(1);
    v[g] = u;
    v[x] = sx;
    v[xg] = sxg;
    auto inv = convolution_inverse(functional(v), t, ground_algebra());
    REQUIRE(inv);
    CHECK((*inv)(0, 0) == Scalar(1));
    CHECK((*inv)(0, g) == u.inverse());
    CHECK((*inv)(0, x) == -sx * u.inverse());
    CHECK((*inv)(0, xg) == -sxg * u.inverse());

    Matrix trivial = convolution_unit(t, ground_algebra());
    auto self = convolution_inverse(trivial, t, ground_algebra());
    REQUIRE(self);
    CHECK(*self == trivial);

    v[g] = Scalar(0);
    CHECK(!convolution_inverse(functional(v), t, ground_algebra()));
  }
}
