#include <random>

#include "doctest.h"
#include "hopfgauge/exactla.hpp"

using namespace hg;

namespace {

// Laplace expansion, kept independent of the elimination code.
Scalar laplace_det(const Matrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  Scalar d;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    Scalar term = m(0, c) * laplace_det(minor);
    d += (c % 2 == 0) ? term : -term;
  }
  return d;
}

std::size_t rank_by_minors(const Matrix& m) {
  std::size_t best = 0;
  std::size_t R = m.rows(), C = m.cols();
  for (unsigned rs = 1; rs < (1u << R); ++rs)
    for (unsigned cs = 1; cs < (1u << C); ++cs) {
      std::size_t k = __builtin_popcount(rs);
      if (k != static_cast<std::size_t>(__builtin_popcount(cs)) || k <= best) continue;
      Matrix sub(k, k);
      std::size_t i = 0;
      for (std::size_t r = 0; r < R; ++r) {
        if (!(rs >> r & 1)) continue;
        std::size_t j = 0;
        for (std::size_t c = 0; c < C; ++c)
          if (cs >> c & 1) sub(i, j++) = m(r, c);
        ++i;
      }
      if (!laplace_det(sub).is_zero()) best = k;
    }
  return best;
}

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> rs;
  std::size_t cols = 0;
  for (auto r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    cols = v.size();
    rs.push_back(v);
  }
  return Matrix::from_rows(cols, rs);
}

Scalar random_element(std::mt19937& rng, const CyclotomicField& f) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> c(f.degree());
  for (auto& x : c) x = Rational(d(rng), 1 + std::abs(d(rng)));
  return Scalar::from_coeffs(&f, c);
}

}  // namespace

TEST_SUITE("exactla") {
  TEST_CASE("cyclotomic arithmetic") {
    const auto& f4 = CyclotomicField::get(4);
    Scalar z = Scalar::zeta(f4, 1);
    CHECK(z * z == Scalar(-1));
    CHECK(Scalar(2).inverse() == Scalar(Rational(1, 2)));
    const auto& f3 = CyclotomicField::get(3);
    Scalar w = Scalar::zeta(f3, 1);
    CHECK((w * w + w + Scalar(1)).is_zero());
    CHECK(f3.minimal_polynomial() == std::vector<long>{1, 1, 1});
    CHECK(CyclotomicField::get(12).degree() == 4);
    CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
  }

  TEST_CASE("unreduced rationals are canonicalized") {
    const auto& f = CyclotomicField::get(12);
    Scalar a(Rational(9, 3)), b(Rational(6, 4));
    CHECK(a == Scalar(3));
    CHECK(b * Scalar(2) == Scalar(3));
    CHECK(Scalar::from_coeffs(&f, {Rational(2, 2), Rational(0, 5)}) == Scalar(1));
    Scalar z = Scalar(Rational(10, 4)) * Scalar::zeta(f, 1);
    CHECK(z / z == Scalar(1));
  }

  TEST_CASE("inverse of random cyclotomic elements") {
    std::mt19937 rng(7);
    for (int m : {3, 4, 5, 8, 12}) {
      const auto& f = CyclotomicField::get(m);
      for (int t = 0; t < 20; ++t) {
        Scalar a = random_element(rng, f);
        if (a.is_zero()) continue;
        CHECK((a * a.inverse()).is_one());
        Scalar b = random_element(rng, f), c = random_element(rng, f);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
      }
    }
  }

  TEST_CASE("roots of unity") {
    const auto& f2 = CyclotomicField::get(2);
    CHECK(Scalar::zeta(f2, 1) == Scalar(-1));
    const auto& f4 = CyclotomicField::get(4);
    CHECK(Scalar::zeta(f4, 1).pow(4).is_one());
    const auto& f3 = CyclotomicField::get(3);
    Scalar w = Scalar::root_of_unity(f3, 3, 1);
    CHECK(w.pow(3).is_one());
    CHECK(!w.is_one());
    CHECK(Scalar::zeta(f3, 0).is_one());
    // Q(zeta_3) also holds the primitive 6th roots
    Scalar s = Scalar::root_of_unity(f3, 6, 1);
    CHECK(s.pow(6).is_one());
    CHECK(!s.pow(2).is_one());
    CHECK(!s.pow(3).is_one());
    CHECK_THROWS_AS(Scalar::root_of_unity(f3, 4, 1), OrderUnavailable);
    CHECK_THROWS_AS(Scalar::root_of_unity(f4, 3, 1), OrderUnavailable);
  }

  TEST_CASE("nth roots within the field") {
    const auto& f4 = CyclotomicField::get(4);
    auto r = nth_root(Scalar(-1), 2, &f4);
    REQUIRE(r);
    CHECK(*r * *r == Scalar(-1));
    auto r2 = nth_root(Scalar(Rational(9, 4)), 2, nullptr);
    REQUIRE(r2);
    CHECK(*r2 * *r2 == Scalar(Rational(9, 4)));
    CHECK(!nth_root(Scalar(2), 2, &f4));
    CHECK(!nth_root(Scalar(-1), 2, nullptr));
    const auto& f3 = CyclotomicField::get(3);
    Scalar w = Scalar::zeta(f3, 1);
    auto c = nth_root(w, 3, &f3);
    CHECK(!c);  // would need zeta_9
    auto sq = nth_root(w, 2, &f3);
    REQUIRE(sq);
    CHECK(*sq * *sq == w);
  }

  TEST_CASE("parse and serialize") {
    const auto& f4 = CyclotomicField::get(4);
    CHECK(Scalar::parse("1/2", &f4) == Scalar(Rational(1, 2)));
    CHECK(Scalar::parse("zeta", &f4) == Scalar::zeta(f4, 1));
    CHECK(Scalar::parse("-3/2*zeta^3", &f4) == Scalar(Rational(-3, 2)) * Scalar::zeta(f4, 3));
    CHECK(Scalar::parse("1 + zeta^2", &f4).is_zero());
    CHECK_THROWS(Scalar::parse("abc", &f4));
    CHECK_THROWS(Scalar::parse("zeta", nullptr));
    CHECK(Scalar(Rational(1, 2)).to_strings(&f4) == std::vector<std::string>{"1/2", "0/1"});
    CHECK(Scalar::zeta(f4, 3).to_strings(&f4) == std::vector<std::string>{"0/1", "-1/1"});
  }

  TEST_CASE("rref") {
    auto r = rref(Matrix::identity(3));
    CHECK(r.rref == Matrix::identity(3));
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
    auto r2 = rref(mat({{1, 1}, {1, 1}}));
    CHECK(r2.rref == mat({{1, 1}, {0, 0}}));
    CHECK(r2.pivots.size() == 1);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int t = 0; t < 30; ++t) {
      Matrix m(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = Scalar(d(rng));
      if (t % 3 == 0)
        for (std::size_t j = 0; j < 4; ++j) m(3, j) = m(0, j) + m(1, j);
      auto rr = rref(m);
      CHECK(rr.pivots.size() == rank_by_minors(m));
      CHECK(rref(rr.rref).rref == rr.rref);
      CHECK(determinant(m) == laplace_det(m));
    }
  }

  TEST_CASE("kernel") {
    CHECK(kernel(Matrix(2, 2)).dim() == 2);
    CHECK(kernel(Matrix::identity(3)).dim() == 0);
    auto k = kernel(mat({{1, -1}}));
    REQUIRE(k.dim() == 1);
    CHECK(k.vector(0) == Vec{Scalar(1), Scalar(1)});
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 20; ++t) {
      Matrix m(3, 5);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) m(i, j) = Scalar(d(rng));
      auto ker = kernel(m);
      CHECK(ker.dim() + rank(m) == 5);
      for (const auto& v : ker.basis()) CHECK(is_zero_vec(m * v));
    }
  }

  TEST_CASE("solve_linear") {
    auto x = solve_linear(Matrix::identity(3), unit_vector(3, 1));
    REQUIRE(x);
    CHECK(*x == unit_vector(3, 1));
    auto y = solve_linear(mat({{1, 1}}), Vec{Scalar(2)});
    REQUIRE(y);
    CHECK(*y == Vec{Scalar(2), Scalar(0)});
    CHECK(!solve_linear(mat({{1, 1}, {1, 1}}), Vec{Scalar(1), Scalar(2)}));
    auto inv = inverse(mat({{2, 1}, {1, 1}}));
    REQUIRE(inv);
    CHECK(*inv * mat({{2, 1}, {1, 1}}) == Matrix::identity(2));
    CHECK(!inverse(mat({{1, 2}, {2, 4}})));
  }

  TEST_CASE("quotient spaces") {
    auto q0 = quotient_space(3, {});
    CHECK(q0.dim() == 3);
    CHECK(q0.projection() == Matrix::identity(3));
    auto qall = quotient_space(2, {unit_vector(2, 0), unit_vector(2, 1)});
    CHECK(qall.dim() == 0);
    Vec rel(4);
    rel[0] = Scalar(1);
    rel[1] = Scalar(-1);
    auto q = quotient_space(4, {rel});
    CHECK(q.dim() == 3);
    CHECK(q.project(unit_vector(4, 0)) == q.project(unit_vector(4, 1)));
    CHECK(q.projection() * q.section() == Matrix::identity(3));
    CHECK(is_zero_vec(q.project(rel)));
    // section o projection fixes vectors modulo relations
    Vec v{Scalar(3), Scalar(5), Scalar(-1), Scalar(2)};
    Vec diff = sub(q.lift(q.project(v)), v);
    CHECK(q.relations().contains(diff));
  }
}
