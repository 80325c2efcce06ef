#include <random>
#include <set>

#include "doctest.h"
#include "hopfgauge/errors.hpp"
#include "hopfgauge/galois.hpp"

using namespace hg;

namespace {

Cocycle sign_cocycle() { return bilinear_cocycle(FiniteAbelianGroup({2, 2}), 1, 0, Scalar(-1)); }

// A unit of Q(zeta_M): nonzero rational times a root of unity.
Scalar random_unit(std::mt19937& rng, const CyclotomicField& f) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 5), k(0, 2 * f.conductor() - 1), sgn(0, 1);
  Scalar r(Rational(num(rng) * (sgn(rng) ? 1 : -1), den(rng)));
  return r * Scalar::zeta(f, k(rng));
}

bool commutative(const FinDimAlgebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.product(i, j) != a.product(j, i)) return false;
  return true;
}

}  // namespace

TEST_SUITE("cocycle") {
  TEST_CASE("verification") {
    CHECK(verify_cocycle(constant_cocycle(FiniteAbelianGroup({4}), Scalar(1))).ok());
    Cocycle s = sign_cocycle();
    CHECK(verify_cocycle(s).ok());
    // (i, j) . (k, l) -> (-1)^{jk}
    const auto& G = s.group;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        CHECK(s(a, b) == Scalar((G.element(a)[1] * G.element(b)[0]) % 2 ? -1 : 1));

    Cocycle bad = s;
    bad(1, 2) = Scalar(3);
    Report r = verify_cocycle(bad);
    CHECK(r.passed("nonvanishing"));
    CHECK(!r.passed("cocycle_identity"));
    CHECK(!r.find("cocycle_identity")->witness.empty());
    bad(1, 2) = Scalar(0);
    CHECK(!verify_cocycle(bad).passed("nonvanishing"));
  }

  TEST_CASE("coboundaries are cocycles") {
    std::mt19937 rng(7);
    const auto& f = CyclotomicField::get(12);
    for (auto factors : {std::vector<int>{3}, std::vector<int>{4}, std::vector<int>{2, 2}, std::vector<int>{2, 6}}) {
      FiniteAbelianGroup G(factors);
      std::vector<Scalar> mu(G.order());
      mu[0] = Scalar(1);
      for (std::size_t g = 1; g < G.order(); ++g) mu[g] = random_unit(rng, f);
      CHECK(verify_cocycle(coboundary(G, mu)).ok());
    }
  }

  TEST_CASE("normalization") {
    FiniteAbelianGroup z2({2});
    Cocycle five = constant_cocycle(z2, Scalar(5));
    CHECK(verify_cocycle(five).ok());
    Cocycle n = normalize(five);
    for (std::size_t g = 0; g < 2; ++g) {
      CHECK(n(0, g) == Scalar(1));
      CHECK(n(g, 0) == Scalar(1));
    }
    // constant 5 is d mu with mu = 5
    CHECK(coboundary(z2, {Scalar(5), Scalar(5)}).values == five.values);
    CHECK(normalize(sign_cocycle()).values == sign_cocycle().values);
    CHECK(normalize(n).values == n.values);
  }

  TEST_CASE("Lambda trivialization") {
    const auto& f = CyclotomicField::get(4);
    auto one = lambda_rescale(constant_cocycle(FiniteAbelianGroup({3}), Scalar(1)), &f);
    for (const auto& v : one.big_lambda) CHECK(v.is_one());
    for (const auto& v : one.mu) CHECK(v.is_one());

    Cocycle s = sign_cocycle();
    auto r = lambda_rescale(s, &f);
    const auto& G = s.group;
    CHECK(r.lambda_is_coboundary);
    for (std::size_t g = 0; g < 4; ++g)
      for (std::size_t h = 0; h < 4; ++h) {
        // Lambda(g, h) = lambda(g, h) lambda(h^-1, g^-1) = mu(g) mu(h) / mu(gh), recomputed here
        Scalar L = s(g, h) * s(G.inverse(h), G.inverse(g));
        CHECK(r.big_lambda[g * 4 + h] == L);
        CHECK(L == s(g, G.inverse(g)) * s(h, G.inverse(h)) / s(G.multiply(g, h), G.inverse(G.multiply(g, h))));
      }
    for (std::size_t g = 0; g < 4; ++g) {
      CHECK(r.nu[g] * r.nu[g] == r.mu[g]);
      CHECK(r.nu[G.inverse(g)] == r.nu[g]);
      // rescaled generators satisfy lambda'(g, g^-1) = 1
      CHECK(r.rescaled(g, G.inverse(g)).is_one());
    }
    CHECK(verify_cocycle(r.rescaled).ok());
    // mu(ab) = -1 needs i, which Q itself lacks
    CHECK_THROWS_AS(lambda_rescale(s, &CyclotomicField::get(1)), RootUnavailable);
  }

  TEST_CASE("bicharacter and classification") {
    const auto& f = CyclotomicField::get(2);
    Cocycle s = sign_cocycle();
    auto beta = commutator_bicharacter(s);
    const auto& G = s.group;
    for (std::size_t g1 = 0; g1 < 4; ++g1)
      for (std::size_t g2 = 0; g2 < 4; ++g2)
        for (std::size_t h = 0; h < 4; ++h)
          CHECK(beta[G.multiply(g1, g2) * 4 + h] == beta[g1 * 4 + h] * beta[g2 * 4 + h]);
    auto c = classify(s, &f);
    CHECK(!c.trivial);
    CHECK(c.witness_beta == Scalar(-1));
    std::set<std::string> pair{G.label(c.witness_g), G.label(c.witness_h)};
    CHECK(pair == std::set<std::string>{"a", "b"});
    CHECK(!commutative(build_graded_galois(s).algebra));

    // symmetric cocycles on Z_2 x Z_2 are trivial and the twisted algebra commutes
    Cocycle sym = bilinear_cocycle(G, 0, 0, Scalar(-1));
    CHECK(classify(sym, &CyclotomicField::get(4)).trivial);
    CHECK(commutative(build_graded_galois(sym).algebra));
  }

  TEST_CASE("every cocycle on Z_n is trivial") {
    std::mt19937 rng(11);
    for (int n = 1; n <= 6; ++n) {
      const auto& f = CyclotomicField::get(4 * n);
      FiniteAbelianGroup G({n});
      std::vector<Cocycle> tested{constant_cocycle(G, Scalar(1)), constant_cocycle(G, Scalar(Rational(2, 3))),
                                  bilinear_cocycle(G, 0, 0, Scalar::root_of_unity(f, n, 1))};
      std::vector<Scalar> mu(n);
      for (auto& m : mu) m = random_unit(rng, f);
      tested.push_back(coboundary(G, mu));
      for (const auto& c : tested) {
        auto cl = classify(c, &f);
        REQUIRE(cl.trivial);
        CHECK(coboundary(G, cl.mu).values == c.values);
      }
      // recovered mu agrees with the original up to a character of Z_n
      auto cl = classify(coboundary(G, mu), &f);
      std::vector<Scalar> ratio(n);
      for (int g = 0; g < n; ++g) ratio[g] = cl.mu[g] / mu[g];
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) CHECK(ratio[G.multiply(g, h)] == ratio[g] * ratio[h]);
    }
  }

  TEST_CASE("missing roots are reported") {
    // lambda(a^i, a^j) = zeta_6^{ij} on Z_6 needs a 12th root of unity
    FiniteAbelianGroup G({6});
    const auto& f6 = CyclotomicField::get(6);
    Cocycle c = bilinear_cocycle(G, 0, 0, Scalar::root_of_unity(f6, 6, 1));
    CHECK_THROWS_AS(classify(c, &f6), RootUnavailable);
    Cocycle bad = constant_cocycle(G, Scalar(1));
    bad(1, 1) = Scalar(2);
    CHECK_THROWS_AS(classify(bad, &f6), CocycleInvalid);
  }
}
