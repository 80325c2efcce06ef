#include "hopfgauge/cocycle.hpp"

namespace hg {

namespace {

std::string pair_label(const FiniteAbelianGroup& g, std::size_t a, std::size_t b) {
  return "(" + g.label(a) + ", " + g.label(b) + ")";
}

}  // namespace

Cocycle constant_cocycle(const FiniteAbelianGroup& g, const Scalar& value) {
  return Cocycle{g, std::vector<Scalar>(g.order() * g.order(), value)};
}

Cocycle bilinear_cocycle(const FiniteAbelianGroup& g, std::size_t j, std::size_t k, const Scalar& z) {
  Cocycle c{g, std::vector<Scalar>(g.order() * g.order())};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) c(a, b) = z.pow(static_cast<long>(g.element(a)[j]) * g.element(b)[k]);
  return c;
}

Cocycle coboundary(const FiniteAbelianGroup& g, const std::vector<Scalar>& mu) {
  if (mu.size() != g.order()) throw ShapeMismatch("mu must have one value per group element");
  Cocycle c{g, std::vector<Scalar>(g.order() * g.order())};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) c(a, b) = mu[a] * mu[b] / mu[g.multiply(a, b)];
  return c;
}

Report verify_cocycle(const Cocycle& c) {
  Report rep;
  const auto& G = c.group;
  std::size_t n = G.order();
  if (c.values.size() != n * n) {
    rep.add("shape", false, "expected " + std::to_string(n * n) + " values");
    return rep;
  }
  std::string w;
  for (std::size_t a = 0; a < n && w.empty(); ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (c(a, b).is_zero()) {
        w = "lambda" + pair_label(G, a, b) + " vanishes";
        break;
      }
  rep.add("nonvanishing", w.empty(), w);
  w.clear();
  for (std::size_t a = 0; a < n && w.empty(); ++a)
    for (std::size_t b = 0; b < n && w.empty(); ++b)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar lhs = c(a, b) * c(G.multiply(a, b), k);
        Scalar rhs = c(b, k) * c(a, G.multiply(b, k));
        if (lhs != rhs) {
          w = "cocycle identity fails on (" + G.label(a) + ", " + G.label(b) + ", " + G.label(k) + ")";
          break;
        }
      }
  rep.add("cocycle_identity", w.empty(), w);
  return rep;
}

Cocycle normalize(const Cocycle& c) {
  Scalar ee = c(0, 0);
  if (ee.is_zero()) throw CocycleInvalid("lambda(e, e) vanishes");
  Scalar inv = ee.inverse();
  Cocycle out = c;
  for (auto& v : out.values) v *= inv;
  return out;
}

LambdaRescale lambda_rescale(const Cocycle& c0, const CyclotomicField* field) {
  if (!verify_cocycle(c0).ok()) throw CocycleInvalid("input is not a 2-cocycle");
  Cocycle c = normalize(c0);
  const auto& G = c.group;
  std::size_t n = G.order();
  LambdaRescale r;
  r.big_lambda.resize(n * n);
  r.mu.resize(n);
  r.nu.resize(n);
  for (std::size_t g = 0; g < n; ++g) r.mu[g] = c(g, G.inverse(g));
  r.lambda_is_coboundary = true;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      Scalar L = c(g, h) * c(G.inverse(h), G.inverse(g));
      r.big_lambda[g * n + h] = L;
      if (L != r.mu[g] * r.mu[h] / r.mu[G.multiply(g, h)]) r.lambda_is_coboundary = false;
    }
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t gi = G.inverse(g);
    if (gi < g) {
      r.nu[g] = r.nu[gi];
      continue;
    }
    auto root = nth_root(r.mu[g], 2, field);
    if (!root)
      throw RootUnavailable("no square root of mu(" + G.label(g) + ") = " + r.mu[g].to_string() +
                            " in the field; try a larger conductor");
    r.nu[g] = *root;
  }
  r.rescaled = c;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      r.rescaled(g, h) = c(g, h) * r.nu[G.multiply(g, h)] / (r.nu[g] * r.nu[h]);
  return r;
}

std::vector<Scalar> commutator_bicharacter(const Cocycle& c) {
  std::size_t n = c.group.order();
  std::vector<Scalar> beta(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) beta[g * n + h] = c(g, h) / c(h, g);
  return beta;
}

Classification classify(const Cocycle& c0, const CyclotomicField* field) {
  if (!verify_cocycle(c0).ok()) throw CocycleInvalid("input is not a 2-cocycle");
  Scalar ee = c0(0, 0);
  Cocycle c = normalize(c0);
  const auto& G = c.group;
  std::size_t n = G.order();
  Classification out;
  auto beta = commutator_bicharacter(c);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (!beta[g * n + h].is_one()) {
        out.trivial = false;
        out.witness_g = g;
        out.witness_h = h;
        out.witness_beta = beta[g * n + h];
        return out;
      }
  out.trivial = true;
  // In the (commutative) twisted algebra pick w_a = theta u_a with w_a^{n_a} = 1,
  // then w_g = prod w_{a_i}^{k_i} = coef(g) u_g and lambda = d(1 / coef).
  std::vector<Scalar> theta(G.factors().size());
  for (std::size_t i = 0; i < G.factors().size(); ++i) {
    std::size_t a = G.generator(i);
    int order = G.factors()[i];
    Scalar p(1);
    std::size_t ak = a;
    for (int k = 1; k < order; ++k) {
      p *= c(ak, a);
      ak = G.multiply(ak, a);
    }
    auto root = nth_root(p.inverse(), order, field);
    if (!root)
      throw RootUnavailable("no " + std::to_string(order) + "-th root of " + p.inverse().to_string() +
                            " in the field; try a larger conductor");
    theta[i] = *root;
  }
  std::vector<Scalar> coef(n);
  for (std::size_t g = 0; g < n; ++g) {
    auto e = G.element(g);
    Scalar cf(1);
    std::size_t cur = G.identity();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) {
        std::size_t a = G.generator(i);
        cf = cf * theta[i] * c(cur, a);
        cur = G.multiply(cur, a);
      }
    coef[g] = cf;
  }
  out.mu.resize(n);
  for (std::size_t g = 0; g < n; ++g) out.mu[g] = ee * coef[g].inverse();
  Cocycle check = coboundary(G, out.mu);
  if (check.values != c0.values) throw CheckFailure("constructed mu does not reproduce the cocycle");
  return out;
}

}  // namespace hg
