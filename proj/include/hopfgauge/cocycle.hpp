#pragma once

// Group 2-cocycles on finite abelian groups with values in the unit group of Q(zeta_M).

#include "hopfgauge/hopf.hpp"

namespace hg {

struct Cocycle {
  FiniteAbelianGroup group;
  std::vector<Scalar> values;  // lambda(g, h) at g * |G| + h

  const Scalar& operator()(std::size_t g, std::size_t h) const { return values[g * group.order() + h]; }
  Scalar& operator()(std::size_t g, std::size_t h) { return values[g * group.order() + h]; }
};

Cocycle constant_cocycle(const FiniteAbelianGroup& g, const Scalar& value);
/// (-1)^{a_j b_k}-type bilinear cocycles: lambda(x, y) = prod over (j, k) of z^{x_j y_k}.
Cocycle bilinear_cocycle(const FiniteAbelianGroup& g, std::size_t j, std::size_t k, const Scalar& z);
/// (d mu)(g, h) = mu(g) mu(h) / mu(gh).
Cocycle coboundary(const FiniteAbelianGroup& g, const std::vector<Scalar>& mu);

Report verify_cocycle(const Cocycle& c);
/// Rescales by the constant lambda(e, e) so that lambda(e, e) = 1.
Cocycle normalize(const Cocycle& c);

struct LambdaRescale {
  std::vector<Scalar> big_lambda;  // Lambda(g, h) = lambda(g, h) lambda(h^-1, g^-1)
  std::vector<Scalar> mu;          // mu(g) = lambda(g, g^-1)
  std::vector<Scalar> nu;          // nu(g)^2 = mu(g), nu(g^-1) = nu(g)
  Cocycle rescaled;                // lambda'(g, h) = lambda(g, h) nu(gh) / (nu(g) nu(h))
  bool lambda_is_coboundary = false;
};

/// Throws RootUnavailable when some mu(g) has no square root in the field.
LambdaRescale lambda_rescale(const Cocycle& c, const CyclotomicField* field);

/// beta(g, h) = lambda(g, h) / lambda(h, g).
std::vector<Scalar> commutator_bicharacter(const Cocycle& c);

struct Classification {
  bool trivial = false;
  std::vector<Scalar> mu;  // when trivial: lambda = d mu
  std::size_t witness_g = 0, witness_h = 0;
  Scalar witness_beta;
};

/// Trivial iff beta is identically one; then an explicit mu is constructed.
Classification classify(const Cocycle& c, const CyclotomicField* field);

}  // namespace hg
