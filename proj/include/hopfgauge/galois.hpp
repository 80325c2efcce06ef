#pragma once

#include "hopfgauge/cocycle.hpp"
#include "hopfgauge/comodule.hpp"

namespace hg {

/// A^{(x)_B k}: the quotient of A^{(x)k} by b-balancing in every adjacent pair of slots.
QuotientSpace balanced_power(const ComoduleAlgebra& c, int k);

/// Projects the middle factor of v in [head] (x) V (x) [tail] through q.
Vec project_middle(const QuotientSpace& q, const Vec& v, std::size_t head, std::size_t tail);

struct GaloisExtension {
  ComoduleAlgebra base;
  QuotientSpace balanced;  // A (x)_B A
  Matrix chi;              // A (x)_B A -> A (x) H, in quotient coordinates
  bool chi_well_defined = true;
  bool is_galois = false;
  std::size_t rank_deficit = 0;
  Matrix tau;       // H -> A (x)_B A, quotient coordinates
  Matrix tau_lift;  // H -> A (x) A, representatives through the section
  std::vector<SparseVec> tau_terms;  // sparse columns of tau_lift

  std::size_t dim() const { return base.dim(); }
  std::size_t hopf_dim() const { return base.hopf.dim(); }
  bool base_is_ground() const { return base.base_dim() == 1; }
};

GaloisExtension build_galois(const ComoduleAlgebra& c);
/// tau(h) for basis element h as a representative in A (x) A; throws NotGaloisError.
Vec translation_map(const GaloisExtension& g, std::size_t h);
/// tau applied to an arbitrary element of H (representative in A (x) A).
Vec translation_of(const GaloisExtension& g, const Vec& h);
Report verify_translation_identities(const GaloisExtension& g);

/// A_s: X^N = s, G^N = 1, XG = q GX, coacted on by T_N.
ComoduleAlgebra build_taft_galois(const CyclotomicField& field, int n, int q_index, const Scalar& s);
/// Twisted group algebra u_g u_h = lambda(g, h) u_{gh} over C[G].
ComoduleAlgebra build_graded_galois(const Cocycle& lambda);
/// H coacting on itself by its coproduct.
ComoduleAlgebra build_self_galois(const FinDimHopf& h);
/// C^k (x) H with coaction id (x) Delta: a trivial bundle over k points, B = C^k.
ComoduleAlgebra build_trivial_bundle(std::size_t k, const FinDimHopf& h);
/// base (x) H with coaction id (x) Delta; B = base need not be commutative.
ComoduleAlgebra build_trivial_bundle(const FinDimAlgebra& base, const FinDimHopf& h);

}  // namespace hg
