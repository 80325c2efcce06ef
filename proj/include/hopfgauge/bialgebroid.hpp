#pragma once

// The Ehresmann-Schauenburg bialgebroid C(A, H) = (A (x) A)^{coH} of a Hopf-Galois extension.
// Elements of C are handled in coordinates with respect to the canonical basis of C inside A (x) A.

#include "hopfgauge/galois.hpp"

namespace hg {

struct Bialgebroid {
  GaloisExtension ext;
  SubspaceBasis C;                            // diagonal coinvariants
  SubspaceBasis C_tau;                        // {a (x) a~ : a_(0) (x) tau(a_(1)) a~ = a (x) a~ (x)_B 1}
  std::optional<SubspaceBasis> C_equalizer;  // ker(delta (x) id - id (x) left coaction), needs S^{-1}
  std::vector<SparseVec> basis_terms;         // sparse C basis vectors in A (x) A

  std::vector<Vec> product;  // c_i . c_j at i * dim + j
  Vec unit;
  Matrix source;  // dim C x dim B
  Matrix target;
  QuotientSpace CC;  // C (x)_B C as a quotient of C (x) C (index i * dim + j)
  Matrix coproduct;  // CC.dim x dim C
  bool coproduct_in_range = true;  // every Delta(c) was matched exactly inside C (x)_B C
  bool balanced_faithful = true;   // C (x)_B C embeds into A (x) (A (x)_B A) (x) A
  Matrix counit;                   // dim B x dim C
  std::optional<Matrix> antipode;  // only over B = C
  /// a -> a_(0) (x) tau(a_(1)) as an element of C (x)_B A; rows c * dim A + k, one column per basis element of A.
  Matrix split;

  std::size_t dim() const { return C.dim(); }
  std::size_t base_dim() const { return ext.base.base_dim(); }
  bool over_ground() const { return ext.base_is_ground(); }

  /// Element of A (x) A from coordinates.
  Vec element(const Vec& coords) const { return C.embed(coords); }
  /// Coordinates of an element of A (x) A; throws ClosureFailure if it is not in C.
  Vec coordinates(const Vec& aa) const;
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Representative of Delta(x) in C (x) C (quotient section in the general case).
  Vec apply_coproduct(const Vec& x) const;
  Vec apply_counit(const Vec& x) const { return counit * x; }
  Vec s(const Vec& b) const { return source * b; }
  Vec t(const Vec& b) const { return target * b; }
};

/// Throws SubspaceMismatch when the three descriptions of C disagree and ClosureFailure
/// when the product leaves C. Requires a Galois extension.
Bialgebroid build_bialgebroid(const GaloisExtension& g);

/// The coproduct a (x) a~ -> a_(0) (x) tau(a_(1)) (x) a~ computed from the given translation data
/// (sparse representatives in A (x) A, one per basis element of H). Sets *in_range to whether
/// every image was matched exactly.
Matrix coproduct_from_translation(const Bialgebroid& b, const std::vector<SparseVec>& tau, bool* in_range);

/// Bimodule, Takeuchi, coassociativity, counit and left-character properties, and the antipode
/// composites over B = C.
Report verify_bialgebroid(const Bialgebroid& b);

/// C as a Hopf algebra on the basis c0, c1, ...; requires B = C.
FinDimHopf as_hopf(const Bialgebroid& b);

struct HopfIso {
  LinearMap forward;   // C -> H
  LinearMap backward;  // H -> C
  bool algebra_map = false;
  bool coalgebra_map = false;
  bool mutually_inverse = false;
  Report report;
  bool ok() const { return algebra_map && coalgebra_map && mutually_inverse; }
};

/// Checks that forward : C -> H is an algebra and coalgebra map with two-sided inverse backward.
HopfIso check_hopf_iso(const Bialgebroid& b, const FinDimHopf& h, const Matrix& forward, const Matrix& backward);

/// C(H, H) = H: phi(g (x) h) = g epsilon(h), phi^{-1}(h) = h_(1) (x) S(h_(2)).
HopfIso iso_self(const Bialgebroid& b);
/// Cocommutative H: Phi(a (x) a~) (x) 1 = a_(1) (x) a_(0) a~, Phi^{-1} = tau o S.
HopfIso iso_cocommutative(const Bialgebroid& b);

struct TaftIso {
  HopfIso iso;
  Vec xi;                      // X (x) G^{-1} - 1 (x) X G^{-1}, in C coordinates
  Vec gamma;                   // G (x) G^{-1}
  std::optional<Scalar> commutation;  // c with Xi . Gamma = c Gamma . Xi
};

/// C(A_s, T_N) = T_N via Xi -> x, Gamma -> g.
TaftIso iso_taft(const Bialgebroid& b);

}  // namespace hg
