#pragma once

// Gauge transformations of a Hopf-Galois extension, bisections of its bialgebroid and the
// correspondence between them. Gauge maps are dim A x dim A matrices, bisections are
// dim B x dim C matrices in the coordinates of Bialgebroid.

#include <functional>

#include "hopfgauge/bialgebroid.hpp"

namespace hg {

struct GaugeMap {
  LinearMap F;
  bool extended = false;
  bool unital = false;
  bool equivariant = false;
  bool algebra_map = false;
  bool invertible = false;
  bool b_multiplicative = false;  // F(ba) = F(b) F(a) for b in B
  bool restricts_to_aut_B = false;
  bool vertical = false;
  Report report;

  /// Member of Aut_H(A), or of the extended group when extended is set.
  bool valid() const;
};

GaugeMap verify_gauge(const Matrix& F, const GaloisExtension& ext, bool extended);

/// The group law F . G := G o F.
Matrix gauge_product(const Matrix& F, const Matrix& G);

/// F^{-1}(a) = (F|_B)^{-1}(a_(0) F(tau1(a_(1)))) tau2(a_(1)); needs a strict gauge map and central B.
GaugeMap gauge_inverse(const GaugeMap& F, const Bialgebroid& b);

struct Bisection {
  Matrix sigma;  // dim B x dim C
  bool extended = false;
  bool unital = false;
  bool algebra_map = false;
  bool t_section = false;  // sigma o t = id_B
  bool s_aut = false;      // sigma o s in Aut(B)
  bool vertical = false;   // sigma o s = id_B
  bool b_linear = false;
  bool invertible = false;  // has a two-sided inverse for the product
  std::optional<Matrix> inverse;
  Report report;

  bool valid() const;
};

Bisection verify_bisection(const Matrix& sigma, const Bialgebroid& b, bool extended);

/// (s1 * s2)(c) = (s2 o s)(s1(c_(1))) s2(c_(2)).
Matrix bisection_product(const Matrix& s1, const Matrix& s2, const Bialgebroid& b);
/// sigma^{-1}(a (x) a~) = (sigma o s)^{-1}(a sigma(a~_(0) (x) tau1(a~_(1))) tau2(a~_(1))), for algebra maps.
Matrix bisection_inverse(const Matrix& sigma, const Bialgebroid& b);
/// Two-sided inverse for the product found by linear solving; works without multiplicativity.
std::optional<Matrix> product_inverse(const Matrix& sigma, const Bialgebroid& b);
/// The counit as the unit bisection.
Matrix unit_bisection(const Bialgebroid& b);

/// sigma_F(a (x) a~) = F(a) a~.
Matrix alpha(const Matrix& F, const Bialgebroid& b);
/// F_sigma(a) = sigma(a_(0) (x) tau1(a_(1))) tau2(a_(1)).
Matrix beta(const Matrix& sigma, const Bialgebroid& b);

/// Characters as 1 x dim H rows: Taft phi_k(x^i g^j) = [i = 0] zeta_N^{kj}; group algebras all
/// tuples of roots of unity. Throws UnsupportedFamily or RootUnavailable.
std::vector<Matrix> enumerate_characters(const FinDimHopf& h);
/// Characters of H pulled back to C(A, H) through the appropriate isomorphism, verified as bisections.
std::vector<Bisection> enumerate_characters(const Bialgebroid& b);

/// table[i][j] = index of elems[i] * elems[j], or -1 when the product is not in the list.
std::vector<std::vector<int>> group_table(const std::vector<Matrix>& elems,
                                          const std::function<Matrix(const Matrix&, const Matrix&)>& product);
/// A complete table of a cyclic group of its size.
bool is_cyclic_table(const std::vector<std::vector<int>>& table);

/// Affine family particular + sum_k p_k directions[k] of dim A x dim A matrices.
struct AffineFamily {
  Matrix particular;
  std::vector<Matrix> directions;
  std::vector<std::pair<std::size_t, std::size_t>> anchors;  // (row, col) entry equal to p_k
  std::vector<std::size_t> must_be_nonzero;

  std::size_t free_parameters() const { return directions.size(); }
  Matrix at(const std::vector<Scalar>& params) const;
  /// Entry (r, c) as constant term plus coefficient per parameter.
  std::pair<Scalar, std::vector<Scalar>> entry(std::size_t r, std::size_t c) const;
  bool contains(const Matrix& m) const;
};

/// Unital equivariant maps A -> A. The parameters whose vanishing kills the determinant at
/// every sampled point form must_be_nonzero.
AffineFamily solve_extended_gauge(const GaloisExtension& ext);

/// Members of the family that are algebra maps with nonzero must_be_nonzero parameters.
/// Eliminates a small polynomial system; throws UnsupportedFamily if it does not reduce to
/// linear steps and univariate roots inside the field.
std::vector<Matrix> algebra_maps_in_family(const AffineFamily& fam, const GaloisExtension& ext);

/// Display basis order for T_2 and T_3 matrices, used for the "paper_layout" rendering.
std::optional<std::vector<std::size_t>> display_order(int taft_n);
/// Row r lists the coefficients of the image of basis order[r], columns in the same order.
Matrix to_display(const Matrix& m, const std::vector<std::size_t>& order);

}  // namespace hg
