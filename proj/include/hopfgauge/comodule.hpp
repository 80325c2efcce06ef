#pragma once

#include "hopfgauge/hopf.hpp"

namespace hg {

/// A right coaction V -> V (x) H; terms[i] lists (coeff, v index, h index) of delta(e_i).
struct Coaction {
  std::size_t dim = 0;
  std::vector<TermList> terms;
};

/// Dense image of v in V (x) H (index v * dim H + h).
Vec apply_coaction(const Coaction& c, const Vec& v, std::size_t hdim);
Matrix coaction_matrix(const Coaction& c, std::size_t hdim);
Coaction coaction_from_dense(const std::vector<Vec>& images, std::size_t hdim);

/// Coassociativity and counit; when alg is given also the algebra-map conditions.
Report check_comodule_axioms(const Coaction& c, const FinDimHopf& h, const FinDimAlgebra* alg = nullptr);

/// Kernel of delta - (.) (x) 1_H.
SubspaceBasis coinvariants(const Coaction& c, const FinDimHopf& h);

struct ComoduleAlgebra {
  FinDimAlgebra algebra;
  FinDimHopf hopf;
  Coaction coaction;
  SubspaceBasis coinvariants;  // B
  bool b_in_centre = false;

  std::size_t dim() const { return algebra.dim(); }
  std::size_t base_dim() const { return coinvariants.dim(); }
  /// dim A x dim B matrix whose columns span B.
  Matrix base_inclusion() const;
  /// Coordinates in B of an element of A known to lie in B.
  Vec base_coordinates(const Vec& a) const;
};

/// Verifies the coaction and computes B; throws ComoduleAxiomFailure.
ComoduleAlgebra attach_coaction(FinDimAlgebra a, FinDimHopf h, Coaction delta);

/// a (x) a' -> a_(0) (x) a'_(0) (x) a_(1) a'_(1) on A (x) A.
Coaction diagonal_coaction(const ComoduleAlgebra& c);

}  // namespace hg
