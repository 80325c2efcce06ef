#pragma once

// Finite-dimensional algebras, Hopf algebras and the two families we build:
// Taft algebras and group algebras of finite abelian groups.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hopfgauge/exactla.hpp"
#include "hopfgauge/report.hpp"

namespace hg {

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;
SparseVec to_sparse(const Vec& v);

/// One summand coeff * e_left (x) e_right of a coproduct or coaction.
struct Term {
  Scalar coeff;
  std::size_t left;
  std::size_t right;
};
using TermList = std::vector<Term>;

struct LinearMap {
  Matrix matrix;  // column c is the image of basis vector c
  std::vector<std::string> domain_labels;
  std::vector<std::string> codomain_labels;
};

/// Z_{n1} x ... x Z_{nk}; elements indexed in mixed radix with the first factor slowest.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  std::vector<int> element(std::size_t idx) const;
  std::size_t index(const std::vector<int>& e) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t identity() const { return 0; }
  std::size_t generator(std::size_t i) const;
  std::size_t power(std::size_t a, long k) const;
  std::string label(std::size_t idx) const;
  int exponent() const;

 private:
  std::vector<int> factors_;
  std::size_t order_ = 1;
};

class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  /// products[i * n + j] is e_i e_j.
  FinDimAlgebra(std::vector<std::string> labels, std::vector<Vec> products, Vec unit);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
  const SparseVec& sparse_product(std::size_t i, std::size_t j) const { return sparse_[i * dim() + j]; }
  const Vec& unit() const { return unit_; }
  Vec basis_vector(std::size_t i) const { return unit_vector(dim(), i); }
  std::size_t index_of(const std::string& label) const;

  Vec multiply(const Vec& a, const Vec& b) const;
  Matrix left_multiplication(const Vec& a) const;
  Matrix right_multiplication(const Vec& a) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Vec> mult_;
  std::vector<SparseVec> sparse_;
  Vec unit_;
};

/// The one-dimensional algebra of scalars.
const FinDimAlgebra& ground_algebra();
/// C^k with orthogonal idempotents p_0, ..., p_{k-1}.
FinDimAlgebra diagonal_algebra(std::size_t k);
/// M_k with basis e_ij.
FinDimAlgebra matrix_algebra(std::size_t k);
/// X (x) Y with the componentwise product.
FinDimAlgebra tensor_algebra(const FinDimAlgebra& x, const FinDimAlgebra& y);

enum class HopfFamily { generic, taft, group };

struct FinDimHopf {
  FinDimAlgebra algebra;
  std::vector<TermList> comult;
  Vec counit;
  Matrix antipode;
  std::optional<Matrix> antipode_inverse;

  HopfFamily family = HopfFamily::generic;
  int taft_n = 0;
  int taft_q_index = 0;
  FiniteAbelianGroup group;
  const CyclotomicField* field = nullptr;

  std::size_t dim() const { return algebra.dim(); }
  const std::vector<std::string>& labels() const { return algebra.labels(); }
  /// Dense element of H (x) H.
  Vec coproduct(const Vec& v) const;
  Vec apply_antipode(const Vec& v) const { return antipode * v; }
  Scalar apply_counit(const Vec& v) const;
};

/// Fills in S^{-1} (absent when S is singular).
FinDimHopf make_hopf(FinDimAlgebra algebra, std::vector<TermList> comult, Vec counit, Matrix antipode);

/// Product in the tensor algebra X (x) Y of dense elements (index i * dim Y + j).
Vec tensor_multiply(const FinDimAlgebra& x, const FinDimAlgebra& y, const Vec& u, const Vec& v);

Report verify_algebra(const FinDimAlgebra& a);
Report verify_hopf(const FinDimHopf& h);
bool is_cocommutative(const FinDimHopf& h);

/// (f * g)(c) = f(c_(1)) g(c_(2)) for f, g : H -> A given as dim A x dim H matrices.
Matrix convolution(const Matrix& f, const Matrix& g, const FinDimHopf& from, const FinDimAlgebra& to);
/// eta o epsilon as a dim A x dim H matrix.
Matrix convolution_unit(const FinDimHopf& from, const FinDimAlgebra& to);
/// Two-sided convolution inverse, solved as a linear system in the entries of g.
std::optional<Matrix> convolution_inverse(const Matrix& f, const FinDimHopf& from, const FinDimAlgebra& to);

/// T_N with q = zeta_N^{q_index}; basis x^i g^j at index i * N + j.
FinDimHopf build_taft(const CyclotomicField& field, int n, int q_index);
FinDimHopf build_group_algebra(const std::vector<int>& invariant_factors);

std::string taft_label(int i, int j, const char* x = "x", const char* g = "g");

}  // namespace hg
