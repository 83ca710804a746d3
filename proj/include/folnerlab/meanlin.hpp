#pragma once

// Mean-ergodic linear algebra on R^d: vanishing spaces and range closures of
// operator families, Cesàro averages of power-bounded matrices, the fixed
// vector projection and the Cox identity criterion.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace folnerlab::meanlin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value threshold for every rank decision.
inline constexpr double kRankTolerance = 1e-10;

struct OperatorFamily {
  std::vector<Matrix> members;
  double beta = 1.0;  // uniform bound on operator norms, supplied by the caller

  /// Validates that the family is nonempty, square, of one dimension, finite.
  OperatorFamily(std::vector<Matrix> members, double beta = 1.0);

  Eigen::Index dimension() const { return members.front().rows(); }
  OperatorFamily adjoint() const;
  /// {I - T : T in family}.
  OperatorFamily coboundaries() const;
};

struct SubspaceBasis {
  Matrix basis;  // d x k, orthonormal columns
  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
  Eigen::Index ambient() const { return basis.rows(); }
  Matrix projector() const { return basis * basis.transpose(); }
};

/// Intersection of the kernels of all members.
SubspaceBasis vanishing_space(const OperatorFamily& family);
/// Span of the ranges of all members.
SubspaceBasis range_span(const OperatorFamily& family);

struct DualityReport {
  std::size_t dimension = 0;
  std::size_t vanishing = 0;          // dim V(T)
  std::size_t range_adjoint = 0;      // dim R(T*)
  std::size_t range = 0;              // dim R(T)
  std::size_t vanishing_adjoint = 0;  // dim V(T*)
  bool dimensions_consistent = false;
  double max_defect = 0.0;  // max |<v, r>| across both complementary pairs
};

DualityReport duality_check(const OperatorFamily& family);

double operator_norm(const Matrix& A);

/// (1/n) sum_{k<n} T^k. Throws PowerBoundViolation when some ||T^k|| with
/// k < n exceeds beta (1 + 1e-9).
Matrix cesaro_average(const Matrix& T, std::size_t n, double beta = 1.0);

/// Projection onto ker(I - T) along range(I - T). Throws DecompositionFailure
/// when the two subspaces do not split R^d and PowerBoundViolation when ||P||
/// or a checked power of T exceeds beta.
Matrix fixed_projection(const Matrix& T, double beta = 1.0);
/// Projection onto the common fixed space along the span of all ranges of
/// I - T over the family.
Matrix fixed_projection(const OperatorFamily& family);

struct CoxReport {
  double norm = 0.0;  // ||I - P_1 ... P_l||
  bool applicable = false;
  bool consistent = true;  // when applicable: every member equals I to 1e-10
  std::string conclusion;  // "consistent", "inconsistent" or "not applicable"
};

CoxReport cox_check(const std::vector<Matrix>& projections, const std::vector<OperatorFamily>& families);

/// Dense CSV, one row per line.
Matrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Matrix& A);

}  // namespace folnerlab::meanlin
