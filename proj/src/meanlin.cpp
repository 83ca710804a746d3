#include "folnerlab/meanlin.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "folnerlab/error.hpp"
#include "spec_text.hpp"

namespace folnerlab::meanlin {

namespace {

constexpr double kPowerSlack = 1e-9;

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Eigen::Index numerical_rank(const Eigen::VectorXd& sigma) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double cut = kRankTolerance * sigma(0);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

// Null space of the vertically stacked members.
SubspaceBasis stacked_null_space(const std::vector<Matrix>& members, Eigen::Index d) {
  Matrix stacked(static_cast<Eigen::Index>(members.size()) * d, d);
  for (std::size_t i = 0; i < members.size(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = members[i];
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto r = numerical_rank(svd.singularValues());
  return {svd.matrixV().rightCols(d - r)};
}

// Column space of the horizontally stacked members.
SubspaceBasis stacked_column_space(const std::vector<Matrix>& members, Eigen::Index d) {
  Matrix stacked(d, static_cast<Eigen::Index>(members.size()) * d);
  for (std::size_t i = 0; i < members.size(); ++i) stacked.middleCols(static_cast<Eigen::Index>(i) * d, d) = members[i];
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullU);
  const auto r = numerical_rank(svd.singularValues());
  return {svd.matrixU().leftCols(r)};
}

double max_pairing(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dimension() == 0 || b.dimension() == 0) return 0.0;
  return (a.basis.transpose() * b.basis).cwiseAbs().maxCoeff();
}

void check_square(const Matrix& T) {
  if (T.rows() == 0 || T.rows() != T.cols()) throw ConfigError("operator must be a nonempty square matrix");
  if (!T.allFinite()) throw ConfigError("operator has non-finite entries");
}

// Projection onto span(K) along span(R), where [K R] must be a basis of R^d.
Matrix oblique_projection(const SubspaceBasis& K, const SubspaceBasis& R, Eigen::Index d) {
  if (static_cast<Eigen::Index>(K.dimension() + R.dimension()) != d)
    throw DecompositionFailure("fixed space and coboundary range have dimensions " + std::to_string(K.dimension()) +
                               " + " + std::to_string(R.dimension()) + " != " + std::to_string(d));
  if (K.dimension() == 0) return Matrix::Zero(d, d);
  if (R.dimension() == 0) return identity(d);
  Matrix M(d, d);
  M << K.basis, R.basis;
  Eigen::JacobiSVD<Matrix> svd(M);
  const double smallest = svd.singularValues()(d - 1);
  if (smallest <= kRankTolerance)
    throw DecompositionFailure("fixed space and coboundary range intersect nontrivially");
  Matrix D = Matrix::Zero(d, d);
  D.topLeftCorner(static_cast<Eigen::Index>(K.dimension()), static_cast<Eigen::Index>(K.dimension())).setIdentity();
  return M * D * M.inverse();
}

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) throw ConfigError("power bound beta must be finite and positive");
}

}  // namespace

OperatorFamily::OperatorFamily(std::vector<Matrix> m, double b) : members(std::move(m)), beta(b) {
  if (members.empty()) throw ConfigError("operator family is empty");
  check_beta(beta);
  for (const auto& T : members) {
    check_square(T);
    if (T.rows() != members.front().rows()) throw ConfigError("operator family mixes dimensions");
  }
}

OperatorFamily OperatorFamily::adjoint() const {
  std::vector<Matrix> out;
  for (const auto& T : members) out.push_back(T.transpose());
  return {std::move(out), beta};
}

OperatorFamily OperatorFamily::coboundaries() const {
  std::vector<Matrix> out;
  for (const auto& T : members) out.push_back(identity(T.rows()) - T);
  return {std::move(out), 1.0 + beta};
}

SubspaceBasis vanishing_space(const OperatorFamily& family) {
  return stacked_null_space(family.members, family.dimension());
}

SubspaceBasis range_span(const OperatorFamily& family) {
  return stacked_column_space(family.members, family.dimension());
}

DualityReport duality_check(const OperatorFamily& family) {
  const auto adj = family.adjoint();
  const auto V = vanishing_space(family);
  const auto Rstar = range_span(adj);
  const auto R = range_span(family);
  const auto Vstar = vanishing_space(adj);
  DualityReport out;
  out.dimension = static_cast<std::size_t>(family.dimension());
  out.vanishing = V.dimension();
  out.range_adjoint = Rstar.dimension();
  out.range = R.dimension();
  out.vanishing_adjoint = Vstar.dimension();
  out.dimensions_consistent =
      out.vanishing + out.range_adjoint == out.dimension && out.range + out.vanishing_adjoint == out.dimension;
  out.max_defect = std::max(max_pairing(V, Rstar), max_pairing(R, Vstar));
  return out;
}

double operator_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

Matrix cesaro_average(const Matrix& T, std::size_t n, double beta) {
  check_square(T);
  check_beta(beta);
  if (n < 1) throw ConfigError("Cesàro average needs n >= 1");
  const auto d = T.rows();
  Matrix power = identity(d);
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    const double norm = operator_norm(power);
    if (norm > beta * (1.0 + kPowerSlack))
      throw PowerBoundViolation("||T^" + std::to_string(k) + "|| = " + std::to_string(norm) + " exceeds beta = " +
                                std::to_string(beta));
    sum += power;
    power = power * T;
  }
  return sum / static_cast<double>(n);
}

Matrix fixed_projection(const Matrix& T, double beta) {
  check_square(T);
  check_beta(beta);
  const auto d = T.rows();
  const OperatorFamily cob({identity(d) - T}, 1.0 + beta);
  const Matrix P = oblique_projection(vanishing_space(cob), range_span(cob), d);
  Matrix power = T;
  for (int k = 1; k <= 64; ++k) {
    if (operator_norm(power) > beta * (1.0 + kPowerSlack))
      throw PowerBoundViolation("||T^" + std::to_string(k) + "|| exceeds beta = " + std::to_string(beta));
    power = power * T;
  }
  const double pn = operator_norm(P);
  if (pn > beta * (1.0 + kPowerSlack))
    throw PowerBoundViolation("||P|| = " + std::to_string(pn) + " exceeds beta = " + std::to_string(beta));
  return P;
}

Matrix fixed_projection(const OperatorFamily& family) {
  const auto cob = family.coboundaries();
  const auto d = family.dimension();
  const Matrix P = oblique_projection(vanishing_space(cob), range_span(cob), d);
  const double pn = operator_norm(P);
  if (pn > family.beta * (1.0 + kPowerSlack))
    throw PowerBoundViolation("||P|| = " + std::to_string(pn) + " exceeds beta = " + std::to_string(family.beta));
  return P;
}

CoxReport cox_check(const std::vector<Matrix>& projections, const std::vector<OperatorFamily>& families) {
  if (projections.empty()) throw ConfigError("Cox check needs at least one projection");
  const auto d = projections.front().rows();
  Matrix prod = identity(d);
  for (const auto& P : projections) {
    if (P.rows() != d || P.cols() != d) throw ConfigError("projections have mismatched dimensions");
    prod = prod * P;
  }
  CoxReport out;
  out.norm = operator_norm(identity(d) - prod);
  out.applicable = out.norm < 1.0 - kPowerSlack;
  if (!out.applicable) {
    out.conclusion = "not applicable";
    return out;
  }
  for (const auto& fam : families) {
    if (fam.dimension() != d) throw ConfigError("family dimension does not match the projections");
    for (const auto& T : fam.members)
      if ((T - identity(d)).cwiseAbs().maxCoeff() > 1e-10) out.consistent = false;
  }
  out.conclusion = out.consistent ? "consistent" : "inconsistent";
  return out;
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto text = detail::trim_copy(line);
    if (text.empty() || text.front() == '#') continue;
    std::vector<double> row;
    std::stringstream cells(text);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(detail::parse_double(detail::trim_copy(cell), "matrix CSV"));
    if (!rows.empty() && row.size() != rows.front().size()) throw ConfigError("ragged matrix CSV");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty matrix CSV");
  Matrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return A;
}

void write_matrix_csv(std::ostream& out, const Matrix& A) {
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) out << (j ? "," : "") << A(i, j);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace folnerlab::meanlin
