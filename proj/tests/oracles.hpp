#pragma once

// Reference computations that share no code with the library: brute-force
// set arithmetic on std::set, closed forms and eigen-solver projections.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Tuple = std::vector<std::int64_t>;
using Set = std::set<Tuple>;

enum class Law { abelian, heisenberg };

inline Tuple mul(Law law, const Tuple& a, const Tuple& b) {
  Tuple c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  if (law == Law::heisenberg) c[2] += a[0] * b[1];
  return c;
}

inline Tuple inv(Law law, const Tuple& a) {
  if (law == Law::heisenberg) return {-a[0], -a[1], a[0] * a[1] - a[2]};
  Tuple c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline Set products(Law law, const Set& A, const Set& B) {
  Set out;
  for (const auto& a : A)
    for (const auto& b : B) out.insert(mul(law, a, b));
  return out;
}

inline Set inverses(Law law, const Set& A) {
  Set out;
  for (const auto& a : A) out.insert(inv(law, a));
  return out;
}

inline std::size_t sym_diff_size(const Set& A, const Set& B) {
  std::size_t n = 0;
  for (const auto& a : A) n += B.count(a) ? 0 : 1;
  for (const auto& b : B) n += A.count(b) ? 0 : 1;
  return n;
}

inline Set djr(std::int64_t n) {
  Set out;
  for (std::int64_t k = n * n; k <= n * n + n; ++k) out.insert({k});
  return out;
}

/// |U_{k<n} F_k^{-1} F_n| for F_k = {k^2, ..., k^2 + k} in Z.
inline std::size_t djr_shulman_union(std::int64_t n) {
  Set acc;
  for (std::int64_t k = 1; k < n; ++k) {
    const auto part = products(Law::abelian, inverses(Law::abelian, djr(k)), djr(n));
    acc.insert(part.begin(), part.end());
  }
  return acc.size();
}

/// (1/n) sum_{t<n} cos(2 pi (x + t alpha)) via the geometric sum.
inline double dirichlet_cos(double x, double alpha, std::int64_t n) {
  using C = std::complex<double>;
  const double tau = 2.0 * std::numbers::pi;
  const C q = std::polar(1.0, tau * alpha);
  const C qn = std::polar(1.0, tau * std::fmod(alpha * static_cast<double>(n), 1.0));
  const C s = (qn - 1.0) / (static_cast<double>(n) * (q - 1.0));
  return (std::polar(1.0, tau * x) * s).real();
}

/// Khintchine density of {g : |E cap (E - g alpha)| > a^2 - eps} for an arc
/// E = [0, a) under an equidistributed rotation.
inline double khintchine_arc_density(double a, double eps) { return 2.0 * (a - a * a + eps); }

/// Midpoint rule for int_0^1 f(t) dt.
template <class F>
double quadrature(F&& f, int m = 20000) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += f((i + 0.5) / m);
  return s / m;
}

/// Orthogonal projection onto the eigenvalue-1 eigenspace of an orthogonal
/// matrix, from a self-adjoint eigensolve of (I - T)^T (I - T).
inline Eigen::MatrixXd fixed_space_projector(const Eigen::MatrixXd& T) {
  const auto d = T.rows();
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(d, d) - T;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (es.eigenvalues()(i) < 1e-9) P += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  return P;
}

/// min |1 - lambda| over eigenvalues lambda != 1.
inline double spectral_gap(const Eigen::MatrixXd& T) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(T);
  double gap = 2.0;
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    const double dist = std::abs(std::complex<double>(1.0, 0.0) - es.eigenvalues()(i));
    if (dist > 1e-9) gap = std::min(gap, dist);
  }
  return gap;
}

}  // namespace oracle
