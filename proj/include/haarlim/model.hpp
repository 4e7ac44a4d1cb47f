#pragma once
// The finite-rank random-matrix models: full N x N assembly (for
// cross-validation) and the exact low-dimensional reduced form whose spectrum
// is the model's nontrivial eigenvalues.
//
// Reduction: in a basis whose first blocks are (e_1..e_r, u_1..u_s), both
// letters become block matrices whose third block-row is zero.  The top-left
// corner of any product of such matrices is the product of the corners, so
// evaluating the polynomial directly on the corner blocks reproduces the
// nonzero spectrum exactly at finite N; everything else is a trivial zero.

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "haarlim/assignment.hpp"
#include "haarlim/ncpoly.hpp"
#include "haarlim/randmat.hpp"

namespace haarlim {

enum class ModelKind {
  GeneralTwoVar,    // P(A U^*, U B)
  Conjugation,      // P(A, U B U^*)
  SumConjugation,   // A + U B U^*
  Rotation,         // U A + A U^*
};

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::GeneralTwoVar: return "general";
    case ModelKind::Conjugation: return "conjugation";
    case ModelKind::SumConjugation: return "sum_conjugation";
    case ModelKind::Rotation: return "rotation";
  }
  return "?";
}

struct ModelSpec {
  ModelKind kind = ModelKind::SumConjugation;
  NCPolynomial poly;             // used by GeneralTwoVar and Conjugation only
  std::vector<Complex> alphas;   // diagonal of the rank-r part of A
  std::vector<Complex> betas;    // diagonal of the rank-s part of B; empty for Rotation
  int n = 0;                     // full model dimension N

  int r() const { return static_cast<int>(alphas.size()); }
  int s() const { return static_cast<int>(betas.size()); }
  bool uses_poly() const {
    return kind == ModelKind::GeneralTwoVar || kind == ModelKind::Conjugation;
  }
  // Corner of U feeding the reduced build: r x r for GeneralTwoVar/Rotation,
  // r x s for Conjugation/SumConjugation.
  int uhat_rows() const { return r(); }
  int uhat_cols() const {
    return (kind == ModelKind::GeneralTwoVar || kind == ModelKind::Rotation) ? r() : s();
  }
  int reduced_dim() const {
    return (kind == ModelKind::GeneralTwoVar || kind == ModelKind::Rotation) ? 2 * r()
                                                                             : r() + s();
  }

  void validate() const {
    if (r() < 1) throw std::invalid_argument("model: need at least one alpha");
    switch (kind) {
      case ModelKind::Rotation:
        if (s() != 0) throw std::invalid_argument("rotation model takes no betas");
        if (!poly.is_zero()) throw std::invalid_argument("rotation model takes no polynomial");
        break;
      case ModelKind::SumConjugation:
        if (s() < 1) throw std::invalid_argument("model: need at least one beta");
        if (!poly.is_zero())
          throw std::invalid_argument("sum_conjugation model takes no polynomial");
        break;
      case ModelKind::Conjugation:
        if (s() < 1) throw std::invalid_argument("model: need at least one beta");
        if (poly.is_zero()) throw std::invalid_argument("conjugation model needs a polynomial");
        break;
      case ModelKind::GeneralTwoVar:
        if (s() != r())
          throw std::invalid_argument(
              "general model needs equally many alphas and betas (pad with zeros)");
        if (poly.is_zero()) throw std::invalid_argument("general model needs a polynomial");
        break;
    }
    if (kind == ModelKind::Conjugation || kind == ModelKind::SumConjugation) {
      for (const Complex& a : alphas)
        if (a == Complex(0.0, 0.0)) throw std::invalid_argument("alphas must be nonzero");
      for (const Complex& b : betas)
        if (b == Complex(0.0, 0.0)) throw std::invalid_argument("betas must be nonzero");
    }
    int rs = std::max(r(), std::max(s(), 1));
    if (n < 2 * rs + 2)
      throw std::invalid_argument("model: N must be >= 2*max(r,s) + 2");
  }
};

// Reduced representation: total() = m_part + v_part carries the nontrivial
// spectrum; m_part is the corner at U-hat = 0, v_part vanishes with U-hat.
struct ReducedMatrix {
  int dim = 0;
  ComplexMatrix m_part;
  ComplexMatrix v_part;
  ComplexMatrix total() const { return m_part + v_part; }
};

namespace detail {

inline ComplexMatrix diag_of(const std::vector<Complex>& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline ComplexMatrix padded_diag(const std::vector<Complex>& d, int n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace detail

inline ComplexMatrix build_full(const ModelSpec& spec, const ComplexMatrix& u) {
  spec.validate();
  if (u.rows() != spec.n || u.cols() != spec.n)
    throw std::invalid_argument("build_full: U must be N x N");
  const ComplexMatrix a = detail::padded_diag(spec.alphas, spec.n);
  switch (spec.kind) {
    case ModelKind::Rotation:
      return u * a + a * u.adjoint();
    case ModelKind::SumConjugation: {
      const ComplexMatrix b = detail::padded_diag(spec.betas, spec.n);
      return a + u * b * u.adjoint();
    }
    case ModelKind::Conjugation: {
      const ComplexMatrix b = detail::padded_diag(spec.betas, spec.n);
      return eval_matrix(spec.poly, a, u * b * u.adjoint());
    }
    case ModelKind::GeneralTwoVar: {
      const ComplexMatrix b = detail::padded_diag(spec.betas, spec.n);
      return eval_matrix(spec.poly, a * u.adjoint(), u * b);
    }
  }
  throw std::logic_error("unreachable");
}

inline ReducedMatrix build_reduced(const ModelSpec& spec, const ComplexMatrix& u_hat) {
  spec.validate();
  if (u_hat.rows() != spec.uhat_rows() || u_hat.cols() != spec.uhat_cols())
    throw std::invalid_argument("build_reduced: U-hat has wrong dimensions");
  const int r = spec.r(), s = spec.s(), d = spec.reduced_dim();
  const ComplexMatrix ah = detail::diag_of(spec.alphas);
  ReducedMatrix out;
  out.dim = d;
  switch (spec.kind) {
    case ModelKind::Rotation: {
      // [[A U*, A], [A, A U]] with m_part the U-free antidiagonal.
      ComplexMatrix t = ComplexMatrix::Zero(d, d);
      t.topLeftCorner(r, r) = ah * u_hat.adjoint();
      t.topRightCorner(r, r) = ah;
      t.bottomLeftCorner(r, r) = ah;
      t.bottomRightCorner(r, r) = ah * u_hat;
      out.m_part = ComplexMatrix::Zero(d, d);
      out.m_part.topRightCorner(r, r) = ah;
      out.m_part.bottomLeftCorner(r, r) = ah;
      out.v_part = t - out.m_part;
      return out;
    }
    case ModelKind::SumConjugation: {
      const ComplexMatrix bh = detail::diag_of(spec.betas);
      ComplexMatrix t = ComplexMatrix::Zero(d, d);
      t.topLeftCorner(r, r) = ah;
      t.topRightCorner(r, s) = ah * u_hat;
      t.bottomLeftCorner(s, r) = bh * u_hat.adjoint();
      t.bottomRightCorner(s, s) = bh;
      out.m_part = ComplexMatrix::Zero(d, d);
      out.m_part.topLeftCorner(r, r) = ah;
      out.m_part.bottomRightCorner(s, s) = bh;
      out.v_part = t - out.m_part;
      return out;
    }
    case ModelKind::Conjugation: {
      // Corner representations of the two letters; the polynomial evaluated
      // on them is exact because the discarded block-rows are zero.
      const ComplexMatrix bh = detail::diag_of(spec.betas);
      ComplexMatrix ac = ComplexMatrix::Zero(d, d), bc = ComplexMatrix::Zero(d, d);
      ac.topLeftCorner(r, r) = ah;
      ac.block(0, r, r, s) = ah * u_hat;
      bc.block(r, 0, s, r) = bh * u_hat.adjoint();
      bc.bottomRightCorner(s, s) = bh;
      ComplexMatrix ac0 = ComplexMatrix::Zero(d, d), bc0 = ComplexMatrix::Zero(d, d);
      ac0.topLeftCorner(r, r) = ah;
      bc0.bottomRightCorner(s, s) = bh;
      out.m_part = eval_matrix(spec.poly, ac0, bc0);
      out.v_part = eval_matrix(spec.poly, ac, bc) - out.m_part;
      return out;
    }
    case ModelKind::GeneralTwoVar: {
      const ComplexMatrix bh = detail::diag_of(spec.betas);
      ComplexMatrix ac = ComplexMatrix::Zero(d, d), bc = ComplexMatrix::Zero(d, d);
      ac.topLeftCorner(r, r) = ah * u_hat.adjoint();
      ac.topRightCorner(r, r) = ah;
      bc.bottomLeftCorner(r, r) = bh;
      bc.bottomRightCorner(r, r) = bh * u_hat;
      ComplexMatrix ac0 = ComplexMatrix::Zero(d, d), bc0 = ComplexMatrix::Zero(d, d);
      ac0.topRightCorner(r, r) = ah;
      bc0.bottomLeftCorner(r, r) = bh;
      out.m_part = eval_matrix(spec.poly, ac0, bc0);
      out.v_part = eval_matrix(spec.poly, ac, bc) - out.m_part;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

inline std::vector<Complex> eig_unordered(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<Complex> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

// Eigenvalues of the reduced matrix, from the corner of U alone.
inline std::vector<Complex> nontrivial_eigenvalues_reduced(const ModelSpec& spec,
                                                           const ComplexMatrix& u_hat) {
  return eig_unordered(build_reduced(spec, u_hat).total());
}

// Same, taking the full N x N unitary and truncating internally.
inline std::vector<Complex> nontrivial_eigenvalues(const ModelSpec& spec,
                                                   const ComplexMatrix& u) {
  if (u.rows() != spec.n || u.cols() != spec.n)
    throw std::invalid_argument("nontrivial_eigenvalues: U must be N x N");
  return nontrivial_eigenvalues_reduced(spec,
                                        truncate(u, spec.uhat_rows(), spec.uhat_cols()));
}

// Full-spectrum cross-check: eig(full N x N model) must equal
// {reduced spectrum} + {0 with multiplicity N - reduced_dim}, matched by
// optimal assignment within tol.
inline bool spectrum_consistency_check(const ModelSpec& spec, const ComplexMatrix& u,
                                       double tol, std::string* diagnostics = nullptr) {
  spec.validate();
  if (spec.n > 200)
    throw std::invalid_argument("spectrum_consistency_check: use N <= 200 (full eigensolve)");
  std::vector<Complex> full = eig_unordered(build_full(spec, u));
  std::vector<Complex> expected = nontrivial_eigenvalues(spec, u);
  expected.resize(spec.n, Complex(0.0, 0.0));  // trivial zeros

  Eigen::MatrixXd cost(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) cost(i, j) = std::abs(full[i] - expected[j]);
  std::vector<int> col_of = min_cost_assignment(cost);
  double worst = 0.0;
  for (int i = 0; i < spec.n; ++i) worst = std::max(worst, cost(i, col_of[i]));
  if (diagnostics) {
    std::ostringstream os;
    os << "max matched eigenvalue distance " << worst << " (tol " << tol << ", N=" << spec.n
       << ", reduced dim " << spec.reduced_dim() << ")";
    *diagnostics = os.str();
  }
  return worst <= tol;
}

}  // namespace haarlim
