#pragma once
// Limiting fluctuation laws: scaled Gaussians for the rotation model,
// exponential mixtures for conjugation-type models with simple limits, and
// the spectral / shared-eigenvalue / equal-pair laws of the multiplicity
// regimes of the sum model.  Every law carries an oracle sampler; closed
// densities and CDFs are provided where they exist.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "haarlim/model.hpp"
#include "haarlim/ncpoly.hpp"
#include "haarlim/perturb.hpp"
#include "haarlim/randmat.hpp"

namespace haarlim {

// ---------------------------------------------------------------------------
// Law variants

// Law of c * x with x standard real normal.
struct GaussianScaled {
  Complex c;
};

// Law of sum_j coeffs[j] * E_j with E_j iid standard exponential.  The
// coefficients must be pairwise distinct and nonzero for the closed-form
// density; repeated coefficients are represented via MatrixSpectral instead.
struct ExpMixture {
  std::vector<double> coeffs;
};

// Law of the rank-th largest eigenvalue of Z diag(gamma) Z^*, where Z is an
// m x s standard complex Ginibre block.  rank is 1-based (1 = largest).
struct MatrixSpectral {
  std::vector<double> gamma;
  int m = 1;
  int rank = 1;
};

// Components of the shared-eigenvalue limit vector (zeta, xi1, xi3, xi2):
// zeta and xi3 live at scale 1/N, xi1 and xi2 at scale 1/sqrt(N).
enum class SharedComponent { Zeta, Xi1, Xi3, Xi2 };

struct SharedEigen {
  double alpha1 = 0.0;  // the shared eigenvalue
  double beta2 = 0.0;   // the remaining simple eigenvalue
  SharedComponent component = SharedComponent::Zeta;
};

// Components of the equal-pairs limit (|alpha z|, -|alpha z|) for a cluster
// where one diagonal entry of A coincides with one of B.
enum class PairComponent { Top, Bottom };

struct EqualPairs {
  double alpha = 0.0;
  PairComponent component = PairComponent::Top;
};

using FluctuationLaw =
    std::variant<GaussianScaled, ExpMixture, MatrixSpectral, SharedEigen, EqualPairs>;

// Which real channel of a complex-valued law is being evaluated.
enum class Channel { Re, Im };

// ---------------------------------------------------------------------------
// Law constructors

inline FluctuationLaw gaussian_law(Complex alpha) {
  if (alpha == Complex(0.0, 0.0))
    throw std::invalid_argument("gaussian_law: zero coefficient gives a degenerate law");
  return GaussianScaled{alpha / std::sqrt(2.0)};
}

namespace detail {

inline void validate_mixture_coeffs(const std::vector<double>& coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("exponential mixture: need at least one coefficient");
  double cmax = 0.0;
  for (double c : coeffs) {
    if (c == 0.0)
      throw std::invalid_argument("exponential mixture: zero coefficient (drop it instead)");
    cmax = std::max(cmax, std::abs(c));
  }
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t k = j + 1; k < coeffs.size(); ++k)
      if (std::abs(coeffs[j] - coeffs[k]) < 1e-9 * cmax)
        throw std::invalid_argument(
            "exponential mixture: near-coincident coefficients; the partial-fraction "
            "form is unstable -- sample the law and compare with Monte Carlo instead");
}

// Partial-fraction weights A_j = prod_{k != j} c_j / (c_j - c_k).
inline std::vector<double> mixture_weights(const std::vector<double>& coeffs) {
  std::vector<double> w(coeffs.size(), 1.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (k != j) w[j] *= coeffs[j] / (coeffs[j] - coeffs[k]);
  return w;
}

}  // namespace detail

// Builds an ExpMixture law, dropping zero coefficients (a zero-scaled
// exponential is a point mass at the origin).  Throws if the surviving
// coefficients coincide; represent those laws with MatrixSpectral (m = 1).
inline FluctuationLaw expmixture_law(std::vector<double> coeffs) {
  double cmax = 0.0;
  for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
  coeffs.erase(std::remove_if(coeffs.begin(), coeffs.end(),
                              [cmax](double c) {
                                return std::abs(c) <= 1e-12 * std::max(1.0, cmax);
                              }),
               coeffs.end());
  detail::validate_mixture_coeffs(coeffs);
  return ExpMixture{std::move(coeffs)};
}

// ---------------------------------------------------------------------------
// Mixture coefficients for conjugation-type models with simple limits

enum class Side { A, B };

// Coefficients of the exponential mixture describing the fluctuation of one
// limiting eigenvalue of P(A, U B U^*).  For an A-side index i the j-th
// coefficient weights |u_{i,j}|^2; for a B-side index j the i-th weights
// |u_{i,j}|^2.  Any remainder bucket of the decomposition (words of length
// >= 4 or mixed forms) contributes only at higher order and is ignored.
inline std::vector<double> mixture_coefficients(const NCPolynomial& p,
                                                const std::vector<Complex>& alphas,
                                                const std::vector<Complex>& betas,
                                                Side side, int index) {
  const int r = static_cast<int>(alphas.size());
  const int s = static_cast<int>(betas.size());
  if (r < 1 || s < 1)
    throw std::invalid_argument("mixture_coefficients: need nonempty alphas and betas");
  if (side == Side::A && (index < 0 || index >= r))
    throw std::out_of_range("mixture_coefficients: A-side index out of range");
  if (side == Side::B && (index < 0 || index >= s))
    throw std::out_of_range("mixture_coefficients: B-side index out of range");

  const Decomposition d = decompose(p);
  std::vector<Complex> p1(r), q1(s);
  for (int i = 0; i < r; ++i) p1[i] = eval_univariate(d.p1, alphas[i]);
  for (int j = 0; j < s; ++j) q1[j] = eval_univariate(d.q1, betas[j]);

  std::vector<Complex> all = p1;
  all.insert(all.end(), q1.begin(), q1.end());
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (std::abs(all[a] - all[b]) <= kLimitClusterTol)
        throw std::invalid_argument(
            "mixture_coefficients: coincident limiting eigenvalues (multiplicity "
            "regime); the simple-limit mixture formula does not apply");

  const int count = (side == Side::A) ? s : r;
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const int i = (side == Side::A) ? index : k;
    const int j = (side == Side::A) ? k : index;
    const Complex a = alphas[i], b = betas[j];
    const Complex p2 = eval_component(d, Component::P2, a, b);
    const Complex q2 = eval_component(d, Component::Q2, a, b);
    const Complex cross = (p1[i] + p2) * (q1[j] + q2) / (p1[i] - q1[j]);
    Complex val;
    if (side == Side::A) {
      val = p2 + eval_component(d, Component::P3, a, b) + cross;
    } else {
      val = q2 + eval_component(d, Component::Q3, a, b) - cross;
    }
    if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val.real())))
      throw std::invalid_argument(
          "mixture_coefficients: coefficient has a nonvanishing imaginary part; "
          "the exponential-mixture law is defined for real coefficients");
    out[k] = val.real();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponential mixture density / CDF by partial fractions

inline double expmixture_density(const std::vector<double>& coeffs, double x) {
  detail::validate_mixture_coeffs(coeffs);
  const std::vector<double> w = detail::mixture_weights(coeffs);
  double f = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double c = coeffs[j];
    if (x * (c > 0 ? 1.0 : -1.0) >= 0.0) f += w[j] / std::abs(c) * std::exp(-x / c);
  }
  return f;
}

inline double expmixture_cdf(const std::vector<double>& coeffs, double x) {
  detail::validate_mixture_coeffs(coeffs);
  const std::vector<double> w = detail::mixture_weights(coeffs);
  double acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double c = coeffs[j];
    if (c > 0.0) {
      if (x >= 0.0) acc += w[j] * (1.0 - std::exp(-x / c));
    } else {
      acc += (x <= 0.0) ? w[j] * std::exp(-x / c) : w[j];
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Multiplicity-regime spectral law

// Diagonal of the coupling matrix for a repeated limit alpha_prime against
// the full beta list: gamma_j = alpha' beta_j / (alpha' - beta_j).  The
// mirrored B-side matrix is obtained by calling this with the repeated beta
// in the first slot and the alpha list second.
inline std::vector<double> gamma_matrix(double alpha_prime,
                                        const std::vector<double>& betas) {
  if (betas.empty()) throw std::invalid_argument("gamma_matrix: empty beta list");
  std::vector<double> out(betas.size());
  for (std::size_t j = 0; j < betas.size(); ++j) {
    if (std::abs(alpha_prime - betas[j]) <= kLimitClusterTol)
      throw std::invalid_argument(
          "gamma_matrix: alpha' coincides with a beta (shared eigenvalue regime); "
          "use the shared-eigenvalue law instead");
    out[j] = alpha_prime * betas[j] / (alpha_prime - betas[j]);
  }
  return out;
}

// One draw of the eigenvalues of Z diag(gamma) Z^* (Hermitian since gamma is
// real), Z an m x s standard complex Ginibre block, in decreasing order.
inline std::vector<double> sample_matrix_spectral(const std::vector<double>& gamma, int m,
                                                  RngStream& rng) {
  if (m < 1) throw std::invalid_argument("sample_matrix_spectral: need m >= 1");
  if (gamma.empty()) throw std::invalid_argument("sample_matrix_spectral: empty gamma");
  const int s = static_cast<int>(gamma.size());
  const ComplexMatrix z = ginibre(m, s, rng);
  ComplexMatrix weighted = z;
  for (int j = 0; j < s; ++j) weighted.col(j) *= gamma[j];
  const ComplexMatrix herm = weighted * z.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sample_matrix_spectral: eigensolver failed");
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = es.eigenvalues()(m - 1 - i);
  return out;
}

// ---------------------------------------------------------------------------
// Shared-eigenvalue and equal-pairs samplers

// One draw of the dependent limit vector (zeta, xi1, xi3, xi2) for the
// configuration where the value alpha1 is shared by two entries of A and one
// of B, and beta2 is the remaining simple entry of B.  All four components
// are functions of a single 2x2 Gaussian block.
inline std::array<double, 4> sample_shared_eigen(double alpha1, double beta2,
                                                 RngStream& rng) {
  if (alpha1 == 0.0 || beta2 == 0.0)
    throw std::invalid_argument("sample_shared_eigen: eigenvalues must be nonzero");
  if (std::abs(alpha1 - beta2) <= kLimitClusterTol)
    throw std::invalid_argument("sample_shared_eigen: alpha1 must differ from beta2");
  const ComplexMatrix z = ginibre(2, 2, rng);
  const double g_left = std::norm(z(0, 0)) + std::norm(z(1, 0));
  const double g_right = std::norm(z(0, 1)) + std::norm(z(1, 1));
  if (g_left == 0.0)
    throw std::runtime_error("sample_shared_eigen: degenerate Gaussian draw");
  const double det2 = std::norm(z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0));
  const double zeta = alpha1 * beta2 / (beta2 - alpha1) * g_right;
  const double xi1 = std::abs(alpha1) * std::sqrt(g_left);
  const double xi3 = -alpha1 * beta2 * det2 / ((beta2 - alpha1) * g_left);
  return {zeta, xi1, xi3, -xi1};
}

// One draw of (|alpha2 z22|, -|alpha2 z22|, |alpha1 z11|, -|alpha1 z11|) for
// the configuration alpha1 = beta1, alpha2 = beta2 with distinct pairs.
inline std::array<double, 4> sample_equal_pairs(double alpha1, double alpha2,
                                                RngStream& rng) {
  if (alpha1 == 0.0 || alpha2 == 0.0)
    throw std::invalid_argument("sample_equal_pairs: eigenvalues must be nonzero");
  if (std::abs(alpha1 - alpha2) <= kLimitClusterTol)
    throw std::invalid_argument("sample_equal_pairs: the two pair values must differ");
  const Complex z11 = rng.complex_gaussian();
  const Complex z22 = rng.complex_gaussian();
  const double top = std::abs(alpha2) * std::abs(z22);
  const double bottom = std::abs(alpha1) * std::abs(z11);
  return {top, -top, bottom, -bottom};
}

// ---------------------------------------------------------------------------
// Characteristic polynomial of the reduced sum model by minors

namespace detail {

inline Complex subset_minor(const ComplexMatrix& u, unsigned mask_rows,
                            unsigned mask_cols) {
  std::vector<int> rows, cols;
  for (int i = 0; i < u.rows(); ++i)
    if (mask_rows & (1u << i)) rows.push_back(i);
  for (int j = 0; j < u.cols(); ++j)
    if (mask_cols & (1u << j)) cols.push_back(j);
  if (rows.size() != cols.size())
    throw std::logic_error("subset_minor: mismatched subset sizes");
  const int n = static_cast<int>(rows.size());
  if (n == 0) return Complex(1.0, 0.0);
  ComplexMatrix sub(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) sub(a, b) = u(rows[a], cols[b]);
  return sub.determinant();
}

}  // namespace detail

// Evaluates the characteristic polynomial of the reduced sum model at lambda
// through the minor expansion over index subsets of equal cardinality; the
// empty minor counts as 1.  Exact at finite N.
inline Complex charpoly_minors(const std::vector<Complex>& alphas,
                               const std::vector<Complex>& betas,
                               const ComplexMatrix& u_hat, Complex lambda) {
  const int r = static_cast<int>(alphas.size());
  const int s = static_cast<int>(betas.size());
  if (u_hat.rows() != r || u_hat.cols() != s)
    throw std::invalid_argument("charpoly_minors: corner matrix must be r x s");
  if (r > 16 || s > 16)
    throw std::invalid_argument("charpoly_minors: subset enumeration needs r, s <= 16");

  // Per-mask products over included (plain value) and excluded (lambda-shifted)
  // indices, for each side.
  const auto side_products = [lambda](const std::vector<Complex>& vals) {
    const int n = static_cast<int>(vals.size());
    std::vector<Complex> in(1u << n), out(1u << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Complex pin(1.0, 0.0), pout(1.0, 0.0);
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i))
          pin *= vals[i];
        else
          pout *= lambda - vals[i];
      }
      in[mask] = pin;
      out[mask] = pout;
    }
    return std::make_pair(in, out);
  };
  const auto [a_in, a_out] = side_products(alphas);
  const auto [b_in, b_out] = side_products(betas);

  Complex acc(0.0, 0.0);
  for (unsigned mi = 0; mi < (1u << r); ++mi) {
    const int n = __builtin_popcount(mi);
    if (n > s) continue;
    for (unsigned mj = 0; mj < (1u << s); ++mj) {
      if (__builtin_popcount(mj) != n) continue;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const Complex minor = detail::subset_minor(u_hat, mi, mj);
      acc += sign * a_out[mi] * b_out[mj] * a_in[mi] * b_in[mj] * std::norm(minor);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Generic law interface: sampling, density, CDF

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace detail {

// CDF of the Gamma(2,1) distribution.
inline double gamma2_cdf(double t) { return t <= 0.0 ? 0.0 : 1.0 - std::exp(-t) * (1.0 + t); }

inline double channel_of(Complex c, Channel ch) {
  return ch == Channel::Re ? c.real() : c.imag();
}

inline double shared_scale(const SharedEigen& l) {
  return l.alpha1 * l.beta2 / (l.beta2 - l.alpha1);  // the coefficient of zeta
}

}  // namespace detail

// One draw from the law.  Real-valued laws return a real; GaussianScaled
// returns the full complex value c * x.
inline Complex law_sample(const FluctuationLaw& law, RngStream& rng) {
  if (const auto* g = std::get_if<GaussianScaled>(&law)) return g->c * rng.gaussian();
  if (const auto* e = std::get_if<ExpMixture>(&law)) {
    double acc = 0.0;
    for (double c : e->coeffs) acc += c * -std::log1p(-rng.uniform());
    return acc;
  }
  if (const auto* m = std::get_if<MatrixSpectral>(&law)) {
    if (m->rank < 1 || m->rank > m->m)
      throw std::invalid_argument("MatrixSpectral: rank must lie in [1, m]");
    return sample_matrix_spectral(m->gamma, m->m, rng)[m->rank - 1];
  }
  if (const auto* sh = std::get_if<SharedEigen>(&law)) {
    const std::array<double, 4> v = sample_shared_eigen(sh->alpha1, sh->beta2, rng);
    return v[static_cast<int>(sh->component)];
  }
  const auto& p = std::get<EqualPairs>(law);
  if (p.alpha == 0.0) throw std::invalid_argument("EqualPairs: alpha must be nonzero");
  const double mag = std::abs(p.alpha) * std::abs(rng.complex_gaussian());
  return p.component == PairComponent::Top ? mag : -mag;
}

inline bool law_has_cdf(const FluctuationLaw& law, Channel ch = Channel::Re) {
  if (const auto* g = std::get_if<GaussianScaled>(&law))
    return detail::channel_of(g->c, ch) != 0.0;
  if (ch == Channel::Im) return false;  // remaining laws are real-valued
  if (std::holds_alternative<MatrixSpectral>(law)) return false;
  if (const auto* sh = std::get_if<SharedEigen>(&law))
    return sh->component != SharedComponent::Xi3;
  return true;
}

inline bool law_has_density(const FluctuationLaw& law, Channel ch = Channel::Re) {
  return law_has_cdf(law, ch);
}

inline double law_cdf(const FluctuationLaw& law, double x, Channel ch = Channel::Re) {
  if (!law_has_cdf(law, ch))
    throw std::invalid_argument("law_cdf: no closed-form CDF for this law/channel");
  if (const auto* g = std::get_if<GaussianScaled>(&law))
    return normal_cdf(x / std::abs(detail::channel_of(g->c, ch)));
  if (const auto* e = std::get_if<ExpMixture>(&law)) return expmixture_cdf(e->coeffs, x);
  if (const auto* sh = std::get_if<SharedEigen>(&law)) {
    const double a = std::abs(sh->alpha1);
    switch (sh->component) {
      case SharedComponent::Zeta: {
        const double c = detail::shared_scale(*sh);
        if (c > 0.0) return x < 0.0 ? 0.0 : detail::gamma2_cdf(x / c);
        return x > 0.0 ? 1.0 : 1.0 - detail::gamma2_cdf(x / c);
      }
      case SharedComponent::Xi1:
        return x < 0.0 ? 0.0 : detail::gamma2_cdf(x * x / (a * a));
      case SharedComponent::Xi2:
        return x > 0.0 ? 1.0 : 1.0 - detail::gamma2_cdf(x * x / (a * a));
      case SharedComponent::Xi3:
        break;
    }
    throw std::logic_error("unreachable");
  }
  const auto& p = std::get<EqualPairs>(law);
  const double a2 = p.alpha * p.alpha;
  if (p.component == PairComponent::Top)
    return x < 0.0 ? 0.0 : 1.0 - std::exp(-x * x / a2);
  return x > 0.0 ? 1.0 : std::exp(-x * x / a2);
}

inline double law_density(const FluctuationLaw& law, double x, Channel ch = Channel::Re) {
  if (!law_has_density(law, ch))
    throw std::invalid_argument("law_density: no closed-form density for this law/channel");
  if (const auto* g = std::get_if<GaussianScaled>(&law)) {
    const double sigma = std::abs(detail::channel_of(g->c, ch));
    const double t = x / sigma;
    return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * M_PI));
  }
  if (const auto* e = std::get_if<ExpMixture>(&law)) return expmixture_density(e->coeffs, x);
  if (const auto* sh = std::get_if<SharedEigen>(&law)) {
    const double a = std::abs(sh->alpha1);
    switch (sh->component) {
      case SharedComponent::Zeta: {
        const double c = detail::shared_scale(*sh);
        if (x / c < 0.0) return 0.0;
        return (x / c) * std::exp(-x / c) / std::abs(c);
      }
      case SharedComponent::Xi1: {
        if (x < 0.0) return 0.0;
        const double t = x / a;
        return 2.0 * t * t * t * std::exp(-t * t) / a;
      }
      case SharedComponent::Xi2: {
        if (x > 0.0) return 0.0;
        const double t = -x / a;
        return 2.0 * t * t * t * std::exp(-t * t) / a;
      }
      case SharedComponent::Xi3:
        break;
    }
    throw std::logic_error("unreachable");
  }
  const auto& p = std::get<EqualPairs>(law);
  const double a2 = p.alpha * p.alpha;
  if (p.component == PairComponent::Top)
    return x < 0.0 ? 0.0 : 2.0 * x / a2 * std::exp(-x * x / a2);
  return x > 0.0 ? 0.0 : -2.0 * x / a2 * std::exp(-x * x / a2);
}

inline std::string law_describe(const FluctuationLaw& law) {
  std::ostringstream os;
  if (const auto* g = std::get_if<GaussianScaled>(&law)) {
    os << "scaled Gaussian: c*x with c = " << g->c.real();
    if (g->c.imag() != 0.0) os << (g->c.imag() > 0 ? "+" : "") << g->c.imag() << "i";
    os << ", x ~ N(0,1)";
  } else if (const auto* e = std::get_if<ExpMixture>(&law)) {
    os << "exponential mixture: sum of c_j*E_j with c = {";
    for (std::size_t j = 0; j < e->coeffs.size(); ++j)
      os << (j ? ", " : "") << e->coeffs[j];
    os << "}";
  } else if (const auto* m = std::get_if<MatrixSpectral>(&law)) {
    os << "spectral law: eigenvalue #" << m->rank << " (decreasing) of Z diag(";
    for (std::size_t j = 0; j < m->gamma.size(); ++j) os << (j ? ", " : "") << m->gamma[j];
    os << ") Z* with Z " << m->m << "x" << m->gamma.size() << " complex Gaussian";
  } else if (const auto* sh = std::get_if<SharedEigen>(&law)) {
    static const char* names[] = {"zeta", "xi1", "xi3", "xi2"};
    os << "shared-eigenvalue component " << names[static_cast<int>(sh->component)]
       << " (shared value " << sh->alpha1 << ", simple value " << sh->beta2 << ")";
  } else {
    const auto& p = std::get<EqualPairs>(law);
    os << "equal-pairs component " << (p.component == PairComponent::Top ? "+" : "-")
       << "|" << p.alpha << " z| with z complex Gaussian";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Dispatch: which law describes a chosen limit eigenvalue of a model

struct TargetLaw {
  FluctuationLaw law;
  double kappa = 2.0;  // deviations scale like N^(-kappa/2)
  std::string note;
};

namespace detail {

inline double require_real(Complex v, const char* what) {
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw std::invalid_argument(std::string("law_for_target: ") + what +
                                " must be real for the multiplicity-regime laws");
  return v.real();
}

}  // namespace detail

// Maps one cluster/rank of the limit spectrum to its fluctuation law and the
// exponent kappa of the matching rescaling N^(kappa/2).
inline TargetLaw law_for_target(const ModelSpec& spec, LimitTarget target) {
  const LimitSpectrum limits = limiting_eigenvalues(spec);
  const int clusters = static_cast<int>(limits.values.size());
  if (target.cluster < 0 || target.cluster >= clusters)
    throw std::out_of_range("law_for_target: cluster index out of range");
  if (target.rank < 0 || target.rank >= limits.multiplicities[target.cluster])
    throw std::out_of_range("law_for_target: rank exceeds cluster multiplicity");
  const Complex value = limits.values[target.cluster];
  const int mult = limits.multiplicities[target.cluster];

  switch (spec.kind) {
    case ModelKind::Rotation: {
      if (mult != 1)
        throw std::invalid_argument(
            "law_for_target: repeated rotation limits are not covered; the Gaussian "
            "law needs simple +/-alpha values");
      // Identify the generating alpha (the cluster value is alpha or -alpha).
      for (const Complex& a : spec.alphas) {
        if (std::abs(a - value) <= kLimitClusterTol ||
            std::abs(a + value) <= kLimitClusterTol) {
          TargetLaw out{gaussian_law(a), 1.0,
                        "sqrt(N) * (eigenvalue - limit) tends to (alpha/sqrt(2)) * x"};
          return out;
        }
      }
      throw std::logic_error("law_for_target: cluster value not among +/-alphas");
    }
    case ModelKind::Conjugation: {
      if (!limits.simple)
        throw std::invalid_argument(
            "law_for_target: multiplicity regimes for polynomial conjugation models "
            "are not covered; only the sum model has multiplicity laws");
      // Simple limits keep the raw order: alphas first, then betas.
      const int r = spec.r();
      const Side side = target.cluster < r ? Side::A : Side::B;
      const int index = target.cluster < r ? target.cluster : target.cluster - r;
      const std::vector<double> coeffs =
          mixture_coefficients(spec.poly, spec.alphas, spec.betas, side, index);
      TargetLaw out{expmixture_law(coeffs), 2.0,
                    "N * (eigenvalue - limit) tends to an exponential mixture"};
      return out;
    }
    case ModelKind::SumConjugation: {
      const double v = detail::require_real(value, "the limit value");
      std::vector<double> re_alphas(spec.r()), re_betas(spec.s());
      for (int i = 0; i < spec.r(); ++i)
        re_alphas[i] = detail::require_real(spec.alphas[i], "every alpha");
      for (int j = 0; j < spec.s(); ++j)
        re_betas[j] = detail::require_real(spec.betas[j], "every beta");
      const auto count_matches = [v](const std::vector<double>& vals) {
        int c = 0;
        for (double t : vals)
          if (std::abs(t - v) <= kLimitClusterTol) ++c;
        return c;
      };
      const int in_a = count_matches(re_alphas);
      const int in_b = count_matches(re_betas);

      // Worked 2x2 patterns first; they carry the closed-form components.
      if (spec.r() == 2 && spec.s() == 2 && clusters == 2) {
        const int other = 1 - target.cluster;
        const double w = detail::require_real(limits.values[other], "the limit value");
        const int other_mult = limits.multiplicities[other];
        if (mult == 2 && other_mult == 2 && in_a == 1 && in_b == 1) {
          // Equal pairs: each cluster holds one alpha and one beta.
          TargetLaw out{EqualPairs{v, target.rank == 0 ? PairComponent::Top
                                                       : PairComponent::Bottom},
                        1.0, "sqrt(N) * (eigenvalue - limit) tends to +/-|alpha z|"};
          return out;
        }
        if (mult == 3 && other_mult == 1) {
          // Target sits on the shared triple: ranks (0,1,2) carry (xi1, xi3, xi2).
          static const SharedComponent comp[] = {SharedComponent::Xi1,
                                                 SharedComponent::Xi3,
                                                 SharedComponent::Xi2};
          const SharedComponent c = comp[target.rank];
          const double kappa = (c == SharedComponent::Xi3) ? 2.0 : 1.0;
          TargetLaw out{SharedEigen{v, w, c}, kappa,
                        "mixed scalings: xi1/xi2 at sqrt(N), xi3 at N"};
          return out;
        }
        if (mult == 1 && other_mult == 3) {
          // The simple value sitting next to a shared triple carries zeta.
          TargetLaw out{SharedEigen{w, v, SharedComponent::Zeta}, 2.0,
                        "N * (eigenvalue - limit) tends to zeta"};
          return out;
        }
      }

      if (in_a > 0 && in_b > 0)
        throw std::invalid_argument(
            "law_for_target: this shared-eigenvalue configuration is not covered "
            "(supported: one value shared as two-in-A/one-in-B beside a simple "
            "value, and the equal-pairs configuration)");

      // Pure one-sided cluster: spectral law of the Gaussian-coupled diagonal.
      const std::vector<double> gamma = (in_a > 0) ? gamma_matrix(v, re_betas)
                                                   : gamma_matrix(v, re_alphas);
      if (mult == 1) {
        try {
          TargetLaw out{expmixture_law(gamma), 2.0,
                        "N * (eigenvalue - limit) tends to an exponential mixture"};
          return out;
        } catch (const std::invalid_argument&) {
          // Repeated coupling coefficients: keep the spectral representation.
        }
      }
      TargetLaw out{MatrixSpectral{gamma, mult, target.rank + 1}, 2.0,
                    "N * (eigenvalue - limit) tends to an ordered eigenvalue of "
                    "Z diag(gamma) Z*"};
      return out;
    }
    case ModelKind::GeneralTwoVar:
      throw std::invalid_argument(
          "law_for_target: closed-form laws for the general two-variable model are "
          "not covered; use the conjugation form when the polynomial allows it, or "
          "compare histograms against empirical samples");
  }
  throw std::logic_error("unreachable");
}

}  // namespace haarlim
