// Fluctuation-law toolbox: mixture coefficients against hand-derived values
// and against the model itself, closed-form densities/CDFs, samplers checked
// by Kolmogorov-Smirnov against their own CDFs, the minor expansion of the
// characteristic polynomial, and the model-to-law dispatch table.

#include <gtest/gtest.h>

#include <cmath>

#include "haarlim/laws.hpp"
#include "haarlim/montecarlo.hpp"

using namespace haarlim;

namespace {

NCPolynomial showcase_poly() { return parse_polynomial("x + y + x*y*x + y*x*y"); }

const std::vector<Complex> kShowAlphas = {{5, 0}, {2, 0}, {1, 0}};
const std::vector<Complex> kShowBetas = {{4, 0}, {3, 0}, {-1, 0}};

std::vector<double> draw_law(const FluctuationLaw& law, int n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = law_sample(law, rng).real();
  return out;
}

double ks_against_cdf(const FluctuationLaw& law, int n, std::uint64_t seed) {
  return ks_one_sample(draw_law(law, n, seed),
                       [&law](double x) { return law_cdf(law, x); });
}

// Composite Simpson rule on [lo, hi] with an even number of panels.
double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST(Gaussian, ScalesAlphaByRootTwo) {
  const FluctuationLaw law = gaussian_law(Complex(4, 0));
  const auto& g = std::get<GaussianScaled>(law);
  EXPECT_DOUBLE_EQ(g.c.real(), 4.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(g.c.imag(), 0.0);
  EXPECT_THROW(gaussian_law(Complex(0, 0)), std::invalid_argument);
}

TEST(Gaussian, ChannelsFollowTheCoefficient) {
  const FluctuationLaw real_c = gaussian_law(Complex(2, 0));
  EXPECT_TRUE(law_has_cdf(real_c, Channel::Re));
  EXPECT_FALSE(law_has_cdf(real_c, Channel::Im));
  const FluctuationLaw full_c = GaussianScaled{Complex(1, 1)};
  EXPECT_TRUE(law_has_cdf(full_c, Channel::Im));
  EXPECT_NEAR(law_cdf(full_c, 0.0, Channel::Im), 0.5, 1e-15);
}

TEST(MixtureCoefficients, SumModelClosedForm) {
  const NCPolynomial sum = parse_polynomial("x + y");
  const std::vector<Complex> a = {{5, 0}}, b = {{1, 0}};
  const std::vector<double> ca = mixture_coefficients(sum, a, b, Side::A, 0);
  const std::vector<double> cb = mixture_coefficients(sum, a, b, Side::B, 0);
  ASSERT_EQ(ca.size(), 1u);
  ASSERT_EQ(cb.size(), 1u);
  EXPECT_NEAR(ca[0], 5.0 / 4.0, 1e-14);   // alpha beta / (alpha - beta)
  EXPECT_NEAR(cb[0], -5.0 / 4.0, 1e-14);  // roles swapped, sign flipped
}

// For the sum model the second-order shift of the eigenvalue near alpha is
// (alpha beta / (alpha - beta)) |u|^2; pin the coefficients to the actual
// reduced model at a tiny corner entry.
TEST(MixtureCoefficients, MatchSecondOrderShiftOfTheModel) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{5, 0}};
  s.betas = {{1, 0}};
  s.n = 10;
  const double t = 1e-5;
  ComplexMatrix uhat(1, 1);
  uhat(0, 0) = Complex(t, 0);
  std::vector<Complex> eigs = nontrivial_eigenvalues_reduced(s, uhat);
  std::sort(eigs.begin(), eigs.end(),
            [](Complex l, Complex r) { return l.real() > r.real(); });
  EXPECT_NEAR((eigs[0].real() - 5.0) / (t * t), 1.25, 1e-3);
  EXPECT_NEAR((eigs[1].real() - 1.0) / (t * t), -1.25, 1e-3);
}

TEST(MixtureCoefficients, ShowcaseValuesAreExact) {
  // fluctuation of the limit at alpha = 2 (A-side index 1)
  const std::vector<double> c =
      mixture_coefficients(showcase_poly(), kShowAlphas, kShowBetas, Side::A, 1);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 12.0, 1e-12);
  EXPECT_NEAR(c[1], 6.0, 1e-12);
  EXPECT_NEAR(c[2], -14.0 / 3.0, 1e-12);
}

TEST(MixtureCoefficients, MixedWordPolynomialValues) {
  const NCPolynomial p =
      parse_polynomial("x + y + x*y + y*x + 0.5*x*y*x + 0.5*y*x*y");
  const std::vector<Complex> a = {{2, 0}, {1, 0}, {-1, 0}};
  const std::vector<Complex> b = {{4, 0}, {-0.2, 0}};
  const std::vector<double> c = mixture_coefficients(p, a, b, Side::A, 0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0], -44.0, 1e-10);
  EXPECT_NEAR(c[1], -68.0 / 55.0, 1e-12);
}

TEST(MixtureCoefficients, RejectsDegenerateRequests) {
  const NCPolynomial sum = parse_polynomial("x + y");
  const std::vector<Complex> rep = {{2, 0}, {2, 0}};
  const std::vector<Complex> b = {{1, 0}};
  EXPECT_THROW(mixture_coefficients(sum, rep, b, Side::A, 0), std::invalid_argument);
  const std::vector<Complex> ai = {{0, 1}};
  EXPECT_THROW(mixture_coefficients(sum, ai, b, Side::A, 0), std::invalid_argument);
  const std::vector<Complex> a = {{5, 0}};
  EXPECT_THROW(mixture_coefficients(sum, a, b, Side::A, 1), std::out_of_range);
  EXPECT_THROW(mixture_coefficients(sum, a, b, Side::B, -1), std::out_of_range);
}

TEST(ExpMixture, SingleCoefficientIsExponential) {
  EXPECT_NEAR(expmixture_cdf({1.0}, std::log(2.0)), 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(expmixture_density({1.0}, -0.5), 0.0);
  EXPECT_NEAR(expmixture_density({2.0}, 1.0), 0.5 * std::exp(-0.5), 1e-14);
  EXPECT_NEAR(expmixture_cdf({-1.0}, -std::log(2.0)), 0.5, 1e-14);  // mirrored
  EXPECT_DOUBLE_EQ(expmixture_cdf({-1.0}, 0.5), 1.0);
}

TEST(ExpMixture, ShowcaseDensityClosedForm) {
  const std::vector<double> c = {12.0, 6.0, -14.0 / 3.0};
  auto want = [](double x) {
    if (x < 0.0) return 21.0 / 800.0 * std::exp(3.0 * x / 14.0);
    return 3.0 / 800.0 * (-25.0 * std::exp(-x / 6.0) + 32.0 * std::exp(-x / 12.0));
  };
  for (double x : {-5.0, -1.0, 0.5, 1.0, 5.0, 20.0})
    EXPECT_NEAR(expmixture_density(c, x), want(x), 1e-10) << x;
  // continuous across the origin
  EXPECT_NEAR(expmixture_density(c, -1e-9), 21.0 / 800.0, 1e-7);
  EXPECT_NEAR(expmixture_density(c, 1e-9), 21.0 / 800.0, 1e-7);
}

TEST(ExpMixture, CdfDifferentiatesToDensity) {
  const std::vector<double> c = {12.0, 6.0, -14.0 / 3.0};
  const double h = 1e-5;
  for (double x : {-2.0, 0.7, 3.0, 15.0}) {
    const double fd = (expmixture_cdf(c, x + h) - expmixture_cdf(c, x - h)) / (2 * h);
    EXPECT_NEAR(fd, expmixture_density(c, x), 1e-6) << x;
  }
}

TEST(ExpMixture, RandomMixturesNormalizeAndIntegrate) {
  RngStream rng(77, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform() * 3);
    std::vector<double> c;
    while (static_cast<int>(c.size()) < k) {
      double v = (0.5 + 2.5 * rng.uniform()) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      bool clear = true;
      for (double u : c)
        if (std::abs(u - v) < 0.3) clear = false;
      if (clear) c.push_back(v);
    }
    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, std::abs(v));
    const double far = 50.0 * cmax;
    EXPECT_NEAR(expmixture_cdf(c, far) - expmixture_cdf(c, -far), 1.0, 1e-9);
    // integral of the density over [-2, 3]; the density can jump at the
    // origin, so integrate each smooth piece with endpoints nudged off zero
    auto f = [&c](double x) { return expmixture_density(c, x); };
    const double mass =
        simpson(f, -2.0, -1e-11, 4000) + simpson(f, 1e-11, 3.0, 4000);
    EXPECT_NEAR(mass, expmixture_cdf(c, 3.0) - expmixture_cdf(c, -2.0), 1e-9);
  }
}

TEST(ExpMixture, BuilderDropsTinyAndValidates) {
  const FluctuationLaw law = expmixture_law({1.0, 1e-16});
  EXPECT_EQ(std::get<ExpMixture>(law).coeffs.size(), 1u);
  EXPECT_THROW(expmixture_law({}), std::invalid_argument);
  EXPECT_THROW(expmixture_law({1.0, 1.0 + 1e-12}), std::invalid_argument);
  EXPECT_THROW(expmixture_cdf({0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(expmixture_density({1.0, 1.0}, 1.0), std::invalid_argument);
}

TEST(GammaMatrix, CouplingCoefficients) {
  const std::vector<double> g = gamma_matrix(2.0, {1.0, 1.0, -1.0});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0], 2.0, 1e-14);
  EXPECT_NEAR(g[1], 2.0, 1e-14);
  EXPECT_NEAR(g[2], -2.0 / 3.0, 1e-14);
  const std::vector<double> h = gamma_matrix(1.0, {3.0});
  EXPECT_NEAR(h[0], -1.5, 1e-14);
  EXPECT_THROW(gamma_matrix(1.0, {1.0}), std::invalid_argument);
  EXPECT_THROW(gamma_matrix(1.0, {}), std::invalid_argument);
}

TEST(MatrixSpectral, RankOneScalarIsExponential) {
  RngStream rng(8, 0);
  std::vector<double> draws(10000);
  for (double& d : draws) d = sample_matrix_spectral({1.0}, 1, rng)[0];
  const double ks = ks_one_sample(draws, [](double x) {
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x);
  });
  EXPECT_LT(ks, 0.02);
}

TEST(MatrixSpectral, OrderedOutputAndTraceIdentity) {
  const std::vector<double> gamma = {2.0, 2.0, -2.0 / 3.0};
  RngStream rng(9, 0);
  double mean_trace = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    const std::vector<double> v = sample_matrix_spectral(gamma, 3, rng);
    ASSERT_GE(v[0], v[1]);
    ASSERT_GE(v[1], v[2]);
    mean_trace += v[0] + v[1] + v[2];
  }
  mean_trace /= reps;
  // E tr(Z diag(gamma) Z*) = m * sum(gamma) = 3 * 10/3
  EXPECT_NEAR(mean_trace, 10.0, 0.2);
  EXPECT_THROW(sample_matrix_spectral({}, 1, rng), std::invalid_argument);
  EXPECT_THROW(sample_matrix_spectral({1.0}, 0, rng), std::invalid_argument);
}

TEST(SharedEigen, ComponentsSatisfyExactRelations) {
  RngStream rng(10, 0);
  for (int i = 0; i < 2000; ++i) {
    const std::array<double, 4> v = sample_shared_eigen(1.0, 2.0, rng);
    EXPECT_GE(v[0], 0.0);              // zeta with positive scale
    EXPECT_GE(v[1], 0.0);              // xi1
    EXPECT_LE(v[2], 0.0);              // xi3 is nonpositive here
    EXPECT_DOUBLE_EQ(v[3], -v[1]);     // xi2 mirrors xi1 exactly
  }
  EXPECT_THROW(sample_shared_eigen(2.0, 2.0, rng), std::invalid_argument);
  EXPECT_THROW(sample_shared_eigen(0.0, 2.0, rng), std::invalid_argument);
}

TEST(SharedEigen, SamplersMatchClosedFormCdfs) {
  const FluctuationLaw zeta = SharedEigen{1.0, 2.0, SharedComponent::Zeta};
  const FluctuationLaw xi1 = SharedEigen{1.0, 2.0, SharedComponent::Xi1};
  const FluctuationLaw xi2 = SharedEigen{1.0, 2.0, SharedComponent::Xi2};
  EXPECT_LT(ks_against_cdf(zeta, 10000, 11), 0.02);
  EXPECT_LT(ks_against_cdf(xi1, 10000, 12), 0.02);
  EXPECT_LT(ks_against_cdf(xi2, 10000, 13), 0.02);
  // zeta ~ 2 Gamma(2,1): CDF 1 - exp(-x/2)(1 + x/2)
  EXPECT_NEAR(law_cdf(zeta, 2.0), 1.0 - std::exp(-1.0) * 2.0, 1e-14);
  // xi1 CDF 1 - exp(-x^2)(1 + x^2) for unit shared value
  EXPECT_NEAR(law_cdf(xi1, 1.0), 1.0 - std::exp(-1.0) * 2.0, 1e-14);
  EXPECT_FALSE(law_has_cdf(SharedEigen{1.0, 2.0, SharedComponent::Xi3}));
  EXPECT_THROW(law_cdf(SharedEigen{1.0, 2.0, SharedComponent::Xi3}, 0.0),
               std::invalid_argument);
}

TEST(EqualPairs, DrawsComeInMirroredPairs) {
  RngStream rng(14, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::array<double, 4> v = sample_equal_pairs(2.0, 3.0, rng);
    EXPECT_GE(v[0], 0.0);
    EXPECT_DOUBLE_EQ(v[1], -v[0]);
    EXPECT_DOUBLE_EQ(v[3], -v[2]);
  }
  EXPECT_THROW(sample_equal_pairs(3.0, 3.0, rng), std::invalid_argument);
  EXPECT_THROW(sample_equal_pairs(0.0, 3.0, rng), std::invalid_argument);
}

TEST(EqualPairs, RayleighTailsMatch) {
  const FluctuationLaw top = EqualPairs{3.0, PairComponent::Top};
  const FluctuationLaw bottom = EqualPairs{3.0, PairComponent::Bottom};
  EXPECT_NEAR(law_cdf(top, 3.0), 1.0 - std::exp(-1.0), 1e-14);
  EXPECT_DOUBLE_EQ(law_cdf(top, -1.0), 0.0);
  EXPECT_NEAR(law_cdf(bottom, -3.0), std::exp(-1.0), 1e-14);
  EXPECT_DOUBLE_EQ(law_cdf(bottom, 0.5), 1.0);
  EXPECT_LT(ks_against_cdf(top, 10000, 15), 0.02);
  EXPECT_LT(ks_against_cdf(bottom, 10000, 16), 0.02);
}

TEST(Minors, ZeroCornerGivesTheProductPolynomial) {
  const std::vector<Complex> a = {{2, 0}, {5, 0}};
  const std::vector<Complex> b = {{1, 0}};
  const ComplexMatrix zero = ComplexMatrix::Zero(2, 1);
  const Complex lam(3, 0);
  const Complex got = charpoly_minors(a, b, zero, lam);
  EXPECT_NEAR(std::abs(got - Complex(-4, 0)), 0, 1e-12);  // (3-2)(3-5)(3-1)
}

TEST(Minors, AgreesWithTheDirectDeterminant) {
  const std::vector<Complex> a = {{1.3, 0}, {0.4, 0}};
  const std::vector<Complex> b = {{2.1, 0}, {-0.7, 0}};
  RngStream rng(17, 0);
  const ComplexMatrix uhat = truncate(haar_unitary(12, rng), 2, 2);
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = a;
  s.betas = b;
  s.n = 12;
  const ReducedMatrix red = build_reduced(s, uhat);
  for (const Complex lam : {Complex(0.9, 0.3), Complex(-1.2, 0), Complex(2.0, -0.5)}) {
    const ComplexMatrix shifted =
        lam * ComplexMatrix::Identity(red.dim, red.dim) - red.total();
    const Complex want = shifted.determinant();
    const Complex got = charpoly_minors(a, b, uhat, lam);
    EXPECT_NEAR(std::abs(got - want), 0, 1e-12 * std::max(1.0, std::abs(want)));
  }
}

// alpha = (1,1), beta = (1,2): expanding the minor formula by hand gives
//   (l-1)^3 (l-2) - (|u11|^2 + |u21|^2)(l-1)(l-2)
//                 - 2 (|u12|^2 + |u22|^2)(l-1)^2 + 2 |det U|^2.
TEST(Minors, SharedEigenvalueQuarticClosedForm) {
  const std::vector<Complex> a = {{1, 0}, {1, 0}};
  const std::vector<Complex> b = {{1, 0}, {2, 0}};
  RngStream rng(18, 0);
  const ComplexMatrix u = truncate(haar_unitary(9, rng), 2, 2);
  const double col1 = std::norm(u(0, 0)) + std::norm(u(1, 0));
  const double col2 = std::norm(u(0, 1)) + std::norm(u(1, 1));
  const double det2 = std::norm(u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0));
  for (const Complex lam : {Complex(1.7, 0.2), Complex(0.3, -1.0)}) {
    const Complex l1 = lam - Complex(1, 0), l2 = lam - Complex(2, 0);
    const Complex want =
        l1 * l1 * l1 * l2 - col1 * l1 * l2 - 2.0 * col2 * l1 * l1 + 2.0 * det2;
    const Complex got = charpoly_minors(a, b, u, lam);
    EXPECT_NEAR(std::abs(got - want), 0, 1e-12);
  }
}

TEST(Minors, ValidatesShapes) {
  const std::vector<Complex> a = {{1, 0}};
  const std::vector<Complex> b = {{2, 0}};
  const ComplexMatrix wrong = ComplexMatrix::Zero(2, 1);
  EXPECT_THROW(charpoly_minors(a, b, wrong, Complex(0, 0)), std::invalid_argument);
  const std::vector<Complex> big(17, Complex(1, 0));
  const ComplexMatrix tall = ComplexMatrix::Zero(17, 1);
  EXPECT_THROW(charpoly_minors(big, b, tall, Complex(0, 0)), std::invalid_argument);
}

TEST(Dispatch, RotationGetsScaledGaussian) {
  ModelSpec s;
  s.kind = ModelKind::Rotation;
  s.alphas = {{4, 0}, {2, 0}, {1, 0}};
  s.n = 100;
  const TargetLaw t = law_for_target(s, LimitTarget{3, 0});  // value -4
  const auto& g = std::get<GaussianScaled>(t.law);
  EXPECT_NEAR(g.c.real(), 4.0 / std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(t.kappa, 1.0);
}

TEST(Dispatch, ConjugationGetsTheMixture) {
  ModelSpec s;
  s.kind = ModelKind::Conjugation;
  s.poly = showcase_poly();
  s.alphas = kShowAlphas;
  s.betas = kShowBetas;
  s.n = 400;
  const TargetLaw t = law_for_target(s, LimitTarget{1, 0});  // limit at 2
  const auto& e = std::get<ExpMixture>(t.law);
  ASSERT_EQ(e.coeffs.size(), 3u);
  EXPECT_NEAR(e.coeffs[2], -14.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(t.kappa, 2.0);

  ModelSpec repeated = s;
  repeated.alphas = {{5, 0}, {5, 0}, {1, 0}};
  EXPECT_THROW(law_for_target(repeated, LimitTarget{0, 0}), std::invalid_argument);
}

TEST(Dispatch, SumModelMultiplicityGetsSpectralLaw) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{2, 0}, {2, 0}, {2, 0}};
  s.betas = {{1, 0}, {1, 0}, {-1, 0}};
  s.n = 400;
  const TargetLaw t = law_for_target(s, LimitTarget{0, 1});
  const auto& m = std::get<MatrixSpectral>(t.law);
  EXPECT_EQ(m.m, 3);
  EXPECT_EQ(m.rank, 2);  // spectral ranks are 1-based
  ASSERT_EQ(m.gamma.size(), 3u);
  EXPECT_NEAR(m.gamma[2], -2.0 / 3.0, 1e-14);
  EXPECT_DOUBLE_EQ(t.kappa, 2.0);
}

TEST(Dispatch, SimpleSumLimitsPreferTheMixture) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{5, 0}, {2, 0}};
  s.betas = {{1, 0}};
  s.n = 100;
  const TargetLaw t = law_for_target(s, LimitTarget{2, 0});  // the beta cluster
  const auto& e = std::get<ExpMixture>(t.law);
  ASSERT_EQ(e.coeffs.size(), 2u);
  EXPECT_NEAR(e.coeffs[0], -1.25, 1e-14);
  EXPECT_NEAR(e.coeffs[1], -2.0, 1e-14);
}

TEST(Dispatch, RepeatedCouplingFallsBackToSpectralForm) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{3, 0}};
  s.betas = {{1, 0}, {1, 0}};
  s.n = 100;
  const TargetLaw top = law_for_target(s, LimitTarget{0, 0});
  const auto& m1 = std::get<MatrixSpectral>(top.law);
  EXPECT_EQ(m1.m, 1);
  ASSERT_EQ(m1.gamma.size(), 2u);
  EXPECT_NEAR(m1.gamma[0], 1.5, 1e-14);
  EXPECT_NEAR(m1.gamma[1], 1.5, 1e-14);
  const TargetLaw pair = law_for_target(s, LimitTarget{1, 1});
  const auto& m2 = std::get<MatrixSpectral>(pair.law);
  EXPECT_EQ(m2.m, 2);
  EXPECT_EQ(m2.rank, 2);
  ASSERT_EQ(m2.gamma.size(), 1u);
  EXPECT_NEAR(m2.gamma[0], -1.5, 1e-14);
}

TEST(Dispatch, SharedTripleAndNeighborGetMixedScalings) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{1, 0}, {1, 0}};
  s.betas = {{1, 0}, {2, 0}};
  s.n = 400;
  const TargetLaw t0 = law_for_target(s, LimitTarget{0, 0});
  const TargetLaw t1 = law_for_target(s, LimitTarget{0, 1});
  const TargetLaw t2 = law_for_target(s, LimitTarget{0, 2});
  const TargetLaw tz = law_for_target(s, LimitTarget{1, 0});
  EXPECT_EQ(std::get<SharedEigen>(t0.law).component, SharedComponent::Xi1);
  EXPECT_EQ(std::get<SharedEigen>(t1.law).component, SharedComponent::Xi3);
  EXPECT_EQ(std::get<SharedEigen>(t2.law).component, SharedComponent::Xi2);
  EXPECT_EQ(std::get<SharedEigen>(tz.law).component, SharedComponent::Zeta);
  EXPECT_DOUBLE_EQ(t0.kappa, 1.0);
  EXPECT_DOUBLE_EQ(t1.kappa, 2.0);
  EXPECT_DOUBLE_EQ(t2.kappa, 1.0);
  EXPECT_DOUBLE_EQ(tz.kappa, 2.0);
  EXPECT_DOUBLE_EQ(std::get<SharedEigen>(tz.law).alpha1, 1.0);
  EXPECT_DOUBLE_EQ(std::get<SharedEigen>(tz.law).beta2, 2.0);
}

TEST(Dispatch, EqualPairsSplitIntoTopAndBottom) {
  ModelSpec s;
  s.kind = ModelKind::SumConjugation;
  s.alphas = {{2, 0}, {3, 0}};
  s.betas = {{2, 0}, {3, 0}};
  s.n = 400;
  const TargetLaw top = law_for_target(s, LimitTarget{1, 0});  // cluster at 3
  const TargetLaw bot = law_for_target(s, LimitTarget{1, 1});
  EXPECT_DOUBLE_EQ(std::get<EqualPairs>(top.law).alpha, 3.0);
  EXPECT_EQ(std::get<EqualPairs>(top.law).component, PairComponent::Top);
  EXPECT_EQ(std::get<EqualPairs>(bot.law).component, PairComponent::Bottom);
  EXPECT_DOUBLE_EQ(top.kappa, 1.0);
}

TEST(Dispatch, RefusesUncoveredConfigurations) {
  ModelSpec gtv;
  gtv.kind = ModelKind::GeneralTwoVar;
  gtv.poly = parse_polynomial("x + y");
  gtv.alphas = {{2, 0}};
  gtv.betas = {{1, 0}};
  gtv.n = 100;
  EXPECT_THROW(law_for_target(gtv, LimitTarget{0, 0}), std::invalid_argument);

  ModelSpec mixed;
  mixed.kind = ModelKind::SumConjugation;
  mixed.alphas = {{2, 0}, {1, 0}};
  mixed.betas = {{2, 0}, {3, 0}};
  mixed.n = 100;
  EXPECT_THROW(law_for_target(mixed, LimitTarget{0, 0}), std::invalid_argument);

  ModelSpec rot;
  rot.kind = ModelKind::Rotation;
  rot.alphas = {{2, 0}};
  rot.n = 100;
  EXPECT_THROW(law_for_target(rot, LimitTarget{9, 0}), std::out_of_range);
  EXPECT_THROW(law_for_target(rot, LimitTarget{0, 1}), std::out_of_range);
}

TEST(LawInterface, SamplersAgreeWithTheirCdfs) {
  const std::vector<FluctuationLaw> laws = {
      gaussian_law(Complex(2, 0)),
      expmixture_law({12.0, 6.0, -14.0 / 3.0}),
      SharedEigen{1.0, 2.0, SharedComponent::Zeta},
      EqualPairs{3.0, PairComponent::Top},
  };
  std::uint64_t seed = 40;
  for (const FluctuationLaw& law : laws)
    EXPECT_LT(ks_against_cdf(law, 10000, seed++), 0.02) << law_describe(law);
}

TEST(LawInterface, DescribeAndGuards) {
  EXPECT_FALSE(law_describe(gaussian_law(Complex(1, 1))).empty());
  EXPECT_FALSE(law_describe(ExpMixture{{1.0, 2.0}}).empty());
  EXPECT_FALSE(law_describe(MatrixSpectral{{1.0}, 2, 1}).empty());
  EXPECT_FALSE(law_describe(SharedEigen{1.0, 2.0, SharedComponent::Xi3}).empty());
  EXPECT_FALSE(law_describe(EqualPairs{2.0, PairComponent::Bottom}).empty());
  EXPECT_FALSE(law_has_cdf(MatrixSpectral{{1.0}, 2, 1}));
  RngStream rng(50, 0);
  FluctuationLaw bad_rank = MatrixSpectral{{1.0}, 1, 2};
  EXPECT_THROW(law_sample(bad_rank, rng), std::invalid_argument);
  EXPECT_THROW(law_density(MatrixSpectral{{1.0}, 1, 1}, 0.0), std::invalid_argument);
}
