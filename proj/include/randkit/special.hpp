#pragma once

// Special functions backing the statistical tests. Self-contained so the
// p-values do not depend on libm's erfc/tgamma accuracy across platforms.

namespace randkit::sf {

// Complementary error function. Power series for small |x|, Lentz-style
// continued fraction for the tail. Absolute error < 1e-12 over the range
// the test battery uses.
double erfc(double x);

// Regularized lower/upper incomplete gamma P(a,x), Q(a,x) for a > 0, x >= 0.
// Series expansion when x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ln Gamma(a), a > 0 (Lanczos).
double lgamma(double a);

// Upper tail of the chi-square distribution: P(X >= stat | df).
double chi_square_upper(double stat, double df);

// Two-sided tail of the standard normal: P(|Z| >= |z|) = erfc(|z|/sqrt(2)).
double normal_two_sided_p(double z);

// Kolmogorov distribution complement Q_KS(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace randkit::sf
