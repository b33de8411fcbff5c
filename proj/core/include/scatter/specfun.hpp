#pragma once

namespace scatter::specfun {

// Gaussian tail Q(x) = P(Z > x), Z ~ N(0,1).
double q_function(double x);

double gamma_fn(double x);

// Non-regularized incomplete gamma functions.
double lower_incomplete_gamma(double a, double x);
// a = 0 gives the exponential integral E1(x).
double upper_incomplete_gamma(double a, double x);

// Regularized P(a,x) = gamma(a,x)/Gamma(a); stays accurate where the
// non-regularized value overflows.
double regularized_lower_gamma(double a, double x);

// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);
double log_bessel_k(double nu, double x);

// Tricomi confluent hypergeometric U(a,b,x) for a > 0, x > 0, real b.
double hyper_u(double a, double b, double x);
double log_hyper_u(double a, double b, double x);

// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

}  // namespace scatter::specfun
