// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace tci {

// Regularized lower incomplete gamma P(a, x), series / continued-fraction
// switching at x = a + 1; relative accuracy ~1e-14.
double gammp(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gammq(double a, double x);

// Inverse of P(a, .): returns x with P(a, x) = p. Newton with bisection
// safeguards; p in [0, 1).
double inv_gammp(double a, double p);

// Inverse standard-normal CDF (Acklam's rational approximation plus one
// Halley refinement); absolute error below 1e-13.
double inv_normal_cdf(double p);

double normal_cdf(double x);

// log density of the standard bivariate normal with correlation rho
double log_binormal_pdf(double b, double s, double rho);

// log density of the standard univariate normal
double log_normal_pdf(double x);

}  // namespace tci
