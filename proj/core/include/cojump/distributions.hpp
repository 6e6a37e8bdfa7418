#pragma once

// Distribution functions for the test decisions: chi-square via the
// regularized incomplete gamma function, standard normal via erfc.

namespace cojump {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double gamma_q(double a, double x);

double chi2_cdf(double x, double dof);
/// Upper tail 1 - F(x), accurate far into the tail.
double chi2_sf(double x, double dof);
/// x with chi2_sf(x, dof) = p, found by bracketed bisection. Throws for p
/// outside (0,1) or dof < 1.
double chi2_upper_quantile(double p, double dof);

double normal_cdf(double x);
double normal_sf(double x);
/// Inverse of normal_cdf (Wichura's AS241 rational approximation, relative
/// accuracy about 1e-16). Throws for p outside (0,1).
double normal_quantile(double p);

}  // namespace cojump
