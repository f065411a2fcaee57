#pragma once

namespace ckls {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// a > 0, x >= 0. Series below x = a + 1, Lentz continued fraction above.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// log of the central chi-square density with k degrees of freedom, x > 0.
double log_central_chi2_pdf(double x, double k);

}  // namespace ckls
