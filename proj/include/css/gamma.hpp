#pragma once

namespace css {

// P(X > x) for X ~ Gamma(shape k, scale theta). x <= 0 gives 1, +inf gives 0.
double gamma_tail(double k, double theta, double x);

// x with gamma_tail(k, theta, x) = q, relative tolerance 1e-10.
double gamma_tail_inverse(double k, double theta, double q);

double chi2_tail(unsigned n, double x);
double chi2_tail_inverse(unsigned n, double q);

} // namespace css
