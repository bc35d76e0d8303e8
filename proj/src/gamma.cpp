#include "css/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace css {

// Regularized incomplete gamma, lower (P) via series, upper (Q) via
// Lentz continued fraction; the split at a+1 keeps both convergent.

static double lower_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double upper_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double reg_upper(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_cf(a, x);
}

double gamma_tail(double k, double theta, double x) {
    if (!(k > 0.0) || !(theta > 0.0)) throw std::invalid_argument("gamma_tail: shape and scale must be positive");
    if (std::isnan(x)) throw std::invalid_argument("gamma_tail: x is NaN");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return reg_upper(k, x / theta);
}

// Wilson-Hilferty start, then Newton on Q(x) - q kept inside a bisection
// bracket; steps that leave the bracket (flat tails at large shape) bisect.
double gamma_tail_inverse(double k, double theta, double q) {
    if (!(k > 0.0) || !(theta > 0.0)) throw std::invalid_argument("gamma_tail_inverse: shape and scale must be positive");
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("gamma_tail_inverse: q must lie in (0,1)");

    double z = 0.0;
    {
        // Acklam-style inverse normal for the starting point
        double p = q;
        bool upper = p < 0.5;
        if (!upper) p = 1.0 - p;
        double t = std::sqrt(-2.0 * std::log(p));
        z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                    (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
        if (!upper) z = -z;
    }
    double g = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    double x = k * g * g * g;
    if (!(x > 0.0) || !std::isfinite(x)) x = k;

    double lo = 0.0, hi = x;
    while (reg_upper(k, hi) > q) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw std::runtime_error("gamma_tail_inverse: bracket overflow");
    }
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

    double lg = std::lgamma(k);
    for (int it = 0; it < 200; ++it) {
        double f = reg_upper(k, x) - q;
        if (f > 0.0) lo = x;
        else if (f < 0.0) hi = x;
        else break;
        double pdf = std::exp(-x + (k - 1.0) * std::log(x) - lg);
        double nx = pdf > 0.0 ? x + f / pdf : -1.0;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::fabs(nx - x) <= 1e-13 * nx) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x * theta;
}

double chi2_tail(unsigned n, double x) { return gamma_tail(0.5 * n, 2.0, x); }

double chi2_tail_inverse(unsigned n, double q) { return gamma_tail_inverse(0.5 * n, 2.0, q); }

} // namespace css
