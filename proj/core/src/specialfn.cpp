#include "obf/specialfn.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "obf/core.hpp"

namespace obf {

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::DomainViolation, "ln_gamma requires x > 0, got " + std::to_string(x));
    return boost::math::lgamma(x);
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) fail(ErrorKind::DomainViolation, "gamma_p requires a > 0 and x >= 0");
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_p(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) fail(ErrorKind::DomainViolation, "gamma_q requires a > 0 and x >= 0");
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_q(a, x);
}

double inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) fail(ErrorKind::DomainViolation, "inc_beta arguments out of range");
    return boost::math::ibeta(a, b, x);
}

double chi2_cdf(double x, int dof) {
    if (dof < 1) fail(ErrorKind::DomainViolation, "chi2 dof must be positive");
    if (!(x >= 0.0)) fail(ErrorKind::DomainViolation, "chi2_cdf requires x >= 0");
    return gamma_p(0.5 * dof, 0.5 * x);
}

double chi2_sf(double x, int dof) {
    if (dof < 1) fail(ErrorKind::DomainViolation, "chi2 dof must be positive");
    if (!(x >= 0.0)) fail(ErrorKind::DomainViolation, "chi2_sf requires x >= 0");
    return gamma_q(0.5 * dof, 0.5 * x);
}

double f_cdf(double x, int d1, int d2) {
    if (d1 < 1 || d2 < 1) fail(ErrorKind::DomainViolation, "F degrees of freedom must be positive");
    if (!(x >= 0.0)) fail(ErrorKind::DomainViolation, "f_cdf requires x >= 0");
    if (std::isinf(x)) return 1.0;
    double t = d1 * x / (d1 * x + d2);
    return inc_beta(0.5 * d1, 0.5 * d2, t);
}

double f_quantile(double p, int d1, int d2, Tolerance tol) {
    if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::DomainViolation, "f_quantile requires p in (0,1)");
    if (d1 < 1 || d2 < 1) fail(ErrorKind::DomainViolation, "F degrees of freedom must be positive");

    double lo = 0.0;
    double hi = 1.0;
    int iter = 0;
    while (f_cdf(hi, d1, d2) < p) {
        lo = hi;
        hi *= 2.0;
        if (++iter > tol.max_iter || std::isinf(hi)) fail(ErrorKind::DomainViolation, "f_quantile bracket did not close");
    }
    for (iter = 0; iter < tol.max_iter; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        if (f_cdf(mid, d1, d2) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol.rel * hi * 1e-3) return 0.5 * (lo + hi);
    }
    fail(ErrorKind::DomainViolation, "f_quantile did not converge within the iteration cap");
}

}  // namespace obf
