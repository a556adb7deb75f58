#pragma once

namespace obf {

struct Tolerance {
    double rel = 1e-12;
    int max_iter = 200;
};

double ln_gamma(double x);

// Regularized lower incomplete gamma P(a, x) and its complement.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);

double chi2_cdf(double x, int dof);
// Upper tail 1 - chi2_cdf, computed without cancellation.
double chi2_sf(double x, int dof);

double f_cdf(double x, int d1, int d2);
double f_quantile(double p, int d1, int d2, Tolerance tol = {});

}  // namespace obf
